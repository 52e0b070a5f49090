#include "causal/axioms.hpp"
#include "causal/formula_text.hpp"
#include "causal/model_text.hpp"
#include "causal/semantics.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace causal;

namespace {

const Signature& sig_a()
{
    static const Signature sig = parse_signature(fixture("sigA.sig"));
    return sig;
}

const Signature& sig_b()
{
    static const Signature sig = parse_signature(fixture("sigB.sig"));
    return sig;
}

std::string text(const AxiomInstance& i, const Signature& sig)
{
    return print_formula(i.formula, sig);
}

/// Truth table over the distinct leaves, written independently of the
/// library's checker.
bool brute_tautology(const Formula& f)
{
    std::vector<BasicCausal> leaves;
    f.for_each_leaf([&](const BasicCausal& l) {
        if (std::find(leaves.begin(), leaves.end(), l) == leaves.end()) {
            leaves.push_back(l);
        }
    });
    for (std::size_t row = 0; row < (std::size_t{1} << leaves.size()); ++row) {
        const bool v = f.evaluate([&](const BasicCausal& l) {
            const auto k = static_cast<std::size_t>(std::find(leaves.begin(), leaves.end(), l) - leaves.begin());
            return ((row >> k) & 1) != 0;
        });
        if (!v) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("axioms")
{
    TEST_CASE("scheme names")
    {
        CHECK(all_schemes().size() == 19);
        for (auto s : all_schemes()) {
            CHECK(parse_scheme(to_string(s)) == s);
        }
        CHECK_FALSE(parse_scheme("D11"));
        CHECK(to_string(Scheme::Ord) == "Ord");
    }

    TEST_CASE("instantiation")
    {
        const auto& sig = sig_a();
        const auto c4 = instantiate(Scheme::C4, Bindings{{}, {0}, {1}, {}}, sig);
        CHECK(text(c4, sig) == "[X<-1](X()=1)");

        const auto d10 = instantiate(Scheme::D10, Bindings{{{1, 1}}, {0}, {}, {}}, sig);
        CHECK(text(d10, sig) == "<Y<-1>(true) & ([Y<-1](X()=0) | [Y<-1](X()=1))");

        CHECK_THROWS_AS(instantiate(Scheme::C1, Bindings{{}, {0}, {1, 1}, {}}, sig), ContractError);
        CHECK(text(instantiate(Scheme::C1, Bindings{{}, {0}, {1, 0}, {}}, sig), sig) == "[](X()=1) -> !([](X()=0))");

        // side conditions
        CHECK_THROWS_AS(instantiate(Scheme::C4, Bindings{{{0, 0}}, {0}, {1}, {}}, sig), ContractError);
        CHECK_THROWS_AS(instantiate(Scheme::C5, Bindings{{}, {0, 0}, {1, 1}, {}}, sig), ContractError);
        CHECK_THROWS_AS(instantiate(Scheme::D9, Bindings{{}, {0}, {}, {}}, sig), ContractError);
        CHECK_THROWS_AS(instantiate(Scheme::C6, Bindings{{}, {0}, {}, {}}, sig), ContractError);
        Bindings ord{{}, {1, 0}, {0, 0}, {}};
        ord.order = {0, 1};
        CHECK_THROWS_AS(instantiate(Scheme::Ord, ord, sig), ContractError);
        ord.order = {1, 0};
        CHECK(text(instantiate(Scheme::Ord, ord, sig), sig) == "[X<-0](Y()=0) <-> [](Y()=0)");
    }

    TEST_CASE("instance counts")
    {
        // 2 variables x 2 values x (1 empty + 2 pins of the other variable)
        CHECK(enumerate_instances(Scheme::C4, sig_a()).size() == 12);
        CHECK(enumerate_instances(Scheme::D4, sig_a()).size() == 12);
        // D9 pins the other variable: 2 variables x 2 values
        CHECK(enumerate_instances(Scheme::D9, sig_a()).size() == 4);
        // every ordered chain of distinct variables, lengths 2 and 3
        CHECK(enumerate_instances(Scheme::C6, sig_b()).size() == 6 + 6);
        EnumerationBounds short_chains;
        short_chains.max_chain = 1;
        CHECK(enumerate_instances(Scheme::C6, sig_b(), short_chains).size() == 6);
        CHECK(enumerate_instances(Scheme::Ord, sig_a()).empty());

        EnumerationBounds tiny;
        tiny.tautology_atoms = 1;
        tiny.tautology_depth = 0;
        CHECK(enumerate_instances(Scheme::D8, sig_a(), tiny).empty());
        tiny.tautology_depth = 2;
        CHECK_FALSE(enumerate_instances(Scheme::D8, sig_a(), tiny).empty());
    }

    TEST_CASE("enumeration can stop early")
    {
        std::size_t seen = 0;
        for_each_instance(Scheme::D4, sig_b(), {}, [&](const AxiomInstance&) { return ++seen < 3; });
        CHECK(seen == 3);
    }

    TEST_CASE("tautologies")
    {
        const auto& sig = sig_a();
        CHECK(tautology(parse_formula("[](X()=1) | !([](X()=1))", sig)));
        CHECK_FALSE(tautology(parse_formula("[](X()=1) -> [](Y()=1)", sig)));
        CHECK(tautology(parse_formula("[](X()=1) -> ([](Y()=1) -> [](X()=1) & [](Y()=1))", sig)));
        CHECK(tautology(parse_inner("X()=1 -> X()=1 | Y()=0", sig)));
        CHECK_FALSE(tautology(parse_inner("X()=1 -> Y()=0", sig)));
        CHECK(tautology(parse_inner("true | X()=0", sig)));

        // 17 distinct leaves exceed the default cap
        std::vector<Formula> parts;
        for (int i = 0; i < 17; ++i) {
            parts.push_back(make_box({{0, static_cast<ValueIndex>(i % 2)}, {1, static_cast<ValueIndex>(i / 2 % 2)}},
                                     make_atom(static_cast<VarIndex>(i / 4 % 2), {}, static_cast<ValueIndex>(i / 8 % 2))));
        }
        parts.push_back(make_box({}, make_atom(0, {}, 0)));
        CHECK_THROWS_AS(tautology(Formula::any_of(parts)), TautologyCapExceeded);
        CHECK_NOTHROW(tautology(Formula::any_of(parts), 32));
    }

    TEST_CASE("tautology agrees with a brute-force truth table")
    {
        gen::Rng rng(21);
        gen::FormulaShape shape;
        shape.depth = 3;
        shape.inner_depth = 0;
        shape.max_pins = 0;
        shape.diamonds = false;
        shape.constants = false;
        int taut = 0;
        for (int i = 0; i < 400; ++i) {
            const auto f = gen::random_formula(sig_a(), shape, rng);
            const bool expect = brute_tautology(f);
            CHECK(tautology(f) == expect);
            taut += expect;
        }
        CHECK(taut > 0);
    }

    TEST_CASE("recognising instances")
    {
        const auto& sig = sig_a();
        CHECK(is_instance(parse_formula("[X<-1](X()=1)", sig), Scheme::C4, sig));
        CHECK_FALSE(is_instance(parse_formula("[X<-0](X()=1)", sig), Scheme::C4, sig));
        CHECK_FALSE(is_instance(parse_formula("[X<-1](X()=0)", sig), Scheme::C4, sig));
        CHECK(is_instance(parse_formula("[Y<-0, X<-1](X()=1)", sig), Scheme::D4, sig));

        // D7 only in its conjunctive form
        CHECK(is_instance(parse_formula("[Y<-1](X()=1) & [Y<-1](X()=1 -> X()=0) -> [Y<-1](X()=0)", sig), Scheme::D7,
                          sig));
        CHECK_FALSE(is_instance(parse_formula("[Y<-1](X()=1) -> ([Y<-1](X()=1 -> X()=0) -> [Y<-1](X()=0))", sig),
                                Scheme::D7, sig));

        MatchOptions with_order;
        with_order.order = std::vector<VarIndex>{1, 0};
        const auto ord = parse_formula("[X<-0](Y()=0) <-> [](Y()=0)", sig);
        CHECK(is_instance(ord, Scheme::Ord, sig, with_order));
        CHECK_FALSE(is_instance(ord, Scheme::Ord, sig));
    }

    TEST_CASE("every enumerated instance is recognised")
    {
        for (const auto* sig : {&sig_a(), &sig_b()}) {
            EnumerationBounds bounds;
            bounds.order = std::vector<VarIndex>(sig->endogenous_count());
            for (VarIndex v = 0; v < sig->endogenous_count(); ++v) {
                (*bounds.order)[v] = v;
            }
            bounds.tautology_depth = 1;
            MatchOptions opts;
            opts.order = bounds.order;
            for (auto s : all_schemes()) {
                std::size_t n = 0;
                for_each_instance(s, *sig, bounds, [&](const AxiomInstance& inst) {
                    CAPTURE(to_string(s));
                    CAPTURE(print_formula(inst.formula, *sig));
                    const auto b = is_instance(inst.formula, s, *sig, opts);
                    REQUIRE(b);
                    CHECK(sort_interventions(instantiate(s, *b, *sig).formula) == sort_interventions(inst.formula));
                    return ++n < 40;
                });
                CHECK(n > 0);
            }
        }
    }

    TEST_CASE("the affects formula matches the semantic check")
    {
        gen::Rng rng(22);
        for (int i = 0; i < 40; ++i) {
            const auto sig = gen::random_signature(rng);
            if (sig.endogenous_count() < 2 || sig.context_count() > 2) {
                continue;
            }
            const auto m = gen::random_model(sig, rng);
            Evaluator eval(m);
            for (VarIndex y = 0; y < sig.endogenous_count(); ++y) {
                for (VarIndex z = 0; z < sig.endogenous_count(); ++z) {
                    if (y != z) {
                        CHECK(eval.holds(affects_formula(y, z, sig)) == affects(eval, y, z).affects);
                    }
                }
            }
        }
    }

    TEST_CASE("soundness on the fixtures")
    {
        const auto neg = parse_model(fixture("mutual_negation.model"));
        const auto c5 = check_soundness(neg, Scheme::C5);
        CHECK(c5.checked > 0);
        CHECK(c5.failures.empty());
        CHECK_FALSE(c5.seed);

        const auto copy = parse_model(fixture("mutual_copy.model"));
        const auto c2 = check_soundness(copy, Scheme::C2);
        REQUIRE_FALSE(c2.failures.empty());
        const auto& first = c2.failures.front().bindings;
        CHECK(first.iv.empty());
        CHECK(first.vars == std::vector<VarIndex>{0});

        const auto cycle = parse_model(fixture("three_cycle.model"));
        EnumerationBounds bounds;
        bounds.max_chain = 2;
        const auto c6 = check_soundness(cycle, Scheme::C6, SoundnessMode::all(), bounds);
        REQUIRE_FALSE(c6.failures.empty());
        for (const auto& f : c6.failures) {
            CHECK(f.bindings.vars.size() == 3);
            CHECK(!oracle::holds(cycle, f.formula));
        }
    }

    TEST_CASE("sampled soundness is reproducible")
    {
        const auto copy = parse_model(fixture("mutual_copy.model"));
        const auto a = check_soundness(copy, Scheme::C1, SoundnessMode::sampled(25, 42));
        const auto b = check_soundness(copy, Scheme::C1, SoundnessMode::sampled(25, 42));
        CHECK(a.checked == 25);
        CHECK(a.seed == std::optional<std::uint64_t>{42});
        REQUIRE(a.failures.size() == b.failures.size());
        for (std::size_t i = 0; i < a.failures.size(); ++i) {
            CHECK(a.failures[i].formula == b.failures[i].formula);
        }
    }

    TEST_CASE("D-schemes hold on random models")
    {
        gen::Rng rng(23);
        EnumerationBounds bounds;
        bounds.max_intervention = 1;
        bounds.tautology_depth = 1;
        for (int i = 0; i < 25; ++i) {
            const auto sig = gen::random_signature(rng);
            const auto m = gen::random_model(sig, rng);
            for (auto s : {Scheme::D0, Scheme::D1, Scheme::D2, Scheme::D3, Scheme::D4, Scheme::D5, Scheme::D7,
                           Scheme::D8, Scheme::D9}) {
                CAPTURE(to_string(s));
                CHECK(check_soundness(m, s, SoundnessMode::sampled(30, 7), bounds).failures.empty());
            }
        }
    }
}
