#include "causal/model.hpp"
#include "causal/model_text.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace causal;

namespace {

ValueIndex value(const Signature& sig, const std::string& var, const std::string& token)
{
    return *sig.value_index({VarKind::endogenous, *sig.find_endogenous(var)}, token);
}

std::vector<std::string> problems_of(const std::string& text)
{
    return validate_model(parse_model_decl(text)).problems;
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle)
{
    for (const auto& p : problems) {
        if (p.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_SUITE("model")
{
    TEST_CASE("fixture files validate")
    {
        for (auto name : {"mutual_negation.model", "mutual_copy.model", "three_cycle.model", "chain.model",
                          "nosolution.model"}) {
            CAPTURE(name);
            CHECK(problems_of(fixture(name)).empty());
        }
    }

    TEST_CASE("validation reports every problem")
    {
        const auto out_of_domain = problems_of(R"(
signature
  endogenous X { 0 1 }
  endogenous Y { 0 1 }
equations
  X: case Y=1 -> 7; default -> 0;
  Y: default -> 0;
)");
        REQUIRE(out_of_domain.size() == 1);
        CHECK(mentions(out_of_domain, "row 1"));
        CHECK(mentions(out_of_domain, "'7'"));

        CHECK(mentions(problems_of("signature\n endogenous X { 0 }\nequations\n X: default -> 0;\n"), "at least 2"));

        const auto several = problems_of(R"(
signature
  endogenous X { 0 1 }
  endogenous Y { 0 1 }
equations
  X: case X=1 -> 1; case Q=0 -> 0; default -> 0;
)");
        CHECK(mentions(several, "mentions the target"));
        CHECK(mentions(several, "unknown variable 'Q'"));
        CHECK(mentions(several, "no equation for endogenous variable 'Y'"));

        CHECK_THROWS_AS(parse_model("signature\n endogenous X { 0 1 }\nequations\n X: case X=1 1;\n"), ParseError);
        CHECK_THROWS_AS(parse_model("signature\n endogenous X { 0 1 }\n endogenous X { 0 1 }\n"), ValidationError);
    }

    TEST_CASE("parse errors carry a position")
    {
        try {
            parse_model_decl("signature\n  endogenous X { 0 1 \n");
            FAIL("expected a parse error");
        }
        catch (const ParseError& e) {
            CHECK(e.position().line >= 2);
        }
    }

    TEST_CASE("equation tables")
    {
        const auto m = parse_model(fixture("mutual_negation.model"));
        const auto& sig = m.signature();
        const auto y = *sig.find_endogenous("Y");
        // F_Y(X=1) = -1; the input vector is indexed by all endogenous slots.
        std::vector<ValueIndex> full = {value(sig, "X", "1"), kUnassigned};
        CHECK(sig.endogenous_value(y, apply_table(m.equation(y), sig, full)) == "-1");

        const auto cycle = parse_model(fixture("three_cycle.model"));
        const auto& cs = cycle.signature();
        std::vector<ValueIndex> in = {kUnassigned, 0, 1}; // X2 = 1
        CHECK(cs.endogenous_value(0, apply_table(cycle.equation(0), cs, in)) == "2");
        in[2] = 0;
        CHECK(cs.endogenous_value(0, apply_table(cycle.equation(0), cs, in)) == "0");

        const auto constant = parse_model("signature\n endogenous X { a b }\n endogenous Y { a b }\n"
                                          "equations\n X: default -> b;\n Y: default -> a;\n");
        for (ValueIndex v = 0; v < 2; ++v) {
            std::vector<ValueIndex> input = {kUnassigned, v};
            CHECK(apply_table(constant.equation(0), constant.signature(), input) == 1);
        }
    }

    TEST_CASE("submodels")
    {
        const auto m = parse_model(fixture("mutual_negation.model"));
        const auto& sig = m.signature();
        const auto x = *sig.find_endogenous("X");
        const auto y = *sig.find_endogenous("Y");
        CHECK(submodel(m, {{x, value(sig, "X", "1")}}, {}).free() == std::vector<VarIndex>{y});
        CHECK(submodel(m, {}, {}).free() == std::vector<VarIndex>{x, y});
        CHECK(submodel(m, {{x, 0}, {y, 0}}, {}).free().empty());
        CHECK_THROWS_AS(submodel(m, {{x, 0}, {x, 1}}, {}), ContractError);
        CHECK_THROWS_AS(submodel(m, {{x, 9}}, {}), ContractError);
        CHECK_THROWS_AS(submodel(m, {}, Context{{0}}), ContractError);
    }

    TEST_CASE("solutions of the fixtures")
    {
        const auto neg = parse_model(fixture("mutual_negation.model"));
        const auto base = solutions(submodel(neg, {}, {}));
        REQUIRE(base.size() == 1);
        CHECK(format_solution(submodel(neg, {}, {}), base[0]) == "X=0 Y=0");

        const auto copy = parse_model(fixture("mutual_copy.model"));
        const auto sols = solutions(submodel(copy, {}, {}));
        REQUIRE(sols.size() == 2);
        CHECK(sols[0].values == std::vector<ValueIndex>{0, 0});
        CHECK(sols[1].values == std::vector<ValueIndex>{1, 1});

        // F_X = 1 - Y, F_Y = X forces X = 1 - X.
        const auto none = parse_model(fixture("nosolution.model"));
        CHECK(solutions(submodel(none, {}, {})).empty());
        CHECK(oracle::solutions(none, {}, {}).empty());
    }

    TEST_CASE("solutions agree with the brute-force oracle")
    {
        gen::Rng rng(1);
        for (int i = 0; i < 60; ++i) {
            const auto sig = gen::random_signature(rng);
            const auto m = gen::random_model(sig, rng);
            for (const auto& iv : all_interventions(sig, endogenous_except(sig, {}))) {
                for (const auto& ctx : sig.contexts()) {
                    const auto sub = submodel(m, iv, ctx);
                    const auto fast = solutions(sub);
                    const auto slow = oracle::solutions(m, iv, ctx);
                    REQUIRE(fast.size() == slow.size());
                    CHECK(count_solutions(sub) == slow.size());
                    for (std::size_t k = 0; k < fast.size(); ++k) {
                        CHECK(satisfies(sub, fast[k]));
                        for (auto z : sub.free()) {
                            CHECK(fast[k].values[z] == slow[k][z]);
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("dependence and recursion")
    {
        const auto neg = parse_model(fixture("mutual_negation.model"));
        CHECK(depends_on(neg, 0, {VarKind::endogenous, 1}));
        CHECK(depends_on(neg, 1, {VarKind::endogenous, 0}));
        const auto r = is_recursive(neg);
        CHECK_FALSE(r.recursive);
        CHECK(r.cycle.front() == r.cycle.back());
        CHECK(r.cycle.size() == 3);

        const auto cycle = parse_model(fixture("three_cycle.model"));
        const auto graph = dependency_graph(cycle);
        // edges[y] lists the readers of y: X1 reads X0, X2 reads X1, X0 reads X2.
        CHECK(graph[0] == std::vector<VarIndex>{1});
        CHECK(graph[1] == std::vector<VarIndex>{2});
        CHECK(graph[2] == std::vector<VarIndex>{0});
        CHECK(is_recursive(cycle).cycle.size() == 4);

        const auto chain = parse_model(fixture("chain.model"));
        const auto cr = is_recursive(chain);
        CHECK(cr.recursive);
        CHECK(cr.order == std::vector<VarIndex>{0, 1});
        CHECK(causal_orders(chain) == std::vector<std::vector<VarIndex>>{{0, 1}});
        CHECK(respects_order(chain, {0, 1}));
        CHECK_FALSE(respects_order(chain, {1, 0}));
        CHECK(depends_on(chain, 0, {VarKind::exogenous, 0}));

        const auto constant = parse_model("signature\n endogenous X { 0 1 }\n endogenous Y { 0 1 }\n"
                                          "equations\n X: default -> 1;\n Y: default -> 0;\n");
        CHECK_FALSE(depends_on(constant, 0, {VarKind::endogenous, 1}));
        CHECK(causal_orders(constant).size() == 2);
    }

    TEST_CASE("recursion and uniqueness agree with the oracle")
    {
        gen::Rng rng(2);
        for (int i = 0; i < 80; ++i) {
            const auto sig = gen::random_signature(rng);
            const auto m = gen::random_model(sig, rng);
            const auto r = is_recursive(m);
            CHECK(r.recursive == oracle::recursive(m));
            CHECK(is_uniquely_solvable(m).unique == oracle::uniquely_solvable(m));
            if (r.recursive) {
                CHECK(respects_order(m, r.order));
                // recursive models are uniquely solvable
                CHECK(is_uniquely_solvable(m).unique);
            }
            for (const auto& order : causal_orders(m)) {
                CHECK(respects_order(m, order));
            }
        }
    }

    TEST_CASE("classification of the fixtures")
    {
        const auto neg = classify(parse_model(fixture("mutual_negation.model")));
        CHECK(neg.cls == ModelClass::unique_solutions);
        CHECK(is_uniquely_solvable(parse_model(fixture("three_cycle.model"))).unique);

        const auto copy = classify(parse_model(fixture("mutual_copy.model")));
        CHECK(copy.cls == ModelClass::general);
        REQUIRE(copy.counterexample);
        CHECK(copy.counterexample->intervention.empty());
        CHECK(copy.counterexample->solution_count == 2);

        const auto chain = classify(parse_model(fixture("chain.model")));
        CHECK(chain.cls == ModelClass::recursive);
        CHECK(chain.order == std::vector<VarIndex>{0, 1});

        CHECK(class_within(ModelClass::recursive, ModelClass::general));
        CHECK_FALSE(class_within(ModelClass::general, ModelClass::unique_solutions));
        CHECK(parse_model_class("uniq") == ModelClass::unique_solutions);
        CHECK_FALSE(parse_model_class("acyclic"));
    }

    TEST_CASE("uniqueness check honours its budget")
    {
        const auto cycle = parse_model(fixture("three_cycle.model"));
        CHECK_THROWS_AS(is_uniquely_solvable(cycle, 5), BudgetExceeded);
        CHECK(is_uniquely_solvable(cycle).submodels_examined == 64);
    }

    TEST_CASE("model text round-trips")
    {
        gen::Rng rng(3);
        for (int i = 0; i < 50; ++i) {
            const auto m = gen::random_model(gen::random_signature(rng), rng);
            const auto text = print_model(m);
            const auto back = parse_model(text);
            CHECK(back == m);
            CHECK(print_model(back) == text);
            CHECK(parse_signature(text) == m.signature());
        }
        const auto sig = parse_signature(fixture("sigB.sig"));
        CHECK(parse_signature(print_signature(sig)) == sig);
    }
}
