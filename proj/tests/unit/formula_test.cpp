#include "causal/formula.hpp"
#include "causal/formula_text.hpp"
#include "causal/model_text.hpp"

#include "fixtures.hpp"
#include "generators.hpp"

#include <doctest.h>

using namespace causal;

namespace {

const Signature& neg_sig()
{
    static const Signature sig = parse_model(fixture("mutual_negation.model")).signature();
    return sig;
}

const Signature& xyz()
{
    static const Signature sig = parse_signature(R"(
signature
  exogenous U { 0 1 }
  endogenous X { 0 1 }
  endogenous Y { 0 1 }
  endogenous Z { 0 1 }
)");
    return sig;
}

const Signature& bare_xyz()
{
    static const Signature sig = parse_signature(fixture("sigB.sig"));
    return sig;
}

std::string parse_error(const std::string& text, const Signature& sig)
{
    try {
        parse_formula(text, sig);
    }
    catch (const ParseError& e) {
        return e.bare_message();
    }
    return "";
}

std::string canon(const std::string& text, const Signature& sig)
{
    return print_formula(parse_formula(text, sig), sig);
}

} // namespace

TEST_SUITE("formula")
{
    TEST_CASE("parsing a box over a negative value")
    {
        const auto& sig = neg_sig();
        const auto f = parse_formula("[X<-1](Y()=-1)", sig);
        REQUIRE(f.is(Formula::Op::leaf));
        const auto& leaf = f.leaf();
        CHECK(leaf.mode == Modality::box);
        REQUIRE(leaf.intervention.size() == 1);
        CHECK(leaf.intervention[0].var == 0);
        CHECK(sig.endogenous_value(0, leaf.intervention[0].value) == "1");
        REQUIRE(leaf.body.is(Inner::Op::leaf));
        CHECK(leaf.body.leaf().var == 1);
        CHECK(leaf.body.leaf().context.values.empty());
        CHECK(sig.endogenous_value(1, leaf.body.leaf().value) == "-1");
        CHECK(print_formula(f, sig) == "[X<-1](Y()=-1)");
    }

    TEST_CASE("empty intervention with a disjunctive body")
    {
        const auto f = parse_formula("[](X()=0 | X()=1)", bare_xyz());
        REQUIRE(f.is(Formula::Op::leaf));
        CHECK(f.leaf().intervention.empty());
        CHECK(f.leaf().body.is(Inner::Op::disjunction));
    }

    TEST_CASE("errors")
    {
        const auto& sig = bare_xyz();
        CHECK(parse_error("[X<-1, X<-0](Y()=0)", sig).find("duplicate intervened variable") != std::string::npos);
        CHECK(parse_error("[](Q()=0)", sig).find("unknown variable 'Q'") != std::string::npos);
        CHECK(parse_error("[](X()=2)", sig).find("not in the domain") != std::string::npos);
        CHECK(parse_error("X()=1", sig).find("write it as [](X(...)=value)") != std::string::npos);
        CHECK(parse_error("[]([](X()=1))", sig).find("nested") != std::string::npos);
        CHECK(parse_error("[](X()=1", sig).find("expected") != std::string::npos);
        CHECK(parse_error("[X<-1] X()=1", sig).find("expected '('") != std::string::npos);

        const auto& ctx = xyz();
        CHECK(parse_error("[](X(U=0)=1 & Y(U=1)=0)", ctx).find("mixed contexts") != std::string::npos);
        CHECK(parse_error("[](X()=1)", ctx).find("partial context") != std::string::npos);
        CHECK(parse_error("[U<-1](X(U=0)=1)", ctx).find("exogenous") != std::string::npos);
        CHECK(parse_error("[](U(U=0)=1)", ctx).find("exogenous") != std::string::npos);

        try {
            parse_formula("[](X()=0) &\n  [](Y()=7)", sig);
            FAIL("expected a parse error");
        }
        catch (const ParseError& e) {
            CHECK(e.position().line == 2);
            CHECK(e.position().column == 10);
        }
    }

    TEST_CASE("precedence and associativity")
    {
        const auto& sig = bare_xyz();
        const std::string a = "[](X()=1)", b = "[](Y()=1)", c = "[](Z()=1)";
        // ! > & > | > -> > <->
        CHECK(parse_formula("!" + a + " & " + b, sig) ==
              Formula::conjunction(Formula::negation(parse_formula(a, sig)), parse_formula(b, sig)));
        CHECK(parse_formula(a + " | " + b + " & " + c, sig) ==
              Formula::disjunction(parse_formula(a, sig), parse_formula(b + " & " + c, sig)));
        CHECK(parse_formula(a + " -> " + b + " -> " + c, sig) ==
              Formula::implication(parse_formula(a, sig), parse_formula(b + " -> " + c, sig)));
        CHECK(parse_formula(a + " -> " + b + " <-> " + c, sig) ==
              Formula::biconditional(parse_formula(a + " -> " + b, sig), parse_formula(c, sig)));
        CHECK(parse_formula("[](X()=1 | Y()=0 & Z()=1)", sig) ==
              make_box({}, Inner::disjunction(make_atom(0, {}, 1),
                                              Inner::conjunction(make_atom(1, {}, 0), make_atom(2, {}, 1)))));
    }

    TEST_CASE("canonical printing")
    {
        const auto& sig = bare_xyz();
        CHECK(canon("  [ X <- 1 ] ( Y ( ) = 0 )", sig) == "[X<-1](Y()=0)");
        CHECK(canon("<Y<-1>(X()=0)", sig) == "<Y<-1>(X()=0)");
        CHECK(canon("![X<-1](Y()=0)", sig) == "!([X<-1](Y()=0))");
        CHECK(canon("[](X()=1) -> [](Y()=1)", sig) == "[](X()=1) -> [](Y()=1)");
        CHECK(canon("[](X()=1) <-> [](Y()=1)", sig) == "[](X()=1) <-> [](Y()=1)");
        CHECK(canon("([](X()=1) & [](Y()=1)) & [](Z()=1)", sig) == "[](X()=1) & [](Y()=1) & [](Z()=1)");
        CHECK(canon("[](X()=1) & ([](Y()=1) & [](Z()=1))", sig) == "[](X()=1) & ([](Y()=1) & [](Z()=1))");
        CHECK(canon("([](X()=1) | [](Y()=1)) & [](Z()=1)", sig) == "([](X()=1) | [](Y()=1)) & [](Z()=1)");
        CHECK(canon("[](!!X()=1)", sig) == "[](!(!(X()=1)))");
        CHECK(canon("[](true) & <>(false)", sig) == "[](true) & <>(false)");
        CHECK(canon("true -> false", sig) == "true -> false");
        CHECK(canon("[](X(U=1)=0)", xyz()) == "[](X(U=1)=0)");
    }

    TEST_CASE("language classes")
    {
        const auto& sig = bare_xyz();
        auto lang = [&](const std::string& t) { return classify_language(parse_formula(t, sig)); };
        CHECK(lang("[X<-1](Y()=0) & [](Z()=1)") == LanguageClass::gp);
        CHECK(lang("!([X<-1](Y()=0)) | [](Z()=1)") == LanguageClass::uniq);
        CHECK(lang("[](X()=0 | X()=1)") == LanguageClass::plus);
        CHECK(lang("<>(X()=0)") == LanguageClass::plus);
        CHECK(lang("[](true)") == LanguageClass::plus);

        // wrapping in a conjunction never lowers the class
        gen::Rng rng(4);
        gen::FormulaShape shape;
        for (int i = 0; i < 200; ++i) {
            const auto f = gen::random_formula(sig, shape, rng);
            const auto g = gen::random_formula(sig, shape, rng);
            CHECK(classify_language(Formula::conjunction(f, g)) >= classify_language(f));
        }
    }

    TEST_CASE("mentioned variables and contexts")
    {
        const auto& sig = xyz();
        const auto one = mentioned(parse_formula("[X<-1](Y(U=0)=1)", sig));
        CHECK(one.variables == std::set<VarIndex>{0, 1});
        CHECK(one.contexts == std::set<Context>{Context{{0}}});

        const auto two = mentioned(parse_formula("[](X(U=0)=1) | !([](Z(U=1)=0))", sig));
        CHECK(two.variables == std::set<VarIndex>{0, 2});
        CHECK(two.contexts.size() == 2);

        const auto none = mentioned(parse_formula("[](true)", sig));
        CHECK(none.variables.empty());
        CHECK(none.contexts.empty());
        CHECK(has_contextless_leaf(parse_formula("[Y<-0](true) & [](X(U=0)=1)", sig)));
        CHECK_FALSE(has_contextless_leaf(parse_formula("[](X(U=0)=1)", sig)));
    }

    TEST_CASE("validation of hand-built formulas")
    {
        const auto& sig = bare_xyz();
        CHECK(check_formula(make_box({{0, 1}}, make_atom(1, {}, 0)), sig).empty());
        CHECK_FALSE(check_formula(make_box({{0, 1}, {0, 0}}, make_atom(1, {}, 0)), sig).empty());
        CHECK_FALSE(check_formula(make_box({}, make_atom(7, {}, 0)), sig).empty());
        CHECK_FALSE(check_formula(make_box({}, make_atom(0, {}, 5)), sig).empty());
        CHECK_THROWS_AS(validate_formula(make_box({}, make_atom(0, Context{{1}}, 0)), sig), ValidationError);
    }

    TEST_CASE("sorting interventions")
    {
        const auto& sig = bare_xyz();
        const auto f = parse_formula("[Z<-1, X<-0](Y()=1)", sig);
        CHECK(print_formula(sort_interventions(f), sig) == "[X<-0, Z<-1](Y()=1)");
        CHECK(print_formula(f, sig) == "[Z<-1, X<-0](Y()=1)");
    }

    TEST_CASE("random formulas round-trip")
    {
        gen::Rng rng(5);
        gen::FormulaShape shape;
        shape.depth = 3;
        for (int i = 0; i < 300; ++i) {
            const auto sig = gen::random_signature(rng);
            const auto f = gen::random_formula(sig, shape, rng);
            CHECK(check_formula(f, sig).empty());
            const auto text = print_formula(f, sig);
            const auto back = parse_formula(text, sig);
            CHECK(back == f);
            CHECK(print_formula(back, sig) == text);
        }
    }

    TEST_CASE("inner formulas")
    {
        const auto& sig = bare_xyz();
        const auto body = parse_inner("X()=1 -> Y()=0 | Z()=1", sig);
        CHECK(print_inner(body, sig) == "X()=1 -> (Y()=0 | Z()=1)");
        CHECK(print_atom(body.rhs().lhs().leaf(), sig) == "Y()=0");
        CHECK(print_intervention({{0, 1}, {2, 0}}, sig) == "X<-1, Z<-0");
        CHECK(print_context(Context{{1}}, xyz()) == "U=1");
    }
}
