#include "cli.hpp"

#include "causal/axioms.hpp"
#include "causal/formula_text.hpp"
#include "causal/model_text.hpp"
#include "causal/semantics.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace causal;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "causal");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    Run r;
    r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("causal_cli_test_" + name)).string();
}

std::string read(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("classify")
    {
        auto r = run({"classify", fixture_path("mutual_negation.model")});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("unique-solutions\n", 0) == 0);

        r = run({"classify", fixture_path("mutual_copy.model"), "--format", "structured"});
        CHECK(r.code == 0);
        CHECK(r.out == "class=general cycle=X,Y,X intervention=\"\" context=\"\" solutions=2\n");

        r = run({"classify", fixture_path("chain.model")});
        CHECK(r.out == "recursive\norder: X < Y\n");
    }

    TEST_CASE("solve")
    {
        auto r = run({"solve", fixture_path("mutual_negation.model"), "--set", "X=1"});
        CHECK(r.code == 0);
        CHECK(r.out == "Y=-1\n1 solution\n");

        r = run({"solve", fixture_path("mutual_copy.model")});
        CHECK(r.out == "X=0 Y=0\nX=1 Y=1\n2 solutions\n");

        r = run({"solve", fixture_path("nosolution.model")});
        CHECK(r.code == 1);
        CHECK(r.out == "0 solutions\n");

        r = run({"solve", fixture_path("chain.model"), "--ctx", "U=1", "--format", "structured"});
        CHECK(r.out == "context=\"U=1\" solution=\"X=1 Y=1\"\nsolutions=1\n");

        CHECK(run({"solve", fixture_path("chain.model"), "--set", "X=7"}).code == 2);
        CHECK(run({"solve", fixture_path("chain.model"), "--set", "X=1,X=0"}).code == 2);
        CHECK(run({"solve", fixture_path("chain.model"), "--ctx", "Q=1"}).code == 2);
    }

    TEST_CASE("check")
    {
        const auto model = fixture_path("mutual_copy.model");
        auto r = run({"check", model, "[](X()=0 | X()=1) & !([](X()=0)) & !([](X()=1))"});
        CHECK(r.code == 0);
        r = run({"check", model, "[](X()=0)", "--format", "structured"});
        CHECK(r.code == 1);
        CHECK(r.out == "formula=\"[](X()=0)\" holds=false\n");
        r = run({"check", model, "[](Q()=0)"});
        CHECK(r.code == 2);
        CHECK(r.err.find("unknown variable 'Q'") != std::string::npos);

        const auto list = temp_path("formulas.txt");
        {
            std::ofstream out(list);
            out << "# two formulas\n[](X()=0 | X()=1)\n\n<>(X()=1)\n";
        }
        r = run({"check", model, "--formulas", list});
        CHECK(r.code == 0);
        CHECK(r.out == "holds: [](X()=0 | X()=1)\nholds: <>(X()=1)\n");
        std::filesystem::remove(list);
    }

    TEST_CASE("affects")
    {
        const auto model = fixture_path("three_cycle.model");
        CHECK(run({"affects", model, "X0", "X1"}).code == 0);
        const auto r = run({"affects", model, "X1", "X0", "--format", "structured"});
        CHECK(r.code == 1);
        CHECK(r.out == "source=X1 target=X0 affects=false\n");
        CHECK(run({"affects", model, "X0", "Nope"}).code == 2);
    }

    TEST_CASE("sat and valid")
    {
        const auto sig_path = fixture_path("sigA.sig");
        CHECK(run({"sat", "[](false)", "--sig", sig_path, "--class", "all"}).code == 0);
        CHECK(run({"sat", "[](false)", "--sig", sig_path, "--class", "uniq"}).code == 1);
        CHECK(run({"sat", "[X<-1](X()=0)", "--sig", sig_path}).code == 1);
        CHECK(run({"sat", "[](false)", "--sig", sig_path, "--class", "acyclic"}).code == 2);

        const auto ternary = fixture_path("sigC.sig");
        const auto sig = parse_signature(fixture("sigC.sig"));
        const auto c6 = print_formula(instantiate(Scheme::C6, Bindings{{}, {0, 1}, {}, {}}, sig).formula, sig);
        CHECK(run({"valid", c6, "--sig", ternary, "--class", "rec"}).code == 0);

        const auto out = temp_path("countermodel.model");
        std::filesystem::remove(out);
        const auto r = run({"valid", c6, "--sig", ternary, "--class", "uniq", "--out", out, "--format", "structured"});
        CHECK(r.code == 1);
        CHECK(r.out.find("verdict=invalid") != std::string::npos);
        CHECK(r.out.find('\n') == r.out.size() - 1);
        // the countermodel file parses back and really is a countermodel
        const auto cm = parse_model(read(out));
        CHECK(is_uniquely_solvable(cm).unique);
        CHECK_FALSE(is_recursive(cm).recursive);
        std::filesystem::remove(out);
    }

    TEST_CASE("budget exit code and environment override")
    {
        const auto sig_path = fixture_path("sigB.sig");
        const std::string f = "[X<-0](Y()=1) & [X<-1](Y()=0) & [Y<-0](Z()=1)";
        CHECK(run({"sat", f, "--sig", sig_path, "--max-models", "3"}).code == 3);
        ::setenv("CAUSAL_MAX_MODELS", "3", 1);
        CHECK(run({"sat", f, "--sig", sig_path}).code == 3);
        ::setenv("CAUSAL_MAX_MODELS", "zero", 1);
        CHECK(run({"sat", f, "--sig", sig_path}).code == 2);
        ::unsetenv("CAUSAL_MAX_MODELS");
        CHECK(run({"sat", f, "--sig", sig_path}).code == 0);
    }

    TEST_CASE("axioms")
    {
        const auto model = fixture_path("mutual_negation.model");
        auto r = run({"axioms", model, "--schemes", "C5", "--exhaustive", "--format", "structured"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("scheme=C5 checked=", 0) == 0);

        r = run({"axioms", fixture_path("mutual_copy.model"), "--schemes", "C2"});
        CHECK(r.code == 1);

        const auto a = run({"axioms", model, "--schemes", "D1,D4", "--samples", "10", "--seed", "3"});
        const auto b = run({"axioms", model, "--schemes", "D1,D4", "--samples", "10", "--seed", "3"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);

        CHECK(run({"axioms", model, "--schemes", "Ord"}).code == 2);
        CHECK(run({"axioms", fixture_path("chain.model"), "--schemes", "Ord", "--order", "X<Y"}).code == 0);
        CHECK(run({"axioms", model, "--schemes", "E4"}).code == 2);
    }

    TEST_CASE("reduce")
    {
        const auto out = temp_path("reduced.sig");
        const auto r = run({"reduce", "[X<-1](Y()=0)", "--sig", fixture_path("sigB.sig"), "--class", "uniq", "--out",
                            out, "--format", "structured"});
        CHECK(r.code == 0);
        CHECK(r.out == "class=unique-solutions endogenous=X,Y contexts=1 dummy=false formula=\"[X<-1](Y(U_star=t1)=0)\" "
                       "models=16\n");
        CHECK(parse_signature(read(out)).endogenous_count() == 2);
        std::filesystem::remove(out);
    }

    TEST_CASE("prove-check")
    {
        const auto sig = fixture_path("sigA.sig");
        auto r = run({"prove-check", fixture_path("distribution.proof"), "--sig", sig, "--crosscheck"});
        CHECK(r.code == 0);
        CHECK(r.out == "accepted: 7 lines in AX+\ngoal is valid in the general class\n");

        const auto bad = temp_path("bad.proof");
        {
            std::ofstream out(bad);
            out << "proof in AX+ of [X<-1](X()=0)\n1: [X<-1](X()=0) ; axiom D4\nqed\n";
        }
        r = run({"prove-check", bad, "--sig", sig, "--format", "structured"});
        CHECK(r.code == 1);
        CHECK(r.out.rfind("system=AX+ accepted=false line=1 reason=not-an-instance", 0) == 0);
        {
            std::ofstream out(bad);
            out << "proof in AX+ of\n";
        }
        CHECK(run({"prove-check", bad, "--sig", sig}).code == 2);
        std::filesystem::remove(bad);
    }

    TEST_CASE("usage errors")
    {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"classify", "/nonexistent/file.model"}).code == 2);
        CHECK(run({"classify", fixture_path("chain.model"), "--format", "xml"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }
}
