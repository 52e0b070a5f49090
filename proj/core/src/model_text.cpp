#include "causal/model_text.hpp"

#include "lexer.hpp"

#include <sstream>

namespace causal {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

namespace {

VariableDecl parse_variable(TokenStream& in)
{
    VariableDecl v;
    v.name = in.expect_identifier("a variable name").text;
    in.expect("{");
    while (!in.peek().is("}")) {
        if (in.at_end()) {
            in.fail("unterminated domain for '" + v.name + "'");
        }
        v.domain.push_back(in.expect_value("a value token").text);
    }
    in.expect("}");
    return v;
}

RowDecl parse_case(TokenStream& in)
{
    RowDecl row;
    row.pos = in.peek().pos;
    in.expect_word("case");
    if (!in.peek().is("->")) {
        do {
            auto var = in.expect_identifier("a variable name").text;
            in.expect("=");
            auto value = in.expect_value("a value token").text;
            row.condition.emplace_back(std::move(var), std::move(value));
        } while (in.accept(","));
    }
    in.expect("->");
    row.output = in.expect_value("an output value").text;
    return row;
}

EquationDecl parse_equation(TokenStream& in)
{
    EquationDecl eq;
    eq.pos = in.peek().pos;
    eq.target = in.expect_identifier("an endogenous variable name").text;
    in.expect(":");
    while (true) {
        if (in.peek().is_word("case")) {
            if (eq.default_output) {
                in.fail("row after the default row of '" + eq.target + "'");
            }
            eq.rows.push_back(parse_case(in));
        }
        else if (in.peek().is_word("default")) {
            if (eq.default_output) {
                in.fail("second default row for '" + eq.target + "'");
            }
            in.next();
            in.expect("->");
            eq.default_output = in.expect_value("an output value").text;
        }
        else {
            in.fail("expected 'case' or 'default' but found " + detail::describe(in.peek()));
        }
        in.accept(";");
        if (!in.peek().is_word("case") && !in.peek().is_word("default")) {
            break;
        }
    }
    return eq;
}

void write_signature(std::ostringstream& out, const SignatureDecl& sig)
{
    out << "signature\n";
    auto line = [&](const char* kind, const VariableDecl& v) {
        out << "  " << kind << ' ' << v.name << " {";
        for (const auto& token : v.domain) {
            out << ' ' << token;
        }
        out << " }\n";
    };
    for (const auto& v : sig.exogenous) {
        line("exogenous", v);
    }
    for (const auto& v : sig.endogenous) {
        line("endogenous", v);
    }
}

} // namespace

ModelDecl parse_model_decl(std::string_view text)
{
    TokenStream in(detail::tokenize(text));
    ModelDecl decl;
    in.expect_word("signature");
    while (true) {
        if (in.accept_word("exogenous")) {
            decl.signature.exogenous.push_back(parse_variable(in));
        }
        else if (in.accept_word("endogenous")) {
            decl.signature.endogenous.push_back(parse_variable(in));
        }
        else {
            break;
        }
    }
    if (in.accept_word("equations")) {
        while (!in.at_end()) {
            decl.equations.push_back(parse_equation(in));
        }
    }
    if (!in.at_end()) {
        in.fail("expected 'exogenous', 'endogenous' or 'equations' but found " + detail::describe(in.peek()));
    }
    return decl;
}

CausalModel parse_model(std::string_view text)
{
    return CausalModel::build(parse_model_decl(text));
}

Signature parse_signature(std::string_view text)
{
    return Signature::build(parse_model_decl(text).signature);
}

std::string print_decl(const ModelDecl& decl)
{
    std::ostringstream out;
    write_signature(out, decl.signature);
    out << "equations\n";
    for (const auto& eq : decl.equations) {
        out << "  " << eq.target << ':';
        const bool inline_form = eq.rows.empty();
        auto sep = [&] { out << (inline_form ? " " : "\n    "); };
        for (const auto& row : eq.rows) {
            sep();
            out << "case";
            for (std::size_t i = 0; i < row.condition.size(); ++i) {
                out << (i == 0 ? " " : ", ") << row.condition[i].first << '=' << row.condition[i].second;
            }
            out << " -> " << row.output << ';';
        }
        if (eq.default_output) {
            sep();
            out << "default -> " << *eq.default_output << ';';
        }
        out << '\n';
    }
    return out.str();
}

std::string print_model(const CausalModel& model)
{
    return print_decl(model.to_decl());
}

std::string print_signature(const Signature& sig)
{
    std::ostringstream out;
    write_signature(out, sig.decl());
    return out.str();
}

} // namespace causal
