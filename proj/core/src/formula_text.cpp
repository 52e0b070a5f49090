#include "causal/formula_text.hpp"

#include "lexer.hpp"

#include <functional>

namespace causal {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

namespace {

/// Precedence climbing shared by the outer and inner languages.
template <class E>
class Connectives {
public:
    Connectives(TokenStream& in, std::function<E()> unary) : _in(in), _unary(std::move(unary)) {}

    E iff()
    {
        E acc = imp();
        while (_in.accept("<->")) {
            acc = E::biconditional(acc, imp());
        }
        return acc;
    }

private:
    E imp()
    {
        E lhs = disj();
        if (_in.accept("->")) {
            return E::implication(lhs, imp());
        }
        return lhs;
    }
    E disj()
    {
        E acc = conj();
        while (_in.accept("|")) {
            acc = E::disjunction(acc, conj());
        }
        return acc;
    }
    E conj()
    {
        E acc = _unary();
        while (_in.accept("&")) {
            acc = E::conjunction(acc, _unary());
        }
        return acc;
    }

    TokenStream& _in;
    std::function<E()> _unary;
};

class Parser {
public:
    Parser(std::string_view text, const Signature& sig, SourcePosition base)
        : _in(detail::tokenize(text, base)), _sig(sig)
    {
    }

    Formula formula()
    {
        Formula f = Connectives<Formula>(_in, [this] { return top_unary(); }).iff();
        expect_end();
        return f;
    }

    Inner inner_only()
    {
        Inner body = inner();
        expect_end();
        return body;
    }

private:
    void expect_end()
    {
        if (!_in.at_end()) {
            _in.fail("unexpected " + detail::describe(_in.peek()));
        }
    }

    Inner inner() { return Connectives<Inner>(_in, [this] { return inner_unary(); }).iff(); }

    Formula top_unary()
    {
        const Token& t = _in.peek();
        if (_in.accept("!")) {
            return Formula::negation(top_unary());
        }
        if (_in.accept("(")) {
            Formula f = Connectives<Formula>(_in, [this] { return top_unary(); }).iff();
            _in.expect(")");
            return f;
        }
        if (t.is("[")) {
            return leaf("[", "]", Modality::box);
        }
        if (t.is("<")) {
            return leaf("<", ">", Modality::diamond);
        }
        if (_in.accept_word("true")) {
            return Formula::constant(true);
        }
        if (_in.accept_word("false")) {
            return Formula::constant(false);
        }
        if (t.kind == TokenKind::identifier && _in.peek(1).is("(")) {
            _in.fail("atom '" + t.text + "(...)' outside a box; write it as [](" + t.text + "(...)=value)");
        }
        _in.fail("expected a box, diamond, '!' or '(' but found " + detail::describe(t));
    }

    Inner inner_unary()
    {
        const Token& t = _in.peek();
        if (_in.accept("!")) {
            return Inner::negation(inner_unary());
        }
        if (_in.accept("(")) {
            Inner body = inner();
            _in.expect(")");
            return body;
        }
        if (_in.accept_word("true")) {
            return Inner::constant(true);
        }
        if (_in.accept_word("false")) {
            return Inner::constant(false);
        }
        if (t.is("[") || t.is("<")) {
            _in.fail("boxes and diamonds cannot be nested inside a box body");
        }
        if (t.kind == TokenKind::identifier) {
            return atom();
        }
        _in.fail("expected an atom, 'true', 'false', '!' or '(' but found " + detail::describe(t));
    }

    Formula leaf(std::string_view open, std::string_view close, Modality mode)
    {
        const Token start = _in.expect(open);
        InterventionList iv;
        std::vector<bool> used(_sig.endogenous_count(), false);
        if (!_in.peek().is(close)) {
            do {
                const Token var = _in.expect_identifier("a variable name");
                auto index = endogenous(var);
                if (used[index]) {
                    TokenStream::fail_at(var, "duplicate intervened variable '" + var.text + "'");
                }
                used[index] = true;
                _in.expect("<-");
                iv.push_back({index, value_of(index, _in.expect_value("a value"))});
            } while (_in.accept(","));
        }
        _in.expect(close);
        if (!_in.peek().is("(")) {
            _in.fail("expected '(' around the body of the " +
                     std::string(mode == Modality::box ? "box" : "diamond"));
        }
        _in.next();
        Inner body = inner();
        _in.expect(")");

        std::optional<Context> shared;
        bool mixed = false;
        body.for_each_leaf([&](const Atom& a) {
            if (shared && *shared != a.context) {
                mixed = true;
            }
            shared = a.context;
        });
        if (mixed) {
            TokenStream::fail_at(start, "mixed contexts inside one box; every atom under a box must use the same context");
        }
        return Formula::leaf(BasicCausal{std::move(iv), mode, std::move(body)});
    }

    Inner atom()
    {
        const Token var = _in.expect_identifier("a variable name");
        const auto index = endogenous(var);
        _in.expect("(");
        Context ctx;
        ctx.values.assign(_sig.exogenous_count(), kUnassigned);
        if (!_in.peek().is(")")) {
            do {
                const Token exo = _in.expect_identifier("an exogenous variable name");
                auto ref = _sig.find(exo.text);
                if (!ref) {
                    TokenStream::fail_at(exo, "unknown variable '" + exo.text + "'");
                }
                if (ref->kind != VarKind::exogenous) {
                    TokenStream::fail_at(exo, "'" + exo.text + "' is not exogenous");
                }
                if (ctx.values[ref->index] != kUnassigned) {
                    TokenStream::fail_at(exo, "'" + exo.text + "' given twice in one context");
                }
                _in.expect("=");
                const Token v = _in.expect_value("a value");
                auto vi = _sig.value_index(*ref, v.text);
                if (!vi) {
                    TokenStream::fail_at(v, "'" + v.text + "' is not in the domain of '" + exo.text + "'");
                }
                ctx.values[ref->index] = *vi;
            } while (_in.accept(","));
        }
        const Token close = _in.expect(")");
        for (std::size_t i = 0; i < ctx.values.size(); ++i) {
            if (ctx.values[i] == kUnassigned) {
                TokenStream::fail_at(close, "partial context: missing '" + _sig.exogenous(i).name + "'");
            }
        }
        _in.expect("=");
        const auto value = value_of(index, _in.expect_value("a value"));
        return make_atom(index, std::move(ctx), value);
    }

    VarIndex endogenous(const Token& var)
    {
        auto ref = _sig.find(var.text);
        if (!ref) {
            TokenStream::fail_at(var, "unknown variable '" + var.text + "'");
        }
        if (ref->kind != VarKind::endogenous) {
            TokenStream::fail_at(var, "'" + var.text + "' is exogenous; only endogenous variables may appear here");
        }
        return ref->index;
    }

    ValueIndex value_of(VarIndex var, const Token& v)
    {
        auto vi = _sig.value_index({VarKind::endogenous, var}, v.text);
        if (!vi) {
            TokenStream::fail_at(v, "'" + v.text + "' is not in the domain of '" + _sig.endogenous_name(var) + "'");
        }
        return *vi;
    }

    TokenStream _in;
    const Signature& _sig;
};

// ---------------------------------------------------------------------------
// Printing

enum class Shape { atomic, negation, conjunction, disjunction, implication, biconditional };

template <class E>
Shape shape_of(const E& e)
{
    using Op = typename E::Op;
    switch (e.op()) {
    case Op::constant:
    case Op::leaf:
        return Shape::atomic;
    case Op::negation:
        return Shape::negation;
    case Op::conjunction:
        return e.as_biconditional() ? Shape::biconditional : Shape::conjunction;
    case Op::disjunction:
        return e.as_implication() ? Shape::implication : Shape::disjunction;
    }
    return Shape::atomic;
}

bool is_binary(Shape s)
{
    return s != Shape::atomic && s != Shape::negation;
}

template <class E, class LeafPrinter>
void print_expr(const E& e, const LeafPrinter& leaf, std::string& out)
{
    using Op = typename E::Op;
    auto operand = [&](const E& sub, bool flat_ok) {
        const bool wrap = is_binary(shape_of(sub)) && !flat_ok;
        if (wrap) {
            out += '(';
        }
        print_expr(sub, leaf, out);
        if (wrap) {
            out += ')';
        }
    };
    switch (shape_of(e)) {
    case Shape::atomic:
        if (e.op() == Op::constant) {
            out += e.value() ? "true" : "false";
        }
        else {
            out += leaf(e.leaf());
        }
        return;
    case Shape::negation:
        out += "!(";
        print_expr(e.operand(), leaf, out);
        out += ')';
        return;
    case Shape::conjunction:
        operand(e.lhs(), shape_of(e.lhs()) == Shape::conjunction);
        out += " & ";
        operand(e.rhs(), false);
        return;
    case Shape::disjunction:
        operand(e.lhs(), shape_of(e.lhs()) == Shape::disjunction);
        out += " | ";
        operand(e.rhs(), false);
        return;
    case Shape::implication: {
        E a = e, b = e;
        e.as_implication(&a, &b);
        operand(a, false);
        out += " -> ";
        operand(b, false);
        return;
    }
    case Shape::biconditional: {
        E a = e, b = e;
        e.as_biconditional(&a, &b);
        operand(a, false);
        out += " <-> ";
        operand(b, false);
        return;
    }
    }
}

} // namespace

Formula parse_formula(std::string_view text, const Signature& sig, SourcePosition base)
{
    return Parser(text, sig, base).formula();
}

Inner parse_inner(std::string_view text, const Signature& sig)
{
    return Parser(text, sig, {}).inner_only();
}

std::string print_context(const Context& ctx, const Signature& sig)
{
    std::string out;
    for (std::size_t i = 0; i < ctx.values.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += sig.exogenous(i).name + "=" + sig.value_name({VarKind::exogenous, i}, ctx.values[i]);
    }
    return out;
}

std::string print_atom(const Atom& atom, const Signature& sig)
{
    return sig.endogenous_name(atom.var) + "(" + print_context(atom.context, sig) + ")=" +
           sig.endogenous_value(atom.var, atom.value);
}

std::string print_intervention(const InterventionList& iv, const Signature& sig)
{
    std::string out;
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += sig.endogenous_name(iv[i].var) + "<-" + sig.endogenous_value(iv[i].var, iv[i].value);
    }
    return out;
}

std::string print_inner(const Inner& body, const Signature& sig)
{
    std::string out;
    print_expr(body, [&](const Atom& a) { return print_atom(a, sig); }, out);
    return out;
}

std::string print_formula(const Formula& f, const Signature& sig)
{
    std::string out;
    print_expr(
        f,
        [&](const BasicCausal& leaf) {
            const bool box = leaf.mode == Modality::box;
            return std::string(box ? "[" : "<") + print_intervention(leaf.intervention, sig) + (box ? "](" : ">(") +
                   print_inner(leaf.body, sig) + ")";
        },
        out);
    return out;
}

} // namespace causal
