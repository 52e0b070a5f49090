#pragma once

#include "causal/signature.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace causal {

/// Immutable Boolean expression tree over leaves of type `Leaf`.
///
/// Implication and the biconditional are not nodes: `a -> b` is stored as
/// `!a | b` and `a <-> b` as `(a -> b) & (b -> a)`. The printer re-sugars
/// those shapes. Subtrees are shared, so copies are cheap.
template <class Leaf>
class BoolExpr {
public:
    enum class Op { constant, leaf, negation, conjunction, disjunction };

    static BoolExpr constant(bool value) { return BoolExpr(make(Op::constant, value, std::nullopt, {}, {})); }
    static BoolExpr leaf(Leaf l) { return BoolExpr(make(Op::leaf, false, std::move(l), {}, {})); }
    static BoolExpr negation(BoolExpr e) { return BoolExpr(make(Op::negation, false, std::nullopt, e._node, {})); }
    static BoolExpr conjunction(BoolExpr a, BoolExpr b)
    {
        return BoolExpr(make(Op::conjunction, false, std::nullopt, a._node, b._node));
    }
    static BoolExpr disjunction(BoolExpr a, BoolExpr b)
    {
        return BoolExpr(make(Op::disjunction, false, std::nullopt, a._node, b._node));
    }
    static BoolExpr implication(BoolExpr a, BoolExpr b) { return disjunction(negation(std::move(a)), std::move(b)); }
    static BoolExpr biconditional(BoolExpr a, BoolExpr b) { return conjunction(implication(a, b), implication(b, a)); }

    /// Left-nested conjunction of `parts`; `constant(true)` when empty.
    static BoolExpr all_of(const std::vector<BoolExpr>& parts)
    {
        if (parts.empty()) {
            return constant(true);
        }
        BoolExpr acc = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) {
            acc = conjunction(acc, parts[i]);
        }
        return acc;
    }
    /// Left-nested disjunction of `parts`; `constant(false)` when empty.
    static BoolExpr any_of(const std::vector<BoolExpr>& parts)
    {
        if (parts.empty()) {
            return constant(false);
        }
        BoolExpr acc = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) {
            acc = disjunction(acc, parts[i]);
        }
        return acc;
    }

    [[nodiscard]] Op op() const noexcept { return _node->op; }
    [[nodiscard]] bool is(Op o) const noexcept { return _node->op == o; }
    [[nodiscard]] bool value() const noexcept { return _node->value; }
    [[nodiscard]] const Leaf& leaf() const { return *_node->leaf; }
    [[nodiscard]] BoolExpr operand() const { return BoolExpr(_node->lhs); }
    [[nodiscard]] BoolExpr lhs() const { return BoolExpr(_node->lhs); }
    [[nodiscard]] BoolExpr rhs() const { return BoolExpr(_node->rhs); }

    /// Matches `!a | b`; fills the parts.
    bool as_implication(BoolExpr* a = nullptr, BoolExpr* b = nullptr) const
    {
        if (op() != Op::disjunction || lhs().op() != Op::negation) {
            return false;
        }
        if (a) {
            *a = lhs().operand();
        }
        if (b) {
            *b = rhs();
        }
        return true;
    }
    /// Matches `(a -> b) & (b -> a)`.
    bool as_biconditional(BoolExpr* a = nullptr, BoolExpr* b = nullptr) const
    {
        if (op() != Op::conjunction) {
            return false;
        }
        BoolExpr a1 = *this, b1 = *this, a2 = *this, b2 = *this;
        if (!lhs().as_implication(&a1, &b1) || !rhs().as_implication(&b2, &a2)) {
            return false;
        }
        if (!(a1 == a2) || !(b1 == b2)) {
            return false;
        }
        if (a) {
            *a = a1;
        }
        if (b) {
            *b = b1;
        }
        return true;
    }

    /// Flattens a left- or right-nested chain of `o` nodes into operands.
    [[nodiscard]] std::vector<BoolExpr> flatten(Op o) const
    {
        std::vector<BoolExpr> out;
        collect(*this, o, out);
        return out;
    }

    template <class F>
    void for_each_leaf(F&& f) const
    {
        switch (op()) {
        case Op::constant:
            return;
        case Op::leaf:
            f(leaf());
            return;
        case Op::negation:
            operand().for_each_leaf(f);
            return;
        default:
            lhs().for_each_leaf(f);
            rhs().for_each_leaf(f);
        }
    }

    /// Rebuilds the tree with each leaf replaced by `f(leaf)` (which returns
    /// a BoolExpr<Leaf2>).
    template <class F>
    auto map_leaves(F&& f) const -> decltype(f(std::declval<const Leaf&>()))
    {
        using Out = decltype(f(std::declval<const Leaf&>()));
        switch (op()) {
        case Op::constant:
            return Out::constant(value());
        case Op::leaf:
            return f(leaf());
        case Op::negation:
            return Out::negation(operand().map_leaves(f));
        case Op::conjunction:
            return Out::conjunction(lhs().map_leaves(f), rhs().map_leaves(f));
        case Op::disjunction:
            return Out::disjunction(lhs().map_leaves(f), rhs().map_leaves(f));
        }
        return Out::constant(false);
    }

    /// Evaluates with `f(leaf) -> bool`.
    template <class F>
    bool evaluate(F&& f) const
    {
        switch (op()) {
        case Op::constant:
            return value();
        case Op::leaf:
            return f(leaf());
        case Op::negation:
            return !operand().evaluate(f);
        case Op::conjunction: {
            bool a = lhs().evaluate(f);
            bool b = rhs().evaluate(f);
            return a && b;
        }
        case Op::disjunction: {
            bool a = lhs().evaluate(f);
            bool b = rhs().evaluate(f);
            return a || b;
        }
        }
        return false;
    }

    [[nodiscard]] std::size_t depth() const
    {
        switch (op()) {
        case Op::constant:
        case Op::leaf:
            return 0;
        case Op::negation:
            return 1 + operand().depth();
        default:
            return 1 + std::max(lhs().depth(), rhs().depth());
        }
    }

    friend bool operator==(const BoolExpr& a, const BoolExpr& b)
    {
        if (a._node == b._node) {
            return true;
        }
        if (a.op() != b.op()) {
            return false;
        }
        switch (a.op()) {
        case Op::constant:
            return a.value() == b.value();
        case Op::leaf:
            return a.leaf() == b.leaf();
        case Op::negation:
            return a.operand() == b.operand();
        default:
            return a.lhs() == b.lhs() && a.rhs() == b.rhs();
        }
    }

private:
    struct Node {
        Op op;
        bool value;
        std::optional<Leaf> leaf;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    static std::shared_ptr<const Node> make(Op op, bool value, std::optional<Leaf> leaf,
                                            std::shared_ptr<const Node> lhs, std::shared_ptr<const Node> rhs)
    {
        return std::make_shared<const Node>(Node{op, value, std::move(leaf), std::move(lhs), std::move(rhs)});
    }

    static void collect(const BoolExpr& e, Op o, std::vector<BoolExpr>& out)
    {
        if (e.op() == o) {
            collect(e.lhs(), o, out);
            collect(e.rhs(), o, out);
        }
        else {
            out.push_back(e);
        }
    }

    explicit BoolExpr(std::shared_ptr<const Node> node) : _node(std::move(node)) {}

    std::shared_ptr<const Node> _node;
};

/// X(u) = x
struct Atom {
    VarIndex var = 0;
    Context context;
    ValueIndex value = 0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Boolean combination of atoms (the body of a box or diamond).
using Inner = BoolExpr<Atom>;

enum class Modality { box, diamond };

/// [iv](body) or <iv>(body).
struct BasicCausal {
    InterventionList intervention;
    Modality mode = Modality::box;
    Inner body = Inner::constant(true);

    /// Context shared by the body's atoms; empty when the body has none.
    [[nodiscard]] std::optional<Context> context() const;

    friend bool operator==(const BasicCausal&, const BasicCausal&) = default;
};

/// Causal formula: Boolean combination of basic causal formulas.
using Formula = BoolExpr<BasicCausal>;

Formula make_box(InterventionList iv, Inner body);
Formula make_diamond(InterventionList iv, Inner body);
Inner make_atom(VarIndex var, Context ctx, ValueIndex value);

/// Checks every formula invariant against `sig`: known variables, in-domain
/// values, distinct intervened variables, total contexts, one context per
/// box. Returns the first problem, or an empty string.
std::string check_formula(const Formula& f, const Signature& sig);

/// Throws ValidationError when check_formula reports a problem.
void validate_formula(const Formula& f, const Signature& sig);

enum class LanguageClass { gp, uniq, plus };

std::string to_string(LanguageClass cls);

/// GP: a conjunction of boxes each wrapping a single atom. Uniq: only boxes,
/// each wrapping a single atom (any Boolean structure above, constants
/// allowed). Plus: anything else.
LanguageClass classify_language(const Formula& f);

struct Mentions {
    std::set<VarIndex> variables;
    std::set<Context> contexts;
};

/// Endogenous variables in interventions or atoms; context tuples in atoms.
Mentions mentioned(const Formula& f);

/// Same formula with every intervention list sorted by variable.
Formula sort_interventions(const Formula& f);

/// True when some box or diamond has a body without atoms.
bool has_contextless_leaf(const Formula& f);

} // namespace causal
