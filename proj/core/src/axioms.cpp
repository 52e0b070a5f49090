#include "causal/axioms.hpp"

#include "causal/error.hpp"
#include "causal/formula_text.hpp"
#include "causal/semantics.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <unordered_map>

namespace causal {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 19> kNames{{
    {Scheme::C0, "C0"}, {Scheme::C1, "C1"}, {Scheme::C2, "C2"},  {Scheme::C3, "C3"}, {Scheme::C4, "C4"},
    {Scheme::C5, "C5"}, {Scheme::C6, "C6"}, {Scheme::D0, "D0"},  {Scheme::D1, "D1"}, {Scheme::D2, "D2"},
    {Scheme::D3, "D3"}, {Scheme::D4, "D4"}, {Scheme::D5, "D5"},  {Scheme::D6, "D6"}, {Scheme::D7, "D7"},
    {Scheme::D8, "D8"}, {Scheme::D9, "D9"}, {Scheme::D10, "D10"}, {Scheme::Ord, "Ord"},
}};

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw ContractError(message);
    }
}

bool pins(const InterventionList& iv, VarIndex var)
{
    return std::any_of(iv.begin(), iv.end(), [&](const Intervention& p) { return p.var == var; });
}

InterventionList with(InterventionList iv, VarIndex var, ValueIndex value)
{
    iv.push_back({var, value});
    return iv;
}

/// Pins of `a` whose variable `b` does not pin.
InterventionList minus(const InterventionList& a, const InterventionList& b)
{
    InterventionList out;
    for (const auto& p : a) {
        if (!pins(b, p.var)) {
            out.push_back(p);
        }
    }
    return out;
}

Formula box_atom(const InterventionList& iv, VarIndex var, const Context& u, ValueIndex value)
{
    return make_box(iv, make_atom(var, u, value));
}

/// Checks shared by most schemes.
class Typing {
public:
    Typing(Scheme scheme, const Bindings& b, const Signature& sig) : _scheme(scheme), _b(b), _sig(sig) {}

    void intervention() const
    {
        if (auto p = _sig.check_interventions(_b.iv); !p.empty()) {
            fail(p);
        }
    }
    void context() const
    {
        if (!_sig.is_valid_context(_b.context)) {
            fail("context does not match the signature");
        }
    }
    void vars(std::size_t n) const
    {
        if (_b.vars.size() != n) {
            fail("expects " + std::to_string(n) + " variables");
        }
        known_vars();
    }
    void known_vars() const
    {
        for (auto v : _b.vars) {
            if (v >= _sig.endogenous_count()) {
                fail("unknown variable index");
            }
        }
    }
    void values(std::size_t n) const
    {
        if (_b.values.size() != n) {
            fail("expects " + std::to_string(n) + " values");
        }
    }
    /// values[i] lies in the domain of `var`.
    void value_of(std::size_t i, VarIndex var) const
    {
        if (_b.values.at(i) >= _sig.endogenous_domain_size(var)) {
            fail("value out of the domain of '" + _sig.endogenous_name(var) + "'");
        }
    }
    void free_of_iv(VarIndex var) const
    {
        if (pins(_b.iv, var)) {
            fail("'" + _sig.endogenous_name(var) + "' must not be intervened on");
        }
    }
    [[noreturn]] void fail(const std::string& message) const
    {
        throw ContractError(to_string(_scheme) + ": " + message);
    }

private:
    Scheme _scheme;
    const Bindings& _b;
    const Signature& _sig;
};

Inner conjunction_of_atoms(const std::vector<VarIndex>& vars, const std::vector<ValueIndex>& values, const Context& u)
{
    std::vector<Inner> parts;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        parts.push_back(make_atom(vars[i], u, values[i]));
    }
    return Inner::all_of(parts);
}

/// Z⃗ = X - (X⃗ ∪ {W, Y}) for D5, in declaration order.
std::vector<VarIndex> d5_rest(const Signature& sig, const InterventionList& iv, VarIndex w, VarIndex y)
{
    std::vector<VarIndex> out;
    for (VarIndex v = 0; v < sig.endogenous_count(); ++v) {
        if (v != w && v != y && !pins(iv, v)) {
            out.push_back(v);
        }
    }
    return out;
}

Formula build(Scheme scheme, const Bindings& b, const Signature& sig)
{
    Typing t(scheme, b, sig);
    const auto& u = b.context;
    switch (scheme) {
    case Scheme::C0:
    case Scheme::D0: {
        if (!b.formula) {
            t.fail("needs the tautology formula");
        }
        if (!tautology(*b.formula)) {
            t.fail("formula is not a propositional tautology");
        }
        return *b.formula;
    }
    case Scheme::C1:
    case Scheme::D1: {
        t.intervention();
        t.context();
        t.vars(1);
        t.values(2);
        const auto x = b.vars[0];
        t.value_of(0, x);
        t.value_of(1, x);
        if (b.values[0] == b.values[1]) {
            t.fail("needs x != x'");
        }
        if (scheme == Scheme::C1) {
            return Formula::implication(box_atom(b.iv, x, u, b.values[0]),
                                        Formula::negation(box_atom(b.iv, x, u, b.values[1])));
        }
        return make_box(b.iv, Inner::implication(make_atom(x, u, b.values[0]),
                                                 Inner::negation(make_atom(x, u, b.values[1]))));
    }
    case Scheme::C2:
    case Scheme::D2: {
        t.intervention();
        t.context();
        t.vars(1);
        t.values(0);
        const auto x = b.vars[0];
        if (scheme == Scheme::C2) {
            std::vector<Formula> parts;
            for (ValueIndex v = 0; v < sig.endogenous_domain_size(x); ++v) {
                parts.push_back(box_atom(b.iv, x, u, v));
            }
            return Formula::any_of(parts);
        }
        std::vector<Inner> parts;
        for (ValueIndex v = 0; v < sig.endogenous_domain_size(x); ++v) {
            parts.push_back(make_atom(x, u, v));
        }
        return make_box(b.iv, Inner::any_of(parts));
    }
    case Scheme::C3: {
        t.intervention();
        t.context();
        t.vars(2);
        t.values(2);
        const auto w = b.vars[0], y = b.vars[1];
        if (w == y) {
            t.fail("needs W != Y");
        }
        t.free_of_iv(w);
        t.free_of_iv(y);
        t.value_of(0, w);
        t.value_of(1, y);
        return Formula::implication(
            Formula::conjunction(box_atom(b.iv, w, u, b.values[0]), box_atom(b.iv, y, u, b.values[1])),
            box_atom(with(b.iv, w, b.values[0]), y, u, b.values[1]));
    }
    case Scheme::C4:
    case Scheme::D4: {
        t.intervention();
        t.context();
        t.vars(1);
        t.values(1);
        const auto x = b.vars[0];
        t.free_of_iv(x);
        t.value_of(0, x);
        InterventionList iv;
        if (scheme == Scheme::C4) {
            iv.push_back({x, b.values[0]});
            iv.insert(iv.end(), b.iv.begin(), b.iv.end());
        }
        else {
            iv = with(b.iv, x, b.values[0]);
        }
        return box_atom(iv, x, u, b.values[0]);
    }
    case Scheme::C5: {
        t.intervention();
        t.context();
        t.vars(2);
        t.values(2);
        const auto y = b.vars[0], w = b.vars[1];
        if (w == y) {
            t.fail("needs Y != W");
        }
        t.free_of_iv(w);
        t.free_of_iv(y);
        t.value_of(0, y);
        t.value_of(1, w);
        return Formula::implication(Formula::conjunction(box_atom(with(b.iv, w, b.values[1]), y, u, b.values[0]),
                                                         box_atom(with(b.iv, y, b.values[0]), w, u, b.values[1])),
                                    box_atom(b.iv, y, u, b.values[0]));
    }
    case Scheme::C6:
    case Scheme::D6: {
        if (b.vars.size() < 2) {
            t.fail("needs a chain of at least two variables");
        }
        t.known_vars();
        std::set<VarIndex> seen(b.vars.begin(), b.vars.end());
        if (seen.size() != b.vars.size()) {
            t.fail("chain variables must be distinct");
        }
        std::vector<Formula> links;
        for (std::size_t i = 0; i + 1 < b.vars.size(); ++i) {
            links.push_back(affects_formula(b.vars[i], b.vars[i + 1], sig));
        }
        return Formula::implication(Formula::all_of(links),
                                    Formula::negation(affects_formula(b.vars.back(), b.vars.front(), sig)));
    }
    case Scheme::Ord: {
        t.intervention();
        t.context();
        t.vars(2);
        t.values(2);
        const auto y = b.vars[0], w = b.vars[1];
        std::vector<VarIndex> sorted = b.order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<VarIndex> expected(sig.endogenous_count());
        for (VarIndex v = 0; v < expected.size(); ++v) {
            expected[v] = v;
        }
        if (sorted != expected) {
            t.fail("order must list every endogenous variable once");
        }
        const auto py = std::find(b.order.begin(), b.order.end(), y);
        const auto pw = std::find(b.order.begin(), b.order.end(), w);
        if (!(py < pw)) {
            t.fail("needs Y before W in the order");
        }
        t.free_of_iv(w);
        t.free_of_iv(y);
        t.value_of(0, y);
        t.value_of(1, w);
        return Formula::biconditional(box_atom(with(b.iv, w, b.values[1]), y, u, b.values[0]),
                                      box_atom(b.iv, y, u, b.values[0]));
    }
    case Scheme::D3: {
        t.intervention();
        t.context();
        if (b.vars.empty()) {
            t.fail("needs W");
        }
        t.known_vars();
        t.values(b.vars.size());
        std::set<VarIndex> seen(b.vars.begin(), b.vars.end());
        if (seen.size() != b.vars.size()) {
            t.fail("W and the Y variables must be distinct");
        }
        for (std::size_t i = 0; i < b.vars.size(); ++i) {
            t.free_of_iv(b.vars[i]);
            t.value_of(i, b.vars[i]);
        }
        const std::vector<VarIndex> ys(b.vars.begin() + 1, b.vars.end());
        const std::vector<ValueIndex> yv(b.values.begin() + 1, b.values.end());
        return Formula::implication(make_diamond(b.iv, conjunction_of_atoms(b.vars, b.values, u)),
                                    make_diamond(with(b.iv, b.vars[0], b.values[0]), conjunction_of_atoms(ys, yv, u)));
    }
    case Scheme::D5: {
        t.intervention();
        t.context();
        t.vars(2);
        const auto w = b.vars[0], y = b.vars[1];
        if (w == y) {
            t.fail("needs W != Y");
        }
        t.free_of_iv(w);
        t.free_of_iv(y);
        const auto zs = d5_rest(sig, b.iv, w, y);
        t.values(2 + zs.size());
        t.value_of(0, w);
        t.value_of(1, y);
        for (std::size_t i = 0; i < zs.size(); ++i) {
            t.value_of(2 + i, zs[i]);
        }
        const std::vector<ValueIndex> zv(b.values.begin() + 2, b.values.end());
        auto body = [&](std::vector<VarIndex> head, std::vector<ValueIndex> head_values) {
            head.insert(head.end(), zs.begin(), zs.end());
            head_values.insert(head_values.end(), zv.begin(), zv.end());
            return conjunction_of_atoms(head, head_values, u);
        };
        const auto wv = b.values[0], yv = b.values[1];
        return Formula::implication(Formula::conjunction(make_diamond(with(b.iv, y, yv), body({w}, {wv})),
                                                         make_diamond(with(b.iv, w, wv), body({y}, {yv}))),
                                    make_diamond(b.iv, body({w, y}, {wv, yv})));
    }
    case Scheme::D7: {
        t.intervention();
        if (!b.phi || !b.psi) {
            t.fail("needs phi and psi");
        }
        return Formula::implication(
            Formula::conjunction(make_box(b.iv, *b.phi), make_box(b.iv, Inner::implication(*b.phi, *b.psi))),
            make_box(b.iv, *b.psi));
    }
    case Scheme::D8: {
        t.intervention();
        if (!b.phi) {
            t.fail("needs phi");
        }
        if (!tautology(*b.phi)) {
            t.fail("body is not a propositional tautology");
        }
        return make_box(b.iv, *b.phi);
    }
    case Scheme::D9:
    case Scheme::D10: {
        t.intervention();
        t.context();
        t.vars(1);
        t.values(0);
        const auto x = b.vars[0];
        t.free_of_iv(x);
        if (scheme == Scheme::D9 && b.iv.size() + 1 != sig.endogenous_count()) {
            t.fail("needs every variable other than X intervened on");
        }
        std::vector<Formula> parts;
        for (ValueIndex v = 0; v < sig.endogenous_domain_size(x); ++v) {
            parts.push_back(box_atom(b.iv, x, u, v));
        }
        return Formula::conjunction(make_diamond(b.iv, Inner::constant(true)), Formula::any_of(parts));
    }
    }
    t.fail("unknown scheme");
}

// ---------------------------------------------------------------------------
// Truth tables

template <class Leaf>
bool truth_table(const BoolExpr<Leaf>& e, std::size_t cap)
{
    std::vector<const Leaf*> units;
    std::unordered_map<const Leaf*, std::size_t> index;
    e.for_each_leaf([&](const Leaf& l) {
        if (index.count(&l)) {
            return;
        }
        auto it = std::find_if(units.begin(), units.end(), [&](const Leaf* u) { return *u == l; });
        index[&l] = static_cast<std::size_t>(it - units.begin());
        if (it == units.end()) {
            units.push_back(&l);
        }
    });
    if (units.size() > cap) {
        throw TautologyCapExceeded(units.size(), cap);
    }
    const std::uint64_t rows = std::uint64_t{1} << units.size();
    for (std::uint64_t mask = 0; mask < rows; ++mask) {
        if (!e.evaluate([&](const Leaf& l) { return ((mask >> index.at(&l)) & 1U) != 0; })) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Enumeration helpers

struct Visitor {
    const std::function<bool(const AxiomInstance&)>& visit;
    const Signature& sig;
    Scheme scheme;
    bool stopped = false;

    /// Instantiates and forwards; returns false once the consumer stops.
    bool operator()(const Bindings& b)
    {
        if (stopped) {
            return false;
        }
        AxiomInstance inst{scheme, b, build(scheme, b, sig)};
        stopped = !visit(inst);
        return !stopped;
    }
};

std::vector<VarIndex> all_vars(const Signature& sig)
{
    return endogenous_except(sig, {});
}

std::vector<VarIndex> unpinned(const Signature& sig, const InterventionList& iv)
{
    std::vector<VarIndex> out;
    for (VarIndex v = 0; v < sig.endogenous_count(); ++v) {
        if (!pins(iv, v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<ValueIndex> values_of(const InterventionList& assignment)
{
    std::vector<ValueIndex> out;
    for (const auto& p : assignment) {
        out.push_back(p.value);
    }
    return out;
}

/// Formulas over `atoms` with at most `depth` nested connectives.
std::vector<Inner> grow(const std::vector<Inner>& atoms, std::size_t depth)
{
    std::vector<Inner> level = atoms;
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<Inner> next = level;
        for (const auto& a : level) {
            next.push_back(Inner::negation(a));
        }
        for (const auto& a : level) {
            for (const auto& b : level) {
                next.push_back(Inner::conjunction(a, b));
                next.push_back(Inner::disjunction(a, b));
                next.push_back(Inner::implication(a, b));
            }
        }
        level = std::move(next);
    }
    return level;
}

std::vector<Inner> context_atoms(const Signature& sig, const Context& u)
{
    std::vector<Inner> out;
    for (VarIndex v = 0; v < sig.endogenous_count(); ++v) {
        for (ValueIndex x = 0; x < sig.endogenous_domain_size(v); ++x) {
            out.push_back(make_atom(v, u, x));
        }
    }
    return out;
}

/// Distinct inner tautologies over at most `max_atoms` of `atoms`.
std::vector<Inner> inner_tautologies(const Signature& sig, const std::vector<Inner>& atoms, std::size_t max_atoms,
                                     std::size_t depth)
{
    std::vector<VarIndex> positions(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        positions[i] = i;
    }
    std::set<std::string> seen;
    std::vector<Inner> out;
    for (const auto& subset : subsets_by_size(positions, max_atoms)) {
        if (subset.empty()) {
            continue;
        }
        std::vector<Inner> chosen;
        for (auto i : subset) {
            chosen.push_back(atoms[i]);
        }
        for (const auto& candidate : grow(chosen, depth)) {
            if (tautology(candidate) && seen.insert(print_inner(candidate, sig)).second) {
                out.push_back(candidate);
            }
        }
    }
    return out;
}

/// Sequences of distinct variables of length `len`, lexicographic.
void chains(std::size_t n, std::size_t len, std::vector<VarIndex>& prefix,
            const std::function<bool(const std::vector<VarIndex>&)>& visit, bool& stop)
{
    if (stop) {
        return;
    }
    if (prefix.size() == len) {
        stop = !visit(prefix);
        return;
    }
    for (VarIndex v = 0; v < n && !stop; ++v) {
        if (std::find(prefix.begin(), prefix.end(), v) == prefix.end()) {
            prefix.push_back(v);
            chains(n, len, prefix, visit, stop);
            prefix.pop_back();
        }
    }
}

void enumerate(Scheme scheme, const Signature& sig, const EnumerationBounds& bounds, Visitor& emit)
{
    const auto vars = all_vars(sig);
    const auto contexts = sig.contexts();
    const auto ivs = all_interventions(sig, vars, bounds.max_intervention);
    const std::size_t max_extra = bounds.max_intervention == 0 ? 0 : bounds.max_intervention - 1;

    switch (scheme) {
    case Scheme::C0:
    case Scheme::D0: {
        std::vector<Formula> leaves;
        for (const auto& iv : ivs) {
            for (const auto& u : contexts) {
                for (const auto& a : context_atoms(sig, u)) {
                    leaves.push_back(make_box(iv, a));
                }
            }
        }
        for (const auto& p : leaves) {
            for (const auto& taut : {Formula::disjunction(p, Formula::negation(p)), Formula::implication(p, p)}) {
                Bindings b;
                b.formula = taut;
                if (!emit(b)) {
                    return;
                }
            }
        }
        if (bounds.tautology_atoms < 2) {
            return;
        }
        for (const auto& p : leaves) {
            for (const auto& q : leaves) {
                if (p == q) {
                    continue;
                }
                const std::array<Formula, 4> templates{
                    Formula::implication(p, Formula::implication(q, p)),
                    Formula::implication(Formula::conjunction(p, q), p),
                    Formula::implication(p, Formula::disjunction(p, q)),
                    Formula::implication(p, Formula::implication(q, Formula::conjunction(p, q))),
                };
                for (const auto& taut : templates) {
                    Bindings b;
                    b.formula = taut;
                    if (!emit(b)) {
                        return;
                    }
                }
            }
        }
        return;
    }
    case Scheme::C1:
    case Scheme::D1:
        for (const auto& iv : ivs) {
            for (auto x : vars) {
                for (const auto& u : contexts) {
                    const auto d = sig.endogenous_domain_size(x);
                    for (ValueIndex a = 0; a < d; ++a) {
                        for (ValueIndex b2 = 0; b2 < d; ++b2) {
                            if (a != b2 && !emit({iv, {x}, {a, b2}, u})) {
                                return;
                            }
                        }
                    }
                }
            }
        }
        return;
    case Scheme::C2:
    case Scheme::D2:
        for (const auto& iv : ivs) {
            for (auto x : vars) {
                for (const auto& u : contexts) {
                    if (!emit({iv, {x}, {}, u})) {
                        return;
                    }
                }
            }
        }
        return;
    case Scheme::C3:
    case Scheme::C5:
    case Scheme::Ord: {
        std::vector<std::size_t> rank(sig.endogenous_count());
        if (scheme == Scheme::Ord) {
            if (!bounds.order) {
                return;
            }
            for (std::size_t i = 0; i < bounds.order->size(); ++i) {
                rank.at((*bounds.order)[i]) = i;
            }
        }
        for (const auto& iv : ivs) {
            const auto free = unpinned(sig, iv);
            for (auto first : free) {
                for (auto second : free) {
                    if (first == second || (scheme == Scheme::Ord && rank[first] > rank[second])) {
                        continue;
                    }
                    for (const auto& u : contexts) {
                        for (ValueIndex a = 0; a < sig.endogenous_domain_size(first); ++a) {
                            for (ValueIndex c = 0; c < sig.endogenous_domain_size(second); ++c) {
                                Bindings b{iv, {first, second}, {a, c}, u};
                                if (scheme == Scheme::Ord) {
                                    b.order = *bounds.order;
                                }
                                if (!emit(b)) {
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
        return;
    }
    case Scheme::C4:
    case Scheme::D4:
        if (bounds.max_intervention == 0) {
            return;
        }
        for (auto x : vars) {
            for (ValueIndex v = 0; v < sig.endogenous_domain_size(x); ++v) {
                for (const auto& extra : all_interventions(sig, endogenous_except(sig, {x}), max_extra)) {
                    for (const auto& u : contexts) {
                        if (!emit({extra, {x}, {v}, u})) {
                            return;
                        }
                    }
                }
            }
        }
        return;
    case Scheme::C6:
    case Scheme::D6: {
        const auto n = sig.endogenous_count();
        bool stop = false;
        for (std::size_t k = 1; k < n && k <= bounds.max_chain && !stop; ++k) {
            std::vector<VarIndex> prefix;
            chains(n, k + 1, prefix, [&](const std::vector<VarIndex>& chain) {
                Bindings b;
                b.vars = chain;
                return emit(b);
            }, stop);
        }
        return;
    }
    case Scheme::D3:
        for (const auto& iv : ivs) {
            const auto free = unpinned(sig, iv);
            for (auto w : free) {
                std::vector<VarIndex> others;
                std::copy_if(free.begin(), free.end(), std::back_inserter(others), [&](VarIndex v) { return v != w; });
                for (const auto& ys : subsets_by_size(others)) {
                    for (const auto& u : contexts) {
                        for (ValueIndex wv = 0; wv < sig.endogenous_domain_size(w); ++wv) {
                            for (const auto& assignment : assignments(sig, ys)) {
                                Bindings b{iv, {w}, {wv}, u};
                                b.vars.insert(b.vars.end(), ys.begin(), ys.end());
                                const auto yv = values_of(assignment);
                                b.values.insert(b.values.end(), yv.begin(), yv.end());
                                if (!emit(b)) {
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
        return;
    case Scheme::D5:
        for (const auto& iv : ivs) {
            const auto free = unpinned(sig, iv);
            for (auto w : free) {
                for (auto y : free) {
                    if (w == y) {
                        continue;
                    }
                    const auto zs = d5_rest(sig, iv, w, y);
                    for (const auto& u : contexts) {
                        for (ValueIndex wv = 0; wv < sig.endogenous_domain_size(w); ++wv) {
                            for (ValueIndex yv = 0; yv < sig.endogenous_domain_size(y); ++yv) {
                                for (const auto& assignment : assignments(sig, zs)) {
                                    Bindings b{iv, {w, y}, {wv, yv}, u};
                                    const auto zv = values_of(assignment);
                                    b.values.insert(b.values.end(), zv.begin(), zv.end());
                                    if (!emit(b)) {
                                        return;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        return;
    case Scheme::D7:
        for (const auto& u : contexts) {
            const auto bodies = grow(context_atoms(sig, u), bounds.inner_depth);
            for (const auto& iv : ivs) {
                for (const auto& phi : bodies) {
                    for (const auto& psi : bodies) {
                        Bindings b;
                        b.iv = iv;
                        b.phi = phi;
                        b.psi = psi;
                        if (!emit(b)) {
                            return;
                        }
                    }
                }
            }
        }
        return;
    case Scheme::D8:
        for (const auto& u : contexts) {
            const auto bodies =
                inner_tautologies(sig, context_atoms(sig, u), bounds.tautology_atoms, bounds.tautology_depth);
            for (const auto& iv : ivs) {
                for (const auto& phi : bodies) {
                    Bindings b;
                    b.iv = iv;
                    b.phi = phi;
                    if (!emit(b)) {
                        return;
                    }
                }
            }
        }
        return;
    case Scheme::D9:
    case Scheme::D10:
        for (auto x : vars) {
            const auto others = endogenous_except(sig, {x});
            const auto candidates = scheme == Scheme::D9 ? assignments(sig, others)
                                                         : all_interventions(sig, others, bounds.max_intervention);
            for (const auto& iv : candidates) {
                if (iv.size() > bounds.max_intervention) {
                    continue;
                }
                for (const auto& u : contexts) {
                    if (!emit({iv, {x}, {}, u})) {
                        return;
                    }
                }
            }
        }
        return;
    }
}

// ---------------------------------------------------------------------------
// Matching

struct Parts {
    Formula lhs = Formula::constant(true);
    Formula rhs = Formula::constant(true);
};

std::optional<Parts> implication_of(const Formula& f)
{
    Parts p;
    if (!f.as_implication(&p.lhs, &p.rhs)) {
        return std::nullopt;
    }
    return p;
}

std::optional<Parts> conjunction_of(const Formula& f)
{
    if (!f.is(Formula::Op::conjunction)) {
        return std::nullopt;
    }
    return Parts{f.lhs(), f.rhs()};
}

std::optional<BasicCausal> leaf_of(const Formula& f, Modality mode)
{
    if (!f.is(Formula::Op::leaf) || f.leaf().mode != mode) {
        return std::nullopt;
    }
    return f.leaf();
}

std::optional<Atom> atom_of(const Inner& body)
{
    if (!body.is(Inner::Op::leaf)) {
        return std::nullopt;
    }
    return body.leaf();
}

/// [iv](X(u)=x): (iv, atom).
std::optional<std::pair<InterventionList, Atom>> box_atom_of(const Formula& f, Modality mode = Modality::box)
{
    auto leaf = leaf_of(f, mode);
    if (!leaf) {
        return std::nullopt;
    }
    auto atom = atom_of(leaf->body);
    if (!atom) {
        return std::nullopt;
    }
    return std::make_pair(leaf->intervention, *atom);
}

std::vector<Atom> conjoined_atoms(const Inner& body, bool& ok)
{
    std::vector<Atom> out;
    for (const auto& part : body.flatten(Inner::Op::conjunction)) {
        if (auto a = atom_of(part)) {
            out.push_back(*a);
        }
        else {
            ok = false;
        }
    }
    return out;
}

/// Y and Z of an affects disjunction, read from its first disjunct.
std::optional<std::pair<VarIndex, VarIndex>> affects_ends(const Formula& f)
{
    auto parts = f.flatten(Formula::Op::disjunction);
    auto first = conjunction_of(parts.front());
    if (!first) {
        return std::nullopt;
    }
    auto changed = box_atom_of(first->lhs);
    auto original = box_atom_of(first->rhs);
    if (!changed || !original) {
        return std::nullopt;
    }
    auto extra = minus(changed->first, original->first);
    if (extra.size() != 1) {
        return std::nullopt;
    }
    return std::make_pair(extra.front().var, changed->second.var);
}

std::optional<Bindings> extract(const Formula& f, Scheme scheme, const Signature& sig, const MatchOptions& options)
{
    Bindings b;
    switch (scheme) {
    case Scheme::C0:
    case Scheme::D0:
        if (!tautology(f, options.tautology_cap)) {
            return std::nullopt;
        }
        b.formula = f;
        return b;
    case Scheme::C1: {
        auto imp = implication_of(f);
        if (!imp || !imp->rhs.is(Formula::Op::negation)) {
            return std::nullopt;
        }
        auto a = box_atom_of(imp->lhs);
        auto c = box_atom_of(imp->rhs.operand());
        if (!a || !c) {
            return std::nullopt;
        }
        return Bindings{a->first, {a->second.var}, {a->second.value, c->second.value}, a->second.context};
    }
    case Scheme::C2: {
        auto a = box_atom_of(f.flatten(Formula::Op::disjunction).front());
        if (!a) {
            return std::nullopt;
        }
        return Bindings{a->first, {a->second.var}, {}, a->second.context};
    }
    case Scheme::C3: {
        auto imp = implication_of(f);
        if (!imp) {
            return std::nullopt;
        }
        auto ante = conjunction_of(imp->lhs);
        if (!ante) {
            return std::nullopt;
        }
        auto w = box_atom_of(ante->lhs);
        auto y = box_atom_of(ante->rhs);
        if (!w || !y) {
            return std::nullopt;
        }
        return Bindings{w->first, {w->second.var, y->second.var}, {w->second.value, y->second.value}, w->second.context};
    }
    case Scheme::C4:
    case Scheme::D4: {
        auto a = box_atom_of(f);
        if (!a) {
            return std::nullopt;
        }
        InterventionList rest;
        bool found = false;
        for (const auto& p : a->first) {
            if (p.var == a->second.var) {
                found = true;
            }
            else {
                rest.push_back(p);
            }
        }
        if (!found) {
            return std::nullopt;
        }
        return Bindings{rest, {a->second.var}, {a->second.value}, a->second.context};
    }
    case Scheme::C5: {
        auto imp = implication_of(f);
        if (!imp) {
            return std::nullopt;
        }
        auto goal = box_atom_of(imp->rhs);
        auto ante = conjunction_of(imp->lhs);
        if (!goal || !ante) {
            return std::nullopt;
        }
        auto w = box_atom_of(ante->rhs);
        if (!w) {
            return std::nullopt;
        }
        return Bindings{goal->first,
                        {goal->second.var, w->second.var},
                        {goal->second.value, w->second.value},
                        goal->second.context};
    }
    case Scheme::C6:
    case Scheme::D6: {
        auto imp = implication_of(f);
        if (!imp || !imp->rhs.is(Formula::Op::negation)) {
            return std::nullopt;
        }
        auto closing = affects_ends(imp->rhs.operand());
        if (!closing) {
            return std::nullopt;
        }
        std::vector<VarIndex> reversed{closing->first};
        Formula rest = imp->lhs;
        while (true) {
            Formula link = rest;
            if (rest.is(Formula::Op::conjunction)) {
                link = rest.rhs();
            }
            auto ends = affects_ends(link);
            if (!ends || ends->second != reversed.back()) {
                return std::nullopt;
            }
            reversed.push_back(ends->first);
            if (!rest.is(Formula::Op::conjunction)) {
                break;
            }
            rest = rest.lhs();
            if (reversed.size() > sig.endogenous_count()) {
                return std::nullopt;
            }
        }
        b.vars.assign(reversed.rbegin(), reversed.rend());
        return b;
    }
    case Scheme::Ord: {
        if (!options.order) {
            return std::nullopt;
        }
        Formula lhs = f, rhs = f;
        if (!f.as_biconditional(&lhs, &rhs)) {
            return std::nullopt;
        }
        auto with_w = box_atom_of(lhs);
        auto plain = box_atom_of(rhs);
        if (!with_w || !plain) {
            return std::nullopt;
        }
        auto extra = minus(with_w->first, plain->first);
        if (extra.size() != 1) {
            return std::nullopt;
        }
        Bindings out{plain->first,
                     {plain->second.var, extra.front().var},
                     {plain->second.value, extra.front().value},
                     plain->second.context};
        out.order = *options.order;
        return out;
    }
    case Scheme::D1: {
        auto leaf = leaf_of(f, Modality::box);
        if (!leaf) {
            return std::nullopt;
        }
        Inner a = leaf->body, c = leaf->body;
        if (!leaf->body.as_implication(&a, &c) || !c.is(Inner::Op::negation)) {
            return std::nullopt;
        }
        auto x = atom_of(a);
        auto x2 = atom_of(c.operand());
        if (!x || !x2) {
            return std::nullopt;
        }
        return Bindings{leaf->intervention, {x->var}, {x->value, x2->value}, x->context};
    }
    case Scheme::D2: {
        auto leaf = leaf_of(f, Modality::box);
        if (!leaf) {
            return std::nullopt;
        }
        auto x = atom_of(leaf->body.flatten(Inner::Op::disjunction).front());
        if (!x) {
            return std::nullopt;
        }
        return Bindings{leaf->intervention, {x->var}, {}, x->context};
    }
    case Scheme::D3: {
        auto imp = implication_of(f);
        if (!imp) {
            return std::nullopt;
        }
        auto ante = leaf_of(imp->lhs, Modality::diamond);
        if (!ante) {
            return std::nullopt;
        }
        bool ok = true;
        const auto atoms = conjoined_atoms(ante->body, ok);
        if (!ok || atoms.empty()) {
            return std::nullopt;
        }
        b.iv = ante->intervention;
        b.context = atoms.front().context;
        for (const auto& a : atoms) {
            b.vars.push_back(a.var);
            b.values.push_back(a.value);
        }
        return b;
    }
    case Scheme::D5: {
        auto imp = implication_of(f);
        if (!imp) {
            return std::nullopt;
        }
        auto goal = leaf_of(imp->rhs, Modality::diamond);
        if (!goal) {
            return std::nullopt;
        }
        bool ok = true;
        const auto atoms = conjoined_atoms(goal->body, ok);
        if (!ok || atoms.size() < 2) {
            return std::nullopt;
        }
        b.iv = goal->intervention;
        b.context = atoms.front().context;
        b.vars = {atoms[0].var, atoms[1].var};
        for (const auto& a : atoms) {
            b.values.push_back(a.value);
        }
        return b;
    }
    case Scheme::D7: {
        auto imp = implication_of(f);
        if (!imp) {
            return std::nullopt;
        }
        auto ante = conjunction_of(imp->lhs);
        auto goal = leaf_of(imp->rhs, Modality::box);
        if (!ante || !goal) {
            return std::nullopt;
        }
        auto first = leaf_of(ante->lhs, Modality::box);
        if (!first) {
            return std::nullopt;
        }
        b.iv = first->intervention;
        b.phi = first->body;
        b.psi = goal->body;
        return b;
    }
    case Scheme::D8: {
        auto leaf = leaf_of(f, Modality::box);
        if (!leaf || !tautology(leaf->body, options.tautology_cap)) {
            return std::nullopt;
        }
        b.iv = leaf->intervention;
        b.phi = leaf->body;
        return b;
    }
    case Scheme::D9:
    case Scheme::D10: {
        auto both = conjunction_of(f);
        if (!both) {
            return std::nullopt;
        }
        auto some = leaf_of(both->lhs, Modality::diamond);
        auto a = box_atom_of(both->rhs.flatten(Formula::Op::disjunction).front());
        if (!some || !a) {
            return std::nullopt;
        }
        return Bindings{some->intervention, {a->second.var}, {}, a->second.context};
    }
    }
    return std::nullopt;
}

} // namespace

TautologyCapExceeded::TautologyCapExceeded(std::size_t units, std::size_t cap)
    : std::runtime_error("tautology check needs " + std::to_string(units) + " atomic units; the cap is " +
                         std::to_string(cap)),
      _units(units)
{
}

std::string to_string(Scheme s)
{
    for (const auto& [scheme, name] : kNames) {
        if (scheme == s) {
            return std::string(name);
        }
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    for (const auto& [scheme, text] : kNames) {
        if (text == name) {
            return scheme;
        }
    }
    return std::nullopt;
}

const std::vector<Scheme>& all_schemes()
{
    static const std::vector<Scheme> schemes = [] {
        std::vector<Scheme> out;
        for (const auto& entry : kNames) {
            out.push_back(entry.first);
        }
        return out;
    }();
    return schemes;
}

bool tautology(const Formula& f, std::size_t cap)
{
    return truth_table(f, cap);
}

bool tautology(const Inner& body, std::size_t cap)
{
    return truth_table(body, cap);
}

AxiomInstance instantiate(Scheme scheme, const Bindings& b, const Signature& sig)
{
    AxiomInstance inst{scheme, b, build(scheme, b, sig)};
    if (auto problem = check_formula(inst.formula, sig); !problem.empty()) {
        throw ContractError(to_string(scheme) + ": " + problem);
    }
    return inst;
}

Formula affects_formula(VarIndex y, VarIndex z, const Signature& sig)
{
    require(y != z && y < sig.endogenous_count() && z < sig.endogenous_count(),
            "affects needs two distinct endogenous variables");
    const auto dz = sig.endogenous_domain_size(z);
    const auto contexts = sig.contexts();
    std::vector<Formula> disjuncts;
    for (const auto& base : all_interventions(sig, endogenous_except(sig, {y, z}))) {
        for (ValueIndex yv = 0; yv < sig.endogenous_domain_size(y); ++yv) {
            const auto changed_iv = with(base, y, yv);
            for (const auto& u : contexts) {
                for (ValueIndex zv = 0; zv < dz; ++zv) {
                    for (ValueIndex z2 = 0; z2 < dz; ++z2) {
                        if (z2 != zv) {
                            disjuncts.push_back(
                                Formula::conjunction(box_atom(changed_iv, z, u, z2), box_atom(base, z, u, zv)));
                        }
                    }
                }
            }
        }
    }
    return Formula::any_of(disjuncts);
}

void for_each_instance(Scheme scheme, const Signature& sig, const EnumerationBounds& bounds,
                       const std::function<bool(const AxiomInstance&)>& visit)
{
    Visitor emit{visit, sig, scheme};
    enumerate(scheme, sig, bounds, emit);
}

std::vector<AxiomInstance> enumerate_instances(Scheme scheme, const Signature& sig, const EnumerationBounds& bounds)
{
    std::vector<AxiomInstance> out;
    for_each_instance(scheme, sig, bounds, [&](const AxiomInstance& inst) {
        out.push_back(inst);
        return true;
    });
    return out;
}

std::optional<Bindings> is_instance(const Formula& f, Scheme scheme, const Signature& sig, const MatchOptions& options)
{
    auto b = extract(f, scheme, sig, options);
    if (!b) {
        return std::nullopt;
    }
    try {
        const auto inst = instantiate(scheme, *b, sig);
        if (sort_interventions(inst.formula) == sort_interventions(f)) {
            return b;
        }
    }
    catch (const ContractError&) {
    }
    return std::nullopt;
}

SoundnessReport check_soundness(const CausalModel& model, Scheme scheme, const SoundnessMode& mode,
                                const EnumerationBounds& bounds)
{
    SoundnessReport report;
    report.scheme = scheme;
    Evaluator eval(model);
    auto check = [&](const AxiomInstance& inst) {
        ++report.checked;
        if (!eval.holds(inst.formula)) {
            report.failures.push_back(inst);
        }
    };
    if (mode.exhaustive) {
        for_each_instance(scheme, model.signature(), bounds, [&](const AxiomInstance& inst) {
            check(inst);
            return true;
        });
        return report;
    }
    report.seed = mode.seed;
    const auto pool = enumerate_instances(scheme, model.signature(), bounds);
    if (pool.empty()) {
        return report;
    }
    std::mt19937_64 rng(mode.seed);
    for (std::size_t i = 0; i < mode.samples; ++i) {
        check(pool[rng() % pool.size()]);
    }
    return report;
}

} // namespace causal
