#include "causal/semantics.hpp"

#include "causal/error.hpp"

#include <algorithm>

namespace causal {

namespace {

ValueIndex value_in(const Solution& sol, const InterventionList& iv, VarIndex var)
{
    for (const auto& pin : iv) {
        if (pin.var == var) {
            return pin.value;
        }
    }
    return sol.values.at(var);
}

/// Every solution assigns `var` the value `value` (vacuous when none exist).
bool all_equal(const std::vector<Solution>& sols, VarIndex var, ValueIndex value)
{
    return std::all_of(sols.begin(), sols.end(), [&](const Solution& s) { return s.values[var] == value; });
}

Inner nnf(const Inner& e, bool negated)
{
    switch (e.op()) {
    case Inner::Op::constant:
        return Inner::constant(e.value() != negated);
    case Inner::Op::leaf:
        return negated ? Inner::negation(e) : e;
    case Inner::Op::negation:
        return nnf(e.operand(), !negated);
    case Inner::Op::conjunction:
        if (negated) {
            return Inner::disjunction(nnf(e.lhs(), true), nnf(e.rhs(), true));
        }
        return Inner::conjunction(nnf(e.lhs(), false), nnf(e.rhs(), false));
    case Inner::Op::disjunction:
        if (negated) {
            return Inner::conjunction(nnf(e.lhs(), true), nnf(e.rhs(), true));
        }
        return Inner::disjunction(nnf(e.lhs(), false), nnf(e.rhs(), false));
    }
    return e;
}

/// Distributes the box `[iv]` over an NNF body.
Formula distribute(const InterventionList& iv, const Inner& body, const Signature& sig)
{
    switch (body.op()) {
    case Inner::Op::constant:
        return Formula::constant(body.value());
    case Inner::Op::leaf:
        return make_box(iv, body);
    case Inner::Op::negation: {
        const Atom& a = body.operand().leaf();
        std::vector<Formula> others;
        for (ValueIndex v = 0; v < sig.endogenous_domain_size(a.var); ++v) {
            if (v != a.value) {
                others.push_back(make_box(iv, make_atom(a.var, a.context, v)));
            }
        }
        return Formula::any_of(others);
    }
    case Inner::Op::conjunction:
        return Formula::conjunction(distribute(iv, body.lhs(), sig), distribute(iv, body.rhs(), sig));
    case Inner::Op::disjunction:
        return Formula::disjunction(distribute(iv, body.lhs(), sig), distribute(iv, body.rhs(), sig));
    }
    return Formula::constant(true);
}

} // namespace

bool eval_inner(const Solution& sol, const InterventionList& iv, const Context& ctx, const Inner& body)
{
    return body.evaluate([&](const Atom& a) {
        if (a.context != ctx) {
            throw ContractError("atom context does not match the submodel context");
        }
        return value_in(sol, iv, a.var) == a.value;
    });
}

const std::vector<Solution>& Evaluator::solutions(const InterventionList& iv, const Context& ctx)
{
    InterventionList key = iv;
    std::sort(key.begin(), key.end());
    const auto number = _model->signature().context_number(ctx);
    auto it = _cache.find({key, number});
    if (it == _cache.end()) {
        it = _cache.emplace(std::make_pair(key, number), causal::solutions(submodel(*_model, key, ctx))).first;
    }
    return it->second;
}

bool Evaluator::holds_leaf(const BasicCausal& leaf, LeafTrace* trace)
{
    const bool box = leaf.mode == Modality::box;
    LeafTrace local;
    LeafTrace& t = trace ? *trace : local;
    t = {};

    if (auto ctx = leaf.context()) {
        const auto& sols = solutions(leaf.intervention, *ctx);
        t.solution_count = sols.size();
        t.verdict = box;
        for (const auto& s : sols) {
            if (eval_inner(s, leaf.intervention, *ctx, leaf.body) != box) {
                t.verdict = !box;
                t.witness = s;
                t.witness_context = *ctx;
                break;
            }
        }
        return t.verdict;
    }

    // No atoms: the body is a constant, and the leaf ranges over every context.
    const bool body = leaf.body.evaluate([](const Atom&) { return false; });
    const auto& sig = _model->signature();
    t.verdict = box;
    for (std::size_t n = 0; n < sig.context_count(); ++n) {
        const Context ctx = sig.context_at(n);
        const auto& sols = solutions(leaf.intervention, ctx);
        t.solution_count += sols.size();
        if (!sols.empty() && body != box && !t.witness) {
            t.verdict = !box;
            t.witness = sols.front();
            t.witness_context = ctx;
        }
    }
    return t.verdict;
}

bool Evaluator::holds(const Formula& f)
{
    return f.evaluate([&](const BasicCausal& leaf) { return holds_leaf(leaf); });
}

EvalReport Evaluator::report(const Formula& f)
{
    EvalReport r;
    r.verdict = f.evaluate([&](const BasicCausal& leaf) {
        r.trace.emplace_back();
        return holds_leaf(leaf, &r.trace.back());
    });
    return r;
}

EvalReport holds(const CausalModel& model, const Formula& f)
{
    Evaluator eval(model);
    return eval.report(f);
}

bool satisfied(const CausalModel& model, const Formula& f)
{
    Evaluator eval(model);
    return eval.holds(f);
}

Formula rewrite_to_uniq(const Formula& f, const Signature& sig)
{
    return f.map_leaves(
        [&](const BasicCausal& leaf) { return distribute(leaf.intervention, nnf(leaf.body, false), sig); });
}

AffectsResult affects(Evaluator& eval, VarIndex src, VarIndex dst)
{
    const auto& sig = eval.model().signature();
    if (src == dst || src >= sig.endogenous_count() || dst >= sig.endogenous_count()) {
        throw ContractError("affects needs two distinct endogenous variables");
    }
    const auto contexts = sig.contexts();
    const auto dz = sig.endogenous_domain_size(dst);
    for (const auto& base : all_interventions(sig, endogenous_except(sig, {src, dst}))) {
        for (ValueIndex y = 0; y < sig.endogenous_domain_size(src); ++y) {
            InterventionList with_src = base;
            with_src.push_back({src, y});
            for (const auto& ctx : contexts) {
                const auto& after = eval.solutions(with_src, ctx);
                const auto& before = eval.solutions(base, ctx);
                for (ValueIndex z = 0; z < dz; ++z) {
                    if (!all_equal(before, dst, z)) {
                        continue;
                    }
                    for (ValueIndex z2 = 0; z2 < dz; ++z2) {
                        if (z2 != z && all_equal(after, dst, z2)) {
                            return {true, AffectsWitness{base, y, ctx, z2, z}};
                        }
                    }
                }
            }
        }
    }
    return {};
}

AffectsResult affects(const CausalModel& model, VarIndex src, VarIndex dst)
{
    Evaluator eval(model);
    return affects(eval, src, dst);
}

} // namespace causal
