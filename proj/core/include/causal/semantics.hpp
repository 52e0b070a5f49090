#pragma once

#include "causal/formula.hpp"
#include "causal/model.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace causal {

/// Boolean value of `body` in `sol`. Atoms over intervened variables read the
/// pinned value. Throws ContractError when an atom's context differs from
/// `ctx`.
bool eval_inner(const Solution& sol, const InterventionList& iv, const Context& ctx, const Inner& body);

struct LeafTrace {
    bool verdict = false;
    std::size_t solution_count = 0;
    /// A solution that decided the leaf: a counterexample for a failing box,
    /// an example for a holding diamond.
    std::optional<Solution> witness;
    std::optional<Context> witness_context;
};

struct EvalReport {
    bool verdict = false;
    std::vector<LeafTrace> trace; ///< one entry per basic causal leaf, left to right
};

/// Evaluates formulas against one model, caching solution sets per
/// (intervention, context). Not thread-safe; use one per thread.
class Evaluator {
public:
    explicit Evaluator(const CausalModel& model) : _model(&model) {}

    [[nodiscard]] const CausalModel& model() const noexcept { return *_model; }

    bool holds(const Formula& f);
    bool holds_leaf(const BasicCausal& leaf, LeafTrace* trace = nullptr);
    EvalReport report(const Formula& f);

    /// Cached solutions of the submodel; the intervention order is irrelevant.
    const std::vector<Solution>& solutions(const InterventionList& iv, const Context& ctx);

private:
    const CausalModel* _model;
    std::map<std::pair<InterventionList, std::size_t>, std::vector<Solution>> _cache;
};

EvalReport holds(const CausalModel& model, const Formula& f);

/// Shorthand for holds(model, f).verdict.
bool satisfied(const CausalModel& model, const Formula& f);

/// Rewrites into single-atom boxes: box bodies go to negation normal form,
/// boxes distribute over `&` and `|`, a negated atom becomes the disjunction
/// of its domain complement, and diamonds are read as boxes. Equivalent to
/// `f` on every model whose submodels all have exactly one solution.
Formula rewrite_to_uniq(const Formula& f, const Signature& sig);

struct AffectsWitness {
    InterventionList base;     ///< X⃗ <- x⃗
    ValueIndex src_value = 0;  ///< y
    Context context;
    ValueIndex changed = 0;    ///< z', Z's value once Y is also set
    ValueIndex original = 0;   ///< z, Z's value under X⃗ <- x⃗ alone
};

struct AffectsResult {
    bool affects = false;
    std::optional<AffectsWitness> witness;
};

/// Y affects Z: some X⃗ <- x⃗ (X⃗ drawn from the endogenous variables other
/// than Y and Z), y, context and z != z' with [X⃗<-x⃗, Y<-y](Z=z') and
/// [X⃗<-x⃗](Z=z) both holding. Search order is canonical, so the witness is
/// the first such disjunct.
AffectsResult affects(const CausalModel& model, VarIndex src, VarIndex dst);
AffectsResult affects(Evaluator& eval, VarIndex src, VarIndex dst);

} // namespace causal
