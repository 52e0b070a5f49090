#include "causal/decide.hpp"

#include "causal/error.hpp"
#include "causal/semantics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace causal {

namespace {

std::vector<std::size_t> grid_sizes(const Signature& sig)
{
    std::size_t contexts = sig.context_count();
    std::vector<std::size_t> out;
    for (VarIndex x = 0; x < sig.endogenous_count(); ++x) {
        std::size_t cells = contexts;
        for (VarIndex y = 0; y < sig.endogenous_count(); ++y) {
            if (y != x) {
                cells *= sig.endogenous_domain_size(y);
            }
        }
        out.push_back(cells);
    }
    return out;
}

/// `base`, or `base` with underscores appended until no kept name clashes.
std::string fresh_name(std::string base, const SignatureDecl& decl)
{
    auto taken = [&](const std::string& n) {
        return std::any_of(decl.endogenous.begin(), decl.endogenous.end(),
                           [&](const VariableDecl& v) { return v.name == n; });
    };
    while (taken(base)) {
        base += '_';
    }
    return base;
}

void check_witness(const CausalModel& model, const Formula& f, ModelClass cls)
{
    if (!satisfied(model, f) || !in_class(model, cls)) {
        throw std::logic_error("decision witness failed its re-check");
    }
}

DecisionOutcome scan(const Formula& f, const Signature& sig, ModelClass cls, std::size_t budget,
                     const std::function<bool(const CausalModel&)>& admit)
{
    DecisionOutcome out;
    try {
        out.models_examined = for_each_model(
            sig,
            [&](const CausalModel& m) {
                if (satisfied(m, f) && in_class(m, cls) && (!admit || admit(m))) {
                    out.witness = m;
                    return false;
                }
                return true;
            },
            budget);
    }
    catch (const BudgetExceeded& e) {
        out.verdict = Verdict::budget_exceeded;
        out.models_examined = e.progress();
        return out;
    }
    out.verdict = out.witness ? Verdict::sat : Verdict::unsat;
    if (out.witness) {
        check_witness(*out.witness, f, cls);
    }
    return out;
}

ValidityOutcome dual(DecisionOutcome d)
{
    ValidityOutcome v;
    v.models_examined = d.models_examined;
    v.reduction = std::move(d.reduction);
    switch (d.verdict) {
    case Verdict::sat:
        v.verdict = Validity::invalid;
        v.countermodel = std::move(d.witness);
        break;
    case Verdict::unsat:
        v.verdict = Validity::valid;
        break;
    case Verdict::budget_exceeded:
        v.verdict = Validity::budget_exceeded;
        break;
    }
    return v;
}

} // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::sat:
        return "sat";
    case Verdict::unsat:
        return "unsat";
    case Verdict::budget_exceeded:
        return "budget-exceeded";
    }
    return "?";
}

std::string to_string(Validity v)
{
    switch (v) {
    case Validity::valid:
        return "valid";
    case Validity::invalid:
        return "invalid";
    case Validity::budget_exceeded:
        return "budget-exceeded";
    }
    return "?";
}

Reduction reduce(const Formula& f, const Signature& sig, ModelClass cls)
{
    validate_formula(f, sig);
    const auto mentions = mentioned(f);
    Reduction r;
    auto& red = r.reduced;

    std::vector<VarIndex> kept(mentions.variables.begin(), mentions.variables.end());
    if (kept.empty()) {
        const std::size_t want = cls == ModelClass::general ? 2 : 1;
        for (VarIndex v = 0; v < std::min(want, sig.endogenous_count()); ++v) {
            kept.push_back(v);
        }
    }
    red.kept = kept;

    SignatureDecl decl;
    std::vector<VarIndex> new_index(sig.endogenous_count(), kUnassigned);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        new_index[kept[i]] = i;
        decl.endogenous.push_back(sig.endogenous(kept[i]));
    }
    VariableDecl ustar{fresh_name("U_star", decl), {}};
    for (const auto& ctx : mentions.contexts) {
        red.atom_rewrite[ctx] = ustar.domain.size();
        ustar.domain.push_back("t" + std::to_string(ustar.domain.size() + 1));
    }
    if (has_contextless_leaf(f) && mentions.contexts.size() < sig.context_count()) {
        red.dummy = true;
        ustar.domain.emplace_back("dummy");
    }
    if (ustar.domain.empty()) {
        ustar.domain.emplace_back("dummy");
        red.dummy = true;
    }
    decl.exogenous.push_back(std::move(ustar));

    const bool unmentioned = mentions.variables.size() < sig.endogenous_count();
    if (cls == ModelClass::general && unmentioned && !mentions.variables.empty()) {
        VariableDecl xstar{fresh_name("X_star", decl), {}};
        for (auto v : mentions.variables) {
            for (const auto& token : sig.endogenous(v).domain) {
                if (std::find(xstar.domain.begin(), xstar.domain.end(), token) == xstar.domain.end()) {
                    xstar.domain.push_back(token);
                }
            }
        }
        red.fresh = decl.endogenous.size();
        decl.endogenous.push_back(std::move(xstar));
    }
    red.signature = Signature::build(decl);

    r.formula = f.map_leaves([&](const BasicCausal& leaf) {
        BasicCausal out;
        out.mode = leaf.mode;
        for (const auto& pin : leaf.intervention) {
            out.intervention.push_back({new_index[pin.var], pin.value});
        }
        out.body = leaf.body.map_leaves([&](const Atom& a) {
            return make_atom(new_index[a.var], Context{{red.atom_rewrite.at(a.context)}}, a.value);
        });
        return Formula::leaf(std::move(out));
    });
    validate_formula(r.formula, red.signature);
    return r;
}

std::optional<std::size_t> model_count(const Signature& sig)
{
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    const auto sizes = grid_sizes(sig);
    for (VarIndex x = 0; x < sizes.size(); ++x) {
        const auto d = sig.endogenous_domain_size(x);
        for (std::size_t c = 0; c < sizes[x]; ++c) {
            if (total > kMax / d) {
                return std::nullopt;
            }
            total *= d;
        }
    }
    return total;
}

std::size_t for_each_model(const Signature& sig, const std::function<bool(const CausalModel&)>& visit,
                           std::size_t budget)
{
    const auto sizes = grid_sizes(sig);
    std::vector<std::vector<ValueIndex>> outputs;
    for (auto s : sizes) {
        outputs.emplace_back(s, 0);
    }
    std::size_t visited = 0;
    while (true) {
        if (visited == budget) {
            throw BudgetExceeded("model enumeration budget of " + std::to_string(budget) + " exhausted", visited);
        }
        ++visited;
        if (!visit(CausalModel::from_functions(sig, outputs))) {
            return visited;
        }
        // Odometer: the last cell of the last variable turns fastest.
        bool carried = true;
        for (std::size_t x = outputs.size(); x-- > 0 && carried;) {
            const auto d = sig.endogenous_domain_size(x);
            for (std::size_t c = outputs[x].size(); c-- > 0;) {
                if (++outputs[x][c] < d) {
                    carried = false;
                    break;
                }
                outputs[x][c] = 0;
            }
        }
        if (carried) {
            return visited;
        }
    }
}

ModelStream enumerate_models(const Signature& sig, ModelClass cls, std::size_t limit)
{
    ModelStream out;
    try {
        out.examined = for_each_model(
            sig,
            [&](const CausalModel& m) {
                if (in_class(m, cls)) {
                    out.models.push_back(m);
                }
                return true;
            },
            limit);
    }
    catch (const BudgetExceeded& e) {
        out.examined = e.progress();
        out.complete = false;
    }
    return out;
}

DecisionOutcome satisfiable(const Formula& f, const Signature& sig, ModelClass cls, std::size_t budget)
{
    auto r = reduce(f, sig, cls);
    auto out = scan(r.formula, r.reduced.signature, cls, budget, {});
    out.reduction = std::move(r);
    return out;
}

DecisionOutcome satisfiable_in(const Formula& f, const Signature& sig, ModelClass cls, std::size_t budget,
                               const std::function<bool(const CausalModel&)>& admit)
{
    validate_formula(f, sig);
    return scan(f, sig, cls, budget, admit);
}

ValidityOutcome valid(const Formula& f, const Signature& sig, ModelClass cls, std::size_t budget)
{
    return dual(satisfiable(Formula::negation(f), sig, cls, budget));
}

ValidityOutcome valid_in(const Formula& f, const Signature& sig, ModelClass cls, std::size_t budget,
                         const std::function<bool(const CausalModel&)>& admit)
{
    return dual(satisfiable_in(Formula::negation(f), sig, cls, budget, admit));
}

} // namespace causal
