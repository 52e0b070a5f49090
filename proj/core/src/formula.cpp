#include "causal/formula.hpp"

#include "causal/error.hpp"

#include <algorithm>

namespace causal {

std::optional<Context> BasicCausal::context() const
{
    std::optional<Context> ctx;
    body.for_each_leaf([&](const Atom& a) {
        if (!ctx) {
            ctx = a.context;
        }
    });
    return ctx;
}

Formula make_box(InterventionList iv, Inner body)
{
    return Formula::leaf(BasicCausal{std::move(iv), Modality::box, std::move(body)});
}

Formula make_diamond(InterventionList iv, Inner body)
{
    return Formula::leaf(BasicCausal{std::move(iv), Modality::diamond, std::move(body)});
}

Inner make_atom(VarIndex var, Context ctx, ValueIndex value)
{
    return Inner::leaf(Atom{var, std::move(ctx), value});
}

std::string check_formula(const Formula& f, const Signature& sig)
{
    std::string problem;
    f.for_each_leaf([&](const BasicCausal& leaf) {
        if (!problem.empty()) {
            return;
        }
        if (auto p = sig.check_interventions(leaf.intervention); !p.empty()) {
            problem = p;
            return;
        }
        std::optional<Context> shared;
        leaf.body.for_each_leaf([&](const Atom& a) {
            if (!problem.empty()) {
                return;
            }
            if (a.var >= sig.endogenous_count()) {
                problem = "atom on unknown variable";
                return;
            }
            if (a.value >= sig.endogenous_domain_size(a.var)) {
                problem = "value out of domain for '" + sig.endogenous_name(a.var) + "'";
                return;
            }
            if (!sig.is_valid_context(a.context)) {
                problem = "context of '" + sig.endogenous_name(a.var) + "' does not cover the exogenous variables";
                return;
            }
            if (shared && *shared != a.context) {
                problem = "atoms under one box must share a context";
                return;
            }
            shared = a.context;
        });
    });
    return problem;
}

void validate_formula(const Formula& f, const Signature& sig)
{
    if (auto p = check_formula(f, sig); !p.empty()) {
        throw ValidationError({p});
    }
}

std::string to_string(LanguageClass cls)
{
    switch (cls) {
    case LanguageClass::gp:
        return "GP";
    case LanguageClass::uniq:
        return "uniq";
    case LanguageClass::plus:
        return "plus";
    }
    return "plus";
}

LanguageClass classify_language(const Formula& f)
{
    bool single_atom_boxes = true;
    f.for_each_leaf([&](const BasicCausal& leaf) {
        if (leaf.mode != Modality::box || !leaf.body.is(Inner::Op::leaf)) {
            single_atom_boxes = false;
        }
    });
    if (!single_atom_boxes) {
        return LanguageClass::plus;
    }
    const auto parts = f.flatten(Formula::Op::conjunction);
    const bool gp = std::all_of(parts.begin(), parts.end(), [](const Formula& p) { return p.is(Formula::Op::leaf); });
    return gp ? LanguageClass::gp : LanguageClass::uniq;
}

Mentions mentioned(const Formula& f)
{
    Mentions out;
    f.for_each_leaf([&](const BasicCausal& leaf) {
        for (const auto& pin : leaf.intervention) {
            out.variables.insert(pin.var);
        }
        leaf.body.for_each_leaf([&](const Atom& a) {
            out.variables.insert(a.var);
            out.contexts.insert(a.context);
        });
    });
    return out;
}

Formula sort_interventions(const Formula& f)
{
    return f.map_leaves([](const BasicCausal& leaf) {
        BasicCausal copy = leaf;
        std::sort(copy.intervention.begin(), copy.intervention.end());
        return Formula::leaf(std::move(copy));
    });
}

bool has_contextless_leaf(const Formula& f)
{
    bool found = false;
    f.for_each_leaf([&](const BasicCausal& leaf) {
        if (!leaf.context()) {
            found = true;
        }
    });
    return found;
}

} // namespace causal
