#pragma once

#include "causal/formula.hpp"
#include "causal/model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace causal {

inline constexpr std::size_t kDefaultModelBudget = 10'000'000;

/// The small signature a formula is decided over. Its only exogenous
/// variable is `U_star`, whose values t1, t2, ... stand for the context
/// tuples the formula mentions (plus `dummy` when a leaf without atoms must
/// also see the contexts the formula never names). For the general class an
/// extra endogenous `X_star` is added when the original signature has
/// endogenous variables the formula does not mention.
struct ReducedSignature {
    Signature signature;
    std::vector<VarIndex> kept;                 ///< original index of reduced endogenous variable i
    std::map<Context, ValueIndex> atom_rewrite; ///< original context -> U_star value
    std::optional<VarIndex> fresh;              ///< index of X_star
    bool dummy = false;
};

struct Reduction {
    ReducedSignature reduced;
    Formula formula = Formula::constant(true);
};

/// Restricts `sig` to what `f` mentions. When `f` mentions no endogenous
/// variable at all, the first one (two for the general class) is kept so
/// the model space is not empty.
Reduction reduce(const Formula& f, const Signature& sig, ModelClass cls);

/// Number of models over `sig`, or nothing when it does not fit in 64 bits.
std::optional<std::size_t> model_count(const Signature& sig);

/// Visits every model over `sig` in canonical order: equation output vectors
/// over their input grids, first variable and first cell most significant,
/// starting from all zeros. `visit` returns false to stop. Returns the
/// number of models visited; throws BudgetExceeded once more than `budget`
/// would be needed.
std::size_t for_each_model(const Signature& sig, const std::function<bool(const CausalModel&)>& visit,
                           std::size_t budget = kDefaultModelBudget);

struct ModelStream {
    std::vector<CausalModel> models; ///< members of the class, canonical order
    std::size_t examined = 0;        ///< models looked at, members or not
    bool complete = true;            ///< false when `limit` stopped the scan
};

ModelStream enumerate_models(const Signature& sig, ModelClass cls, std::size_t limit = kDefaultModelBudget);

enum class Verdict { sat, unsat, budget_exceeded };

std::string to_string(Verdict v);

struct DecisionOutcome {
    Verdict verdict = Verdict::unsat;
    std::optional<CausalModel> witness; ///< first satisfying model in the scanned space
    std::size_t models_examined = 0;
    std::optional<Reduction> reduction; ///< set when the scan ran over a reduced signature
};

/// Reduces, then scans the reduced model space for a member of `cls`
/// satisfying `f`. The witness lives over the reduced signature.
DecisionOutcome satisfiable(const Formula& f, const Signature& sig, ModelClass cls,
                            std::size_t budget = kDefaultModelBudget);

/// Scans the models over `sig` itself, without reduction. `admit` further
/// restricts the class (for example to models respecting a causal order).
DecisionOutcome satisfiable_in(const Formula& f, const Signature& sig, ModelClass cls,
                               std::size_t budget = kDefaultModelBudget,
                               const std::function<bool(const CausalModel&)>& admit = {});

enum class Validity { valid, invalid, budget_exceeded };

std::string to_string(Validity v);

struct ValidityOutcome {
    Validity verdict = Validity::valid;
    std::optional<CausalModel> countermodel;
    std::size_t models_examined = 0;
    std::optional<Reduction> reduction;
};

/// `f` is valid iff `!f` is unsatisfiable.
ValidityOutcome valid(const Formula& f, const Signature& sig, ModelClass cls, std::size_t budget = kDefaultModelBudget);

ValidityOutcome valid_in(const Formula& f, const Signature& sig, ModelClass cls,
                         std::size_t budget = kDefaultModelBudget,
                         const std::function<bool(const CausalModel&)>& admit = {});

} // namespace causal
