#pragma once

#include "causal/axioms.hpp"
#include "causal/decide.hpp"
#include "causal/formula.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace causal {

enum class SystemId { ax_rec, ax_uniq, ax_plus, ax_plus_uniq, ax_plus_rec };

struct ProofSystem {
    SystemId id = SystemId::ax_plus;
    /// When present, Ord is available for this total order of the
    /// endogenous variables.
    std::optional<std::vector<VarIndex>> order;

    [[nodiscard]] std::string name() const;
    [[nodiscard]] std::set<Scheme> schemes() const;
    /// The class the system is sound for.
    [[nodiscard]] ModelClass model_class() const;
    /// AX_rec and AX_uniq lines must stay inside the single-atom-box language.
    [[nodiscard]] bool single_atom_language() const;
};

/// Accepts AX_rec, AX_uniq, AX+, AX+_uniq, AX+_rec.
std::optional<SystemId> parse_system(std::string_view name);
std::string to_string(SystemId id);

struct Justification {
    enum class Kind { axiom, mp };
    Kind kind = Kind::axiom;
    std::string scheme; ///< as written; may name no known scheme
    std::size_t premise = 0;     ///< mp i j: line i holds φ
    std::size_t implication = 0; ///< mp i j: line j holds φ -> ψ
};

struct ProofLine {
    std::size_t number = 0;
    Formula formula = Formula::constant(true);
    Justification why;
    SourcePosition pos;
};

struct Proof {
    ProofSystem system;
    Formula goal = Formula::constant(true);
    std::vector<ProofLine> lines;
};

/// Reads the proof text format:
///
///   order X < Y < Z                      (optional)
///   proof in AX+ of <formula>
///   1: <formula> ; axiom D4
///   2: <formula> ; mp 1 3
///   qed
///
/// Line numbers must run 1, 2, 3, ... Throws ParseError.
Proof parse_proof(std::string_view text, const Signature& sig);

enum class RejectReason {
    none,
    not_an_instance,
    not_a_tautology,
    scheme_not_in_system,
    unknown_scheme,
    dangling_reference,
    mp_shape,
    tautology_cap,
    goal_mismatch,
    language,
};

std::string to_string(RejectReason r);

struct ProofVerdict {
    bool accepted = false;
    std::size_t line = 0; ///< number of the first failing line
    RejectReason reason = RejectReason::none;
    std::string detail;
};

ProofVerdict check_proof(const Proof& p, const Signature& sig, std::size_t tautology_cap = kDefaultTautologyCap);

struct CrosscheckReport {
    bool agrees = false; ///< goal valid in the system's class
    ValidityOutcome outcome;
};

/// Decides the goal over the class the system is sound for (restricted to
/// models respecting the order when Ord is in play).
CrosscheckReport soundness_crosscheck(const Proof& p, const Signature& sig, std::size_t budget = kDefaultModelBudget);

} // namespace causal
