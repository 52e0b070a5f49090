#pragma once

#include "causal/error.hpp"
#include "causal/signature.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace causal {

inline constexpr std::size_t kDefaultSubmodelBudget = 1'000'000;

// ---------------------------------------------------------------------------
// Unvalidated declarations (what the model text format produces)

struct RowDecl {
    std::vector<std::pair<std::string, std::string>> condition;
    std::string output;
    SourcePosition pos;
};

struct EquationDecl {
    std::string target;
    std::vector<RowDecl> rows;
    std::optional<std::string> default_output;
    SourcePosition pos;
};

struct ModelDecl {
    SignatureDecl signature;
    std::vector<EquationDecl> equations;
};

struct ValidationReport {
    std::vector<std::string> problems;

    [[nodiscard]] bool ok() const noexcept { return problems.empty(); }
};

/// Checks every signature and equation-table invariant; never throws.
ValidationReport validate_model(const ModelDecl& decl);

// ---------------------------------------------------------------------------
// Equation tables

struct Literal {
    VarRef var;
    ValueIndex value = 0;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct TableRow {
    std::vector<Literal> condition;
    ValueIndex output = 0;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// F_X as an ordered list of partial-condition rows plus a default.
/// The first matching row wins.
struct EquationTable {
    VarIndex target = 0;
    std::vector<TableRow> rows;
    ValueIndex default_output = 0;

    friend bool operator==(const EquationTable&, const EquationTable&) = default;
};

/// A total assignment to every variable; the layout is all exogenous
/// variables followed by all endogenous variables, in declaration order.
using FullAssignment = std::vector<ValueIndex>;

/// Evaluates `table` on `input`. Throws ContractError when a variable the
/// table might read (anything but the target) is unassigned.
ValueIndex apply_table(const EquationTable& table, const Signature& sig, std::span<const ValueIndex> input);

// ---------------------------------------------------------------------------
// Causal models

class CausalModel {
public:
    /// Throws ValidationError carrying the full report.
    static CausalModel build(const ModelDecl& decl);

    static CausalModel from_tables(Signature sig, std::vector<EquationTable> tables);

    /// One output vector per endogenous variable over its input grid: the
    /// exogenous variables then the other endogenous variables, first
    /// variable most significant.
    static CausalModel from_functions(Signature sig, const std::vector<std::vector<ValueIndex>>& outputs);

    [[nodiscard]] const Signature& signature() const noexcept { return _sig; }
    [[nodiscard]] const EquationTable& equation(VarIndex target) const { return _tables.at(target); }
    [[nodiscard]] const std::vector<EquationTable>& equations() const noexcept { return _tables; }

    /// Fast F_target lookup; `full` must assign every variable except possibly
    /// the target itself.
    [[nodiscard]] ValueIndex evaluate(VarIndex target, std::span<const ValueIndex> full) const
    {
        const auto& strides = _strides[target];
        std::size_t cell = 0;
        for (std::size_t p = 0; p < strides.size(); ++p) {
            cell += full[p] * strides[p];
        }
        return _grid[target][cell];
    }

    /// Output vector of F_target over its input grid (see from_functions).
    [[nodiscard]] const std::vector<ValueIndex>& function(VarIndex target) const { return _grid.at(target); }

    /// Size of F_target's input grid.
    [[nodiscard]] std::size_t grid_size(VarIndex target) const { return _grid.at(target).size(); }

    [[nodiscard]] ModelDecl to_decl() const;

    friend bool operator==(const CausalModel& a, const CausalModel& b)
    {
        return a._sig == b._sig && a._tables == b._tables;
    }

private:
    void compile();

    Signature _sig;
    std::vector<EquationTable> _tables;
    std::vector<std::vector<ValueIndex>> _grid;
    std::vector<std::vector<std::size_t>> _strides;
};

/// Largest per-variable input grid the compiler accepts.
inline constexpr std::size_t kMaxGridCells = std::size_t{1} << 22;

// ---------------------------------------------------------------------------
// Submodels and solutions

/// T_{X<-x}(u): the equations left after pinning the intervened variables and
/// the context. Holds a reference to its base model.
class Submodel {
public:
    /// Throws ContractError on a duplicate or out-of-domain pin or a bad
    /// context.
    Submodel(const CausalModel& base, InterventionList iv, Context ctx);

    [[nodiscard]] const CausalModel& base() const noexcept { return *_base; }
    [[nodiscard]] const InterventionList& intervention() const noexcept { return _iv; }
    [[nodiscard]] const Context& context() const noexcept { return _ctx; }
    [[nodiscard]] const std::vector<VarIndex>& free() const noexcept { return _free; }

    /// Intervened value of `var`, or kUnassigned.
    [[nodiscard]] ValueIndex pinned(VarIndex var) const { return _pinned.at(var); }

private:
    const CausalModel* _base;
    InterventionList _iv;
    Context _ctx;
    std::vector<VarIndex> _free;
    std::vector<ValueIndex> _pinned;
};

Submodel submodel(const CausalModel& model, InterventionList iv, Context ctx);

/// Values of the free variables, indexed by endogenous variable;
/// intervened slots hold kUnassigned.
struct Solution {
    std::vector<ValueIndex> values;

    friend auto operator<=>(const Solution&, const Solution&) = default;
};

/// Every solution, in canonical order (lexicographic over free variables in
/// declaration order, values in domain order).
std::vector<Solution> solutions(const Submodel& sub);

/// Stops counting once `stop_after` solutions are found.
std::size_t count_solutions(const Submodel& sub, std::size_t stop_after = static_cast<std::size_t>(-1));

/// Re-evaluates every free-variable equation on `sol`.
bool satisfies(const Submodel& sub, const Solution& sol);

std::string format_solution(const Submodel& sub, const Solution& sol);

// ---------------------------------------------------------------------------
// Dependency structure and classification

/// True iff two inputs to F_target that differ only at `source` give
/// different outputs.
bool depends_on(const CausalModel& model, VarIndex target, VarRef source);

/// edges[y] lists every endogenous x with depends_on(x, y), ascending.
std::vector<std::vector<VarIndex>> dependency_graph(const CausalModel& model);

struct RecursionWitness {
    bool recursive = false;
    std::vector<VarIndex> order; ///< topological order when recursive
    std::vector<VarIndex> cycle; ///< closed walk v0 -> ... -> v0 otherwise
};

RecursionWitness is_recursive(const CausalModel& model);

/// Every total order of the endogenous variables under which the model is
/// recursive (linear extensions of the dependency graph), lexicographically.
std::vector<std::vector<VarIndex>> causal_orders(const CausalModel& model);

bool respects_order(const CausalModel& model, const std::vector<VarIndex>& order);

struct SolutionCountWitness {
    InterventionList intervention;
    Context context;
    std::size_t solution_count = 0;
};

struct UniquenessWitness {
    bool unique = false;
    std::optional<SolutionCountWitness> counterexample;
    std::size_t submodels_examined = 0;
};

/// Checks that every submodel (every intervened subset, every value vector,
/// every context) has exactly one solution. Subsets go by increasing size so
/// the reported counterexample is canonical. Throws BudgetExceeded past
/// `budget` submodels.
UniquenessWitness is_uniquely_solvable(const CausalModel& model, std::size_t budget = kDefaultSubmodelBudget);

enum class ModelClass { recursive, unique_solutions, general };

std::string to_string(ModelClass cls);
std::optional<ModelClass> parse_model_class(std::string_view text);

/// True when every model of class `member` is also of class `cls`.
bool class_within(ModelClass member, ModelClass cls);

struct Classification {
    ModelClass cls = ModelClass::general;
    std::vector<VarIndex> order;                       ///< recursive only
    std::vector<VarIndex> cycle;                       ///< non-recursive only
    std::optional<SolutionCountWitness> counterexample; ///< general only
};

Classification classify(const CausalModel& model, std::size_t budget = kDefaultSubmodelBudget);

/// Whether `model` belongs to `cls` (recursive < unique-solutions < general).
bool in_class(const CausalModel& model, ModelClass cls, std::size_t budget = kDefaultSubmodelBudget);

} // namespace causal
