#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causal {

using VarIndex = std::size_t;
using ValueIndex = std::size_t;

inline constexpr ValueIndex kUnassigned = static_cast<ValueIndex>(-1);

enum class VarKind { exogenous, endogenous };

/// A variable reference resolved against a signature.
struct VarRef {
    VarKind kind = VarKind::endogenous;
    VarIndex index = 0;

    friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

/// Unvalidated variable declaration as it appears in a model file.
struct VariableDecl {
    std::string name;
    std::vector<std::string> domain;

    friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

struct SignatureDecl {
    std::vector<VariableDecl> exogenous;
    std::vector<VariableDecl> endogenous;

    friend bool operator==(const SignatureDecl&, const SignatureDecl&) = default;
};

/// Values for every exogenous variable, in declaration order.
struct Context {
    std::vector<ValueIndex> values;

    friend auto operator<=>(const Context&, const Context&) = default;
};

/// One `X <- x` pin.
struct Intervention {
    VarIndex var = 0;
    ValueIndex value = 0;

    friend auto operator<=>(const Intervention&, const Intervention&) = default;
};

/// Ordered list of pins; variables must be pairwise distinct.
using InterventionList = std::vector<Intervention>;

/// The variable inventory of a causal model: exogenous and endogenous
/// variables with finite, ordered value domains. Immutable once built.
class Signature {
public:
    Signature() = default;

    /// Validates and indexes a declaration. Throws ValidationError listing
    /// every violated invariant.
    static Signature build(const SignatureDecl& decl);

    /// Every invariant violation in `decl`; empty when valid.
    static std::vector<std::string> problems(const SignatureDecl& decl);

    [[nodiscard]] std::size_t exogenous_count() const noexcept { return _decl.exogenous.size(); }
    [[nodiscard]] std::size_t endogenous_count() const noexcept { return _decl.endogenous.size(); }

    [[nodiscard]] const VariableDecl& exogenous(VarIndex i) const { return _decl.exogenous.at(i); }
    [[nodiscard]] const VariableDecl& endogenous(VarIndex i) const { return _decl.endogenous.at(i); }
    [[nodiscard]] const VariableDecl& variable(VarRef ref) const;

    [[nodiscard]] const std::string& name(VarRef ref) const { return variable(ref).name; }
    [[nodiscard]] const std::string& endogenous_name(VarIndex i) const { return endogenous(i).name; }
    [[nodiscard]] std::size_t domain_size(VarRef ref) const { return variable(ref).domain.size(); }
    [[nodiscard]] std::size_t endogenous_domain_size(VarIndex i) const { return endogenous(i).domain.size(); }

    [[nodiscard]] std::optional<VarRef> find(std::string_view name) const;
    [[nodiscard]] std::optional<VarIndex> find_endogenous(std::string_view name) const;
    [[nodiscard]] std::optional<ValueIndex> value_index(VarRef ref, std::string_view token) const;
    [[nodiscard]] const std::string& value_name(VarRef ref, ValueIndex v) const;
    [[nodiscard]] const std::string& endogenous_value(VarIndex var, ValueIndex v) const
    {
        return value_name({VarKind::endogenous, var}, v);
    }

    /// Number of distinct contexts (product of exogenous domain sizes; 1 when
    /// there are no exogenous variables).
    [[nodiscard]] std::size_t context_count() const noexcept { return _context_count; }

    /// Contexts are numbered in canonical order: first exogenous variable
    /// most significant, values in domain order.
    [[nodiscard]] Context context_at(std::size_t n) const;
    [[nodiscard]] std::size_t context_number(const Context& ctx) const;
    [[nodiscard]] std::vector<Context> contexts() const;

    [[nodiscard]] bool is_valid_context(const Context& ctx) const;

    /// Empty string when valid; otherwise the first problem.
    [[nodiscard]] std::string check_interventions(const InterventionList& iv) const;

    [[nodiscard]] const SignatureDecl& decl() const noexcept { return _decl; }

    friend bool operator==(const Signature& a, const Signature& b) { return a._decl == b._decl; }

private:
    SignatureDecl _decl;
    std::size_t _context_count = 1;
};

/// Words reserved by the text formats; not usable as variable names.
bool is_reserved_word(std::string_view word);

/// Identifier or (optionally negative) integer.
bool is_value_token(std::string_view token);
bool is_identifier(std::string_view token);

/// Subsets of `pool` in canonical order: by increasing size, then
/// lexicographically by position in `pool`.
std::vector<std::vector<VarIndex>> subsets_by_size(const std::vector<VarIndex>& pool,
                                                   std::size_t max_size = static_cast<std::size_t>(-1));

/// Every value assignment to `vars` (first variable slowest), as intervention
/// lists in the order of `vars`.
std::vector<InterventionList> assignments(const Signature& sig, const std::vector<VarIndex>& vars);

/// All intervention lists over subsets of `pool` (subsets in canonical order,
/// values in canonical order within each subset).
std::vector<InterventionList> all_interventions(const Signature& sig, const std::vector<VarIndex>& pool,
                                                std::size_t max_size = static_cast<std::size_t>(-1));

/// Endogenous indices 0..n-1 minus `excluded`.
std::vector<VarIndex> endogenous_except(const Signature& sig, std::initializer_list<VarIndex> excluded);

} // namespace causal
