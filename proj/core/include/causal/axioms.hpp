#pragma once

#include "causal/formula.hpp"
#include "causal/model.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace causal {

enum class Scheme { C0, C1, C2, C3, C4, C5, C6, D0, D1, D2, D3, D4, D5, D6, D7, D8, D9, D10, Ord };

std::string to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

/// Metavariable assignment for one scheme. Which fields a scheme reads:
///
///   C0, D0   formula (the tautology itself)
///   C1, D1   iv, vars {X}, values {x, x'}, context
///   C2, D2   iv, vars {X}, context
///   C3       iv, vars {W, Y}, values {w, y}, context
///   C4, D4   iv (the extra pins w⃗), vars {X}, values {x}, context
///   C5       iv, vars {Y, W}, values {y, w}, context
///   C6, D6   vars {X0, ..., Xk}
///   Ord      iv, vars {Y, W}, values {y, w}, context, order
///   D3       iv, vars {W, Y1, ..., Ym}, values {w, y1, ..., ym}, context
///   D5       iv, vars {W, Y}, values {w, y, z1, ..., zm}, context
///   D7       iv, phi, psi
///   D8       iv, phi
///   D9, D10  iv, vars {X}, context
struct Bindings {
    InterventionList iv;
    std::vector<VarIndex> vars;
    std::vector<ValueIndex> values;
    Context context;
    std::optional<Inner> phi = std::nullopt;
    std::optional<Inner> psi = std::nullopt;
    std::optional<Formula> formula = std::nullopt;
    std::vector<VarIndex> order = {};

    friend bool operator==(const Bindings&, const Bindings&) = default;
};

struct AxiomInstance {
    Scheme scheme = Scheme::C4;
    Bindings bindings;
    Formula formula = Formula::constant(true);
};

inline constexpr std::size_t kDefaultTautologyCap = 16;

/// A tautology check would need more distinct atomic units than allowed.
class TautologyCapExceeded : public std::runtime_error {
public:
    TautologyCapExceeded(std::size_t units, std::size_t cap);

    [[nodiscard]] std::size_t units() const noexcept { return _units; }

private:
    std::size_t _units;
};

/// Truth-table check treating each distinct basic causal leaf as an opaque
/// proposition.
bool tautology(const Formula& f, std::size_t cap = kDefaultTautologyCap);
/// Same, with atoms as the propositions.
bool tautology(const Inner& body, std::size_t cap = kDefaultTautologyCap);

/// The concrete formula for `scheme` under `b`. Throws ContractError on
/// ill-typed bindings or a violated side condition.
AxiomInstance instantiate(Scheme scheme, const Bindings& b, const Signature& sig);

/// Y affects Z as a formula: the disjunction over X⃗ <- x⃗ (X⃗ drawn from
/// the variables other than Y and Z), y, u and z != z' of
/// [X⃗<-x⃗, Y<-y](Z(u)=z') & [X⃗<-x⃗](Z(u)=z).
Formula affects_formula(VarIndex y, VarIndex z, const Signature& sig);

struct EnumerationBounds {
    std::size_t max_chain = std::numeric_limits<std::size_t>::max();
    std::size_t max_intervention = std::numeric_limits<std::size_t>::max();
    std::size_t inner_depth = 1;     ///< D7 bodies
    std::size_t tautology_atoms = 2; ///< D8 bodies and C0/D0 leaves
    std::size_t tautology_depth = 2; ///< D8 bodies
    std::optional<std::vector<VarIndex>> order; ///< Ord; no instances without it
};

/// Streams every instance within `bounds` in canonical order; stops early
/// when `visit` returns false.
void for_each_instance(Scheme scheme, const Signature& sig, const EnumerationBounds& bounds,
                       const std::function<bool(const AxiomInstance&)>& visit);

std::vector<AxiomInstance> enumerate_instances(Scheme scheme, const Signature& sig,
                                               const EnumerationBounds& bounds = {});

struct MatchOptions {
    std::optional<std::vector<VarIndex>> order; ///< required to match Ord
    std::size_t tautology_cap = kDefaultTautologyCap;
};

/// Bindings under which `scheme` produces `f` (pin order inside an
/// intervention list is ignored), or nothing. C0/D0/D8 go through the
/// tautology check and may throw TautologyCapExceeded.
std::optional<Bindings> is_instance(const Formula& f, Scheme scheme, const Signature& sig,
                                    const MatchOptions& options = {});

struct SoundnessMode {
    bool exhaustive = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    static SoundnessMode all() { return {}; }
    static SoundnessMode sampled(std::size_t n, std::uint64_t seed) { return {false, n, seed}; }
};

struct SoundnessReport {
    Scheme scheme = Scheme::C4;
    std::size_t checked = 0;
    std::vector<AxiomInstance> failures;
    std::optional<std::uint64_t> seed; ///< set in sampled mode
};

SoundnessReport check_soundness(const CausalModel& model, Scheme scheme, const SoundnessMode& mode = {},
                                const EnumerationBounds& bounds = {});

} // namespace causal
