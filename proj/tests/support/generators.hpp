#pragma once

#include "causal/formula.hpp"
#include "causal/model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using Rng = std::mt19937_64;

/// Uniform in [0, n); stable across standard libraries.
std::size_t pick(Rng& rng, std::size_t n);

/// Small signature with mixed token styles (negative integers, identifiers)
/// and zero to two exogenous variables.
causal::Signature random_signature(Rng& rng);

causal::CausalModel random_model(const causal::Signature& sig, Rng& rng);

struct FormulaShape {
    std::size_t depth = 2;        ///< outer connectives
    std::size_t inner_depth = 2;  ///< connectives inside a box
    std::size_t max_pins = 2;
    bool diamonds = true;
    bool constants = true;        ///< allow atom-free bodies
    /// Endogenous variables the formula may mention; all when empty.
    std::vector<causal::VarIndex> vars;
};

causal::Inner random_inner(const causal::Signature& sig, const causal::Context& ctx, const FormulaShape& shape,
                           std::size_t depth, Rng& rng);

causal::Formula random_formula(const causal::Signature& sig, const FormulaShape& shape, Rng& rng);

causal::Context random_context(const causal::Signature& sig, Rng& rng);

} // namespace gen
