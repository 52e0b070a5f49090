#pragma once

#include "causal/model.hpp"

#include <string>
#include <string_view>

namespace causal {

/// Reads the model text format:
///
///     signature
///       exogenous U { 0 1 }
///       endogenous X { -1 0 1 }
///     equations
///       X: case U=1 -> 1; default -> 0;
///
/// Syntax only; names and values are checked by validate_model.
/// Throws ParseError. The `equations` section may be omitted.
ModelDecl parse_model_decl(std::string_view text);

/// parse_model_decl followed by CausalModel::build.
CausalModel parse_model(std::string_view text);

/// Reads just the signature section of a model (or signature-only) file.
Signature parse_signature(std::string_view text);

/// Canonical text; parse_model(print_model(m)) == m.
std::string print_model(const CausalModel& model);
std::string print_decl(const ModelDecl& decl);
std::string print_signature(const Signature& sig);

} // namespace causal
