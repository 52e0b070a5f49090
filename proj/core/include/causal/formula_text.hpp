#pragma once

#include "causal/error.hpp"
#include "causal/formula.hpp"

#include <string>
#include <string_view>

namespace causal {

// Grammar (whitespace-insensitive):
//
//   formula := iff
//   iff     := imp ('<->' imp)*
//   imp     := disj ('->' imp)?
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '!' unary | leaf | '(' formula ')' | 'true' | 'false'
//   leaf    := '[' pins ']' '(' inner ')' | '<' pins '>' '(' inner ')'
//   pins    := empty | VAR '<-' VALUE (',' VAR '<-' VALUE)*
//   inner   := the same connectives over atoms, 'true' and 'false'
//   atom    := VAR '(' ctx ')' '=' VALUE
//   ctx     := empty | EXOVAR '=' VALUE (',' EXOVAR '=' VALUE)*

/// Parses and validates against `sig`. Throws ParseError with a position for
/// syntax errors and for every semantic violation (unknown variable,
/// out-of-domain value, repeated pin, partial or mixed context, atom outside
/// a box).
Formula parse_formula(std::string_view text, const Signature& sig, SourcePosition base = {});

Inner parse_inner(std::string_view text, const Signature& sig);

/// Canonical text. Not-nodes are always parenthesized; `&`/`|` chains print
/// flat when left-nested; `!a | b` prints as `a -> b`.
std::string print_formula(const Formula& f, const Signature& sig);
std::string print_inner(const Inner& body, const Signature& sig);
std::string print_intervention(const InterventionList& iv, const Signature& sig);
std::string print_context(const Context& ctx, const Signature& sig);
std::string print_atom(const Atom& atom, const Signature& sig);

} // namespace causal
