#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace causal {

/// Location inside a text input. Lines and columns are 1-based.
struct SourcePosition {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string to_string(const SourcePosition& pos);

/// Malformed text input: syntax, unknown names, out-of-domain tokens.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourcePosition pos);

    [[nodiscard]] const SourcePosition& position() const noexcept { return _pos; }
    [[nodiscard]] const std::string& bare_message() const noexcept { return _bare; }

private:
    std::string _bare;
    SourcePosition _pos;
};

/// A model or signature that violates a structural invariant. Carries every
/// violation found, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems);

    [[nodiscard]] const std::vector<std::string>& problems() const noexcept { return _problems; }

private:
    std::vector<std::string> _problems;
};

/// An enumeration hit its configured cap before reaching an answer.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t progress);

    [[nodiscard]] std::size_t progress() const noexcept { return _progress; }

private:
    std::size_t _progress;
};

/// Caller broke an operation's precondition (missing input, bad index, ...).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace causal
