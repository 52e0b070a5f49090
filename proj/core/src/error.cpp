#include "causal/error.hpp"

#include <sstream>

namespace causal {

std::string to_string(const SourcePosition& pos)
{
    std::ostringstream out;
    out << "line " << pos.line << ", column " << pos.column;
    return out.str();
}

ParseError::ParseError(const std::string& message, SourcePosition pos)
    : std::runtime_error(to_string(pos) + ": " + message), _bare(message), _pos(pos)
{
}

namespace {

std::string join_problems(const std::vector<std::string>& problems)
{
    std::string text = "validation failed";
    for (const auto& p : problems) {
        text += "\n  - ";
        text += p;
    }
    return text;
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), _problems(std::move(problems))
{
}

BudgetExceeded::BudgetExceeded(const std::string& what, std::size_t progress)
    : std::runtime_error(what + " (budget exceeded after " + std::to_string(progress) + ")"), _progress(progress)
{
}

} // namespace causal
