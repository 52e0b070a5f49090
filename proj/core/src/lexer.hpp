#pragma once

// Tokenizer shared by the model, formula and proof readers.

#include "causal/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace causal::detail {

enum class TokenKind { identifier, integer, symbol, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    SourcePosition pos;

    [[nodiscard]] bool is(std::string_view sym) const { return kind == TokenKind::symbol && text == sym; }
    [[nodiscard]] bool is_word(std::string_view word) const
    {
        return kind == TokenKind::identifier && text == word;
    }
    [[nodiscard]] bool is_value() const { return kind == TokenKind::identifier || kind == TokenKind::integer; }
};

/// Splits `text` into tokens; `#` starts a comment running to end of line.
/// `base` shifts reported positions (used when a formula is embedded in a
/// larger file).
std::vector<Token> tokenize(std::string_view text, SourcePosition base = {});

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : _tokens(std::move(tokens)) {}

    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const
    {
        auto i = _at + ahead;
        return i < _tokens.size() ? _tokens[i] : _tokens.back();
    }
    const Token& next()
    {
        const Token& t = peek();
        if (_at + 1 < _tokens.size()) {
            ++_at;
        }
        return t;
    }
    [[nodiscard]] bool at_end() const { return peek().kind == TokenKind::end; }

    bool accept(std::string_view sym)
    {
        if (peek().is(sym)) {
            next();
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view word)
    {
        if (peek().is_word(word)) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(std::string_view sym);
    const Token& expect_word(std::string_view word);
    const Token& expect_identifier(std::string_view what);
    const Token& expect_value(std::string_view what);

    [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
    [[noreturn]] static void fail_at(const Token& t, const std::string& message);

private:
    std::vector<Token> _tokens;
    std::size_t _at = 0;
};

std::string describe(const Token& t);

} // namespace causal::detail
