#include "lexer.hpp"

#include <array>
#include <cctype>

namespace causal::detail {

namespace {

// Longest symbols first so that `<->` wins over `<-` wins over `<`.
constexpr std::array<std::string_view, 18> kSymbols = {
    "<->", "<-", "->", "[", "]", "<", ">", "(", ")", "{", "}", ",", ";", ":", "=", "!", "&", "|",
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool digit(char c)
{
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

} // namespace

std::vector<Token> tokenize(std::string_view text, SourcePosition base)
{
    std::vector<Token> out;
    SourcePosition pos = base;
    std::size_t i = 0;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            ++pos.offset;
            if (text[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            }
            else {
                ++pos.column;
            }
        }
    };

    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        Token tok;
        tok.pos = pos;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) {
                ++j;
            }
            tok.kind = TokenKind::identifier;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        if (digit(c) || (c == '-' && i + 1 < text.size() && digit(text[i + 1]))) {
            std::size_t j = i + 1;
            while (j < text.size() && digit(text[j])) {
                ++j;
            }
            if (j < text.size() && ident_char(text[j])) {
                throw ParseError("malformed number", pos);
            }
            tok.kind = TokenKind::integer;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        bool matched = false;
        for (auto sym : kSymbols) {
            if (text.substr(i, sym.size()) == sym) {
                tok.kind = TokenKind::symbol;
                tok.text = std::string(sym);
                advance(sym.size());
                out.push_back(std::move(tok));
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
    Token end;
    end.kind = TokenKind::end;
    end.pos = pos;
    out.push_back(std::move(end));
    return out;
}

std::string describe(const Token& t)
{
    switch (t.kind) {
    case TokenKind::end:
        return "end of input";
    case TokenKind::symbol:
        return "'" + t.text + "'";
    case TokenKind::integer:
        return "number '" + t.text + "'";
    case TokenKind::identifier:
        return "'" + t.text + "'";
    }
    return "token";
}

void TokenStream::fail_at(const Token& t, const std::string& message)
{
    throw ParseError(message, t.pos);
}

const Token& TokenStream::expect(std::string_view sym)
{
    if (!peek().is(sym)) {
        fail("expected '" + std::string(sym) + "' but found " + describe(peek()));
    }
    return next();
}

const Token& TokenStream::expect_word(std::string_view word)
{
    if (!peek().is_word(word)) {
        fail("expected '" + std::string(word) + "' but found " + describe(peek()));
    }
    return next();
}

const Token& TokenStream::expect_identifier(std::string_view what)
{
    if (peek().kind != TokenKind::identifier) {
        fail("expected " + std::string(what) + " but found " + describe(peek()));
    }
    return next();
}

const Token& TokenStream::expect_value(std::string_view what)
{
    if (!peek().is_value()) {
        fail("expected " + std::string(what) + " but found " + describe(peek()));
    }
    return next();
}

} // namespace causal::detail
