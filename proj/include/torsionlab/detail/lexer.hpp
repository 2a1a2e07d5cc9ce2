#pragma once

// Tokenizer shared by the presentation, representation, complex and
// spectrum file formats. `#` starts a comment running to end of line.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "torsionlab/errors.hpp"

namespace torsionlab::detail {

struct Token {
    enum class Kind { identifier, number, punct, end };
    Kind kind = Kind::end;
    std::string text;
    int line = 0;
    int column = 0;

    bool is(std::string_view p) const { return kind == Kind::punct && text == p; }
    bool is_keyword(std::string_view k) const { return kind == Kind::identifier && text == k; }
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            tok.kind = Token::Kind::identifier;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            tok.kind = Token::Kind::punct;
            tok.text = "->";
            advance(2);
        } else if (is_digit(c) || ((c == '-' || c == '+' || c == '.') && i + 1 < src.size() &&
                                   (is_digit(src[i + 1]) || (src[i + 1] == '.' && i + 2 < src.size() && is_digit(src[i + 2]))))) {
            std::size_t j = i;
            if (src[j] == '-' || src[j] == '+') ++j;
            while (j < src.size() && is_digit(src[j])) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && is_digit(src[j])) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '-' || src[k] == '+')) ++k;
                if (k < src.size() && is_digit(src[k])) {
                    j = k;
                    while (j < src.size() && is_digit(src[j])) ++j;
                }
            }
            tok.kind = Token::Kind::number;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::string_view("^;,()[]=").find(c) != std::string_view::npos) {
            tok.kind = Token::Kind::punct;
            tok.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

/// Cursor over a token list with the expect/accept helpers the parsers need.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[k];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::Kind::end; }

    bool accept(std::string_view punct) {
        if (peek().is(punct)) {
            next();
            return true;
        }
        return false;
    }

    void expect(std::string_view punct) {
        if (!peek().is(punct)) fail("expected '" + std::string(punct) + "'");
        next();
    }

    void expect_keyword(std::string_view kw) {
        if (!peek().is_keyword(kw)) fail("expected '" + std::string(kw) + "'");
        next();
    }

    std::string expect_identifier() {
        if (peek().kind != Token::Kind::identifier) fail("expected a name");
        return next().text;
    }

    double expect_number() {
        if (peek().kind != Token::Kind::number) fail("expected a number");
        const Token& t = next();
        char* endp = nullptr;
        const double v = std::strtod(t.text.c_str(), &endp);
        if (endp != t.text.c_str() + t.text.size()) throw ParseError("malformed number '" + t.text + "'", t.line, t.column);
        return v;
    }

    long expect_integer() {
        if (peek().kind != Token::Kind::number) fail("expected an integer");
        const Token& t = next();
        long v = 0;
        const char* b = t.text.data();
        if (*b == '+') ++b;
        auto [p, ec] = std::from_chars(b, t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size())
            throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.column);
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        const std::string got = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(what + ", got " + got, t.line, t.column);
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace torsionlab::detail
