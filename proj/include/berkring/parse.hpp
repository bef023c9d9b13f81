#pragma once

// Expression grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] integer | '(' ['+' | '-'] integer ')'
//   primary := integer | identifier | '(' expr ')'
// Division is only allowed by nonzero constants. The unicode minus sign and
// middle dot are accepted as '-' and '*'.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "berkring/poly.hpp"

namespace berkring {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : s_(text) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    // Returns the ASCII operator at the cursor, folding the unicode spellings.
    char peek() {
        skip();
        if (pos_ >= s_.size()) return '\0';
        if (s_.substr(pos_, 3) == "−") return '-';
        if (s_.substr(pos_, 2) == "·") return '*';
        return s_[pos_];
    }
    void advance() {
        if (s_.substr(pos_, 3) == "−")
            pos_ += 3;
        else if (s_.substr(pos_, 2) == "·")
            pos_ += 2;
        else
            ++pos_;
    }

    Poly expr() {
        Poly p = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            advance();
            Poly q = term();
            if (c == '+')
                p += q;
            else
                p -= q;
        }
        return p;
    }

    Poly term() {
        Poly p = unary();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            std::size_t at = pos_;
            advance();
            Poly q = unary();
            if (c == '*') {
                p = p * q;
            } else {
                if (!q.is_constant() || q.is_zero()) throw ParseError("division by non-constant or zero", at);
                p = p.scaled(Rational(1 / q.constant_term()));
            }
        }
        return p;
    }

    Poly unary() {
        char c = peek();
        if (c == '-' || c == '+') {
            advance();
            Poly p = unary();
            return c == '-' ? -p : p;
        }
        return power();
    }

    Poly power() {
        Poly base = primary();
        if (peek() != '^') return base;
        std::size_t at = pos_;
        advance();
        long e = exponent();
        if (e >= 0) return base.pow(static_cast<unsigned>(e));
        if (base.size() != 1) throw ParseError("negative exponent needs a monomial base", at);
        const auto& [m, c] = *base.terms().begin();
        return Poly::term(m.pow(static_cast<int>(e)), pow(c, e));
    }

    long exponent() {
        bool paren = false;
        if (peek() == '(') {
            advance();
            paren = true;
        }
        bool neg = false;
        char c = peek();
        if (c == '-' || (paren && c == '+')) {
            neg = c == '-';
            advance();
        }
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected exponent", start);
        if (pos_ - start > 6) throw ParseError("exponent too large", start);
        long e = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (paren) {
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            advance();
        }
        return neg ? -e : e;
    }

    Poly primary() {
        char c = peek();
        if (c == '(') {
            advance();
            Poly p = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            advance();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Poly(Rational(Integer(std::string(s_.substr(start, pos_ - start)), 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return Poly::variable(std::string(s_.substr(start, pos_ - start)));
        }
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_expression(std::string_view text) { return detail::ExpressionParser(text).parse(); }

}  // namespace berkring
