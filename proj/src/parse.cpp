#include "unhinge/parse.hpp"

#include <cctype>

namespace unhinge {
namespace {

// Recursive-descent parser.
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' integer)?
//   base   := literal | variable | '(' expr ')'
//   literal:= integer ('/' integer)?
// '/' is only allowed between integer literals, never between general
// factors; exponents must be non-negative integers.
class Parser {
  public:
    Parser(const std::string& text, RegistryPtr reg, MonOrder order)
        : s_(text), reg_(std::move(reg)), order_(order) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

  private:
    Poly expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                Poly t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                get();
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Poly factor() {
        Poly b = base();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            if (peek() == '-') fail("negative exponent");
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected exponent");
            unsigned long e = integer();
            return b.pow(static_cast<unsigned>(e));
        }
        return b;
    }

    Poly base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Poly p = expr();
            skip_ws();
            if (get() != ')') fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = ident();
            if (reg_->index_of(name) < 0)
                fail("unknown variable '" + name + "'");
            return Poly::variable(reg_, order_, name);
        }
        fail("unexpected character");
        return Poly::zero(reg_, order_);  // unreachable
    }

    Poly literal() {
        std::string num = digits();
        skip_ws();
        if (peek() == '/') {
            // Lookahead: only consume '/' when a denominator follows, so
            // that a stray '/' still reports a clear error.
            get();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected denominator");
            std::string den = digits();
            return Poly::constant(reg_, order_,
                                  Rational::from_string(num + "/" + den));
        }
        return Poly::constant(reg_, order_, Rational::from_string(num));
    }

    unsigned long integer() {
        std::string d = digits();
        unsigned long v = 0;
        for (char c : d) {
            v = v * 10 + static_cast<unsigned long>(c - '0');
            if (v > 1000000) fail("exponent too large");
        }
        return v;
    }

    std::string digits() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected number");
        return s_.substr(start, pos_ - start);
    }

    std::string ident() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("parse error at position " + std::to_string(pos_) +
                         ": " + msg);
    }

    const std::string& s_;
    size_t pos_ = 0;
    RegistryPtr reg_;
    MonOrder order_;
};

}  // namespace

Poly parse_poly(const std::string& text, const RegistryPtr& reg,
                MonOrder order) {
    return Parser(text, reg, order).run();
}

}  // namespace unhinge
