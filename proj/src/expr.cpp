#include "oddconn/expr.hpp"

#include "oddconn/errors.hpp"

#include <cctype>

namespace oddconn {

namespace {

class Parser {
  public:
    Parser(ChartPtr chart, std::string_view text, std::size_t line, std::size_t column_offset)
        : chart_(std::move(chart)), text_(text), line_(line), col_offset_(column_offset) {}

    GradedPoly run() {
        skip_ws();
        if (at_end())
            fail("empty expression");
        GradedPoly e = expr();
        skip_ws();
        if (!at_end())
            fail("unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_offset_ + pos_ + 1);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    GradedPoly expr() {
        bool negate = consume('-');
        GradedPoly acc = term();
        if (negate)
            acc = -acc;
        for (;;) {
            skip_ws();
            if (consume('+'))
                acc = acc + term();
            else if (consume('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    GradedPoly term() {
        GradedPoly acc = factor();
        while (consume('*'))
            acc = acc * factor();
        return acc;
    }

    GradedPoly factor() {
        skip_ws();
        if (at_end())
            fail("expected a factor");
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return literal();
        if (c == '(') {
            ++pos_;
            GradedPoly e = expr();
            if (!consume(')'))
                fail("expected ')'");
            if (!at_end() && peek() == '^')
                fail("exponent is only allowed on an even coordinate");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return coordinate_factor();
        fail(std::string("unexpected character '") + c + "'");
    }

    GradedPoly literal() {
        Rational value(natural());
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected denominator");
            Integer den = natural();
            if (den == 0)
                fail("zero denominator");
            value /= Rational(den);
        }
        if (!at_end() && peek() == '^')
            fail("exponent is only allowed on an even coordinate");
        return GradedPoly::constant(chart_, value);
    }

    Integer natural() {
        Integer v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            ++pos_;
        }
        return v;
    }

    GradedPoly coordinate_factor() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        auto idx = chart_->index_of(name);
        if (!idx) {
            pos_ = start;
            fail("unknown coordinate '" + name + "'");
        }
        GradedPoly base = GradedPoly::coordinate(chart_, *idx);
        if (!at_end() && peek() == '^') {
            if (chart_->parity(*idx).is_odd())
                fail("odd coordinate '" + name + "' may not carry an exponent");
            ++pos_;
            skip_ws();
            if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected exponent");
            Integer k = natural();
            if (k > 255)
                fail("exponent too large");
            return base.pow(static_cast<std::uint32_t>(k));
        }
        return base;
    }

    ChartPtr chart_;
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col_offset_;
};

} // namespace

GradedPoly parse_expression(const ChartPtr& chart, std::string_view text, std::size_t line,
                            std::size_t column_offset) {
    return Parser(chart, text, line, column_offset).run();
}

} // namespace oddconn
