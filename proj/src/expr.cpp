#include "genkf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "genkf/types.hpp"

namespace genkf {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    std::vector<Expr::Term> expr()
    {
        std::vector<Expr::Term> out;
        skip();
        double sign = 1.0;
        if (peek() == '-') {
            ++i_;
            sign = -1.0;
        } else if (peek() == '+') {
            ++i_;
        }
        while (true) {
            Expr::Term t = term();
            t.coef *= sign;
            out.push_back(t);
            skip();
            if (peek() == '+') sign = 1.0;
            else if (peek() == '-') sign = -1.0;
            else break;
            ++i_;
        }
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return out;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::Parse, "expression \"" + s_ + "\": " + what + " at position " + std::to_string(i_));
    }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    bool starts(const char* w) const { return s_.compare(i_, std::char_traits<char>::length(w), w) == 0; }
    void expect(char c)
    {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    double number()
    {
        skip();
        const char* begin = s_.c_str() + i_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        i_ += static_cast<std::size_t>(end - begin);
        if (!std::isfinite(v)) fail("number out of range");
        return v;
    }

    int integer()
    {
        skip();
        std::size_t j = i_;
        if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
        if (j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j]))) fail("expected an integer");
        const char* begin = s_.c_str() + i_;
        char* end = nullptr;
        long v = std::strtol(begin, &end, 10);
        i_ += static_cast<std::size_t>(end - begin);
        return static_cast<int>(v);
    }

    Expr::Trig trig()
    {
        skip();
        Expr::Trig t;
        if (starts("sin")) t.sine = true;
        else if (!starts("cos")) fail("expected sin or cos");
        i_ += 3;
        expect('(');
        skip();
        if (peek() != 'x') {
            t.k = integer();
            expect('*');
            skip();
        }
        if (peek() != 'x') fail("expected x<axis>");
        ++i_;
        const int axis = integer();
        if (axis < 1) fail("axes count from 1");
        t.axis = axis - 1;
        expect(')');
        return t;
    }

    Expr::Term term()
    {
        skip();
        Expr::Term t;
        if (starts("sin") || starts("cos")) {
            t.factors.push_back(trig());
        } else {
            t.coef = number();
            skip();
            if (peek() != '*') return t;
            ++i_;
            t.factors.push_back(trig());
        }
        while (true) {
            skip();
            if (peek() != '*') break;
            ++i_;
            t.factors.push_back(trig());
        }
        return t;
    }
};

} // namespace

Expr::Expr(double c) { terms_.push_back(Term{c, {}}); }

Expr Expr::parse(const std::string& text)
{
    Expr e;
    e.terms_ = Parser(text).expr();
    return e;
}

double Expr::eval(const TorusGrid& g, std::size_t p) const
{
    double total = 0.0;
    for (const auto& t : terms_) {
        double v = t.coef;
        for (const auto& f : t.factors) {
            const double arg = 2.0 * std::numbers::pi * f.k * g.x(p, f.axis) / g.period(f.axis);
            v *= f.sine ? std::sin(arg) : std::cos(arg);
        }
        total += v;
    }
    return total;
}

std::vector<double> Expr::sample(const TorusGrid& g) const
{
    require(max_axis() < g.dim(), ErrorKind::InvalidArgument,
            "expression uses axis x" + std::to_string(max_axis() + 1) + " on a " + std::to_string(g.dim()) +
                "-dimensional torus");
    std::vector<double> out(g.points());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = eval(g, p);
    return out;
}

bool Expr::is_constant() const
{
    for (const auto& t : terms_)
        for (const auto& f : t.factors)
            if (f.sine || f.k != 0) return false;
    return true;
}

double Expr::constant_value() const
{
    double c = 0.0;
    for (const auto& t : terms_)
        if (t.factors.empty()) c += t.coef;
    return c;
}

int Expr::max_axis() const
{
    int a = -1;
    for (const auto& t : terms_)
        for (const auto& f : t.factors) a = std::max(a, f.axis);
    return a;
}

} // namespace genkf
