#pragma once

#include <string>
#include <vector>

#include "genkf/grid.hpp"

namespace genkf {

// Coefficient expressions: sums of trigonometric monomials.
//
//   expr := ['-'] term {('+'|'-') term}
//   term := number ['*' trig {'*' trig}] | trig {'*' trig}
//   trig := ('sin'|'cos') '(' [k '*'] 'x' axis ')'
//
// trig(k*x<a>) means trig(2 pi k x_a / P_a); k is an integer, axes count from 1.
class Expr {
public:
    struct Trig {
        bool sine = false;
        int k = 1;
        int axis = 0; // 0-based
    };
    struct Term {
        double coef = 1.0;
        std::vector<Trig> factors;
    };

    Expr() = default;
    explicit Expr(double c);
    static Expr parse(const std::string& text);

    double eval(const TorusGrid& g, std::size_t p) const;
    std::vector<double> sample(const TorusGrid& g) const;
    bool is_constant() const;
    double constant_value() const; // sum of constant terms
    int max_axis() const;          // largest axis used, -1 if none
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

} // namespace genkf
