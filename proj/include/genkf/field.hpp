#pragma once

#include <vector>

#include "genkf/form.hpp"
#include "genkf/grid.hpp"

namespace genkf {

// r x r complex matrix per grid point (column-major storage).
struct MatField {
    GridPtr g;
    int r = 1;
    std::vector<cd> v;

    MatField() = default;
    MatField(GridPtr grid, int rank);

    std::size_t points() const { return g->points(); }
    Eigen::Map<MatC> at(std::size_t p) { return Eigen::Map<MatC>(v.data() + p * r * r, r, r); }
    Eigen::Map<const MatC> at(std::size_t p) const { return Eigen::Map<const MatC>(v.data() + p * r * r, r, r); }

    static MatField constant(GridPtr grid, const MatC& M);
    double max_abs() const;
    double skew_defect() const;  // max |M + M^dagger|
    double herm_defect() const;  // max |M - M^dagger|

    MatField& operator+=(const MatField& o);
    MatField& operator-=(const MatField& o);
    MatField& operator*=(cd s);
};

MatField operator+(MatField a, const MatField& b);
MatField operator-(MatField a, const MatField& b);
MatField operator*(cd s, MatField a);

// Form with r x r matrix coefficients per grid point; r = 1 is a plain form field.
struct FormField {
    GridPtr g;
    int r = 1;
    int D = 4; // 2^{2n}
    std::vector<cd> v;

    FormField() = default;
    FormField(GridPtr grid, int rank);

    int n() const { return g->n(); }
    std::size_t points() const { return g->points(); }
    std::size_t offset(std::size_t p, unsigned S) const { return (p * D + S) * r * r; }
    Eigen::Map<MatC> at(std::size_t p, unsigned S) { return Eigen::Map<MatC>(v.data() + offset(p, S), r, r); }
    Eigen::Map<const MatC> at(std::size_t p, unsigned S) const
    {
        return Eigen::Map<const MatC>(v.data() + offset(p, S), r, r);
    }

    // scalar (r = 1) access
    GradedForm form_at(std::size_t p) const;
    void set_form(std::size_t p, const GradedForm& f);

    static FormField constant(GridPtr grid, const GradedForm& f);
    double max_abs() const;
    FormField conj() const; // entrywise complex conjugate

    FormField& operator+=(const FormField& o);
    FormField& operator-=(const FormField& o);
    FormField& operator*=(cd s);
};

FormField operator+(FormField a, const FormField& b);
FormField operator-(FormField a, const FormField& b);
FormField operator*(cd s, FormField a);

// Central difference of a scalar field along axis mu.
std::vector<cd> diff(const std::vector<cd>& f, const TorusGrid& g, int mu);
MatField diff(const MatField& f, int mu);

// sum_mu dx^mu ^ (central difference along mu)
FormField d_field(const FormField& F);
FormField interior_axis(int mu, const FormField& F);
FormField dx_wedge(int mu, const FormField& F);
// M (x) phi for a matrix field and a scalar form field
FormField tensor(const MatField& M, const FormField& phi);
// X ^ Y with matrix products; either factor may be scalar (r = 1)
FormField wedge(const FormField& X, const FormField& Y);
// [M, X] coefficientwise
FormField commutator(const MatField& M, const FormField& X);
// sum_mu V^mu (x) i_mu phi
FormField vector_act(const std::vector<MatField>& V, const FormField& phi);
// Mukai pairing of a matrix-valued form with a scalar form field: r x r per point
MatField mukai_contract(const FormField& X, const FormField& phi);
// pointwise tr <X, Y>_s for matrix-valued forms
std::vector<cd> trace_pair(const FormField& X, const FormField& Y);
// L_v F = i_v dF + d i_v F for a real vector field v (2n component arrays)
FormField lie_derivative(const std::vector<std::vector<double>>& v, const FormField& F);
// d^A a = d a + sum_mu dx^mu ^ [A_mu, a]
FormField covariant_d(const std::vector<MatField>& A, const FormField& a);

// Riemann sum: sum_p f(p) * cell volume, reduced pairwise.
double integrate(const std::vector<double>& f, const TorusGrid& g);
cd integrate(const std::vector<cd>& f, const TorusGrid& g);

} // namespace genkf
