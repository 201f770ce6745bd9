#pragma once

#include <vector>

#include "genkf/types.hpp"

namespace genkf {

// Complex form on a 2n-dimensional real space. Coefficient c[S] multiplies
// dx^{s1}^...^dx^{sk} (s1<...<sk), where bit mu of S is axis mu (0-based).
struct GradedForm {
    int n = 1;
    std::vector<cd> c;

    GradedForm() : GradedForm(1) {}
    explicit GradedForm(int n_);

    int dim() const { return 2 * n; }
    int size() const { return static_cast<int>(c.size()); }
    cd& operator[](int S) { return c[S]; }
    const cd& operator[](int S) const { return c[S]; }

    static GradedForm one(int n);
    static GradedForm monomial(int n, unsigned S, cd coef = 1.0);
    static GradedForm dx(int n, int mu) { return monomial(n, 1u << mu); }

    GradedForm& operator+=(const GradedForm& o);
    GradedForm& operator-=(const GradedForm& o);
    GradedForm& operator*=(cd s);

    GradedForm degree_part(int k) const;
    GradedForm conj() const;
    double max_abs() const;
    bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }
};

GradedForm operator+(GradedForm a, const GradedForm& b);
GradedForm operator-(GradedForm a, const GradedForm& b);
GradedForm operator*(cd s, GradedForm a);

// v + xi in (T + T*) tensor C; layout of as_vector() is (vec || covec).
struct GenVector {
    int n = 1;
    VecC vec;
    VecC covec;

    GenVector() : GenVector(1) {}
    explicit GenVector(int n_);
    GenVector(const VecC& v, const VecC& xi);

    static GenVector from_vector(int n, const VecC& x);
    static GenVector tangent(int n, int mu);
    static GenVector cotangent(int n, int mu);
    VecC as_vector() const;
    bool is_real(double tol = 0.0) const;
    GenVector conj() const;
};

// <v+xi, u+eta> = (xi(u) + eta(v))/2, complex bilinear.
cd neutral_pair(const GenVector& a, const GenVector& b);
// Matrix Q with <x,y> = x^T Q y on (vec || covec) coordinates.
MatR neutral_matrix(int n);

unsigned popcount(unsigned S);
// Sign of dx^S ^ dx^T (0 if they overlap).
int wedge_sign(unsigned S, unsigned T);
// (-1)^{#{s in S : s < mu}}: sign of dx^mu ^ dx^S and of i_mu dx^S
inline int axis_sign(unsigned S, int mu) { return (__builtin_popcount(S & ((1u << mu) - 1u)) & 1) ? -1 : 1; }
// +1 for degree = 0,1 mod 4, -1 otherwise
inline int involution_sign(unsigned S) { return (__builtin_popcount(S) % 4) <= 1 ? 1 : -1; }

GradedForm wedge(const GradedForm& a, const GradedForm& b);
GradedForm interior(const GenVector& v, const GradedForm& a);
GradedForm interior_axis(int mu, const GradedForm& a);
GradedForm dx_wedge(int mu, const GradedForm& a);
GradedForm clifford_act(const GenVector& e, const GradedForm& a);
GradedForm involution(const GradedForm& a);
cd mukai_pair(const GradedForm& a, const GradedForm& b);

// Matrix of a -> e.a on the coefficient vector.
MatC clifford_matrix(const GenVector& e);

// Antisymmetric 2n x 2n matrix W <-> sum_{mu<nu} W(mu,nu) dx^mu ^ dx^nu.
GradedForm two_form(int n, const MatC& W);
GradedForm two_form(int n, const MatR& W);
MatC two_form_matrix(const GradedForm& b);
GradedForm exp_two_form(const GradedForm& B);
GradedForm b_transform(const GradedForm& b, const GradedForm& a);

// e^{b + i omega} for real antisymmetric matrices b, omega.
GradedForm symplectic_spinor(int n, const MatR& b, const MatR& omega);

} // namespace genkf
