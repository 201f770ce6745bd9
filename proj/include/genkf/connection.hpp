#pragma once

#include <vector>

#include "genkf/field.hpp"

namespace genkf {

// D^A + V on the trivial rank-r bundle over the torus. A[mu] and V[mu] are
// u(r)-valued. flux is an optional constant real 2-form Phi; it adds the
// central curvature i*Phi (x) id, i.e. twists by a constant-curvature line.
struct GenConnection {
    GridPtr g;
    int r = 1;
    std::vector<MatField> A, V;
    MatR flux;

    GenConnection() = default;
    GenConnection(GridPtr grid, int rank);

    int dim() const { return g->dim(); }
    double skew_defect() const;
    void check() const;

    GenConnection& operator+=(const GenConnection& o);
    GenConnection& operator*=(double s); // scales A and V, not the flux
};

GenConnection operator+(GenConnection a, const GenConnection& b);
GenConnection operator*(double s, GenConnection a);

struct PsiCheck {
    double d_norm = 0.0;
    double tolerance = 0.0;
    bool constant = false;
};

// Pointwise pure, nondegenerate and of type 0; d psi below tolerance.
// tol < 0 picks 1e-10 for constant psi and an O(h^2) bound otherwise.
PsiCheck validate_psi(const FormField& psi, double tol = -1.0);

// F_A as a degree-2 form: F_{mu nu} = D_mu A_nu - D_nu A_mu + [A_mu, A_nu] (+ i Phi)
FormField field_strength(const GenConnection& c);
// F_{mu nu} as a matrix field
MatField field_strength_component(const GenConnection& c, int mu, int nu);

// F_A.psi + d^A(V.psi) + (1/2)[V.V].psi
FormField curvature_FA(const GenConnection& c, const FormField& psi);
FormField curvature_unchecked(const GenConnection& c, const FormField& psi);

// i^{-n} <psi, psibar>_s per point; throws at the first non-positive point
std::vector<double> volume_density(const FormField& psi);

// Hermitian part of <F, psibar>_s / <psi, psibar>_s
MatField mean_curvature_K(const GenConnection& c, const FormField& psi);
MatField mean_curvature_unchecked(const GenConnection& c, const FormField& psi);
MatField hermitian_part_ratio(const FormField& X, const FormField& psi);

struct Residual {
    MatField field;
    double norm = 0.0;
};

// sqrt(sum_p |M(p)|_F^2 vol(p) cellvol)
double l2_norm(const MatField& M, const FormField& psi);
Residual eh_residual(const GenConnection& c, const FormField& psi, double lambda);

// pointwise e^b ^ psi for a degree-2 real form field b
FormField bfield_spinor(const FormField& b, const FormField& psi);
// A'_mu = A_mu - sum_nu V^nu b_{nu mu}, V' = V
GenConnection bfield_act_connection(const FormField& b, const GenConnection& c);
// (1/2) sum_{mu nu} [V^mu, V^nu] b_{nu mu}: the amount by which the curvature
// of the transformed connection differs from e^b times the old curvature.
MatField bfield_curvature_defect(const FormField& b, const GenConnection& c);
// b_{mu nu} coefficient fields
std::vector<std::vector<MatField>> two_form_components(const FormField& b);

// A' = g A g^{-1} + [g D(g^{-1})]_{u(r)}, V' = g V g^{-1}, g unitary per point
GenConnection gauge_transform(const GenConnection& c, const MatField& gauge);

FormField trace_curvature(const GenConnection& c, const FormField& psi);
cd chern_pair(const GenConnection& c, const FormField& psi);
double lambda_from_chern(const GenConnection& c, const FormField& psi);

} // namespace genkf
