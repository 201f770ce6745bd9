#pragma once

#include "genkf/connection.hpp"
#include "genkf/structures.hpp"

namespace genkf {

// Section of u(E) (x) (T + T*): the V slots hold the vector part, the A slots
// the covector part. Tangent vectors to the space of connections have this shape.
using GenSection = GenConnection;

// a.phi = sum_mu a^mu (x) i_mu phi + a_mu (x) dx^mu ^ phi
FormField section_act(const GenSection& a, const FormField& phi);

// omega(a1, a2) = -int tr <J_psi a1, a2> vol
double omega_GM(const GenSection& a1, const GenSection& a2, const FormField& psi);
// g(a1, a2) = -int tr <Ghat a1, a2> vol with Ghat = -J1 J_psi
double g_GM(const GenSection& a1, const GenSection& a2, const GCStructure& J1, const FormField& psi);
// int Im i^{-n} tr <a1.psi, a2.psibar>_s
double omega_spinor(const GenSection& a1, const GenSection& a2, const FormField& psi);

// <mu(A), xi> = int Im i^{-n} tr <xi psi, F_A(psibar)>_s
double moment_value(const GenConnection& c, const MatField& xi, const FormField& psi);
// int i tr(xi K) vol
double moment_from_K(const GenConnection& c, const MatField& xi, const FormField& psi);

// D xi: covector part d xi + [A, xi], vector part [V, xi]
GenSection covariant_derivative(const GenConnection& c, const MatField& xi);
// d^D(a.phi) = d(a.phi) + sum_{alpha beta} [A_alpha, a_beta] e_alpha.e_beta.phi
FormField generalized_d(const GenConnection& c, const GenSection& a, const FormField& phi);

// Pointwise identities at a single spinor value, over the real basis of T + T*.
// Return the max deviation for the given sign s.
double pairing_identity_defect(const GradedForm& psi, int s);
double structure_identity_defect(const GradedForm& psi, int s);

} // namespace genkf
