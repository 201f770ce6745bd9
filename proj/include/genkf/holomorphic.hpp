#pragma once

#include "genkf/connection.hpp"
#include "genkf/structures.hpp"

namespace genkf {

// Max over coordinate-exponential test sections e^{2 pi i k.x/P} e_j of the
// RMS norm of dbar(dbar s), dbar = Lbar_J part of D^A + V. J must be constant.
double dbar_residual(const GenConnection& c, const GCStructure& J);

struct CanonicalLine {
    GenConnection conn;            // r = 1: A from the covector part, V from the vector part
    std::vector<VecR> eta;         // real eta with d phi = eta.phi, 4n entries per point
    std::vector<double> rho;       // <phi, phibar>_s / <psi, psibar>_s
    double lsq_residual = 0.0;     // max pointwise |eta.phi - d phi|
    FormField curvature;           // d(A.psi)
};

// eta from d phi = eta.phi, rho from the pairing ratio and
// A = i(-J eta + (1/2) J d log rho) with J = J_phi at each point.
CanonicalLine canonical_connection_line(const FormField& phi, const FormField& psi);

} // namespace genkf
