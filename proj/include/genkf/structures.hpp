#pragma once

#include <vector>

#include "genkf/form.hpp"

namespace genkf {

struct GCStructure {
    int n = 1;
    MatR mat;

    GCStructure() = default;
    GCStructure(int n_, const MatR& m);

    // max of |J^2 + I| and |J^T Q J - Q|
    double defect() const;
    // complex bases of the -i eigenspace (L) and +i eigenspace (Lbar)
    MatC L() const;
    MatC Lbar() const;
    // projector onto Lbar along L: (I - iJ)/2
    MatC proj_Lbar() const;
    MatC proj_L() const;
};

struct PureSpinorCheck {
    int kernel_dim = 0;
    bool pure = false;
    bool nondegenerate = false;
    int type_number = -1;
    double isotropy_defect = 0.0;
};

// Columns: Euclidean-orthonormal basis of ker(e -> e.phi) in C^{4n}.
MatC spinor_kernel_matrix(const GradedForm& phi);
std::vector<GenVector> spinor_kernel(const GradedForm& phi);
PureSpinorCheck classify_spinor(const GradedForm& phi);

GCStructure gcs_from_spinor(const GradedForm& phi);
GCStructure gcs_complex(const MatR& J);
// [[0, -W^{-1}], [W, 0]]; W holds the coefficients of omega.
GCStructure gcs_symplectic(const MatR& W);
// J = W (W^T W)^{-1/2}; g = omega(J., .) is positive and (gcs_complex(J),
// gcs_symplectic(W)) is generalized Kahler.
MatR compatible_complex_structure(const MatR& W);
// Conjugation by exp(b) on T + T*: [[I,0],[B,I]] J [[I,0],[-B,I]].
GCStructure bfield_conjugate(const GCStructure& J, const MatR& B);

// Spin action of J on forms; eigenvalue ik on U^k, U^{-n} = line of the pure spinor.
MatC spin_operator(const GCStructure& J);
GradedForm u_project(const GCStructure& J, int k, const GradedForm& a);
MatC u_projector(const GCStructure& J, int k);
int u_multiplicity(const GCStructure& J, int k);
// generator of U^{-n}, scaled so its largest coefficient is real positive
GradedForm spinor_from_gcs(const GCStructure& J);

struct GKPair {
    GCStructure J1, J2;
    MatR Ghat;
    MatR Gform; // Ghat^T Q
    double min_eig = 0.0;
    MatR Cplus, Cminus;                  // real bases of the +-1 eigenspaces of Ghat
    MatC L1L2, L1L2bar, L1barL2, L1barL2bar; // intersections of eigenspaces
};

GKPair gk_validate(const GCStructure& J1, const GCStructure& J2);

} // namespace genkf
