#pragma once

#include <string>
#include <vector>

#include "genkf/connection.hpp"
#include "genkf/holomorphic.hpp"
#include "genkf/random.hpp"
#include "genkf/structures.hpp"

namespace genkf {

// ---- symbol sequence at one covector ----

struct SymbolMaps {
    std::vector<int> dims;       // real dimensions of B^0 .. B^{2n}
    std::vector<MatR> maps;      // maps[i]: B^i -> B^{i+1}
    MatR kernel_reference;       // columns f (x) theta, f over a basis of u(r)
};

// theta is a real covector (2n entries); psi is the U^{-n} generator of J2.
SymbolMaps symbol_maps(int r, const GCStructure& J1, const GradedForm& psi, const VecR& theta);

struct SymbolReport {
    VecR theta;
    std::vector<int> dims;
    std::vector<int> ranks;      // rank of maps[i]
    std::vector<bool> exact;     // exactness at B^0 .. B^{2n}
    double composition = 0.0;    // max |maps[i+1] maps[i]|
    int kernel_dim_B1 = 0;
    double kernel_fit = 0.0;     // distance of ker(maps[1]) from {f theta}
    int alternating_sum = 0;
    double plus_pairing = 0.0;   // <theta^{1,0}_+, theta^{0,1}_+>
    bool all_exact() const;
};

SymbolReport symbol_report(int r, const GKPair& pair, const VecR& theta);
// Runs `trials` random theta; returns one report per trial.
std::vector<SymbolReport> symbol_exactness(int n, int r, const GCStructure& J1, const GCStructure& J2,
                                           int trials, Rng& rng);
// Same, with one caller-chosen theta first (rejects theta = 0).
std::vector<SymbolReport> symbol_exactness(int n, int r, const GCStructure& J1, const GCStructure& J2,
                                           const VecR& theta, int trials, Rng& rng);

// (V^{1,0}) component of theta_+ and its pairing with the conjugate
cd plus_pairing(const GKPair& pair, const VecR& theta);

// Herm part after U^{-n} projection vs U^{-n} projection of the Herm part in
// the psi-adapted real structure; returns the max difference.
double herm_projection_commutator(int r, const GCStructure& J2, Rng& rng);

// ---- Kahler specialisations ----

// Lambda_omega X = (1/2) sum_{mu nu} (W^{-1})_{nu mu} X_{mu nu}, with Lambda omega = n
MatField lambda_contract(const std::vector<std::vector<MatField>>& X, const MatR& W);
std::vector<std::vector<MatField>> field_strength_matrix(const GenConnection& c);

// V^{1,0} = (V - i J V)/2 componentwise, J = compatible_complex_structure(W)
std::vector<MatField> v_one_zero(const GenConnection& c, const MatR& W);
// sum_{mu nu} g_{mu nu} [V10^mu, (V10^nu)^dagger], g = J^T W
MatField cohiggs_bracket(const GenConnection& c, const MatR& W);

// kCoHiggsField i Lambda F + kCoHiggsBracket sum[V10, V10^*] - lambda; b = 0,
// psi = e^{i omega}. Throws if dbar_residual exceeds holo_tol.
Residual cohiggs_residual(const GenConnection& c, const MatR& W, double lambda, double holo_tol = 1e-8);

// kLineScale (1/i) Lambda (F_A + c i L_v omega), r = 1, V = i v
MatField line_bundle_K(const GenConnection& c, const MatR& W, double coupling);

struct KRCheck {
    double norm = 0.0;          // |F_A + c i L_v omega - i omega| (L2 of coefficients)
    double floor = 0.0;         // |i omega|
    double eh_residual = 0.0;   // of D^A + i v wrt e^{(c+i) omega}, lambda = lambda_kr
    double lambda_kr = 0.0;     // kLineScale * n
    double holomorphy = 0.0;    // dbar_residual of (A, i v)
};

// A and flux taken from `conn` (r = 1); v real.
KRCheck kr_soliton_check(const GenConnection& conn, const std::vector<std::vector<double>>& v, const MatR& W,
                         double coupling);

// ---- abelian solver ----

struct SolveOptions {
    int max_iter = 10000;
    double tol = 1e-8;
    bool has_lambda = false;
    double lambda = 0.0;
};

struct FlowTrace {
    int iterations = 0;
    std::vector<double> residual_history;
    double step_size = 0.0;
    bool converged = false;
    double lambda = 0.0;
    int step_halvings = 0;
    std::string stop_reason; // "converged", "stagnated", "max_iter", "step_collapse"
};

struct SolveResult {
    GenConnection conn;
    FlowTrace trace;
};

// Least-squares descent on |K(A,V) - lambda|^2 for r = 1 (conjugate gradients
// on the normal equations of the affine residual map).
SolveResult solve_eh_line(const GenConnection& init, const FormField& psi, const SolveOptions& opts);

} // namespace genkf
