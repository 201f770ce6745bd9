#include "genkf/suite.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "genkf/analysis.hpp"
#include "genkf/calibration.hpp"
#include "genkf/moment.hpp"
#include "genkf/sample.hpp"

namespace genkf {

Check upper_check(const std::string& name, const std::string& anchor, double err, double tol)
{
    return Check{name, anchor, "<", tol, err, std::isfinite(err) && err < tol};
}

Check lower_check(const std::string& name, const std::string& anchor, double value, double floor)
{
    return Check{name, anchor, ">", floor, value, std::isfinite(value) && value > floor};
}

bool SuiteResult::all_pass() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void SuiteResult::append(const SuiteResult& o)
{
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    info.insert(info.end(), o.info.begin(), o.info.end());
}

namespace {

int binom(int m, int k)
{
    if (k < 0 || k > m) return 0;
    int c = 1;
    for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
    return c;
}

VecC coeffs(const GradedForm& a) { return Eigen::Map<const VecC>(a.c.data(), a.size()); }

MatR random_symplectic(int n, Rng& rng) { return darboux(n) + 0.2 * rng.antisym(2 * n); }

// dx^0 - i dx^1 ^ dx^2 - i dx^3 ^ ...: holomorphic volume form for compatible_complex_structure(darboux)
GradedForm holomorphic_volume(int n, double sign)
{
    GradedForm out = GradedForm::one(n);
    for (int i = 0; i < n; ++i) {
        GradedForm f(n);
        f.c[1u << (2 * i)] = 1.0;
        f.c[1u << (2 * i + 1)] = cd(0.0, sign);
        out = wedge(out, f);
    }
    return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

FormField random_form_field(GridPtr g, int r, Rng& rng)
{
    FormField X(g, r);
    for (unsigned S = 0; S < static_cast<unsigned>(X.D); ++S)
        for (int e = 0; e < r * r; ++e) {
            auto re = smooth_function(*g, rng);
            auto im = smooth_function(*g, rng);
            for (std::size_t p = 0; p < g->points(); ++p) X.v[X.offset(p, S) + e] = cd(re[p], im[p]);
        }
    return X;
}

} // namespace

SuiteResult algebra_checks(int n, int trials, Rng& rng)
{
    double rel_err = 0, sym = 0, adj = 0, binv = 0, mat = 0;
    const int sgn = n % 2 ? -1 : 1;
    for (int t = 0; t < trials; ++t) {
        GenVector e1 = rng.complex_genvector(n), e2 = rng.complex_genvector(n);
        GradedForm a = rng.form(n), b = rng.form(n);
        GradedForm B = two_form(n, MatR(0.5 * rng.antisym(2 * n)));
        GradedForm lhs = clifford_act(e1, clifford_act(e2, a)) + clifford_act(e2, clifford_act(e1, a));
        rel_err = std::max(rel_err, (lhs - (2.0 * neutral_pair(e1, e2)) * a).max_abs());
        sym = std::max(sym, std::abs(mukai_pair(a, b) - double(sgn) * mukai_pair(b, a)));
        adj = std::max(adj, std::abs(mukai_pair(clifford_act(e1, a), b) + mukai_pair(a, clifford_act(e1, b))));
        binv = std::max(binv, std::abs(mukai_pair(b_transform(B, a), b_transform(B, b)) - mukai_pair(a, b)));
        mat = std::max(mat, (clifford_matrix(e1) * coeffs(a) - coeffs(clifford_act(e1, a))).cwiseAbs().maxCoeff());
    }
    const std::string tag = "n" + std::to_string(n);
    SuiteResult out;
    out.checks.push_back(upper_check("clifford_relation_" + tag, "clifford-relation", rel_err, 1e-12));
    out.checks.push_back(upper_check("mukai_symmetry_" + tag, "mukai-symmetry", sym, 1e-12));
    out.checks.push_back(upper_check("clifford_adjunction_" + tag, "clifford-adjunction", adj, 1e-12));
    out.checks.push_back(upper_check("bfield_pairing_invariance_" + tag, "bfield-pairing-invariance", binv, 1e-12));
    out.checks.push_back(upper_check("clifford_matrix_agreement_" + tag, "clifford-action", mat, 1e-12));
    return out;
}

SuiteResult structure_checks(int n, Rng& rng)
{
    SuiteResult out;
    const std::string tag = "_n" + std::to_string(n);
    const MatR W = random_symplectic(n, rng);
    const MatR B = 0.5 * rng.antisym(2 * n);
    const GradedForm psi0 = symplectic_spinor(n, B, W);
    const GCStructure J = gcs_from_spinor(psi0);
    out.checks.push_back(upper_check("gcs_square_and_pairing" + tag, "gcs-orthogonal-complex-structure", J.defect(),
                                     1e-10));

    PureSpinorCheck pc = classify_spinor(psi0);
    const double bad = (pc.kernel_dim != 2 * n) + !pc.pure + !pc.nondegenerate + (pc.type_number != 0);
    out.checks.push_back(upper_check("pure_spinor_type" + tag, "symplectic-type-pure-spinor", bad, 0.5));

    const GradedForm eiw = symplectic_spinor(n, MatR::Zero(2 * n, 2 * n), W);
    out.checks.push_back(upper_check("roundtrip_symplectic" + tag, "symplectic-gcs-from-spinor",
                                     (gcs_from_spinor(eiw).mat - gcs_symplectic(W).mat).cwiseAbs().maxCoeff(), 1e-10));
    const MatR Jstd = -compatible_complex_structure(darboux(n));
    out.checks.push_back(upper_check(
        "roundtrip_complex" + tag, "complex-gcs-from-spinor",
        (gcs_from_spinor(holomorphic_volume(n, 1.0)).mat - gcs_complex(Jstd).mat).cwiseAbs().maxCoeff(), 1e-10));
    {
        GradedForm s = spinor_from_gcs(gcs_symplectic(W));
        VecC a = coeffs(eiw), v = coeffs(s);
        const cd c = a.dot(v) / a.squaredNorm();
        out.checks.push_back(upper_check("roundtrip_spinor_line" + tag, "spinor-from-gcs",
                                         (v - c * a).cwiseAbs().maxCoeff() / v.cwiseAbs().maxCoeff(), 1e-10));
    }
    {
        const int D = 1 << (2 * n);
        MatC sum = MatC::Zero(D, D);
        double mult = 0.0;
        for (int k = -n; k <= n; ++k) {
            sum += u_projector(J, k);
            mult += std::abs(u_multiplicity(J, k) - binom(2 * n, n + k));
        }
        out.checks.push_back(upper_check("u_resolution_of_identity" + tag, "u-decomposition",
                                         (sum - MatC::Identity(D, D)).cwiseAbs().maxCoeff(), 1e-10));
        out.checks.push_back(upper_check("u_multiplicities" + tag, "u-decomposition-dimensions", mult, 0.5));
        VecC v = coeffs(psi0);
        out.checks.push_back(upper_check("spin_eigenvalue_on_spinor_line" + tag, "u-minus-n-line",
                                         (spin_operator(J) * v + cd(0.0, n) * v).cwiseAbs().maxCoeff() /
                                             v.cwiseAbs().maxCoeff(),
                                         1e-10));
    }
    {
        GCStructure lhs = gcs_from_spinor(b_transform(two_form(n, B), eiw));
        GCStructure rhs = bfield_conjugate(gcs_from_spinor(eiw), B);
        out.checks.push_back(upper_check("bfield_conjugation" + tag, "bfield-transform-of-gcs",
                                         (lhs.mat - rhs.mat).cwiseAbs().maxCoeff(), 1e-10));
    }
    {
        GKPair pair = gk_validate(gcs_complex(compatible_complex_structure(W)), gcs_symplectic(W));
        const MatR& J1 = pair.J1.mat;
        const MatR& J2 = pair.J2.mat;
        out.checks.push_back(upper_check("gk_commute" + tag, "generalized-kahler-commuting",
                                         (J1 * J2 - J2 * J1).cwiseAbs().maxCoeff(), 1e-10));
        out.checks.push_back(lower_check("gk_positivity" + tag, "generalized-kahler-metric", pair.min_eig, 1e-8));
        bool rejected = false;
        try {
            gk_validate(pair.J1, pair.J1);
        } catch (const Error&) {
            rejected = true;
        }
        out.checks.push_back(upper_check("gk_rejects_indefinite" + tag, "generalized-kahler-metric",
                                         rejected ? 0.0 : 1.0, 0.5));
    }
    return out;
}

SuiteResult field_checks(GridPtr g, int r, const GradedForm& psi0, Rng& rng)
{
    SuiteResult out;
    const int n = g->n();
    FormField X = random_form_field(g, r, rng);
    out.checks.push_back(upper_check("d_squared_zero", "exterior-derivative", d_field(d_field(X)).max_abs(), 1e-10));

    const unsigned top = (1u << (2 * n)) - 1;
    FormField dX = d_field(X);
    std::vector<cd> topc(g->points());
    for (std::size_t p = 0; p < g->points(); ++p) topc[p] = dX.at(p, top)(0, 0);
    out.checks.push_back(upper_check("discrete_stokes", "stokes-on-torus", std::abs(integrate(topc, *g)), 1e-12));

    FormField psi = FormField::constant(g, psi0);
    GenConnection c = random_connection(g, r, rng, 0.6, 0.6);
    FormField F = curvature_unchecked(c, psi);
    GCStructure J = gcs_from_spinor(psi0);
    double stray = 0.0;
    for (int k = -n; k <= n; ++k) {
        if (k == -n || k == -n + 2) continue;
        MatC P = u_projector(J, k);
        for (std::size_t p = 0; p < g->points(); ++p)
            for (int e = 0; e < r * r; ++e) {
                VecC v(F.D);
                for (int S = 0; S < F.D; ++S) v(S) = F.v[F.offset(p, S) + e];
                stray = std::max(stray, (P * v).cwiseAbs().maxCoeff());
            }
    }
    out.checks.push_back(upper_check("curvature_type", "curvature-in-u-minus-n-and-u-minus-n-plus-2", stray, 1e-10));
    return out;
}

SuiteResult covariance_checks(GridPtr g, int r, const GradedForm& psi0, const MatR& B, Rng& rng)
{
    SuiteResult out;
    const int n = g->n();
    FormField psi = FormField::constant(g, psi0);
    FormField b = constant_two_form(g, B);
    GenConnection c = random_connection(g, r, rng, 0.7, 0.7);
    GenConnection cb = bfield_act_connection(b, c);
    FormField psib = bfield_spinor(b, psi);
    FormField eb = FormField::constant(g, exp_two_form(two_form(n, B)));
    FormField diff = curvature_unchecked(cb, psib) - wedge(eb, curvature_unchecked(c, psi));
    MatField defect = bfield_curvature_defect(b, c);
    out.checks.push_back(upper_check("bfield_curvature_covariance", "bfield-covariance", diff.max_abs(), 1e-10));
    out.checks.push_back(upper_check("bfield_curvature_covariance_with_bracket_term", "bfield-covariance-corrected",
                                     (diff - tensor(defect, psib)).max_abs(), 1e-10));
    out.checks.push_back(upper_check("eh_bfield_invariance", "eh-bfield-invariance",
                                     (mean_curvature_K(cb, psib) - mean_curvature_K(c, psi)).max_abs(), 1e-10));
    out.info.push_back({"bfield_bracket_term_size", defect.max_abs(),
                        "(1/2) sum [V^mu, V^nu] b_{nu mu}; vanishes for r = 1"});
    return out;
}

SuiteResult specialization_checks(GridPtr g, int r, const MatR& W, Rng& rng)
{
    SuiteResult out;
    const int m = g->dim();
    const MatR zero = MatR::Zero(m, m);
    FormField psi = constant_psi(g, zero, W);

    GenConnection c = random_connection(g, r, rng, 0.7, 0.0);
    for (auto& V : c.V) V = MatField(g, r);
    MatField hym = cd(calib::kHymScale) * (-I_) * lambda_contract(field_strength_matrix(c), W);
    out.checks.push_back(
        upper_check("hym_specialization", "hermitian-yang-mills-limit", (mean_curvature_K(c, psi) - hym).max_abs(), 1e-8));

    const double coupling = 0.6;
    GenConnection cl = random_connection(g, 1, rng, 0.5, 0.5);
    FormField psil = constant_psi(g, coupling * W, W);
    out.checks.push_back(upper_check("line_bundle_specialization", "line-bundle-limit",
                                     (line_bundle_K(cl, W, coupling) - mean_curvature_K(cl, psil)).max_abs(), 1e-8));

    GenConnection cm = random_connection(g, r, rng, 0.5, 0.5);
    Residual ch = cohiggs_residual(cm, W, 0.0, std::numeric_limits<double>::infinity());
    out.checks.push_back(upper_check("cohiggs_specialization", "co-higgs-limit",
                                     (ch.field - mean_curvature_K(cm, psi)).max_abs(), 1e-8));

    // constant nilpotent Higgs field N d/dw, compared with the hand commutator [N, N^dagger]
    {
        MatC N = MatC::Zero(2, 2);
        N(0, 1) = 1.0;
        MatC NNd = MatC::Zero(2, 2);
        NNd(0, 0) = 1.0;
        NNd(1, 1) = -1.0;
        MatR J = compatible_complex_structure(W);
        MatC P10 = 0.5 * (MatC::Identity(m, m) - I_ * J.cast<cd>());
        VecC w = P10.col(0);
        GenConnection cn(g, 2);
        for (int mu = 0; mu < m; ++mu)
            cn.V[mu] = MatField::constant(g, MatC(w(mu) * N - std::conj(w(mu)) * N.adjoint()));
        const MatR gm = J.transpose() * W;
        const cd scale = (w.transpose() * gm.cast<cd>() * w.conjugate())(0);
        MatC oracle = scale * NNd;
        MatField br = cohiggs_bracket(cn, W);
        double e1 = 0.0, e2 = 0.0;
        MatField K = mean_curvature_K(cn, psi);
        for (std::size_t p = 0; p < g->points(); ++p) {
            e1 = std::max(e1, (br.at(p) - oracle).cwiseAbs().maxCoeff());
            e2 = std::max(e2, (K.at(p) - calib::kCoHiggsBracket * oracle).cwiseAbs().maxCoeff());
        }
        out.checks.push_back(upper_check("cohiggs_nilpotent_bracket", "co-higgs-bracket", e1, 1e-12));
        out.checks.push_back(upper_check("cohiggs_nilpotent_mean_curvature", "co-higgs-limit", e2, 1e-8));
        out.checks.push_back(upper_check("cohiggs_nilpotent_holomorphic", "generalized-holomorphic-structure",
                                         dbar_residual(cn, gcs_complex(J)), 1e-8));
    }
    return out;
}

SuiteResult chern_checks(GridPtr g, int r, const GradedForm& psi0, Rng& rng)
{
    SuiteResult out;
    const int m = g->dim();
    FormField psi = FormField::constant(g, psi0);
    GenConnection c = random_connection(g, r, rng, 0.6, 0.6);
    c.flux = 0.3 * rng.antisym(m);
    out.checks.push_back(upper_check("trace_curvature_closed", "trace-curvature-closed",
                                     d_field(trace_curvature(c, psi)).max_abs(), 1e-10));
    GenConnection c0 = c;
    for (auto& V : c0.V) V = MatField(g, r);
    const cd ch = chern_pair(c, psi);
    out.checks.push_back(upper_check("chern_pair_v_independence", "chern-pairing-topological",
                                     std::abs(ch - chern_pair(c0, psi)) / std::max(1.0, std::abs(ch)), 1e-10));
    GenConnection cg = gauge_transform(c, smooth_gauge(g, r, rng, 0.8));
    out.checks.push_back(upper_check("chern_pair_gauge_independence", "chern-pairing-topological",
                                     std::abs(ch - chern_pair(cg, psi)) / std::max(1.0, std::abs(ch)), 1e-10));

    GenConnection line(g, 1);
    line.flux = 0.5 * rng.antisym(m);
    const double lam = lambda_from_chern(line, psi);
    MatField K = mean_curvature_K(line, psi);
    double e = 0.0;
    for (std::size_t p = 0; p < g->points(); ++p) e = std::max(e, std::abs(K.v[p] - lam));
    out.checks.push_back(upper_check("lambda_constant_curvature", "einstein-constant-from-chern", e, 1e-10));
    return out;
}

SuiteResult moment_checks(GridPtr g, int r, const GradedForm& psi0, Rng& rng)
{
    SuiteResult out;
    FormField psi = FormField::constant(g, psi0);
    out.checks.push_back(upper_check("metric_from_spinor_pairing", "clifford-metric-pairing",
                                     pairing_identity_defect(psi0, calib::kCliffordSign), 1e-10));
    out.checks.push_back(upper_check("structure_from_spinor_pairing", "clifford-structure-pairing",
                                     structure_identity_defect(psi0, calib::kCliffordSign), 1e-10));

    GenConnection c = random_connection(g, r, rng, 0.6, 0.6);
    GenSection a = random_connection(g, r, rng, 0.8, 0.8);
    GenSection a2 = random_connection(g, r, rng, 0.8, 0.8);
    MatField xi = smooth_skew_field(g, r, rng);
    GenSection Dxi = covariant_derivative(c, xi);

    const cd lhs = pairwise_sum(trace_pair(section_act(Dxi, psi), section_act(a, psi.conj())));
    const cd rhs = pairwise_sum(trace_pair(tensor(xi, psi), generalized_d(c, a, psi.conj())));
    out.checks.push_back(upper_check("integration_by_parts", "moment-map-integration-by-parts",
                                     std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-10));

    const double wgm = omega_GM(a, a2, psi), wsp = omega_spinor(a, a2, psi);
    out.checks.push_back(upper_check("symplectic_form_from_spinor", "symplectic-form-on-connections",
                                     rel(wgm, calib::kCliffordSign * wsp), 1e-10));

    const double h = 1e-4;
    const double dmu = (moment_value(c + h * a, xi, psi) - moment_value(c + (-h) * a, xi, psi)) / (2 * h);
    const double target = calib::kMomentSign * omega_GM(Dxi, a, psi);
    out.checks.push_back(upper_check("moment_map_derivative", "moment-map-derivative", rel(dmu, target), 1e-6));

    const double mu = moment_value(c, xi, psi);
    out.checks.push_back(
        upper_check("moment_equals_mean_curvature", "moment-map-is-mean-curvature", rel(mu, moment_from_K(c, xi, psi)),
                    1e-10));
    return out;
}

SuiteResult holomorphic_checks(GridPtr g, const MatR& W, Rng& rng)
{
    SuiteResult out;
    const int n = g->n();
    const int m = 2 * n;
    const double P0 = g->period(0), P1 = g->period(1);
    const double two_pi = 2.0 * std::numbers::pi;

    // canonical connection of phi = dw for a conformally rescaled omega
    {
        const double a1 = 0.3 * rng.normal(), a2 = 0.2 * rng.normal();
        std::vector<cd> u(g->points());
        for (std::size_t p = 0; p < g->points(); ++p)
            u[p] = a1 * std::sin(two_pi * g->x(p, 0) / P0) * std::cos(two_pi * g->x(p, 1) / P1) +
                   a2 * std::cos(2.0 * two_pi * g->x(p, 1) / P1);
        FormField phi = FormField::constant(g, holomorphic_volume(n, -1.0));
        FormField psi(g, 1);
        for (std::size_t p = 0; p < g->points(); ++p) {
            MatR Wp = darboux(n);
            Wp(0, 1) = std::exp(2.0 * u[p].real());
            Wp(1, 0) = -Wp(0, 1);
            psi.set_form(p, symplectic_spinor(n, MatR::Zero(m, m), Wp));
        }
        CanonicalLine cl = canonical_connection_line(phi, psi);
        auto ux = diff(u, *g, 0), uy = diff(u, *g, 1);
        auto uxx = diff(ux, *g, 0), uyy = diff(uy, *g, 1);
        double eA = 0.0, eF = 0.0, scale = 1.0;
        for (std::size_t p = 0; p < g->points(); ++p) {
            eA = std::max(eA, std::abs(cl.conn.A[0].v[p] + I_ * uy[p]));
            eA = std::max(eA, std::abs(cl.conn.A[1].v[p] - I_ * ux[p]));
            for (int mu = 2; mu < m; ++mu) eA = std::max(eA, std::abs(cl.conn.A[mu].v[p]));
            for (int mu = 0; mu < m; ++mu) eA = std::max(eA, std::abs(cl.conn.V[mu].v[p]));
            scale = std::max(scale, std::abs(uxx[p] + uyy[p]));
        }
        for (int mu = 0; mu < m; ++mu)
            for (int nu = mu + 1; nu < m; ++nu) {
                MatField F = field_strength_component(cl.conn, mu, nu);
                for (std::size_t p = 0; p < g->points(); ++p) {
                    const cd want = mu == 0 && nu == 1 ? I_ * (uxx[p] + uyy[p]) : cd(0.0);
                    eF = std::max(eF, std::abs(F.v[p] - want));
                }
            }
        out.checks.push_back(upper_check("canonical_connection_potential", "canonical-generalized-connection", eA, 1e-10));
        out.checks.push_back(
            upper_check("canonical_connection_curvature", "canonical-generalized-connection", eF / scale, 1e-10));
    }

    const MatR D = darboux(n);
    const double coupling = 0.5 + 0.5 * rng.uniform(0.0, 1.0);
    const double amp = 0.3 * rng.normal();
    auto profile = [&](std::size_t p) { return amp * std::sin(two_pi * g->x(p, 0) / P0); };
    std::vector<std::vector<double>> v(m, std::vector<double>(g->points(), 0.0));
    for (std::size_t p = 0; p < g->points(); ++p) v[0][p] = -profile(p) / coupling;

    // flat bundle: F_A = i omega is impossible, the norm stays at |i omega|
    {
        GenConnection flat(g, 1);
        KRCheck k = kr_soliton_check(flat, std::vector<std::vector<double>>(m, std::vector<double>(g->points(), 0.0)),
                                     W, coupling);
        double want = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) want += W(a, b) * W(a, b);
        want = std::sqrt(want * g->cell_volume() * g->points());
        out.checks.push_back(upper_check("kr_flat_floor", "kahler-ricci-soliton-obstruction",
                                         std::abs(k.norm - want) + std::abs(k.floor - want), 1e-12));
    }
    // F_A + c i L_v omega = 0 with lambda = 0
    {
        GenConnection c(g, 1);
        for (std::size_t p = 0; p < g->points(); ++p) {
            c.A[1].v[p] = I_ * profile(p);
            c.V[0].v[p] = I_ * v[0][p];
        }
        FormField psi = constant_psi(g, coupling * D, D);
        out.checks.push_back(upper_check("kr_modified_soliton_is_eh", "kahler-ricci-soliton-eh",
                                         eh_residual(c, psi, 0.0).norm, 1e-8));
    }
    // soliton on the line with background curvature i omega
    {
        GenConnection c(g, 1);
        c.flux = D;
        for (std::size_t p = 0; p < g->points(); ++p) c.A[1].v[p] = I_ * profile(p);
        KRCheck k = kr_soliton_check(c, v, D, coupling);
        out.checks.push_back(upper_check("kr_soliton_equation", "kahler-ricci-soliton", k.norm, 1e-12));
        out.checks.push_back(upper_check("kr_soliton_is_eh", "kahler-ricci-soliton-eh", k.eh_residual, 1e-10));
        out.info.push_back({"kr_soliton_vector_field_dbar", k.holomorphy,
                            "torus holomorphic vector fields are constant; not gated"});
    }
    if (n == 1) {
        GenConnection c = random_connection(g, 2, rng, 0.5, 0.0);
        for (auto& V : c.V) V = MatField(g, 2);
        out.checks.push_back(upper_check("dbar_squared_curve", "generalized-holomorphic-structure",
                                         dbar_residual(c, gcs_complex(compatible_complex_structure(W))), 1e-10));
    }
    return out;
}

SuiteResult symbol_summary(const std::vector<SymbolReport>& reps, int r, const std::string& tag)
{
    SuiteResult out;
    double inexact = 0, comp = 0, kdim = 0, kfit = 0, alt = 0, plus = std::numeric_limits<double>::infinity();
    for (const auto& s : reps) {
        inexact += !s.all_exact();
        comp = std::max(comp, s.composition);
        kdim += s.kernel_dim_B1 != r * r;
        kfit = std::max(kfit, s.kernel_fit);
        alt = std::max(alt, double(std::abs(s.alternating_sum)));
        plus = std::min(plus, s.plus_pairing);
    }
    out.checks.push_back(upper_check("symbol_exactness" + tag, "symbol-sequence-exact", inexact, 0.5));
    out.checks.push_back(upper_check("symbol_composition" + tag, "symbol-sequence-complex", comp, 1e-10));
    out.checks.push_back(upper_check("symbol_kernel_dimension" + tag, "symbol-kernel-is-gauge", kdim, 0.5));
    out.checks.push_back(upper_check("symbol_kernel_fit" + tag, "symbol-kernel-is-gauge", kfit, 1e-8));
    out.checks.push_back(upper_check("symbol_euler_characteristic" + tag, "symbol-sequence-exact", alt, 0.5));
    out.checks.push_back(lower_check("plus_pairing_positive" + tag, "gk-plus-pairing", plus, 1e-10));
    return out;
}

json symbol_report_json(const SymbolReport& s)
{
    std::vector<double> theta(s.theta.data(), s.theta.data() + s.theta.size());
    std::vector<bool> exact(s.exact.begin(), s.exact.end());
    return {{"theta", theta},
            {"dims", s.dims},
            {"ranks", s.ranks},
            {"exact", exact},
            {"composition", s.composition},
            {"kernel_dim_B1", s.kernel_dim_B1},
            {"kernel_fit", s.kernel_fit},
            {"alternating_sum", s.alternating_sum},
            {"plus_pairing", s.plus_pairing}};
}

SuiteResult symbol_checks(int n, int r, const MatR& W, const MatR& b, int trials, Rng& rng)
{
    const std::string tag = "_n" + std::to_string(n) + "_r" + std::to_string(r);
    GCStructure J2 = gcs_from_spinor(symplectic_spinor(n, b, W));
    GCStructure J1 = bfield_conjugate(gcs_complex(compatible_complex_structure(W)), b);
    SuiteResult out = symbol_summary(symbol_exactness(n, r, J1, J2, trials, rng), r, tag);
    out.checks.push_back(upper_check("herm_projection_commutes" + tag, "symbol-herm-projection",
                                     herm_projection_commutator(r, J2, rng), 1e-12));
    return out;
}

SuiteResult solver_checks(GridPtr g, const GradedForm& psi0, Rng& rng)
{
    SuiteResult out;
    FormField psi = FormField::constant(g, psi0);
    GenConnection init = random_connection(g, 1, rng, 0.3, 0.3);
    SolveOptions opts;
    SolveResult res = solve_eh_line(init, psi, opts);
    const double final_res = eh_residual(res.conn, psi, res.trace.lambda).norm;
    out.checks.push_back(upper_check("solver_converges", "einstein-hermitian-line", final_res, opts.tol));
    double rise = 0.0;
    const auto& h = res.trace.residual_history;
    for (std::size_t i = 1; i < h.size(); ++i) rise = std::max(rise, h[i] - h[i - 1] * (1.0 + 1e-14));
    out.checks.push_back(upper_check("solver_monotone", "einstein-hermitian-line", std::max(rise, 0.0), 1e-14));
    SolveOptions one = opts;
    one.max_iter = 1;
    one.has_lambda = true;
    one.lambda = res.trace.lambda;
    SolveResult again = solve_eh_line(res.conn, psi, one);
    out.checks.push_back(upper_check("solver_fixed_point", "einstein-hermitian-line",
                                     std::abs(eh_residual(again.conn, psi, one.lambda).norm - final_res), 1e-12));
    out.info.push_back({"solver_iterations", double(res.trace.iterations), ""});
    out.info.push_back({"solver_lambda", res.trace.lambda, ""});
    return out;
}

SuiteResult run_verify(const Problem& pr, const VerifyOptions& opts, Rng& rng)
{
    SuiteResult out;
    const GradedForm psi0 = pr.psi.form_at(0);
    if (!pr.psi_constant)
        out.info.push_back({"psi_frozen_at_first_point", 1.0, "exact discrete identities use the constant value"});
    out.append(algebra_checks(pr.n, opts.algebra_trials, rng));
    out.append(structure_checks(pr.n, rng));
    out.append(field_checks(pr.g, pr.rank, psi0, rng));
    out.append(covariance_checks(pr.g, pr.rank, psi0, 0.4 * rng.antisym(2 * pr.n), rng));
    out.append(specialization_checks(pr.g, pr.rank, pr.omega0, rng));
    out.append(chern_checks(pr.g, pr.rank, psi0, rng));
    out.append(moment_checks(pr.g, pr.rank, psi0, rng));
    out.append(holomorphic_checks(pr.g, pr.omega0, rng));
    out.append(symbol_checks(pr.n, pr.rank, pr.omega0, pr.b0, opts.symbol_trials, rng));
    out.append(solver_checks(pr.g, psi0, rng));
    return out;
}

json checks_to_json(const SuiteResult& s)
{
    json checks = json::array();
    for (const auto& c : s.checks)
        checks.push_back({{"name", c.name},
                          {"anchor", c.anchor},
                          {"compare", c.compare},
                          {"tolerance", c.tolerance},
                          {"value", c.value},
                          {"pass", c.pass}});
    json info = json::array();
    for (const auto& i : s.info) info.push_back({{"name", i.name}, {"value", i.value}, {"note", i.note}});
    int passed = 0;
    for (const auto& c : s.checks) passed += c.pass;
    return {{"checks", checks},
            {"info", info},
            {"summary", {{"total", s.checks.size()}, {"passed", passed}, {"all_pass", s.all_pass()}}}};
}

} // namespace genkf
