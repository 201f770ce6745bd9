#include "genkf/holomorphic.hpp"

#include <cmath>
#include <numbers>

#include "genkf/linalg.hpp"

namespace genkf {

namespace {

using Section = std::vector<cd>; // r entries per point

// a-th Lbar coordinate of D s, for every a
std::vector<Section> dbar_once(const GenConnection& c, const MatC& C, const Section& s)
{
    const auto& g = *c.g;
    const int m = g.dim();
    const int r = c.r;
    const std::size_t N = g.points();
    // derivative pieces: (d_mu + A_mu) s and V^mu s
    std::vector<Section> cov(m, Section(N * r)), vec(m, Section(N * r));
    for (int mu = 0; mu < m; ++mu) {
        const double h2 = 0.5 / g.spacing(mu);
        for (std::size_t p = 0; p < N; ++p) {
            Eigen::Map<const VecC> sp(s.data() + g.plus(mu, p) * r, r), sm(s.data() + g.minus(mu, p) * r, r);
            Eigen::Map<const VecC> s0(s.data() + p * r, r);
            Eigen::Map<VecC> o(cov[mu].data() + p * r, r);
            o = h2 * (sp - sm) + c.A[mu].at(p) * s0;
            Eigen::Map<VecC> ov(vec[mu].data() + p * r, r);
            ov = c.V[mu].at(p) * s0;
        }
    }
    const int nb = static_cast<int>(C.rows());
    std::vector<Section> out(nb, Section(N * r, cd(0.0)));
    for (int a = 0; a < nb; ++a)
        for (int mu = 0; mu < m; ++mu) {
            const cd wc = C(a, m + mu), wv = C(a, mu);
            for (std::size_t k = 0; k < N * r; ++k) out[a][k] += wc * cov[mu][k] + wv * vec[mu][k];
        }
    return out;
}

} // namespace

double dbar_residual(const GenConnection& c, const GCStructure& J)
{
    c.check();
    require(J.n == c.g->n(), ErrorKind::DimensionMismatch, "structure and grid dimensions differ");
    const auto& g = *c.g;
    const int m = g.dim();
    const int r = c.r;
    MatC L = J.L(), Lb = J.Lbar();
    MatC B(2 * m, 2 * m);
    B << L, Lb;
    // rows m..2m-1 of B^{-1}: coordinates of the Lbar component
    MatC C = B.inverse().bottomRows(m);
    double worst = 0.0;
    const int kcount = static_cast<int>(std::pow(3, m));
    for (int kk = 0; kk < kcount; ++kk) {
        std::vector<int> k(m);
        int t = kk;
        for (int mu = 0; mu < m; ++mu) {
            k[mu] = t % 3 - 1;
            t /= 3;
        }
        for (int j = 0; j < r; ++j) {
            Section s(g.points() * r, cd(0.0));
            for (std::size_t p = 0; p < g.points(); ++p) {
                double ph = 0.0;
                for (int mu = 0; mu < m; ++mu) ph += 2.0 * std::numbers::pi * k[mu] * g.x(p, mu) / g.period(mu);
                s[p * r + j] = std::exp(I_ * ph);
            }
            auto first = dbar_once(c, C, s);
            std::vector<std::vector<Section>> second;
            for (int a = 0; a < m; ++a) second.push_back(dbar_once(c, C, first[a]));
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < s.size(); ++q) acc += std::norm(second[a][b][q] - second[b][a][q]);
                    worst = std::max(worst, std::sqrt(acc / g.points()));
                }
        }
    }
    return worst;
}

CanonicalLine canonical_connection_line(const FormField& phi, const FormField& psi)
{
    require(phi.r == 1 && psi.r == 1, ErrorKind::InvalidArgument, "phi and psi must be scalar form fields");
    const auto& g = *phi.g;
    const int n = g.n();
    const int m = 2 * n;
    const std::size_t N = g.points();
    CanonicalLine out;
    out.conn = GenConnection(phi.g, 1);
    FormField dphi = d_field(phi);
    FormField pb = phi.conj(), qb = psi.conj();
    out.rho.resize(N);
    std::vector<MatR> Jp(N);
    std::vector<cd> logrho(N);
    for (std::size_t p = 0; p < N; ++p) {
        GradedForm f = phi.form_at(p);
        PureSpinorCheck chk = classify_spinor(f);
        require(chk.pure && chk.nondegenerate, ErrorKind::NotPure, "phi is not a nondegenerate pure spinor");
        Jp[p] = gcs_from_spinor(f).mat;
        cd ratio = mukai_pair(f, pb.form_at(p)) / mukai_pair(psi.form_at(p), qb.form_at(p));
        require(std::abs(ratio.imag()) <= 1e-10 * std::abs(ratio) && ratio.real() > 0.0, ErrorKind::InvalidArgument,
                "<phi, phibar>_s / <psi, psibar>_s is not real positive");
        out.rho[p] = ratio.real();
        logrho[p] = std::log(ratio.real());
    }
    // eta: real least squares of [Re M; Im M] eta = [Re dphi; Im dphi]
    out.eta.resize(N);
    const int D = phi.D;
    for (std::size_t p = 0; p < N; ++p) {
        GradedForm f = phi.form_at(p);
        MatR M(2 * D, 2 * m);
        for (int a = 0; a < 2 * m; ++a) {
            GenVector e = a < m ? GenVector::tangent(n, a) : GenVector::cotangent(n, a - m);
            GradedForm col = clifford_act(e, f);
            for (int S = 0; S < D; ++S) {
                M(S, a) = col.c[S].real();
                M(D + S, a) = col.c[S].imag();
            }
        }
        VecR rhs(2 * D);
        for (int S = 0; S < D; ++S) {
            rhs(S) = dphi.v[p * D + S].real();
            rhs(D + S) = dphi.v[p * D + S].imag();
        }
        VecR eta = M.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
        out.lsq_residual = std::max(out.lsq_residual, (M * eta - rhs).cwiseAbs().maxCoeff());
        out.eta[p] = eta;
    }
    require(out.lsq_residual <= 1e-8, ErrorKind::InvalidArgument,
            "d phi is not of the form eta.phi with real eta (least-squares residual above 1e-8)");
    std::vector<std::vector<cd>> dlog(m);
    for (int mu = 0; mu < m; ++mu) dlog[mu] = diff(logrho, g, mu);
    for (std::size_t p = 0; p < N; ++p) {
        VecR half_dlog = VecR::Zero(2 * m);
        for (int mu = 0; mu < m; ++mu) half_dlog(m + mu) = 0.5 * dlog[mu][p].real();
        VecR x = Jp[p] * (half_dlog - out.eta[p]);
        for (int mu = 0; mu < m; ++mu) {
            out.conn.V[mu].v[p] = I_ * x(mu);
            out.conn.A[mu].v[p] = I_ * x(m + mu);
        }
    }
    // d(A.psi) with A the full generalized connection form
    FormField Apsi = vector_act(out.conn.V, psi);
    for (int mu = 0; mu < m; ++mu) Apsi += tensor(out.conn.A[mu], dx_wedge(mu, psi));
    out.curvature = d_field(Apsi);
    return out;
}

} // namespace genkf
