#include "genkf/analysis.hpp"

#include <bit>
#include <cmath>

#include "genkf/linalg.hpp"

namespace genkf {

namespace {

// real basis of u(r)
std::vector<MatC> u_basis(int r)
{
    std::vector<MatC> out;
    for (int i = 0; i < r; ++i) {
        MatC m = MatC::Zero(r, r);
        m(i, i) = I_;
        out.push_back(m);
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            MatC a = MatC::Zero(r, r), b = MatC::Zero(r, r);
            a(i, j) = 1.0;
            a(j, i) = -1.0;
            b(i, j) = I_;
            b(j, i) = I_;
            out.push_back(a);
            out.push_back(b);
        }
    return out;
}

// real coordinates of a Hermitian matrix: diagonal, then Re/Im above it
VecR herm_coords(const MatC& H)
{
    const int r = static_cast<int>(H.rows());
    VecR x(r * r);
    int k = 0;
    for (int i = 0; i < r; ++i) x(k++) = H(i, i).real();
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            x(k++) = H(i, j).real();
            x(k++) = H(i, j).imag();
        }
    return x;
}

std::vector<unsigned> subsets_of_size(int m, int k)
{
    std::vector<unsigned> out;
    for (unsigned S = 0; S < (1u << m); ++S)
        if (std::popcount(S) == k) out.push_back(S);
    return out;
}

int binom(int m, int k)
{
    return static_cast<int>(subsets_of_size(m, k).size());
}

// layout of End (x) wedge^k: subset-major, then r x r entries (column-major), then re/im
struct WedgeLayout {
    int r, k;
    std::vector<unsigned> subsets;
    std::vector<int> pos; // mask -> subset position
    int dim() const { return 2 * r * r * static_cast<int>(subsets.size()); }
    int index(int s, int e, int part) const { return (s * r * r + e) * 2 + part; }
};

WedgeLayout layout(int m, int r, int k)
{
    WedgeLayout L{r, k, subsets_of_size(m, k), std::vector<int>(1u << m, -1)};
    for (std::size_t i = 0; i < L.subsets.size(); ++i) L.pos[L.subsets[i]] = static_cast<int>(i);
    return L;
}

// theta^{0,1} ^ (.) from End (x) wedge^k to End (x) wedge^{k+1}
MatR wedge_map(int n, const WedgeLayout& src, const WedgeLayout& dst, const VecC& t)
{
    const int m = 2 * n;
    const int rr = src.r * src.r;
    MatR M = MatR::Zero(dst.dim(), src.dim());
    for (std::size_t s = 0; s < src.subsets.size(); ++s) {
        const unsigned S = src.subsets[s];
        for (int a = 0; a < m; ++a) {
            if (S & (1u << a)) continue;
            const cd w = double(axis_sign(S, a)) * t(a);
            const int d = dst.pos[S | (1u << a)];
            for (int e = 0; e < rr; ++e) {
                // (x + i y) * w for real coordinates x, y
                M(dst.index(d, e, 0), src.index(static_cast<int>(s), e, 0)) += w.real();
                M(dst.index(d, e, 1), src.index(static_cast<int>(s), e, 0)) += w.imag();
                M(dst.index(d, e, 0), src.index(static_cast<int>(s), e, 1)) -= w.imag();
                M(dst.index(d, e, 1), src.index(static_cast<int>(s), e, 1)) += w.real();
            }
        }
    }
    return M;
}

} // namespace

bool SymbolReport::all_exact() const
{
    for (bool e : exact)
        if (!e) return false;
    return true;
}

SymbolMaps symbol_maps(int r, const GCStructure& J1, const GradedForm& psi, const VecR& theta)
{
    const int n = J1.n;
    const int m = 2 * n;
    require(theta.size() == m, ErrorKind::DimensionMismatch, "theta needs 2n entries");
    require(theta.cwiseAbs().maxCoeff() > 0.0, ErrorKind::InvalidArgument, "symbol undefined at theta = 0");
    require(psi.n == n, ErrorKind::DimensionMismatch, "spinor and structure dimensions differ");
    SymbolMaps out;
    const int rr = r * r;
    auto ub = u_basis(r);

    // Lbar coordinates
    MatC Lm = J1.L(), Lb = J1.Lbar();
    MatC B(2 * m, 2 * m);
    B << Lm, Lb;
    MatC C = B.inverse().bottomRows(m);
    VecC th = VecC::Zero(2 * m);
    th.tail(m) = theta.cast<cd>();
    VecC t = C * th;

    out.dims.push_back(rr);
    out.dims.push_back(2 * m * rr);
    out.dims.push_back(rr + 2 * rr * binom(m, 2));
    for (int k = 3; k <= m; ++k) out.dims.push_back(2 * rr * binom(m, k));

    // sigma_0: f -> f (x) theta; B^1 coordinates (slot alpha, u-basis g) at alpha * rr + g
    MatR s0 = MatR::Zero(out.dims[1], out.dims[0]);
    for (int g = 0; g < rr; ++g)
        for (int mu = 0; mu < m; ++mu) s0((m + mu) * rr + g, g) = theta(mu);
    out.maps.push_back(s0);
    out.kernel_reference = s0;

    // sigma_1
    const GradedForm pb = psi.conj();
    const cd den = mukai_pair(psi, pb);
    GradedForm theta_form(n);
    for (int mu = 0; mu < m; ++mu) theta_form.c[1u << mu] = theta(mu);
    WedgeLayout W2 = layout(m, r, 2);
    MatR s1 = MatR::Zero(out.dims[2], out.dims[1]);
    for (int al = 0; al < 2 * m; ++al) {
        GenVector e = al < m ? GenVector::tangent(n, al) : GenVector::cotangent(n, al - m);
        const cd c_al = mukai_pair(wedge(theta_form, clifford_act(e, psi)), pb) / den;
        GradedForm tf(n), ef(n);
        for (int a = 0; a < m; ++a) {
            tf.c[1u << a] = t(a);
            ef.c[1u << a] = C(a, al);
        }
        GradedForm w = wedge(tf, ef);
        for (int g = 0; g < rr; ++g) {
            const int col = al * rr + g;
            MatC M = c_al * ub[g];
            s1.block(0, col, rr, 1) = herm_coords(0.5 * (M + M.adjoint()));
            for (std::size_t s = 0; s < W2.subsets.size(); ++s) {
                const cd ws = w.c[W2.subsets[s]];
                for (int e = 0; e < rr; ++e) {
                    const cd val = ws * ub[g](e % r, e / r);
                    s1(rr + W2.index(static_cast<int>(s), e, 0), col) = val.real();
                    s1(rr + W2.index(static_cast<int>(s), e, 1), col) = val.imag();
                }
            }
        }
    }
    out.maps.push_back(s1);

    // sigma_2 and beyond: theta^{0,1} ^, the Herm summand maps to zero
    if (m >= 3) {
        WedgeLayout W3 = layout(m, r, 3);
        MatR s2 = MatR::Zero(out.dims[3], out.dims[2]);
        s2.rightCols(W2.dim()) = wedge_map(n, W2, W3, t);
        out.maps.push_back(s2);
        for (int k = 3; k < m; ++k) out.maps.push_back(wedge_map(n, layout(m, r, k), layout(m, r, k + 1), t));
    }
    return out;
}

cd plus_pairing(const GKPair& pair, const VecR& theta)
{
    const int n = pair.J1.n;
    const int m = 2 * n;
    MatC B(2 * m, 2 * m);
    B << pair.L1L2, pair.L1L2bar, pair.L1barL2, pair.L1barL2bar;
    VecC th = VecC::Zero(2 * m);
    th.tail(m) = theta.cast<cd>();
    VecC coef = B.partialPivLu().solve(th);
    const int k = static_cast<int>(pair.L1L2.cols());
    VecC w = pair.L1L2 * coef.head(k);
    MatC Q = neutral_matrix(n).cast<cd>();
    return (w.transpose() * Q * w.conjugate())(0);
}

SymbolReport symbol_report(int r, const GKPair& pair, const VecR& theta)
{
    SymbolReport rep;
    rep.theta = theta;
    GradedForm psi = spinor_from_gcs(pair.J2);
    SymbolMaps sm = symbol_maps(r, pair.J1, psi, theta);
    rep.dims = sm.dims;
    for (auto& M : sm.maps) rep.ranks.push_back(numeric_rank(M, 1e-8));
    const int stages = static_cast<int>(sm.dims.size());
    for (int i = 0; i < stages; ++i) {
        int in = i > 0 ? rep.ranks[i - 1] : 0;
        int outr = i < static_cast<int>(rep.ranks.size()) ? rep.ranks[i] : 0;
        rep.exact.push_back(in + outr == sm.dims[i]);
        rep.alternating_sum += (i % 2 ? -1 : 1) * sm.dims[i];
    }
    for (std::size_t i = 0; i + 1 < sm.maps.size(); ++i)
        rep.composition = std::max(rep.composition, (sm.maps[i + 1] * sm.maps[i]).cwiseAbs().maxCoeff());
    MatR K = null_space(sm.maps[1], 1e-8);
    rep.kernel_dim_B1 = static_cast<int>(K.cols());
    const MatR& R = sm.kernel_reference;
    MatR proj = R * R.colPivHouseholderQr().solve(K);
    rep.kernel_fit = K.cols() ? (K - proj).cwiseAbs().maxCoeff() : 0.0;
    rep.plus_pairing = plus_pairing(pair, theta).real();
    return rep;
}

std::vector<SymbolReport> symbol_exactness(int n, int r, const GCStructure& J1, const GCStructure& J2, int trials,
                                           Rng& rng)
{
    require(J1.n == n && J2.n == n, ErrorKind::DimensionMismatch, "structures do not match n");
    GKPair pair = gk_validate(J1, J2);
    std::vector<VecR> thetas;
    for (int t = 0; t < trials; ++t) thetas.push_back(rng.real_vector(2 * n));
    std::vector<SymbolReport> out(trials);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) out[t] = symbol_report(r, pair, thetas[t]);
    });
    return out;
}

std::vector<SymbolReport> symbol_exactness(int n, int r, const GCStructure& J1, const GCStructure& J2,
                                           const VecR& theta, int trials, Rng& rng)
{
    require(theta.size() == 2 * n, ErrorKind::DimensionMismatch, "theta needs 2n entries");
    require(theta.cwiseAbs().maxCoeff() > 0.0, ErrorKind::InvalidArgument, "symbol undefined at theta = 0");
    GKPair pair = gk_validate(J1, J2);
    std::vector<SymbolReport> out{symbol_report(r, pair, theta)};
    for (auto& rep : symbol_exactness(n, r, J1, J2, trials, rng)) out.push_back(rep);
    return out;
}

double herm_projection_commutator(int r, const GCStructure& J2, Rng& rng)
{
    const int n = J2.n;
    GradedForm psi = spinor_from_gcs(J2);
    const GradedForm pb = psi.conj();
    const cd den = mukai_pair(psi, pb);
    MatC P2 = u_projector(J2, -n + 2);
    Eigen::JacobiSVD<MatC> svd(P2, Eigen::ComputeThinU);
    const int k2 = numeric_rank(P2, 1e-10);
    std::vector<GradedForm> basis{psi};
    for (int j = 0; j < k2; ++j) {
        GradedForm u(n);
        for (int S = 0; S < u.size(); ++S) u.c[S] = svd.matrixU()(S, j);
        basis.push_back(u);
    }
    std::vector<cd> coef;
    for (auto& u : basis) coef.push_back(mukai_pair(u, pb) / den);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        MatC proj_first = MatC::Zero(r, r), herm_first = MatC::Zero(r, r);
        for (std::size_t I = 0; I < basis.size(); ++I) {
            MatC M(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) M(i, j) = rng.cnormal();
            proj_first += coef[I] * M;
            herm_first += coef[I] * (0.5 * (M + M.adjoint()));
        }
        MatC a = 0.5 * (proj_first + proj_first.adjoint());
        worst = std::max(worst, (a - herm_first).cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace genkf
