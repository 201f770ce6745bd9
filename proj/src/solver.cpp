#include "genkf/analysis.hpp"

#include <Eigen/Sparse>
#include <cmath>

namespace genkf {

namespace {

// residual K - lambda as a real vector (r = 1)
VecR line_residual(const GenConnection& c, const FormField& psi, double lambda)
{
    MatField K = mean_curvature_unchecked(c, psi);
    VecR out(K.points());
    for (std::size_t p = 0; p < K.points(); ++p) out(p) = K.v[p].real() - lambda;
    return out;
}

// unknown index: comp * N + p; comp < 2n is a_mu (A = i a), else v^mu (V = i v)
void bump(GenConnection& c, int comp, std::size_t p, double amount)
{
    const int m = c.dim();
    if (comp < m)
        c.A[comp].v[p] += I_ * amount;
    else
        c.V[comp - m].v[p] += I_ * amount;
}

// Jacobian of the affine residual map by colored probing over a radius-1 stencil.
Eigen::SparseMatrix<double> probe_jacobian(const GenConnection& init, const FormField& psi, const VecR& R0,
                                           double lambda)
{
    const TorusGrid& g = *init.g;
    const int m = g.dim();
    const std::size_t N = g.points();
    // greedy coloring: two points share a color only if no residual point
    // sees both through the stencil {0, +-e_mu}
    std::vector<std::vector<int>> offsets;
    for (int mu = 0; mu < m; ++mu)
        for (int s1 : {-2, -1, 1, 2}) {
            std::vector<int> o(m, 0);
            o[mu] = s1;
            offsets.push_back(o);
        }
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu + 1; nu < m; ++nu)
            for (int s1 : {-1, 1})
                for (int s2 : {-1, 1}) {
                    std::vector<int> o(m, 0);
                    o[mu] = s1;
                    o[nu] = s2;
                    offsets.push_back(o);
                }
    std::vector<int> color(N, -1);
    int colors = 0;
    for (std::size_t p = 0; p < N; ++p) {
        auto c = g.coords(p);
        std::vector<char> used(offsets.size() + 1, 0);
        for (const auto& o : offsets) {
            std::vector<int> q(m);
            for (int mu = 0; mu < m; ++mu) q[mu] = ((c[mu] + o[mu]) % g.size(mu) + g.size(mu)) % g.size(mu);
            const int k = color[g.index(q)];
            if (k >= 0 && k < static_cast<int>(used.size())) used[k] = 1;
        }
        int k = 0;
        while (used[k]) ++k;
        color[p] = k;
        colors = std::max(colors, k + 1);
    }

    const int jobs = 2 * m * colors;
    std::vector<std::vector<Eigen::Triplet<double>>> parts(jobs);
    parallel_for(static_cast<std::size_t>(jobs), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t job = lo; job < hi; ++job) {
            const int comp = static_cast<int>(job) / colors;
            const int col = static_cast<int>(job) % colors;
            GenConnection c = init;
            for (std::size_t p = 0; p < N; ++p)
                if (color[p] == col) bump(c, comp, p, 1.0);
            VecR dR = line_residual(c, psi, lambda) - R0;
            for (std::size_t p = 0; p < N; ++p) {
                if (dR(p) == 0.0) continue;
                std::size_t owner = N;
                if (color[p] == col) owner = p;
                for (int nu = 0; nu < m && owner == N; ++nu) {
                    if (color[g.plus(nu, p)] == col) owner = g.plus(nu, p);
                    else if (color[g.minus(nu, p)] == col) owner = g.minus(nu, p);
                }
                if (owner == N) continue;
                parts[job].emplace_back(static_cast<int>(p), static_cast<int>(comp * N + owner), dR(p));
            }
        }
    });
    std::vector<Eigen::Triplet<double>> all;
    for (auto& t : parts) all.insert(all.end(), t.begin(), t.end());
    Eigen::SparseMatrix<double> L(static_cast<int>(N), static_cast<int>(2 * m * N));
    L.setFromTriplets(all.begin(), all.end());
    return L;
}

} // namespace

SolveResult solve_eh_line(const GenConnection& init, const FormField& psi, const SolveOptions& opts)
{
    require(init.r == 1, ErrorKind::Unsupported,
            "non-abelian rank refused: the solver handles r = 1 only (got r = " + std::to_string(init.r) + ")");
    require(opts.tol > 0.0, ErrorKind::InvalidArgument, "tolerance must be positive");
    require(opts.max_iter >= 0, ErrorKind::InvalidArgument, "max_iter must be non-negative");
    init.check();
    validate_psi(psi);
    require(*init.g == *psi.g, ErrorKind::DimensionMismatch, "connection and spinor live on different grids");

    const TorusGrid& g = *init.g;
    const std::size_t N = g.points();
    SolveResult res{init, {}};
    FlowTrace& tr = res.trace;
    tr.lambda = opts.has_lambda ? opts.lambda : lambda_from_chern(init, psi);

    auto vol = volume_density(psi);
    VecR sw(N);
    for (std::size_t p = 0; p < N; ++p) sw(p) = std::sqrt(vol[p] * g.cell_volume());

    VecR R0 = line_residual(init, psi, tr.lambda);
    Eigen::SparseMatrix<double> M = probe_jacobian(init, psi, R0, tr.lambda);
    M = sw.asDiagonal() * M;
    VecR r = -sw.cwiseProduct(R0);

    const std::size_t U = static_cast<std::size_t>(M.cols());
    VecR x = VecR::Zero(U);
    VecR s = M.transpose() * r;
    VecR dir = s;
    double gamma = s.squaredNorm();
    const double s0 = std::sqrt(gamma);
    double rn = r.norm();
    tr.residual_history.push_back(rn);
    const double polish = 1e-4 * opts.tol;

    tr.stop_reason = "max_iter";
    while (true) {
        if (rn < polish) {
            tr.stop_reason = "converged";
            break;
        }
        if (std::sqrt(gamma) <= 1e-13 * std::max(s0, 1e-300)) {
            tr.stop_reason = rn < opts.tol ? "converged" : "stagnated";
            break;
        }
        if (tr.iterations >= opts.max_iter) break;
        VecR q = M * dir;
        const double qq = q.squaredNorm();
        if (qq == 0.0) {
            tr.stop_reason = "stagnated";
            break;
        }
        double alpha = gamma / qq;
        VecR r_new = r - alpha * q;
        double rn_new = r_new.norm();
        // guard against loss of conjugacy: fall back to halved steepest-descent steps
        while (rn_new > rn * (1.0 + 1e-12)) {
            ++tr.step_halvings;
            dir = s;
            q = M * dir;
            alpha = 0.5 * s.squaredNorm() / std::max(q.squaredNorm(), 1e-300) / (1 << std::min(tr.step_halvings, 30));
            if (alpha * dir.norm() < 1e-12 * std::max(1.0, x.norm())) break;
            r_new = r - alpha * q;
            rn_new = r_new.norm();
        }
        if (rn_new > rn * (1.0 + 1e-12)) {
            tr.stop_reason = "step_collapse";
            break;
        }
        x += alpha * dir;
        r = r_new;
        rn = rn_new;
        tr.step_size = alpha;
        s = M.transpose() * r;
        const double gamma_new = s.squaredNorm();
        dir = s + (gamma_new / gamma) * dir;
        gamma = gamma_new;
        ++tr.iterations;
        tr.residual_history.push_back(rn);
    }

    const int m = g.dim();
    for (int comp = 0; comp < 2 * m; ++comp)
        for (std::size_t p = 0; p < N; ++p) bump(res.conn, comp, p, x(comp * N + p));
    tr.converged = rn < opts.tol;
    if (tr.converged && tr.stop_reason != "converged") tr.stop_reason = "converged";
    return res;
}

} // namespace genkf
