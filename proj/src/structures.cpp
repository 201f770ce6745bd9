#include "genkf/structures.hpp"

#include <algorithm>
#include <cmath>

#include "genkf/linalg.hpp"

namespace genkf {

MatC null_space(const MatC& M, double rel_tol)
{
    Eigen::JacobiSVD<MatC> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * smax && smax > 0.0) ++rank;
    const int cols = static_cast<int>(M.cols());
    return svd.matrixV().rightCols(cols - rank);
}

MatR null_space(const MatR& M, double rel_tol)
{
    Eigen::JacobiSVD<MatR> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * smax && smax > 0.0) ++rank;
    return svd.matrixV().rightCols(M.cols() - rank);
}

int numeric_rank(const MatC& M, double rel_tol)
{
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<MatC> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++rank;
    return rank;
}

int numeric_rank(const MatR& M, double rel_tol)
{
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<MatR> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++rank;
    return rank;
}

namespace {

MatC eigenspace(const MatR& J, cd lambda)
{
    const int m = static_cast<int>(J.rows());
    MatC M = J.cast<cd>() - lambda * MatC::Identity(m, m);
    return null_space(M, 1e-10);
}

} // namespace

GCStructure::GCStructure(int n_, const MatR& m) : n(n_), mat(m)
{
    require(m.rows() == 4 * n_ && m.cols() == 4 * n_, ErrorKind::DimensionMismatch,
            "generalized complex structure must be 4n x 4n");
}

double GCStructure::defect() const
{
    const int m = 4 * n;
    MatR Q = neutral_matrix(n);
    double a = (mat * mat + MatR::Identity(m, m)).cwiseAbs().maxCoeff();
    double b = (mat.transpose() * Q * mat - Q).cwiseAbs().maxCoeff();
    return std::max(a, b);
}

MatC GCStructure::L() const { return eigenspace(mat, -I_); }
MatC GCStructure::Lbar() const { return eigenspace(mat, I_); }

MatC GCStructure::proj_Lbar() const
{
    const int m = 4 * n;
    return 0.5 * (MatC::Identity(m, m) - I_ * mat.cast<cd>());
}

MatC GCStructure::proj_L() const
{
    const int m = 4 * n;
    return 0.5 * (MatC::Identity(m, m) + I_ * mat.cast<cd>());
}

MatC spinor_kernel_matrix(const GradedForm& phi)
{
    require(phi.max_abs() > 0.0, ErrorKind::InvalidArgument, "spinor kernel of the zero form");
    const int n = phi.n;
    const int N = phi.size();
    MatC M(N, 4 * n);
    for (int a = 0; a < 4 * n; ++a) {
        GenVector e(n);
        if (a < 2 * n) e.vec(a) = 1.0;
        else e.covec(a - 2 * n) = 1.0;
        GradedForm r = clifford_act(e, phi);
        for (int S = 0; S < N; ++S) M(S, a) = r.c[S];
    }
    return null_space(M, 1e-10);
}

std::vector<GenVector> spinor_kernel(const GradedForm& phi)
{
    MatC K = spinor_kernel_matrix(phi);
    std::vector<GenVector> out;
    for (int j = 0; j < K.cols(); ++j) out.push_back(GenVector::from_vector(phi.n, K.col(j)));
    return out;
}

PureSpinorCheck classify_spinor(const GradedForm& phi)
{
    PureSpinorCheck r;
    const int n = phi.n;
    if (phi.max_abs() == 0.0) return r;
    MatC K = spinor_kernel_matrix(phi);
    r.kernel_dim = static_cast<int>(K.cols());
    MatR Q = neutral_matrix(n);
    MatC G = K.transpose() * Q.cast<cd>() * K;
    r.isotropy_defect = G.size() ? G.cwiseAbs().maxCoeff() : 0.0;
    r.pure = (r.kernel_dim == 2 * n) && r.isotropy_defect < 1e-10;
    if (r.kernel_dim > 0) {
        MatC KK(4 * n, 2 * K.cols());
        KK << K, K.conjugate();
        r.nondegenerate = r.pure && numeric_rank(KK, 1e-10) == 4 * n;
    }
    for (int S = 0; S < phi.size(); ++S) {
        if (std::abs(phi.c[S]) > 1e-12) {
            int k = static_cast<int>(popcount(static_cast<unsigned>(S)));
            if (r.type_number < 0 || k < r.type_number) r.type_number = k;
        }
    }
    return r;
}

GCStructure gcs_from_spinor(const GradedForm& phi)
{
    PureSpinorCheck chk = classify_spinor(phi);
    require(chk.pure, ErrorKind::NotPure, "spinor is not pure");
    require(chk.nondegenerate, ErrorKind::Degenerate, "pure spinor is degenerate");
    const int n = phi.n;
    const int m = 4 * n;
    MatC K = spinor_kernel_matrix(phi);
    MatC P(m, m);
    P << K, K.conjugate();
    VecC d(m);
    for (int i = 0; i < 2 * n; ++i) {
        d(i) = -I_;
        d(2 * n + i) = I_;
    }
    MatC J = P * d.asDiagonal() * P.inverse();
    return GCStructure(n, J.real());
}

GCStructure gcs_complex(const MatR& J)
{
    const int m = static_cast<int>(J.rows());
    require(J.cols() == m && m % 2 == 0, ErrorKind::DimensionMismatch, "complex structure must be square, even size");
    require((J * J + MatR::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-10, ErrorKind::InvalidArgument,
            "complex structure must square to -1");
    MatR out = MatR::Zero(2 * m, 2 * m);
    out.topLeftCorner(m, m) = J;
    out.bottomRightCorner(m, m) = -J.transpose();
    return GCStructure(m / 2, out);
}

GCStructure gcs_symplectic(const MatR& W)
{
    const int m = static_cast<int>(W.rows());
    require(W.cols() == m && m % 2 == 0, ErrorKind::DimensionMismatch, "symplectic form must be square, even size");
    require((W + W.transpose()).cwiseAbs().maxCoeff() < 1e-10, ErrorKind::InvalidArgument,
            "symplectic form must be antisymmetric");
    Eigen::FullPivLU<MatR> lu(W);
    require(lu.isInvertible() && std::abs(W.determinant()) > 1e-12, ErrorKind::Degenerate,
            "symplectic form is singular");
    MatR out = MatR::Zero(2 * m, 2 * m);
    out.topRightCorner(m, m) = -lu.inverse();
    out.bottomLeftCorner(m, m) = W;
    return GCStructure(m / 2, out);
}

MatR compatible_complex_structure(const MatR& W)
{
    const int m = static_cast<int>(W.rows());
    require(std::abs(W.determinant()) > 1e-12, ErrorKind::Degenerate, "symplectic form is singular");
    Eigen::SelfAdjointEigenSolver<MatR> es(W.transpose() * W);
    MatR isq = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
               es.eigenvectors().transpose();
    MatR J = W * isq;
    require((J * J + MatR::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-10, ErrorKind::InvalidArgument,
            "polar part of omega does not square to -1");
    return J;
}

GCStructure bfield_conjugate(const GCStructure& J, const MatR& B)
{
    const int m = 2 * J.n;
    require(B.rows() == m && B.cols() == m, ErrorKind::DimensionMismatch, "b-field must be 2n x 2n");
    MatR E = MatR::Identity(2 * m, 2 * m);
    E.bottomLeftCorner(m, m) = B;
    MatR Einv = MatR::Identity(2 * m, 2 * m);
    Einv.bottomLeftCorner(m, m) = -B;
    return GCStructure(J.n, E * J.mat * Einv);
}

MatC spin_operator(const GCStructure& J)
{
    const int n = J.n;
    const int N = 1 << (2 * n);
    MatC L = J.L();
    require(L.cols() == 2 * n, ErrorKind::InvalidArgument, "structure has no 2n-dimensional -i eigenspace");
    MatC Lb = L.conjugate();
    MatC Q = neutral_matrix(n).cast<cd>();
    MatC H = L.transpose() * Q * Lb;
    MatC c = 0.5 * H.transpose().inverse();
    std::vector<MatC> Ce, Cb;
    for (int i = 0; i < 2 * n; ++i) {
        Ce.push_back(clifford_matrix(GenVector::from_vector(n, L.col(i))));
        Cb.push_back(clifford_matrix(GenVector::from_vector(n, Lb.col(i))));
    }
    MatC S = MatC::Zero(N, N);
    for (int i = 0; i < 2 * n; ++i) {
        MatC row = MatC::Zero(N, N);
        for (int j = 0; j < 2 * n; ++j) row += c(i, j) * Cb[j];
        S += Ce[i] * row;
    }
    S -= double(n) * MatC::Identity(N, N);
    return -I_ * S;
}

MatC u_projector(const GCStructure& J, int k)
{
    const int n = J.n;
    require(k >= -n && k <= n, ErrorKind::InvalidArgument, "U^k index out of range");
    const int N = 1 << (2 * n);
    MatC S = spin_operator(J);
    MatC P = MatC::Identity(N, N);
    for (int j = -n; j <= n; ++j) {
        if (j == k) continue;
        P = P * (S - I_ * double(j) * MatC::Identity(N, N)) / (I_ * double(k - j));
    }
    return P;
}

GradedForm u_project(const GCStructure& J, int k, const GradedForm& a)
{
    require(a.n == J.n, ErrorKind::DimensionMismatch, "form and structure dimensions differ");
    MatC P = u_projector(J, k);
    VecC x = Eigen::Map<const VecC>(a.c.data(), a.size());
    VecC y = P * x;
    GradedForm r(a.n);
    for (int S = 0; S < a.size(); ++S) r.c[S] = y(S);
    return r;
}

int u_multiplicity(const GCStructure& J, int k)
{
    MatC S = spin_operator(J);
    Eigen::ComplexEigenSolver<MatC> es(S);
    const auto& ev = es.eigenvalues();
    const double rho = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int count = 0;
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i) - I_ * double(k)) < 1e-10 * rho) ++count;
    return count;
}

GradedForm spinor_from_gcs(const GCStructure& J)
{
    MatC P = u_projector(J, -J.n);
    Eigen::JacobiSVD<MatC> svd(P, Eigen::ComputeThinU);
    VecC u = svd.matrixU().col(0);
    int imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    u *= std::abs(u(imax)) / u(imax);
    GradedForm r(J.n);
    for (int S = 0; S < r.size(); ++S) r.c[S] = u(S);
    return r;
}

GKPair gk_validate(const GCStructure& J1, const GCStructure& J2)
{
    require(J1.n == J2.n, ErrorKind::DimensionMismatch, "structures on different dimensions");
    require(J1.defect() < 1e-10 && J2.defect() < 1e-10, ErrorKind::InvalidArgument,
            "input is not a generalized complex structure");
    const int n = J1.n;
    const int m = 4 * n;
    double comm = (J1.mat * J2.mat - J2.mat * J1.mat).cwiseAbs().maxCoeff();
    require(comm < 1e-10, ErrorKind::InvalidArgument, "structures do not commute");
    GKPair p;
    p.J1 = J1;
    p.J2 = J2;
    p.Ghat = -J1.mat * J2.mat;
    p.Gform = p.Ghat.transpose() * neutral_matrix(n);
    double asym = (p.Gform - p.Gform.transpose()).cwiseAbs().maxCoeff();
    require(asym < 1e-10, ErrorKind::InvalidArgument, "<Ghat., .> is not symmetric");
    Eigen::SelfAdjointEigenSolver<MatR> es(0.5 * (p.Gform + p.Gform.transpose()));
    p.min_eig = es.eigenvalues().minCoeff();
    require(p.min_eig > 1e-10, ErrorKind::InvalidArgument, "<Ghat., .> is not positive definite");
    p.Cplus = null_space(MatR(p.Ghat - MatR::Identity(m, m)), 1e-10);
    p.Cminus = null_space(MatR(p.Ghat + MatR::Identity(m, m)), 1e-10);
    auto meet = [&](cd l1, cd l2) {
        MatC S(2 * m, m);
        S << J1.mat.cast<cd>() - l1 * MatC::Identity(m, m), J2.mat.cast<cd>() - l2 * MatC::Identity(m, m);
        return null_space(S, 1e-10);
    };
    p.L1L2 = meet(-I_, -I_);
    p.L1L2bar = meet(-I_, I_);
    p.L1barL2 = meet(I_, -I_);
    p.L1barL2bar = meet(I_, I_);
    return p;
}

} // namespace genkf
