#include "genkf/form.hpp"

#include <bit>
#include <cmath>

namespace genkf {

namespace {

void check_n(int n)
{
    require(n >= 1 && n <= 4, ErrorKind::InvalidArgument, "form dimension n must be in [1,4]");
}

void same_n(int a, int b)
{
    require(a == b, ErrorKind::DimensionMismatch, "forms live on different dimensions");
}

int below(unsigned S, int mu) { return std::popcount(S & ((1u << mu) - 1u)); }

} // namespace

unsigned popcount(unsigned S) { return static_cast<unsigned>(std::popcount(S)); }

int wedge_sign(unsigned S, unsigned T)
{
    if (S & T) return 0;
    int inv = 0;
    for (unsigned t = T; t; t &= t - 1) {
        int b = std::countr_zero(t);
        inv += std::popcount(S >> (b + 1));
    }
    return (inv & 1) ? -1 : 1;
}

GradedForm::GradedForm(int n_) : n(n_)
{
    check_n(n_);
    c.assign(std::size_t(1) << (2 * n_), cd(0.0));
}

GradedForm GradedForm::one(int n)
{
    GradedForm f(n);
    f.c[0] = 1.0;
    return f;
}

GradedForm GradedForm::monomial(int n, unsigned S, cd coef)
{
    GradedForm f(n);
    require(S < f.c.size(), ErrorKind::InvalidArgument, "monomial index out of range");
    f.c[S] = coef;
    return f;
}

GradedForm& GradedForm::operator+=(const GradedForm& o)
{
    same_n(n, o.n);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

GradedForm& GradedForm::operator-=(const GradedForm& o)
{
    same_n(n, o.n);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

GradedForm& GradedForm::operator*=(cd s)
{
    for (auto& x : c) x *= s;
    return *this;
}

GradedForm GradedForm::degree_part(int k) const
{
    GradedForm r(n);
    for (std::size_t S = 0; S < c.size(); ++S)
        if (std::popcount(S) == k) r.c[S] = c[S];
    return r;
}

GradedForm GradedForm::conj() const
{
    GradedForm r(n);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = std::conj(c[i]);
    return r;
}

double GradedForm::max_abs() const
{
    double m = 0.0;
    for (auto& x : c) m = std::max(m, std::abs(x));
    return m;
}

GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
GradedForm operator*(cd s, GradedForm a) { return a *= s; }

GenVector::GenVector(int n_) : n(n_), vec(VecC::Zero(2 * n_)), covec(VecC::Zero(2 * n_))
{
    check_n(n_);
}

GenVector::GenVector(const VecC& v, const VecC& xi) : n(static_cast<int>(v.size() / 2)), vec(v), covec(xi)
{
    require(v.size() == xi.size() && v.size() % 2 == 0, ErrorKind::DimensionMismatch,
            "vector and covector parts differ in length");
    check_n(n);
}

GenVector GenVector::from_vector(int n, const VecC& x)
{
    require(x.size() == 4 * n, ErrorKind::DimensionMismatch, "generalized vector needs 4n entries");
    return GenVector(x.head(2 * n), x.tail(2 * n));
}

GenVector GenVector::tangent(int n, int mu)
{
    GenVector e(n);
    e.vec(mu) = 1.0;
    return e;
}

GenVector GenVector::cotangent(int n, int mu)
{
    GenVector e(n);
    e.covec(mu) = 1.0;
    return e;
}

VecC GenVector::as_vector() const
{
    VecC x(4 * n);
    x << vec, covec;
    return x;
}

bool GenVector::is_real(double tol) const
{
    return vec.imag().cwiseAbs().maxCoeff() <= tol && covec.imag().cwiseAbs().maxCoeff() <= tol;
}

GenVector GenVector::conj() const { return GenVector(vec.conjugate(), covec.conjugate()); }

cd neutral_pair(const GenVector& a, const GenVector& b)
{
    same_n(a.n, b.n);
    return 0.5 * (a.covec.transpose() * b.vec + b.covec.transpose() * a.vec)(0);
}

MatR neutral_matrix(int n)
{
    int m = 2 * n;
    MatR Q = MatR::Zero(2 * m, 2 * m);
    Q.block(0, m, m, m) = 0.5 * MatR::Identity(m, m);
    Q.block(m, 0, m, m) = 0.5 * MatR::Identity(m, m);
    return Q;
}

GradedForm wedge(const GradedForm& a, const GradedForm& b)
{
    same_n(a.n, b.n);
    GradedForm r(a.n);
    const unsigned N = static_cast<unsigned>(a.c.size());
    for (unsigned S = 0; S < N; ++S) {
        if (a.c[S] == 0.0) continue;
        const unsigned rest = (N - 1) & ~S;
        // iterate T over subsets of the complement only
        for (unsigned T = rest;; T = (T - 1) & rest) {
            if (b.c[T] != 0.0) r.c[S | T] += double(wedge_sign(S, T)) * a.c[S] * b.c[T];
            if (T == 0) break;
        }
    }
    return r;
}

GradedForm interior_axis(int mu, const GradedForm& a)
{
    GradedForm r(a.n);
    const unsigned bit = 1u << mu;
    for (unsigned S = 0; S < a.c.size(); ++S) {
        if (!(S & bit)) continue;
        r.c[S ^ bit] += (below(S, mu) & 1 ? -1.0 : 1.0) * a.c[S];
    }
    return r;
}

GradedForm dx_wedge(int mu, const GradedForm& a)
{
    GradedForm r(a.n);
    const unsigned bit = 1u << mu;
    for (unsigned S = 0; S < a.c.size(); ++S) {
        if (S & bit) continue;
        r.c[S | bit] += (below(S, mu) & 1 ? -1.0 : 1.0) * a.c[S];
    }
    return r;
}

GradedForm interior(const GenVector& v, const GradedForm& a)
{
    same_n(v.n, a.n);
    require(v.covec.cwiseAbs().maxCoeff() == 0.0, ErrorKind::InvalidArgument,
            "interior product takes a pure tangent vector");
    GradedForm r(a.n);
    for (int mu = 0; mu < a.dim(); ++mu)
        if (v.vec(mu) != 0.0) r += v.vec(mu) * interior_axis(mu, a);
    return r;
}

GradedForm clifford_act(const GenVector& e, const GradedForm& a)
{
    same_n(e.n, a.n);
    GradedForm r(a.n);
    for (int mu = 0; mu < a.dim(); ++mu) {
        if (e.vec(mu) != 0.0) r += e.vec(mu) * interior_axis(mu, a);
        if (e.covec(mu) != 0.0) r += e.covec(mu) * dx_wedge(mu, a);
    }
    return r;
}

MatC clifford_matrix(const GenVector& e)
{
    const int N = 1 << (2 * e.n);
    MatC M = MatC::Zero(N, N);
    for (int S = 0; S < N; ++S) {
        GradedForm r = clifford_act(e, GradedForm::monomial(e.n, S));
        for (int T = 0; T < N; ++T) M(T, S) = r.c[T];
    }
    return M;
}

GradedForm involution(const GradedForm& a)
{
    GradedForm r(a.n);
    for (std::size_t S = 0; S < a.c.size(); ++S) {
        int k = std::popcount(S) % 4;
        r.c[S] = (k <= 1) ? a.c[S] : -a.c[S];
    }
    return r;
}

cd mukai_pair(const GradedForm& a, const GradedForm& b)
{
    same_n(a.n, b.n);
    const unsigned top = static_cast<unsigned>(a.c.size()) - 1;
    cd s = 0.0;
    for (unsigned S = 0; S <= top; ++S) {
        const unsigned T = top ^ S;
        if (a.c[S] == 0.0 || b.c[T] == 0.0) continue;
        int k = std::popcount(T) % 4;
        double inv = (k <= 1) ? 1.0 : -1.0;
        s += double(wedge_sign(S, T)) * inv * a.c[S] * b.c[T];
    }
    return s;
}

GradedForm two_form(int n, const MatC& W)
{
    require(W.rows() == 2 * n && W.cols() == 2 * n, ErrorKind::DimensionMismatch,
            "two-form matrix must be 2n x 2n");
    GradedForm f(n);
    for (int mu = 0; mu < 2 * n; ++mu)
        for (int nu = mu + 1; nu < 2 * n; ++nu) f.c[(1u << mu) | (1u << nu)] = W(mu, nu);
    return f;
}

GradedForm two_form(int n, const MatR& W) { return two_form(n, MatC(W.cast<cd>())); }

MatC two_form_matrix(const GradedForm& b)
{
    const int m = b.dim();
    MatC W = MatC::Zero(m, m);
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu + 1; nu < m; ++nu) {
            W(mu, nu) = b.c[(1u << mu) | (1u << nu)];
            W(nu, mu) = -W(mu, nu);
        }
    return W;
}

GradedForm exp_two_form(const GradedForm& B)
{
    for (std::size_t S = 0; S < B.c.size(); ++S)
        require(std::popcount(S) == 2 || B.c[S] == 0.0, ErrorKind::InvalidArgument,
                "exp_two_form needs a pure degree-2 form");
    GradedForm r = GradedForm::one(B.n);
    GradedForm term = GradedForm::one(B.n);
    for (int k = 1; k <= B.n; ++k) {
        term = (1.0 / k) * wedge(term, B);
        r += term;
    }
    return r;
}

GradedForm b_transform(const GradedForm& b, const GradedForm& a)
{
    for (std::size_t S = 0; S < b.c.size(); ++S) {
        require(std::popcount(S) == 2 || b.c[S] == 0.0, ErrorKind::InvalidArgument,
                "b-field must be a degree-2 form");
        require(b.c[S].imag() == 0.0, ErrorKind::InvalidArgument, "b-field must be real");
    }
    return wedge(exp_two_form(b), a);
}

GradedForm symplectic_spinor(int n, const MatR& b, const MatR& omega)
{
    MatC B = b.cast<cd>() + I_ * omega.cast<cd>();
    return exp_two_form(two_form(n, B));
}

} // namespace genkf

#include "genkf/random.hpp"

namespace genkf {

GradedForm Rng::form(int n)
{
    GradedForm f(n);
    for (auto& x : f.c) x = cnormal();
    return f;
}

GradedForm Rng::form_parity(int n, int parity)
{
    GradedForm f(n);
    for (std::size_t S = 0; S < f.c.size(); ++S) {
        cd z = cnormal();
        if (std::popcount(S) % 2 == parity) f.c[S] = z;
    }
    return f;
}

GenVector Rng::real_genvector(int n)
{
    GenVector e(n);
    for (int i = 0; i < 2 * n; ++i) e.vec(i) = normal();
    for (int i = 0; i < 2 * n; ++i) e.covec(i) = normal();
    return e;
}

GenVector Rng::complex_genvector(int n)
{
    GenVector e(n);
    for (int i = 0; i < 2 * n; ++i) e.vec(i) = cnormal();
    for (int i = 0; i < 2 * n; ++i) e.covec(i) = cnormal();
    return e;
}

MatR Rng::antisym(int m)
{
    MatR W = MatR::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            W(i, j) = normal();
            W(j, i) = -W(i, j);
        }
    return W;
}

MatC Rng::hermitian(int r)
{
    MatC X(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) X(i, j) = cnormal();
    return 0.5 * (X + X.adjoint());
}

MatC Rng::skew_hermitian(int r) { return I_ * hermitian(r); }

MatC Rng::unitary(int r)
{
    MatC X(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) X(i, j) = cnormal();
    Eigen::HouseholderQR<MatC> qr(X);
    return qr.householderQ() * MatC::Identity(r, r);
}

VecR Rng::real_vector(int m)
{
    VecR v(m);
    for (int i = 0; i < m; ++i) v(i) = normal();
    return v;
}

} // namespace genkf
