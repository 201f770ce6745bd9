#include "genkf/connection.hpp"

#include <cmath>
#include <sstream>

#include "genkf/structures.hpp"

namespace genkf {

GenConnection::GenConnection(GridPtr grid, int rank) : g(std::move(grid)), r(rank)
{
    for (int mu = 0; mu < g->dim(); ++mu) {
        A.emplace_back(g, r);
        V.emplace_back(g, r);
    }
    flux = MatR::Zero(g->dim(), g->dim());
}

double GenConnection::skew_defect() const
{
    double m = 0.0;
    for (int mu = 0; mu < dim(); ++mu) m = std::max({m, A[mu].skew_defect(), V[mu].skew_defect()});
    return m;
}

void GenConnection::check() const
{
    require(static_cast<int>(A.size()) == dim() && static_cast<int>(V.size()) == dim(), ErrorKind::DimensionMismatch,
            "connection needs 2n components of A and V");
    for (int mu = 0; mu < dim(); ++mu)
        require(A[mu].r == r && V[mu].r == r, ErrorKind::DimensionMismatch, "connection rank mismatch");
    require(skew_defect() < 1e-12, ErrorKind::InvalidArgument, "connection is not skew-Hermitian");
    require((flux + flux.transpose()).cwiseAbs().maxCoeff() < 1e-14, ErrorKind::InvalidArgument,
            "background flux must be antisymmetric");
}

GenConnection& GenConnection::operator+=(const GenConnection& o)
{
    require(r == o.r, ErrorKind::DimensionMismatch, "rank mismatch");
    for (int mu = 0; mu < dim(); ++mu) {
        A[mu] += o.A[mu];
        V[mu] += o.V[mu];
    }
    flux += o.flux;
    return *this;
}

GenConnection& GenConnection::operator*=(double s)
{
    for (int mu = 0; mu < dim(); ++mu) {
        A[mu] *= s;
        V[mu] *= s;
    }
    return *this;
}

GenConnection operator+(GenConnection a, const GenConnection& b) { return a += b; }
GenConnection operator*(double s, GenConnection a) { return a *= s; }

namespace {

std::string point_name(const TorusGrid& g, std::size_t p)
{
    std::ostringstream os;
    auto c = g.coords(p);
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
    return os.str();
}

std::vector<cd> scalar_component(const FormField& F, unsigned S)
{
    std::vector<cd> out(F.points());
    for (std::size_t p = 0; p < F.points(); ++p) out[p] = F.v[p * F.D + S];
    return out;
}

} // namespace

PsiCheck validate_psi(const FormField& psi, double tol)
{
    require(psi.r == 1, ErrorKind::InvalidArgument, "psi must be a scalar form field");
    const auto& g = *psi.g;
    PsiCheck out;
    GradedForm first = psi.form_at(0);
    out.constant = true;
    for (std::size_t p = 1; p < g.points() && out.constant; ++p)
        if ((psi.form_at(p) - first).max_abs() != 0.0) out.constant = false;
    const std::size_t stride = out.constant ? g.points() : 1;
    for (std::size_t p = 0; p < g.points(); p += stride) {
        PureSpinorCheck chk = classify_spinor(psi.form_at(p));
        require(chk.pure && chk.nondegenerate && chk.type_number == 0, ErrorKind::NotPure,
                "psi is not a nondegenerate pure spinor of type 0 at grid point " + point_name(g, p));
    }
    out.d_norm = d_field(psi).max_abs();
    if (tol >= 0.0) out.tolerance = tol;
    else if (out.constant) out.tolerance = 1e-10;
    else {
        // truncation bound for the central difference: h^2/6 |f'''|, with margin
        double bound = 0.0;
        for (int mu = 0; mu < g.dim(); ++mu) {
            const double h = g.spacing(mu);
            double m3 = 0.0;
            for (unsigned S = 0; S < unsigned(psi.D); ++S) {
                auto f = scalar_component(psi, S);
                for (std::size_t p = 0; p < g.points(); ++p) {
                    std::size_t p1 = g.plus(mu, p), p2 = g.plus(mu, p1);
                    std::size_t m1 = g.minus(mu, p), m2 = g.minus(mu, m1);
                    cd t = (f[p2] - 2.0 * f[p1] + 2.0 * f[m1] - f[m2]) / (2.0 * h * h * h);
                    m3 = std::max(m3, std::abs(t));
                }
            }
            bound += h * h / 6.0 * m3;
        }
        out.tolerance = 1e-10 + 4.0 * bound;
    }
    require(out.d_norm <= out.tolerance, ErrorKind::NotClosed, "psi not d-closed");
    return out;
}

MatField field_strength_component(const GenConnection& c, int mu, int nu)
{
    MatField F = diff(c.A[nu], mu) - diff(c.A[mu], nu);
    for (std::size_t p = 0; p < F.points(); ++p) {
        if (c.r > 1) F.at(p) += c.A[mu].at(p) * c.A[nu].at(p) - c.A[nu].at(p) * c.A[mu].at(p);
        if (c.flux(mu, nu) != 0.0) F.at(p) += I_ * c.flux(mu, nu) * MatC::Identity(c.r, c.r);
    }
    return F;
}

FormField field_strength(const GenConnection& c)
{
    FormField F(c.g, c.r);
    for (int mu = 0; mu < c.dim(); ++mu)
        for (int nu = mu + 1; nu < c.dim(); ++nu) {
            MatField f = field_strength_component(c, mu, nu);
            const unsigned S = (1u << mu) | (1u << nu);
            for (std::size_t p = 0; p < F.points(); ++p) F.at(p, S) = f.at(p);
        }
    return F;
}

FormField curvature_unchecked(const GenConnection& c, const FormField& psi)
{
    FormField out = wedge(field_strength(c), psi);
    out += covariant_d(c.A, vector_act(c.V, psi));
    if (c.r > 1) {
        for (int mu = 0; mu < c.dim(); ++mu)
            for (int nu = mu + 1; nu < c.dim(); ++nu) {
                MatField br(c.g, c.r);
                for (std::size_t p = 0; p < br.points(); ++p)
                    br.at(p) = c.V[mu].at(p) * c.V[nu].at(p) - c.V[nu].at(p) * c.V[mu].at(p);
                out += tensor(br, interior_axis(mu, interior_axis(nu, psi)));
            }
    }
    return out;
}

FormField curvature_FA(const GenConnection& c, const FormField& psi)
{
    c.check();
    validate_psi(psi);
    return curvature_unchecked(c, psi);
}

std::vector<double> volume_density(const FormField& psi)
{
    const auto& g = *psi.g;
    const int n = g.n();
    const cd phase = std::pow(I_, -n);
    std::vector<double> vol(g.points());
    FormField pb = psi.conj();
    for (std::size_t p = 0; p < g.points(); ++p) {
        cd m = phase * mukai_pair(psi.form_at(p), pb.form_at(p));
        require(std::abs(m) > 1e-14, ErrorKind::Degenerate,
                "<psi, psibar>_s vanishes at grid point " + point_name(g, p));
        require(m.real() > 0.0 && std::abs(m.imag()) <= 1e-10 * std::abs(m), ErrorKind::Degenerate,
                "volume form i^{-n}<psi, psibar>_s is not positive at grid point " + point_name(g, p));
        vol[p] = m.real();
    }
    return vol;
}

MatField hermitian_part_ratio(const FormField& X, const FormField& psi)
{
    FormField pb = psi.conj();
    MatField num = mukai_contract(X, pb);
    MatField out(X.g, X.r);
    for (std::size_t p = 0; p < X.points(); ++p) {
        cd den = mukai_pair(psi.form_at(p), pb.form_at(p));
        require(std::abs(den) > 1e-14, ErrorKind::Degenerate,
                "<psi, psibar>_s vanishes at grid point " + point_name(*X.g, p));
        MatC M = num.at(p) / den;
        out.at(p) = 0.5 * (M + M.adjoint());
    }
    return out;
}

MatField mean_curvature_unchecked(const GenConnection& c, const FormField& psi)
{
    return hermitian_part_ratio(curvature_unchecked(c, psi), psi);
}

MatField mean_curvature_K(const GenConnection& c, const FormField& psi)
{
    return hermitian_part_ratio(curvature_FA(c, psi), psi);
}

double l2_norm(const MatField& M, const FormField& psi)
{
    auto vol = volume_density(psi);
    std::vector<double> f(M.points());
    for (std::size_t p = 0; p < M.points(); ++p) f[p] = M.at(p).squaredNorm() * vol[p];
    return std::sqrt(integrate(f, *M.g));
}

Residual eh_residual(const GenConnection& c, const FormField& psi, double lambda)
{
    Residual out;
    out.field = mean_curvature_K(c, psi);
    for (std::size_t p = 0; p < out.field.points(); ++p) out.field.at(p) -= lambda * MatC::Identity(c.r, c.r);
    out.norm = l2_norm(out.field, psi);
    return out;
}

std::vector<std::vector<MatField>> two_form_components(const FormField& b)
{
    require(b.r == 1, ErrorKind::InvalidArgument, "b-field must be a scalar form field");
    const int m = b.g->dim();
    std::vector<std::vector<MatField>> out(m, std::vector<MatField>(m, MatField(b.g, 1)));
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu + 1; nu < m; ++nu) {
            const unsigned S = (1u << mu) | (1u << nu);
            for (std::size_t p = 0; p < b.points(); ++p) {
                out[mu][nu].v[p] = b.v[p * b.D + S];
                out[nu][mu].v[p] = -b.v[p * b.D + S];
            }
        }
    return out;
}

namespace {

void check_bfield(const FormField& b)
{
    for (std::size_t p = 0; p < b.points(); ++p)
        for (unsigned S = 0; S < unsigned(b.D); ++S) {
            const cd x = b.v[p * b.D + S];
            require(popcount(S) == 2 || x == 0.0, ErrorKind::InvalidArgument, "b-field must have degree 2");
            require(x.imag() == 0.0, ErrorKind::InvalidArgument, "b-field must be real");
        }
}

} // namespace

FormField bfield_spinor(const FormField& b, const FormField& psi)
{
    check_bfield(b);
    FormField out(psi.g, 1);
    for (std::size_t p = 0; p < psi.points(); ++p) out.set_form(p, b_transform(b.form_at(p), psi.form_at(p)));
    return out;
}

GenConnection bfield_act_connection(const FormField& b, const GenConnection& c)
{
    check_bfield(b);
    const double db = d_field(b).max_abs();
    require(db < 1e-10 + 1e-6 * b.max_abs(), ErrorKind::NotClosed, "b-field is not d-closed");
    auto B = two_form_components(b);
    GenConnection out = c;
    for (int mu = 0; mu < c.dim(); ++mu)
        for (int nu = 0; nu < c.dim(); ++nu)
            for (std::size_t p = 0; p < c.g->points(); ++p)
                out.A[mu].at(p) -= B[nu][mu].v[p] * c.V[nu].at(p);
    return out;
}

MatField bfield_curvature_defect(const FormField& b, const GenConnection& c)
{
    auto B = two_form_components(b);
    MatField out(c.g, c.r);
    for (int mu = 0; mu < c.dim(); ++mu)
        for (int nu = 0; nu < c.dim(); ++nu)
            for (std::size_t p = 0; p < out.points(); ++p) {
                MatC br = c.V[mu].at(p) * c.V[nu].at(p) - c.V[nu].at(p) * c.V[mu].at(p);
                out.at(p) += 0.5 * B[nu][mu].v[p] * br;
            }
    return out;
}

GenConnection gauge_transform(const GenConnection& c, const MatField& gauge)
{
    require(gauge.r == c.r, ErrorKind::DimensionMismatch, "gauge rank mismatch");
    MatField ginv(c.g, c.r);
    for (std::size_t p = 0; p < ginv.points(); ++p) ginv.at(p) = gauge.at(p).adjoint();
    GenConnection out = c;
    for (int mu = 0; mu < c.dim(); ++mu) {
        MatField dg = diff(ginv, mu);
        for (std::size_t p = 0; p < ginv.points(); ++p) {
            // central differences break the Leibniz rule, so g D(g^{-1}) is only
            // skew up to O(h^2); keep its u(r) part
            const MatC m = gauge.at(p) * dg.at(p);
            out.A[mu].at(p) = gauge.at(p) * c.A[mu].at(p) * ginv.at(p) + 0.5 * (m - m.adjoint());
            out.V[mu].at(p) = gauge.at(p) * c.V[mu].at(p) * ginv.at(p);
        }
    }
    return out;
}

FormField trace_curvature(const GenConnection& c, const FormField& psi)
{
    FormField F = curvature_FA(c, psi);
    FormField out(c.g, 1);
    for (std::size_t p = 0; p < F.points(); ++p)
        for (unsigned S = 0; S < unsigned(F.D); ++S) out.v[p * out.D + S] = F.at(p, S).trace();
    return out;
}

cd chern_pair(const GenConnection& c, const FormField& psi)
{
    FormField t = trace_curvature(c, psi);
    MatField m = mukai_contract(t, psi.conj());
    std::vector<cd> f(m.points());
    for (std::size_t p = 0; p < m.points(); ++p) f[p] = m.v[p];
    return integrate(f, *c.g);
}

double lambda_from_chern(const GenConnection& c, const FormField& psi)
{
    FormField pb = psi.conj();
    std::vector<cd> f(psi.points());
    for (std::size_t p = 0; p < psi.points(); ++p) f[p] = mukai_pair(psi.form_at(p), pb.form_at(p));
    cd total = integrate(f, *c.g);
    return (chern_pair(c, psi) / total).real() / c.r;
}

} // namespace genkf
