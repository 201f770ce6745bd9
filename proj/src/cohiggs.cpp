#include "genkf/analysis.hpp"

#include <cmath>

#include "genkf/calibration.hpp"
#include "genkf/sample.hpp"

namespace genkf {

namespace {

double form_l2(const FormField& F)
{
    std::vector<double> sq(F.points(), 0.0);
    for (std::size_t p = 0; p < F.points(); ++p)
        for (unsigned S = 0; S < static_cast<unsigned>(F.D); ++S) sq[p] += F.at(p, S).squaredNorm();
    return std::sqrt(integrate(sq, *F.g));
}

// Lambda of a scalar 2-form field, pointwise
std::vector<cd> lambda_scalar(const FormField& X, const MatR& W)
{
    const int m = X.g->dim();
    MatR Wi = W.inverse();
    std::vector<cd> out(X.points(), 0.0);
    for (std::size_t p = 0; p < X.points(); ++p)
        for (int mu = 0; mu < m; ++mu)
            for (int nu = mu + 1; nu < m; ++nu) out[p] += Wi(nu, mu) * X.at(p, (1u << mu) | (1u << nu))(0, 0);
    return out;
}

} // namespace

MatField lambda_contract(const std::vector<std::vector<MatField>>& X, const MatR& W)
{
    require(!X.empty(), ErrorKind::InvalidArgument, "empty two-form");
    const int m = static_cast<int>(X.size());
    require(W.rows() == m && W.cols() == m, ErrorKind::DimensionMismatch, "omega size does not match");
    MatR Wi = W.inverse();
    MatField out(X[0][0].g, X[0][0].r);
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu)
            if (mu != nu && Wi(nu, mu) != 0.0) out += cd(0.5 * Wi(nu, mu)) * X[mu][nu];
    return out;
}

std::vector<std::vector<MatField>> field_strength_matrix(const GenConnection& c)
{
    const int m = c.dim();
    std::vector<std::vector<MatField>> X(m, std::vector<MatField>(m, MatField(c.g, c.r)));
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu + 1; nu < m; ++nu) {
            X[mu][nu] = field_strength_component(c, mu, nu);
            X[nu][mu] = cd(-1.0) * X[mu][nu];
        }
    return X;
}

std::vector<MatField> v_one_zero(const GenConnection& c, const MatR& W)
{
    const int m = c.dim();
    MatR J = compatible_complex_structure(W);
    std::vector<MatField> out;
    for (int mu = 0; mu < m; ++mu) {
        MatField f = cd(0.5) * c.V[mu];
        for (int nu = 0; nu < m; ++nu)
            if (J(mu, nu) != 0.0) f += cd(-0.5 * J(mu, nu)) * I_ * c.V[nu];
        out.push_back(f);
    }
    return out;
}

MatField cohiggs_bracket(const GenConnection& c, const MatR& W)
{
    const int m = c.dim();
    MatR J = compatible_complex_structure(W);
    MatR g = J.transpose() * W;
    auto V10 = v_one_zero(c, W);
    MatField out(c.g, c.r);
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) {
            if (g(mu, nu) == 0.0) continue;
            for (std::size_t p = 0; p < out.points(); ++p) {
                const MatC a = V10[mu].at(p);
                const MatC b = V10[nu].at(p).adjoint();
                out.at(p) += g(mu, nu) * (a * b - b * a);
            }
        }
    return out;
}

Residual cohiggs_residual(const GenConnection& c, const MatR& W, double lambda, double holo_tol)
{
    c.check();
    MatR J = compatible_complex_structure(W);
    const double holo = dbar_residual(c, gcs_complex(J));
    require(holo <= holo_tol, ErrorKind::InvalidArgument,
            "generalized holomorphic condition fails: dbar^2 residual " + std::to_string(holo));
    MatField LF = lambda_contract(field_strength_matrix(c), W);
    Residual res;
    res.field = cd(calib::kCoHiggsField) * I_ * LF;
    res.field += cd(calib::kCoHiggsBracket) * cohiggs_bracket(c, W);
    res.field -= MatField::constant(c.g, lambda * MatC::Identity(c.r, c.r));
    FormField psi = constant_psi(c.g, MatR::Zero(W.rows(), W.cols()), W);
    res.norm = l2_norm(res.field, psi);
    return res;
}

namespace {

std::vector<std::vector<double>> real_vector_parts(const GenConnection& c)
{
    std::vector<std::vector<double>> v(c.dim(), std::vector<double>(c.g->points()));
    for (int mu = 0; mu < c.dim(); ++mu)
        for (std::size_t p = 0; p < c.g->points(); ++p) v[mu][p] = c.V[mu].v[p].imag();
    return v;
}

FormField kr_form(const GenConnection& c, const std::vector<std::vector<double>>& v, const MatR& W, double coupling)
{
    FormField om = constant_two_form(c.g, W);
    FormField X = field_strength(c);
    X += cd(0.0, coupling) * lie_derivative(v, om);
    return X;
}

} // namespace

MatField line_bundle_K(const GenConnection& c, const MatR& W, double coupling)
{
    require(c.r == 1, ErrorKind::Unsupported, "line bundle formula needs r = 1");
    auto v = real_vector_parts(c);
    auto lam = lambda_scalar(kr_form(c, v, W, coupling), W);
    MatField out(c.g, 1);
    for (std::size_t p = 0; p < out.points(); ++p) out.v[p] = calib::kLineScale * (-I_) * lam[p];
    return out;
}

KRCheck kr_soliton_check(const GenConnection& conn, const std::vector<std::vector<double>>& v, const MatR& W,
                         double coupling)
{
    require(conn.r == 1, ErrorKind::Unsupported, "soliton check needs r = 1");
    require(static_cast<int>(v.size()) == conn.dim(), ErrorKind::DimensionMismatch, "v needs 2n components");
    KRCheck out;
    GenConnection c = conn;
    for (int mu = 0; mu < c.dim(); ++mu) {
        require(v[mu].size() == c.g->points(), ErrorKind::DimensionMismatch, "v component has wrong length");
        for (std::size_t p = 0; p < c.g->points(); ++p) c.V[mu].v[p] = I_ * v[mu][p];
    }
    FormField om = constant_two_form(c.g, W);
    FormField X = kr_form(c, v, W, coupling);
    X -= I_ * om;
    out.norm = form_l2(X);
    out.floor = form_l2(I_ * om);
    const int n = c.g->n();
    out.lambda_kr = calib::kLineScale * n;
    FormField psi = constant_psi(c.g, coupling * W, W);
    out.eh_residual = eh_residual(c, psi, out.lambda_kr).norm;
    out.holomorphy = dbar_residual(c, gcs_complex(compatible_complex_structure(W)));
    return out;
}

} // namespace genkf
