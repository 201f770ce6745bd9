#include "genkf/moment.hpp"

#include <cmath>

namespace genkf {

namespace {

const MatField& slot(const GenSection& a, int alpha)
{
    const int m = a.dim();
    return alpha < m ? a.V[alpha] : a.A[alpha - m];
}

GenVector basis_vector(int n, int alpha)
{
    return alpha < 2 * n ? GenVector::tangent(n, alpha) : GenVector::cotangent(n, alpha - 2 * n);
}

FormField clifford_field(const GenVector& e, const FormField& phi)
{
    FormField out(phi.g, 1);
    for (std::size_t p = 0; p < phi.points(); ++p) out.set_form(p, clifford_act(e, phi.form_at(p)));
    return out;
}

// J_psi at every point; computed once when psi is constant
std::vector<MatR> structure_field(const FormField& psi)
{
    std::vector<MatR> out(psi.points());
    bool constant = true;
    GradedForm f0 = psi.form_at(0);
    for (std::size_t p = 1; p < psi.points() && constant; ++p) constant = (psi.form_at(p) - f0).max_abs() == 0.0;
    if (constant) {
        MatR J = gcs_from_spinor(f0).mat;
        for (auto& x : out) x = J;
        return out;
    }
    for (std::size_t p = 0; p < psi.points(); ++p) out[p] = gcs_from_spinor(psi.form_at(p)).mat;
    return out;
}

double bilinear_trace(const GenSection& a1, const GenSection& a2, const std::vector<MatR>& M, const FormField& psi)
{
    const int m4 = 2 * a1.dim();
    auto vol = volume_density(psi);
    std::vector<double> f(psi.points());
    for (std::size_t p = 0; p < psi.points(); ++p) {
        double s = 0.0;
        for (int g = 0; g < m4; ++g)
            for (int b = 0; b < m4; ++b) {
                const double w = M[p](g, b);
                if (w == 0.0) continue;
                s += w * (slot(a1, g).at(p) * slot(a2, b).at(p)).trace().real();
            }
        f[p] = -s * vol[p];
    }
    return integrate(f, *psi.g);
}

} // namespace

FormField section_act(const GenSection& a, const FormField& phi)
{
    FormField out = vector_act(a.V, phi);
    for (int mu = 0; mu < a.dim(); ++mu) out += tensor(a.A[mu], dx_wedge(mu, phi));
    return out;
}

double omega_GM(const GenSection& a1, const GenSection& a2, const FormField& psi)
{
    const MatR Q = neutral_matrix(psi.n());
    auto J = structure_field(psi);
    for (auto& x : J) x = MatR(x.transpose() * Q);
    return bilinear_trace(a1, a2, J, psi);
}

double g_GM(const GenSection& a1, const GenSection& a2, const GCStructure& J1, const FormField& psi)
{
    const MatR Q = neutral_matrix(psi.n());
    auto J = structure_field(psi);
    for (auto& x : J) {
        MatR G = -J1.mat * x;
        x = G.transpose() * Q;
    }
    return bilinear_trace(a1, a2, J, psi);
}

double omega_spinor(const GenSection& a1, const GenSection& a2, const FormField& psi)
{
    const cd phase = std::pow(I_, -psi.n());
    auto t = trace_pair(section_act(a1, psi), section_act(a2, psi.conj()));
    std::vector<double> f(t.size());
    for (std::size_t p = 0; p < t.size(); ++p) f[p] = (phase * t[p]).imag();
    return integrate(f, *psi.g);
}

double moment_value(const GenConnection& c, const MatField& xi, const FormField& psi)
{
    require(xi.skew_defect() < 1e-12, ErrorKind::InvalidArgument, "xi must be skew-Hermitian");
    const cd phase = std::pow(I_, -psi.n());
    auto t = trace_pair(tensor(xi, psi), curvature_unchecked(c, psi.conj()));
    std::vector<double> f(t.size());
    for (std::size_t p = 0; p < t.size(); ++p) f[p] = (phase * t[p]).imag();
    return integrate(f, *psi.g);
}

double moment_from_K(const GenConnection& c, const MatField& xi, const FormField& psi)
{
    MatField K = mean_curvature_unchecked(c, psi);
    auto vol = volume_density(psi);
    std::vector<double> f(vol.size());
    for (std::size_t p = 0; p < vol.size(); ++p) f[p] = (I_ * (xi.at(p) * K.at(p)).trace()).real() * vol[p];
    return integrate(f, *psi.g);
}

GenSection covariant_derivative(const GenConnection& c, const MatField& xi)
{
    GenSection out(c.g, c.r);
    for (int mu = 0; mu < c.dim(); ++mu) {
        out.A[mu] = diff(xi, mu);
        for (std::size_t p = 0; p < xi.points(); ++p) {
            out.A[mu].at(p) += c.A[mu].at(p) * xi.at(p) - xi.at(p) * c.A[mu].at(p);
            out.V[mu].at(p) = c.V[mu].at(p) * xi.at(p) - xi.at(p) * c.V[mu].at(p);
        }
    }
    return out;
}

FormField generalized_d(const GenConnection& c, const GenSection& a, const FormField& phi)
{
    FormField out = d_field(section_act(a, phi));
    if (c.r == 1) return out;
    const int n = phi.n();
    for (int al = 0; al < 4 * n; ++al)
        for (int be = 0; be < 4 * n; ++be) {
            MatField br(c.g, c.r);
            for (std::size_t p = 0; p < br.points(); ++p)
                br.at(p) = slot(c, al).at(p) * slot(a, be).at(p) - slot(a, be).at(p) * slot(c, al).at(p);
            if (br.max_abs() == 0.0) continue;
            FormField ee = clifford_field(basis_vector(n, al), clifford_field(basis_vector(n, be), phi));
            out += tensor(br, ee);
        }
    return out;
}

double pairing_identity_defect(const GradedForm& psi, int s)
{
    const int n = psi.n;
    const cd phase = std::pow(I_, -n);
    const GradedForm pb = psi.conj();
    const double vol = (phase * mukai_pair(psi, pb)).real();
    double err = 0.0;
    for (int i = 0; i < 4 * n; ++i)
        for (int j = 0; j < 4 * n; ++j) {
            GenVector ei = basis_vector(n, i), ej = basis_vector(n, j);
            double lhs = neutral_pair(ei, ej).real() * vol;
            double rhs = s * (phase * mukai_pair(clifford_act(ei, psi), clifford_act(ej, pb))).real();
            err = std::max(err, std::abs(lhs - rhs));
        }
    return err;
}

double structure_identity_defect(const GradedForm& psi, int s)
{
    const int n = psi.n;
    const cd phase = std::pow(I_, -n);
    const GradedForm pb = psi.conj();
    const double vol = (phase * mukai_pair(psi, pb)).real();
    const MatR J = gcs_from_spinor(psi).mat;
    double err = 0.0;
    for (int i = 0; i < 4 * n; ++i)
        for (int j = 0; j < 4 * n; ++j) {
            GenVector ei = basis_vector(n, i), ej = basis_vector(n, j);
            GenVector Jei = GenVector::from_vector(n, J.col(i).cast<cd>());
            double lhs = neutral_pair(Jei, ej).real() * vol;
            double rhs = -s * (phase * mukai_pair(clifford_act(ei, psi), clifford_act(ej, pb))).imag();
            err = std::max(err, std::abs(lhs - rhs));
        }
    return err;
}

} // namespace genkf
