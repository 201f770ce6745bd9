#include "genkf/field.hpp"

#include <algorithm>
#include <cmath>

namespace genkf {

namespace {

void same_grid(const GridPtr& a, const GridPtr& b)
{
    require(a && b && (a == b || *a == *b), ErrorKind::DimensionMismatch, "fields live on different grids");
}

} // namespace

MatField::MatField(GridPtr grid, int rank) : g(std::move(grid)), r(rank)
{
    require(r >= 1, ErrorKind::InvalidArgument, "bundle rank must be positive");
    v.assign(g->points() * r * r, cd(0.0));
}

MatField MatField::constant(GridPtr grid, const MatC& M)
{
    MatField f(std::move(grid), static_cast<int>(M.rows()));
    for (std::size_t p = 0; p < f.points(); ++p) f.at(p) = M;
    return f;
}

double MatField::max_abs() const
{
    double m = 0.0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double MatField::skew_defect() const
{
    double m = 0.0;
    for (std::size_t p = 0; p < points(); ++p) m = std::max(m, (at(p) + at(p).adjoint()).cwiseAbs().maxCoeff());
    return m;
}

double MatField::herm_defect() const
{
    double m = 0.0;
    for (std::size_t p = 0; p < points(); ++p) m = std::max(m, (at(p) - at(p).adjoint()).cwiseAbs().maxCoeff());
    return m;
}

MatField& MatField::operator+=(const MatField& o)
{
    same_grid(g, o.g);
    require(r == o.r, ErrorKind::DimensionMismatch, "rank mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

MatField& MatField::operator-=(const MatField& o)
{
    same_grid(g, o.g);
    require(r == o.r, ErrorKind::DimensionMismatch, "rank mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

MatField& MatField::operator*=(cd s)
{
    for (auto& x : v) x *= s;
    return *this;
}

MatField operator+(MatField a, const MatField& b) { return a += b; }
MatField operator-(MatField a, const MatField& b) { return a -= b; }
MatField operator*(cd s, MatField a) { return a *= s; }

FormField::FormField(GridPtr grid, int rank) : g(std::move(grid)), r(rank)
{
    require(r >= 1, ErrorKind::InvalidArgument, "bundle rank must be positive");
    D = 1 << (2 * g->n());
    v.assign(g->points() * D * r * r, cd(0.0));
}

GradedForm FormField::form_at(std::size_t p) const
{
    require(r == 1, ErrorKind::InvalidArgument, "form_at needs a scalar form field");
    GradedForm f(n());
    for (int S = 0; S < D; ++S) f.c[S] = v[p * D + S];
    return f;
}

void FormField::set_form(std::size_t p, const GradedForm& f)
{
    require(r == 1 && f.n == n(), ErrorKind::InvalidArgument, "set_form needs a scalar field of matching n");
    for (int S = 0; S < D; ++S) v[p * D + S] = f.c[S];
}

FormField FormField::constant(GridPtr grid, const GradedForm& f)
{
    FormField F(std::move(grid), 1);
    require(f.n == F.n(), ErrorKind::DimensionMismatch, "form and grid dimensions differ");
    for (std::size_t p = 0; p < F.points(); ++p) F.set_form(p, f);
    return F;
}

double FormField::max_abs() const
{
    double m = 0.0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

FormField FormField::conj() const
{
    FormField o = *this;
    for (auto& x : o.v) x = std::conj(x);
    return o;
}

FormField& FormField::operator+=(const FormField& o)
{
    same_grid(g, o.g);
    require(r == o.r, ErrorKind::DimensionMismatch, "rank mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

FormField& FormField::operator-=(const FormField& o)
{
    same_grid(g, o.g);
    require(r == o.r, ErrorKind::DimensionMismatch, "rank mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

FormField& FormField::operator*=(cd s)
{
    for (auto& x : v) x *= s;
    return *this;
}

FormField operator+(FormField a, const FormField& b) { return a += b; }
FormField operator-(FormField a, const FormField& b) { return a -= b; }
FormField operator*(cd s, FormField a) { return a *= s; }

std::vector<cd> diff(const std::vector<cd>& f, const TorusGrid& g, int mu)
{
    std::vector<cd> out(f.size());
    const double s = 0.5 / g.spacing(mu);
    for (std::size_t p = 0; p < g.points(); ++p) out[p] = s * (f[g.plus(mu, p)] - f[g.minus(mu, p)]);
    return out;
}

MatField diff(const MatField& f, int mu)
{
    MatField out(f.g, f.r);
    const auto& g = *f.g;
    const double s = 0.5 / g.spacing(mu);
    const std::size_t rr = f.r * f.r;
    for (std::size_t p = 0; p < g.points(); ++p) {
        const cd* a = f.v.data() + g.plus(mu, p) * rr;
        const cd* b = f.v.data() + g.minus(mu, p) * rr;
        cd* o = out.v.data() + p * rr;
        for (std::size_t k = 0; k < rr; ++k) o[k] = s * (a[k] - b[k]);
    }
    return out;
}

FormField d_field(const FormField& F)
{
    FormField out(F.g, F.r);
    const auto& g = *F.g;
    const std::size_t rr = F.r * F.r;
    const int D = F.D;
    parallel_for(g.points(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            for (int mu = 0; mu < g.dim(); ++mu) {
                const double s = 0.5 / g.spacing(mu);
                const std::size_t pp = g.plus(mu, p), pm = g.minus(mu, p);
                const unsigned bit = 1u << mu;
                for (unsigned S = 0; S < unsigned(D); ++S) {
                    if (S & bit) continue;
                    const double sg = s * axis_sign(S, mu);
                    const cd* a = F.v.data() + F.offset(pp, S);
                    const cd* b = F.v.data() + F.offset(pm, S);
                    cd* o = out.v.data() + out.offset(p, S | bit);
                    for (std::size_t k = 0; k < rr; ++k) o[k] += sg * (a[k] - b[k]);
                }
            }
        }
    });
    return out;
}

FormField interior_axis(int mu, const FormField& F)
{
    FormField out(F.g, F.r);
    const std::size_t rr = F.r * F.r;
    const unsigned bit = 1u << mu;
    for (std::size_t p = 0; p < F.points(); ++p)
        for (unsigned S = 0; S < unsigned(F.D); ++S) {
            if (!(S & bit)) continue;
            const double sg = axis_sign(S, mu);
            const cd* a = F.v.data() + F.offset(p, S);
            cd* o = out.v.data() + out.offset(p, S ^ bit);
            for (std::size_t k = 0; k < rr; ++k) o[k] += sg * a[k];
        }
    return out;
}

FormField dx_wedge(int mu, const FormField& F)
{
    FormField out(F.g, F.r);
    const std::size_t rr = F.r * F.r;
    const unsigned bit = 1u << mu;
    for (std::size_t p = 0; p < F.points(); ++p)
        for (unsigned S = 0; S < unsigned(F.D); ++S) {
            if (S & bit) continue;
            const double sg = axis_sign(S, mu);
            const cd* a = F.v.data() + F.offset(p, S);
            cd* o = out.v.data() + out.offset(p, S | bit);
            for (std::size_t k = 0; k < rr; ++k) o[k] += sg * a[k];
        }
    return out;
}

FormField tensor(const MatField& M, const FormField& phi)
{
    same_grid(M.g, phi.g);
    require(phi.r == 1, ErrorKind::InvalidArgument, "tensor expects a scalar form field");
    FormField out(M.g, M.r);
    for (std::size_t p = 0; p < M.points(); ++p)
        for (unsigned S = 0; S < unsigned(out.D); ++S) {
            const cd c = phi.v[p * phi.D + S];
            if (c != 0.0) out.at(p, S) = c * M.at(p);
        }
    return out;
}

FormField wedge(const FormField& X, const FormField& Y)
{
    same_grid(X.g, Y.g);
    require(X.r == Y.r || X.r == 1 || Y.r == 1, ErrorKind::DimensionMismatch, "rank mismatch in wedge");
    const int r = std::max(X.r, Y.r);
    FormField out(X.g, r);
    const unsigned D = unsigned(X.D);
    parallel_for(X.points(), [&](std::size_t lo, std::size_t hi) {
        MatC a(r, r), b(r, r);
        for (std::size_t p = lo; p < hi; ++p)
            for (unsigned S = 0; S < D; ++S) {
                if (X.r == 1) a = X.v[X.offset(p, S)] * MatC::Identity(r, r);
                else a = X.at(p, S);
                if (a.cwiseAbs().maxCoeff() == 0.0) continue;
                const unsigned rest = (D - 1) & ~S;
                for (unsigned T = rest;; T = (T - 1) & rest) {
                    if (Y.r == 1) b = Y.v[Y.offset(p, T)] * MatC::Identity(r, r);
                    else b = Y.at(p, T);
                    out.at(p, S | T) += double(wedge_sign(S, T)) * (a * b);
                    if (T == 0) break;
                }
            }
    });
    return out;
}

FormField commutator(const MatField& M, const FormField& X)
{
    same_grid(M.g, X.g);
    require(M.r == X.r, ErrorKind::DimensionMismatch, "rank mismatch in commutator");
    FormField out(X.g, X.r);
    if (X.r == 1) return out;
    for (std::size_t p = 0; p < X.points(); ++p)
        for (unsigned S = 0; S < unsigned(X.D); ++S) out.at(p, S) = M.at(p) * X.at(p, S) - X.at(p, S) * M.at(p);
    return out;
}

FormField vector_act(const std::vector<MatField>& V, const FormField& phi)
{
    require(!V.empty(), ErrorKind::InvalidArgument, "empty vector field");
    require(phi.r == 1, ErrorKind::InvalidArgument, "vector_act expects a scalar form field");
    FormField out(phi.g, V[0].r);
    for (int mu = 0; mu < phi.g->dim(); ++mu) out += tensor(V[mu], interior_axis(mu, phi));
    return out;
}

MatField mukai_contract(const FormField& X, const FormField& phi)
{
    same_grid(X.g, phi.g);
    require(phi.r == 1, ErrorKind::InvalidArgument, "mukai_contract expects a scalar second argument");
    MatField out(X.g, X.r);
    const unsigned top = unsigned(X.D) - 1;
    for (std::size_t p = 0; p < X.points(); ++p) {
        auto o = out.at(p);
        for (unsigned S = 0; S <= top; ++S) {
            const unsigned T = top ^ S;
            const cd c = phi.v[p * phi.D + T];
            if (c == 0.0) continue;
            o += double(wedge_sign(S, T) * involution_sign(T)) * c * X.at(p, S);
        }
    }
    return out;
}

std::vector<cd> trace_pair(const FormField& X, const FormField& Y)
{
    same_grid(X.g, Y.g);
    require(X.r == Y.r, ErrorKind::DimensionMismatch, "rank mismatch in pairing");
    std::vector<cd> out(X.points(), cd(0.0));
    const unsigned top = unsigned(X.D) - 1;
    for (std::size_t p = 0; p < X.points(); ++p) {
        cd s = 0.0;
        for (unsigned S = 0; S <= top; ++S) {
            const unsigned T = top ^ S;
            s += double(wedge_sign(S, T) * involution_sign(T)) * (X.at(p, S) * Y.at(p, T)).trace();
        }
        out[p] = s;
    }
    return out;
}

FormField lie_derivative(const std::vector<std::vector<double>>& v, const FormField& F)
{
    const auto& g = *F.g;
    require(static_cast<int>(v.size()) == g.dim(), ErrorKind::DimensionMismatch, "vector field needs 2n components");
    auto iv = [&](const FormField& X) {
        FormField out(X.g, X.r);
        for (int mu = 0; mu < g.dim(); ++mu) {
            FormField c = interior_axis(mu, X);
            for (std::size_t p = 0; p < g.points(); ++p)
                for (unsigned S = 0; S < unsigned(X.D); ++S) out.at(p, S) += v[mu][p] * c.at(p, S);
        }
        return out;
    };
    return iv(d_field(F)) + d_field(iv(F));
}

FormField covariant_d(const std::vector<MatField>& A, const FormField& a)
{
    require(static_cast<int>(A.size()) == a.g->dim(), ErrorKind::DimensionMismatch, "connection needs 2n components");
    FormField out = d_field(a);
    if (a.r == 1) return out;
    for (int mu = 0; mu < a.g->dim(); ++mu) out += dx_wedge(mu, commutator(A[mu], a));
    return out;
}

double integrate(const std::vector<double>& f, const TorusGrid& g) { return pairwise_sum(f) * g.cell_volume(); }
cd integrate(const std::vector<cd>& f, const TorusGrid& g) { return pairwise_sum(f) * g.cell_volume(); }

} // namespace genkf
