#include "genkf/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "genkf/sample.hpp"

namespace genkf {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

Expr entry_expr(const json& e, const std::string& where)
{
    if (e.is_number()) return Expr(e.get<double>());
    if (e.is_string()) return Expr::parse(e.get<std::string>());
    bad(where + ": expected a number or an expression string");
}

// 2n x 2n real matrix of expressions, checked antisymmetric
std::vector<std::vector<double>> real_matrix_field(const json& j, const TorusGrid& g, const std::string& where)
{
    const int m = g.dim();
    if (!j.is_array() || static_cast<int>(j.size()) != m) bad(where + ": expected a " + std::to_string(m) + "x" +
                                                              std::to_string(m) + " matrix");
    std::vector<std::vector<double>> out(m * m);
    for (int i = 0; i < m; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != m) bad(where + ": row " + std::to_string(i) +
                                                                        " has the wrong length");
        for (int k = 0; k < m; ++k) out[i * m + k] = entry_expr(j[i][k], where).sample(g);
    }
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            for (std::size_t p = 0; p < g.points(); ++p)
                if (std::abs(out[i * m + k][p] + out[k * m + i][p]) > 1e-12)
                    throw Error(ErrorKind::InvalidArgument, where + " must be antisymmetric");
    return out;
}

MatR matrix_at(const std::vector<std::vector<double>>& f, int m, std::size_t p)
{
    MatR M(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) M(i, k) = f[i * m + k][p];
    return M;
}

bool field_constant(const std::vector<std::vector<double>>& f)
{
    for (const auto& c : f)
        for (double x : c)
            if (x != c[0]) return false;
    return true;
}

// r x r complex matrix field; entries are numbers, expressions or [re, im]
MatField complex_matrix_field(const json& j, GridPtr g, int r, const std::string& where)
{
    MatField out(g, r);
    auto fill_entry = [&](const json& e, int a, int b) {
        std::vector<double> re, im(g->points(), 0.0);
        if (e.is_array()) {
            if (e.size() != 2) bad(where + ": complex entries are [re, im]");
            re = entry_expr(e[0], where).sample(*g);
            im = entry_expr(e[1], where).sample(*g);
        } else {
            re = entry_expr(e, where).sample(*g);
        }
        for (std::size_t p = 0; p < g->points(); ++p) out.at(p)(a, b) = cd(re[p], im[p]);
    };
    if (r == 1) {
        const bool wrapped = j.is_array() && j.size() == 1 && j[0].is_array() && j[0].size() == 1;
        fill_entry(wrapped ? j[0][0] : j, 0, 0);
        return out;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != r) bad(where + ": expected an r x r matrix");
    for (int a = 0; a < r; ++a) {
        if (!j[a].is_array() || static_cast<int>(j[a].size()) != r) bad(where + ": expected an r x r matrix");
        for (int b = 0; b < r; ++b) fill_entry(j[a][b], a, b);
    }
    return out;
}

std::vector<MatField> component_list(const json& j, GridPtr g, int r, Rng& rng, const std::string& where)
{
    const int m = g->dim();
    std::vector<MatField> out(m, MatField(g, r));
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "zero")) return out;
    if (j.is_object()) {
        if (!j.contains("random")) bad(where + ": unknown initializer");
        const json& rj = j["random"];
        const double amp = rj.value("amplitude", 0.5);
        const int modes = rj.value("modes", 2);
        if (modes < 0 || modes > 8) throw Error(ErrorKind::InvalidArgument, where + ": modes must lie in [0, 8]");
        for (int mu = 0; mu < m; ++mu) out[mu] = smooth_skew_field(g, r, rng, modes, amp);
        return out;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != m)
        bad(where + ": expected \"zero\", {\"random\": ...} or " + std::to_string(m) + " components");
    for (int mu = 0; mu < m; ++mu)
        out[mu] = complex_matrix_field(j[mu], g, r, where + "[" + std::to_string(mu) + "]");
    return out;
}

template <class T>
T get_or(const json& j, const char* key, T dflt)
{
    if (!j.contains(key)) return dflt;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        bad(std::string("field \"") + key + "\" has the wrong type");
    }
}

} // namespace

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << j.dump(2) << "\n";
}

Problem load_problem(const json& doc, const Overrides& ov, Rng& rng)
{
    if (!doc.is_object()) bad("input must be a JSON object");
    Problem pr;
    pr.n = get_or<int>(doc, "n", 1);
    if (pr.n < 1 || pr.n > 2) throw Error(ErrorKind::Unsupported, "n must be 1 or 2 on the grid");
    const int m = 2 * pr.n;

    std::vector<int> sizes(m, pr.n == 1 ? 32 : 8);
    std::vector<double> periods(m, 1.0);
    if (doc.contains("grid")) {
        const json& gj = doc["grid"];
        if (!gj.is_object()) bad("grid must be an object");
        if (gj.contains("sizes")) {
            if (gj["sizes"].is_number_integer()) sizes.assign(m, gj["sizes"].get<int>());
            else sizes = get_or<std::vector<int>>(gj, "sizes", sizes);
        }
        if (gj.contains("periods")) {
            if (gj["periods"].is_number()) periods.assign(m, gj["periods"].get<double>());
            else periods = get_or<std::vector<double>>(gj, "periods", periods);
        }
    }
    if (ov.grid) sizes.assign(m, *ov.grid);
    pr.g = TorusGrid::make(pr.n, sizes, periods);

    pr.rank = get_or<int>(doc.value("bundle", json::object()), "rank", 1);
    if (ov.rank) pr.rank = *ov.rank;
    require(pr.rank >= 1 && pr.rank <= 8, ErrorKind::InvalidArgument, "rank must lie in [1, 8]");

    const json pj = doc.value("psi", json::object());
    std::vector<std::vector<double>> bf(m * m, std::vector<double>(pr.g->points(), 0.0));
    std::vector<std::vector<double>> wf;
    if (pj.contains("b")) bf = real_matrix_field(pj["b"], *pr.g, "psi.b");
    if (pj.contains("omega")) {
        wf = real_matrix_field(pj["omega"], *pr.g, "psi.omega");
    } else {
        MatR D = darboux(pr.n);
        wf.assign(m * m, std::vector<double>(pr.g->points()));
        for (int i = 0; i < m * m; ++i)
            for (auto& x : wf[i]) x = D(i / m, i % m);
    }
    pr.psi_constant = field_constant(bf) && field_constant(wf);
    pr.psi = FormField(pr.g, 1);
    for (std::size_t p = 0; p < pr.g->points(); ++p)
        pr.psi.set_form(p, symplectic_spinor(pr.n, matrix_at(bf, m, p), matrix_at(wf, m, p)));
    pr.b0 = matrix_at(bf, m, 0);
    pr.omega0 = matrix_at(wf, m, 0);
    require(std::abs(pr.omega0.determinant()) > 1e-12, ErrorKind::Degenerate, "omega is degenerate");
    pr.psi_check = validate_psi(pr.psi);

    pr.conn = GenConnection(pr.g, pr.rank);
    const json cj = doc.value("connection", json::object());
    pr.conn.A = component_list(cj.value("A", json("zero")), pr.g, pr.rank, rng, "connection.A");
    pr.conn.V = component_list(cj.value("V", json("zero")), pr.g, pr.rank, rng, "connection.V");
    if (cj.contains("flux")) {
        auto ff = real_matrix_field(cj["flux"], *pr.g, "connection.flux");
        if (!field_constant(ff)) throw Error(ErrorKind::InvalidArgument, "connection.flux must be constant");
        pr.conn.flux = matrix_at(ff, m, 0);
    }
    if (pr.conn.skew_defect() > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "connection components must be skew-Hermitian");
    pr.conn.check();

    if (doc.contains("symbols") && doc["symbols"].contains("theta")) {
        auto t = get_or<std::vector<double>>(doc["symbols"], "theta", {});
        if (static_cast<int>(t.size()) != m) bad("symbols.theta needs " + std::to_string(m) + " entries");
        pr.theta = Eigen::Map<VecR>(t.data(), m);
    }
    return pr;
}

json dump_matrix(const MatC& M)
{
    json out = json::array();
    for (int a = 0; a < M.rows(); ++a) {
        json row = json::array();
        for (int b = 0; b < M.cols(); ++b) row.push_back({M(a, b).real(), M(a, b).imag()});
        out.push_back(row);
    }
    return out;
}

json dump_field(const MatField& f)
{
    json out = json::array();
    for (std::size_t p = 0; p < f.points(); ++p) {
        if (f.r == 1) out.push_back({f.v[p].real(), f.v[p].imag()});
        else out.push_back(dump_matrix(f.at(p)));
    }
    return out;
}

json dump_connection(const GenConnection& c)
{
    json A = json::array(), V = json::array();
    for (const auto& f : c.A) A.push_back(dump_field(f));
    for (const auto& f : c.V) V.push_back(dump_field(f));
    json flux = json::array();
    for (int i = 0; i < c.flux.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < c.flux.cols(); ++k) row.push_back(c.flux(i, k));
        flux.push_back(row);
    }
    return {{"rank", c.r}, {"A", A}, {"V", V}, {"flux", flux}};
}

json report_header(const std::string& command, std::uint64_t seed)
{
    return {{"schema_version", kReportSchema}, {"command", command}, {"seed", seed}};
}

} // namespace genkf
