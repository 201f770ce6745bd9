#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "genkf/connection.hpp"
#include "genkf/expr.hpp"
#include "genkf/random.hpp"

namespace genkf {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "1.0";

// Command-line values that replace entries of the input document.
struct Overrides {
    std::optional<int> grid;
    std::optional<int> rank;
};

// Geometry, spinor and initial connection described by an input document:
//   {n, grid:{sizes, periods}, psi:{b, omega}, bundle:{rank}, connection:{A, V, flux}}
// Matrix entries are numbers or coefficient expressions (see expr.hpp).
struct Problem {
    int n = 1;
    GridPtr g;
    int rank = 1;
    FormField psi;
    bool psi_constant = true;
    MatR b0, omega0;          // spinor data at the first grid point
    GenConnection conn;
    std::optional<VecR> theta; // optional "symbols": {"theta": [...]}
    PsiCheck psi_check;
};

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

// Throws Error on malformed input, ErrorKind::NotClosed if psi fails d psi = 0.
// Random connection data is drawn from rng.
Problem load_problem(const json& doc, const Overrides& ov, Rng& rng);

// Field dumps, row-major grid order. Entries are [re, im]; r > 1 adds an r x r
// (row-major) matrix per point.
json dump_field(const MatField& f);
json dump_connection(const GenConnection& c);
json dump_matrix(const MatC& M);

json report_header(const std::string& command, std::uint64_t seed);

} // namespace genkf
