#pragma once

#include <string>
#include <vector>

#include "genkf/analysis.hpp"
#include "genkf/spec_io.hpp"

namespace genkf {

struct Check {
    std::string name;
    std::string anchor;   // identity being tested
    std::string compare;  // "<": value below tolerance passes; ">": value above it passes
    double tolerance = 0.0;
    double value = 0.0;
    bool pass = false;
};

Check upper_check(const std::string& name, const std::string& anchor, double err, double tol);
Check lower_check(const std::string& name, const std::string& anchor, double value, double floor);

// Measured but not gated.
struct Info {
    std::string name;
    double value = 0.0;
    std::string note;
};

struct SuiteResult {
    std::vector<Check> checks;
    std::vector<Info> info;
    bool all_pass() const;
    void append(const SuiteResult& o);
};

// Each group draws its random data from rng in a fixed order.
SuiteResult algebra_checks(int n, int trials, Rng& rng);
SuiteResult structure_checks(int n, Rng& rng);
SuiteResult field_checks(GridPtr g, int r, const GradedForm& psi0, Rng& rng);
SuiteResult covariance_checks(GridPtr g, int r, const GradedForm& psi0, const MatR& b, Rng& rng);
SuiteResult specialization_checks(GridPtr g, int r, const MatR& W, Rng& rng);
SuiteResult chern_checks(GridPtr g, int r, const GradedForm& psi0, Rng& rng);
SuiteResult moment_checks(GridPtr g, int r, const GradedForm& psi0, Rng& rng);
SuiteResult holomorphic_checks(GridPtr g, const MatR& W, Rng& rng);
SuiteResult symbol_checks(int n, int r, const MatR& W, const MatR& b, int trials, Rng& rng);
// Aggregate checks over a batch of symbol reports.
SuiteResult symbol_summary(const std::vector<SymbolReport>& reps, int r, const std::string& tag);
json symbol_report_json(const SymbolReport& s);
SuiteResult solver_checks(GridPtr g, const GradedForm& psi0, Rng& rng);

struct VerifyOptions {
    int algebra_trials = 200;
    int symbol_trials = 20;
};

// Full identity suite for a loaded problem. A non-constant psi is frozen at the
// first grid point for the exact discrete identities.
SuiteResult run_verify(const Problem& pr, const VerifyOptions& opts, Rng& rng);

json checks_to_json(const SuiteResult& s);

} // namespace genkf
