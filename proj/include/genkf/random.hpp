#pragma once

#include <cstdint>
#include <random>

#include "genkf/form.hpp"

namespace genkf {

// Seeded source used by tests and the CLI. mt19937_64 plus the libstdc++
// distributions gives the same stream on every run of a given build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double normal() { return nd_(eng_); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    cd cnormal() { double re = normal(); return {re, normal()}; }
    std::uint64_t next() { return eng_(); }

    GradedForm form(int n);
    // only the given parity of degrees (0 even, 1 odd)
    GradedForm form_parity(int n, int parity);
    GenVector real_genvector(int n);
    GenVector complex_genvector(int n);
    MatR antisym(int m);
    MatC skew_hermitian(int r);
    MatC hermitian(int r);
    MatC unitary(int r);
    VecR real_vector(int m);

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> nd_{0.0, 1.0};
};

} // namespace genkf
