#pragma once

#include "genkf/connection.hpp"
#include "genkf/random.hpp"

namespace genkf {

// Band-limited periodic test data: random combinations of cos/sin of
// 2 pi k.x/P with |k_mu| <= kmax.
std::vector<double> smooth_function(const TorusGrid& g, Rng& rng, int kmax = 2, double amp = 1.0);
MatField smooth_skew_field(GridPtr g, int r, Rng& rng, int kmax = 2, double amp = 1.0);
MatField smooth_hermitian_field(GridPtr g, int r, Rng& rng, int kmax = 2, double amp = 1.0);
GenConnection random_connection(GridPtr g, int r, Rng& rng, double amp_A = 1.0, double amp_V = 1.0, int kmax = 2);
// pointwise unitary exp(X) for a smooth skew field X
MatField smooth_gauge(GridPtr g, int r, Rng& rng, double amp = 1.0);

FormField constant_psi(GridPtr g, const MatR& b, const MatR& omega);
FormField constant_two_form(GridPtr g, const MatR& W);
MatR darboux(int n);

} // namespace genkf
