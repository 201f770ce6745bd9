#pragma once

#include <cmath>

#include "genkf/sample.hpp"

namespace testutil {

using namespace genkf;

template <class A, class B>
double max_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

inline MatR symplectic(int n, Rng& rng) { return darboux(n) + 0.2 * rng.antisym(2 * n); }

// central difference of sin(2 pi k x / P) is sin(2 pi k h / P) / h * cos(2 pi k x / P)
inline double spectral_factor(int k, double h, double P)
{
    return std::sin(2.0 * M_PI * k * h / P) / h;
}

} // namespace testutil
