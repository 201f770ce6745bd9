#pragma once

// Minimal-norm correction for the flat-torus line problem, computed mode by
// mode with a direct DFT. Setting: n = 1, r = 1, b = 0, psi = e^{i dx^dy},
// square grid of period 1. There K = (1/2)(D_x a_y - D_y a_x) for A = i a,
// independent of V, so in Fourier space K(k) = L(k) . a(k) with
// L(k) = (1/2)(-i s_y, i s_x), s_mu = sin(2 pi k_mu / N) / h.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "genkf/connection.hpp"

namespace oracle {

using cd = std::complex<double>;

struct LineCorrection {
    std::vector<double> da_x, da_y; // correction of a = -i A
    double unreachable = 0.0;       // |R(k)| at modes with L(k) = 0
};

inline std::vector<cd> dft(const std::vector<cd>& x, int N, int sign)
{
    std::vector<cd> w(N);
    for (int k = 0; k < N; ++k) w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / N);
    std::vector<cd> tmp(x.size()), out(x.size());
    // rows then columns; point (i, j) at i * N + j, j along the last axis
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            cd s = 0;
            for (int j = 0; j < N; ++j) s += x[i * N + j] * w[(k * j) % N];
            tmp[i * N + k] = s;
        }
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            cd s = 0;
            for (int i = 0; i < N; ++i) s += tmp[i * N + l] * w[(k * i) % N];
            out[k * N + l] = s;
        }
    return out;
}

// lambda = 0 target
inline LineCorrection line_correction(const genkf::GenConnection& init)
{
    const genkf::TorusGrid& g = *init.g;
    const int N = g.size(0);
    const double h = g.spacing(0);
    const std::size_t P = g.points();
    std::vector<double> ax(P), ay(P);
    for (std::size_t p = 0; p < P; ++p) {
        ax[p] = init.A[0].v[p].imag();
        ay[p] = init.A[1].v[p].imag();
    }
    // R0 = (1/2)(D_x a_y - D_y a_x) with central differences
    std::vector<cd> R(P);
    for (std::size_t p = 0; p < P; ++p) {
        const double dxay = (ay[g.plus(0, p)] - ay[g.minus(0, p)]) / (2 * h);
        const double dyax = (ax[g.plus(1, p)] - ax[g.minus(1, p)]) / (2 * h);
        R[p] = 0.5 * (dxay - dyax);
    }
    auto Rh = dft(R, N, -1);
    std::vector<cd> dx(P), dy(P);
    LineCorrection out;
    for (int k0 = 0; k0 < N; ++k0)
        for (int k1 = 0; k1 < N; ++k1) {
            const std::size_t q = std::size_t(k0) * N + k1;
            const double s0 = std::sin(2 * std::numbers::pi * k0 / N) / h;
            const double s1 = std::sin(2 * std::numbers::pi * k1 / N) / h;
            const cd L0(0.0, -0.5 * s1), L1(0.0, 0.5 * s0);
            const double LL = std::norm(L0) + std::norm(L1);
            if (LL < 1e-20) {
                out.unreachable = std::max(out.unreachable, std::abs(Rh[q]) / P);
                continue;
            }
            dx[q] = -std::conj(L0) * Rh[q] / LL;
            dy[q] = -std::conj(L1) * Rh[q] / LL;
        }
    auto bx = dft(dx, N, 1), by = dft(dy, N, 1);
    out.da_x.resize(P);
    out.da_y.resize(P);
    for (std::size_t p = 0; p < P; ++p) {
        out.da_x[p] = bx[p].real() / P;
        out.da_y[p] = by[p].real() / P;
    }
    return out;
}

} // namespace oracle
