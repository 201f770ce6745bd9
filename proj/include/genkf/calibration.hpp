#pragma once

// Frozen normalization table. Each value was fixed once at n = 1, r = 1 (r = 2
// for the bracket term) and is re-derived by tests/test_calibration.cpp.
namespace genkf::calib {

// <e_i, e_j> vol = s * Re i^{-n} <e_i.psi, e_j.psibar>_s
inline constexpr int kCliffordSign = -1;

// psi = e^{i omega}, b = 0, V = 0:  K = kHymScale * (-i) Lambda_omega F_A
inline constexpr double kHymScale = 0.5;

// r = 1, V = i v, psi = e^{(c + i) omega}:
// K = kLineScale * (1/i) Lambda_omega (F_A + c i L_v omega)
inline constexpr double kLineScale = 0.5;

// b = 0: K = kCoHiggsField * i Lambda_omega F_A + kCoHiggsBracket * sum [V10, V10^*]
inline constexpr double kCoHiggsField = -0.5;
inline constexpr double kCoHiggsBracket = 0.5;

// omega_GM(a1, a2) = kCliffordSign * int Im i^{-n} tr <a1.psi, a2.psibar>_s and
// d/dt <mu(A + t a), xi> = kCliffordSign * omega_GM(D xi, a)
inline constexpr int kMomentSign = -1;

} // namespace genkf::calib
