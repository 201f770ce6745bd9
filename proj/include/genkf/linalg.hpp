#pragma once

#include "genkf/types.hpp"

namespace genkf {

// Orthonormal basis (columns) of ker M; singular values below
// rel_tol * sigma_max count as zero.
MatC null_space(const MatC& M, double rel_tol = 1e-10);
int numeric_rank(const MatC& M, double rel_tol = 1e-10);
int numeric_rank(const MatR& M, double rel_tol = 1e-10);
MatR null_space(const MatR& M, double rel_tol = 1e-10);

} // namespace genkf
