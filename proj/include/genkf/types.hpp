#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace genkf {

using cd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

inline constexpr cd I_{0.0, 1.0};

enum class ErrorKind {
    DimensionMismatch,
    InvalidArgument,
    Degenerate,
    NotClosed,
    NotPure,
    Unsupported,
    NotConverged,
    Parse
};

// ErrorKind is carried so the CLI can map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool ok, ErrorKind k, const std::string& msg)
{
    if (!ok) throw Error(k, msg);
}

} // namespace genkf
