#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace cvnl {

using Complex = std::complex<double>;

// Matrices are row-major so that vec() (row-stacking) is a plain memory view.
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RVector = Eigen::VectorXd;

using Eigen::Index;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotReal : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct FullRank : Error { using Error::Error; };
struct AlreadyOptimal : Error { using Error::Error; };
struct LinearlyFittable : Error { using Error::Error; };
struct RadiusTooLarge : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct Divergence : Error { using Error::Error; };

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DimensionMismatch(msg);
}

} // namespace cvnl
