#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthosym {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr cd I_UNIT{0.0, 1.0};

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments (wrong sizes, bad family/kind combinations, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Spectrum with coincident (|X_i^2 - X_j^2| tiny) or forbidden zero eigenvalues.
class SingularSpectrum : public Error {
public:
  using Error::Error;
};

// A spectral point hits a pole of a resolvent or recursion-matrix entry.
class PoleError : public Error {
public:
  PoleError(const std::string& what, int index, int sign)
      : Error(what), index_(index), sign_(sign) {}
  int index() const { return index_; }
  int sign() const { return sign_; }

private:
  int index_;
  int sign_;
};

// Cells of a matrix grid that are required to commute but do not.
class NonCommuting : public Error {
public:
  using Error::Error;
};

// Requested basis rank above the configured maximum.
class RankTooLarge : public Error {
public:
  using Error::Error;
};

// Tolerances shared across modules.
inline constexpr double kCoincidenceTol = 1e-12;
inline constexpr double kPoleTol = 1e-8;
inline constexpr double kCommuteTol = 1e-10;

} // namespace orthosym
