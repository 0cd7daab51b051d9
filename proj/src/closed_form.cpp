#include "orthosym/closed_form.hpp"

#include <cmath>
#include <numbers>

namespace orthosym {

namespace {

void require_same_family(const GroupSpectrum& x, const GroupSpectrum& y) {
  if (x.family().tag != y.family().tag || x.family().rank != y.family().rank)
    throw InvalidArgument("X and Y must belong to the same family and rank");
}

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
}

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

} // namespace

double factorial(int k) {
  if (k < 0) throw InvalidArgument("factorial of a negative number");
  return std::exp(log_factorial(k));
}

PartitionResult partition(const GroupSpectrum& x, const GroupSpectrum& y, double gamma) {
  require_same_family(x, y);
  require_positive_gamma(gamma);
  const auto fam = x.family();
  const int m = x.size();
  // The determinant cancels down to O(gamma^{deg Delta}) relative to its
  // entries, so it is formed in extended precision.
  LongMatrix a(m, m);
  const long double g = gamma;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const long double xy = static_cast<long double>(x[i]) * y[j];
      switch (fam.tag) {
      case Family::OEven: a(i, j) = 2.0L * std::cosh(2.0L * g * xy); break;
      case Family::OOdd:
      case Family::Sp: a(i, j) = 2.0L * std::sinh(2.0L * g * xy); break;
      case Family::U: a(i, j) = std::exp(-g * xy); break;
      }
    }
  const double det = static_cast<double>(a.partialPivLu().determinant());
  const double dd = generalized_vandermonde(x) * generalized_vandermonde(y);
  double value;
  if (fam.tag == Family::U) {
    double lc = 0.0;
    for (int p = 1; p < m; ++p) lc += log_factorial(p);
    const int e = m * (m - 1) / 2;
    value = std::exp(lc) * det / (std::pow(-gamma, e) * dd);
  } else {
    value = normalized_k_constant(fam, gamma) * det / dd;
  }
  return PartitionResult{value, fam, gamma};
}

double partition_weyl_sum(const GroupSpectrum& x, const GroupSpectrum& y, double gamma) {
  require_same_family(x, y);
  require_positive_gamma(gamma);
  const auto fam = x.family();
  if (fam.tag == Family::U) throw InvalidArgument("partition_weyl_sum: not defined for U");
  long double sum = 0.0L;
  for (const auto& w : weyl_elements(fam)) {
    long double e = 0.0L;
    for (int i = 0; i < x.size(); ++i)
      e += static_cast<long double>(x[i]) * w.signs[static_cast<std::size_t>(i)] *
           y[w.perm[static_cast<std::size_t>(i)]];
    sum += w.weight * std::exp(2.0L * gamma * e);
  }
  return normalized_k_constant(fam, gamma) * static_cast<double>(sum) /
         (generalized_vandermonde(x) * generalized_vandermonde(y));
}

double k_constant(const GroupFamily& family, double gamma) {
  require_positive_gamma(gamma);
  const int m = family.rank;
  double lp = 0.0;
  switch (family.tag) {
  case Family::OEven:
    for (int j = 1; j <= m - 1; ++j) lp += log_factorial(2 * j);
    return std::exp(lp) / (std::pow(2.0, m) * std::pow(gamma, m * (m - 1)));
  case Family::OOdd:
    for (int j = 1; j <= m; ++j) lp += log_factorial(2 * j - 1);
    return std::exp(lp) / (std::pow(2.0, m) * std::pow(gamma, m * m));
  case Family::Sp:
    for (int j = 1; j <= m; ++j) lp += log_factorial(2 * j - 1);
    return std::pow(2.0, -(m * m + 2 * m)) * std::exp(lp) / std::pow(2.0, m);
  case Family::U: break;
  }
  throw InvalidArgument("k_constant: U family has no K constant");
}

double normalized_k_constant(const GroupFamily& family, double gamma) {
  require_positive_gamma(gamma);
  const int m = family.rank;
  double lp = 0.0;
  switch (family.tag) {
  case Family::OEven:
    for (int k = 0; k < m; ++k) lp += log_factorial(2 * k);
    return std::exp(lp) / (std::pow(2.0, m) * std::pow(2.0 * gamma, m * (m - 1)));
  case Family::OOdd:
  case Family::Sp:
    for (int k = 0; k < m; ++k) lp += log_factorial(2 * k + 1);
    return std::exp(lp) / (std::pow(2.0, m) * std::pow(2.0 * gamma, m * m));
  case Family::U: break;
  }
  throw InvalidArgument("normalized_k_constant: U family has no K constant");
}

double c_constant(const GroupFamily& family) {
  const int m = family.rank;
  const double mf = factorial(m);
  switch (family.tag) {
  case Family::OEven:
  case Family::OOdd: {
    const int n = family.matrix_size();
    return std::pow(2.0, n * (n - 1) / 2.0) /
           (std::pow(4.0, m) * mf * jacobian(JacobianKind::O, n));
  }
  case Family::Sp:
    return 1.0 / (std::pow(2.0, m) * mf * jacobian(JacobianKind::Sp, 2 * m) * std::pow(4.0, m));
  case Family::U: break;
  }
  throw InvalidArgument("c_constant: U family has no c constant");
}

double triangular_gaussian_volume(const GroupFamily& family, double gamma) {
  require_positive_gamma(gamma);
  const int m = family.rank;
  const double base = std::numbers::pi / (2.0 * gamma);
  switch (family.tag) {
  case Family::OEven: return std::pow(base, m * (m - 1));
  case Family::OOdd: return std::pow(base, m * m);
  case Family::Sp: return std::pow(2.0, m) * std::pow(base, m * m);
  case Family::U: break;
  }
  throw InvalidArgument("triangular_gaussian_volume: U family not supported");
}

double jacobian(JacobianKind kind, int size) {
  if (size < 1) throw InvalidArgument("jacobian: size must be positive");
  const double pi = std::numbers::pi;
  auto jac_o = [&](int n) {
    const int m = n / 2;
    double lp = 0.0;
    if (n % 2 == 0) {
      for (int j = 1; j <= m - 1; ++j) lp += log_factorial(2 * j);
      return std::pow(pi, m * (m - 1)) * std::pow(2.0, m * (m - 1)) /
             (factorial(m) * std::exp(lp));
    }
    for (int j = 1; j <= m; ++j) lp += log_factorial(2 * j - 1);
    return std::pow(pi, m * m) * std::pow(2.0, m * m) / (factorial(m) * std::exp(lp));
  };
  auto jac_sp = [&](int n) {
    if (n % 2 != 0) throw InvalidArgument("jacobian: Sp size must be even");
    const int m = n / 2;
    double lp = 0.0;
    for (int j = 1; j <= m; ++j) lp += log_factorial(2 * j - 1);
    return std::pow(pi, m * m) * std::pow(2.0, m) / (factorial(m) * std::exp(lp));
  };
  switch (kind) {
  case JacobianKind::O: return jac_o(size);
  case JacobianKind::Sp: return jac_sp(size);
  case JacobianKind::UJ: {
    const int m = size / 2;
    const int e = size % 2 == 0 ? m - m * m : -m * m;
    return jac_o(size) * std::pow(2.0, e);
  }
  case JacobianKind::UJTilde: return std::pow(2.0, -size) * jac_sp(size);
  }
  throw InvalidArgument("jacobian: unknown kind");
}

double selberg_laguerre(double a, int n) {
  if (n < 1) throw InvalidArgument("selberg_laguerre: n must be positive");
  if (!(a > 0.0)) throw InvalidArgument("selberg_laguerre: a must be positive");
  double lg = 0.0;
  for (int j = 0; j < n; ++j) lg += std::lgamma(2.0 + j) + std::lgamma(a + j) - std::lgamma(2.0);
  return std::exp(lg);
}

double selberg_half_closed_form(int m) {
  double lp = 0.0;
  for (int j = 1; j <= m - 1; ++j) lp += log_factorial(2 * j);
  return factorial(m) * std::pow(std::sqrt(std::numbers::pi), m) / std::pow(2.0, m * (m - 1)) *
         std::exp(lp);
}

double selberg_three_halves_closed_form(int m) {
  double lp = 0.0;
  for (int j = 1; j <= m; ++j) lp += log_factorial(2 * j - 1);
  return factorial(m) * std::pow(std::sqrt(std::numbers::pi), m) / std::pow(2.0, m * m) *
         std::exp(lp);
}

} // namespace orthosym
