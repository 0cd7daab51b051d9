#include "orthosym/closed_form.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace orthosym;

namespace {

GroupSpectrum spec(Family f, std::vector<double> x) {
  const int m = static_cast<int>(x.size());
  return GroupSpectrum(GroupFamily(f, m), std::move(x));
}

std::vector<double> random_spectrum(int m, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  while (true) {
    std::vector<double> x;
    for (int i = 0; i < m; ++i) x.push_back(u(gen));
    bool ok = true;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]) < 0.05) ok = false;
    if (ok) return x;
  }
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("O(2) analytic value") {
  const auto r = partition(spec(Family::OEven, {1.0}), spec(Family::OEven, {1.0}), 0.3);
  CHECK(r.value == doctest::Approx(1.185465).epsilon(1e-6));
  CHECK(rel_close(r.value, std::cosh(0.6), 1e-14));
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    const double x = u(gen), y = u(gen), g = 0.1 + std::abs(u(gen));
    CHECK(rel_close(partition(spec(Family::OEven, {x}), spec(Family::OEven, {y}), g).value,
                    std::cosh(2 * g * x * y), 1e-12));
  }
}

TEST_CASE("O(3) and Sp(2) analytic values") {
  for (double g : {0.2, 0.5, 1.3}) {
    const double x = 0.8, y = 1.7, a = 2 * g * x * y;
    CHECK(rel_close(partition(spec(Family::OOdd, {x}), spec(Family::OOdd, {y}), g).value,
                    std::sinh(a) / a, 1e-13));
    CHECK(rel_close(partition(spec(Family::Sp, {x}), spec(Family::Sp, {y}), g).value,
                    std::sinh(a) / a, 1e-13));
  }
}

TEST_CASE("gamma -> 0 limit is 1") {
  std::mt19937_64 gen(3);
  for (Family f : {Family::OEven, Family::OOdd, Family::Sp, Family::U}) {
    for (int m = 1; m <= 3; ++m) {
      // Larger m loses digits to the det/Vandermonde cancellation, so the
      // limit is approached at a correspondingly larger gamma.
      const double g = m == 1 ? 1e-6 : 1e-3;
      const double tol = m == 1 ? 1e-4 : 1e-2;
      const auto x = spec(f, random_spectrum(m, gen));
      const auto y = spec(f, random_spectrum(m, gen));
      CHECK(std::abs(partition(x, y, g).value - 1.0) < tol);
    }
  }
}

TEST_CASE("U(n) partition") {
  // U(1): exp(-gamma x y) exactly.
  CHECK(rel_close(partition(spec(Family::U, {1.3}), spec(Family::U, {0.4}), 0.7).value,
                  std::exp(-0.7 * 1.3 * 0.4), 1e-14));
  CHECK_THROWS_AS(partition(spec(Family::U, {1.0}), spec(Family::OEven, {1.0}), 0.5), InvalidArgument);
  CHECK_THROWS_AS(partition(spec(Family::OEven, {1.0}), spec(Family::OEven, {1.0}), 0.0), InvalidArgument);
}

TEST_CASE("determinant form equals the explicit Weyl sum") {
  std::mt19937_64 gen(7);
  for (Family f : {Family::OEven, Family::OOdd, Family::Sp})
    for (int m = 1; m <= 3; ++m)
      for (int rep = 0; rep < 20; ++rep) {
        const auto x = spec(f, random_spectrum(m, gen));
        const auto y = spec(f, random_spectrum(m, gen));
        CHECK(rel_close(partition(x, y, 0.3).value, partition_weyl_sum(x, y, 0.3), 1e-10));
      }
}

TEST_CASE("partition symmetries") {
  std::mt19937_64 gen(9);
  for (Family f : {Family::OEven, Family::OOdd, Family::Sp})
    for (int rep = 0; rep < 20; ++rep) {
      auto xv = random_spectrum(3, gen);
      auto yv = random_spectrum(3, gen);
      const double base = partition(spec(f, xv), spec(f, yv), 0.4).value;
      auto xp = xv;
      std::swap(xp[0], xp[2]);
      CHECK(rel_close(partition(spec(f, xp), spec(f, yv), 0.4).value, base, 1e-12));
      auto yp = yv;
      std::rotate(yp.begin(), yp.begin() + 1, yp.end());
      CHECK(rel_close(partition(spec(f, xv), spec(f, yp), 0.4).value, base, 1e-12));
      auto xf = xv;
      xf[1] = -xf[1];
      CHECK(rel_close(partition(spec(f, xf), spec(f, yv), 0.4).value, base, 1e-12));
    }
}

TEST_CASE("O(2m+1) and Sp(2m) share their functional form") {
  std::mt19937_64 gen(13);
  for (int m = 1; m <= 3; ++m) {
    double ratio0 = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const auto xv = random_spectrum(m, gen);
      const auto yv = random_spectrum(m, gen);
      const double r = partition(spec(Family::OOdd, xv), spec(Family::OOdd, yv), 0.3).value /
                       partition(spec(Family::Sp, xv), spec(Family::Sp, yv), 0.3).value;
      if (rep == 0) ratio0 = r;
      CHECK(rel_close(r, ratio0, 1e-12));
    }
  }
}

TEST_CASE("printed K constants") {
  CHECK(k_constant(GroupFamily(Family::OEven, 1), 0.7) == 0.5);
  CHECK(k_constant(GroupFamily(Family::OEven, 2), 0.5) == doctest::Approx(1.0 / (2 * 0.25)));
  CHECK(k_constant(GroupFamily(Family::OOdd, 1), 1.0) == 0.5);
  CHECK(k_constant(GroupFamily(Family::OOdd, 1), 0.25) == doctest::Approx(2.0));
  CHECK(k_constant(GroupFamily(Family::Sp, 1), 0.3) == 1.0 / 16.0);
  // Normalised constants used by partition().
  CHECK(normalized_k_constant(GroupFamily(Family::OEven, 1), 0.3) == 0.5);
  CHECK(normalized_k_constant(GroupFamily(Family::OOdd, 1), 0.3) == doctest::Approx(1.0 / 1.2));
  CHECK(normalized_k_constant(GroupFamily(Family::Sp, 1), 0.3) == doctest::Approx(1.0 / 1.2));
  CHECK_THROWS_AS(k_constant(GroupFamily(Family::U, 1), 0.3), InvalidArgument);
}

TEST_CASE("c_n times the triangular Gaussian volume") {
  const double g = 0.5;
  for (int n = 2; n <= 5; ++n) {
    const GroupFamily fam(n % 2 == 0 ? Family::OEven : Family::OOdd, n / 2);
    CHECK(rel_close(c_constant(fam) * triangular_gaussian_volume(fam, g), k_constant(fam, g), 1e-12));
  }
  // The symplectic chain yields 1/8, twice the printed K~_2 = 1/16.
  const GroupFamily sp(Family::Sp, 1);
  CHECK(rel_close(c_constant(sp) * triangular_gaussian_volume(sp, g), 1.0 / 8.0, 1e-12));
}

TEST_CASE("Jacobians") {
  CHECK(jacobian(JacobianKind::O, 2) == doctest::Approx(1.0));
  CHECK(jacobian(JacobianKind::O, 3) == doctest::Approx(2 * std::numbers::pi));
  for (int m = 1; m <= 2; ++m) {
    CHECK(rel_close(jacobian(JacobianKind::UJ, 2 * m),
                    jacobian(JacobianKind::O, 2 * m) * std::pow(2.0, m - m * m), 1e-14));
    CHECK(rel_close(jacobian(JacobianKind::UJTilde, 2 * m),
                    std::pow(2.0, -2 * m) * jacobian(JacobianKind::Sp, 2 * m), 1e-14));
  }
  CHECK_THROWS_AS(jacobian(JacobianKind::Sp, 3), InvalidArgument);
  CHECK_THROWS_AS(jacobian(JacobianKind::O, 0), InvalidArgument);
}

TEST_CASE("Selberg-Laguerre integrals") {
  const double sqpi = std::sqrt(std::numbers::pi);
  CHECK(rel_close(selberg_laguerre(0.5, 1), sqpi, 1e-14));
  CHECK(rel_close(selberg_laguerre(1.5, 1), sqpi / 2, 1e-14));
  for (int m = 1; m <= 5; ++m) {
    CHECK(rel_close(selberg_laguerre(0.5, m), selberg_half_closed_form(m), 1e-12));
    CHECK(rel_close(selberg_laguerre(1.5, m), selberg_three_halves_closed_form(m), 1e-12));
  }
  for (int n = 2; n <= 5; ++n) {
    const double I = n % 2 == 0 ? selberg_laguerre(0.5, n / 2) : selberg_laguerre(1.5, n / 2);
    CHECK(rel_close(jacobian(JacobianKind::O, n) * I, std::pow(sqpi, n * (n - 1) / 2), 1e-10));
  }
  CHECK_THROWS_AS(selberg_laguerre(0.5, 0), InvalidArgument);
  CHECK(factorial(5) == doctest::Approx(120.0));
}
