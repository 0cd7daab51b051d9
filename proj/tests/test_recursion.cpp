#include "orthosym/recursion.hpp"

#include "orthosym/oracles.hpp"
#include "quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace orthosym;

namespace {

std::mt19937_64 gen(17);

cd rand_c(double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(gen), u(gen)};
}

SpectralPoints random_points(int R) {
  SpectralPoints p;
  for (int i = 0; i < R; ++i) {
    p.x.push_back(rand_c(1.0, 3.0));
    p.y.push_back(rand_c(1.0, 3.0));
  }
  return p;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

GroupSpectrum spec(Family f, std::vector<double> x) {
  const int m = static_cast<int>(x.size());
  return GroupSpectrum(GroupFamily(f, m), std::move(x));
}

CMatrix j_diag_real(const std::vector<double>& v, int n) {
  return I_UNIT * j_diagonal(std::vector<cd>(v.begin(), v.end()), n);
}

} // namespace

TEST_CASE("R = 1 recursion matrix example") {
  const CMatrix M = recursion_matrix_bar(1, SpectralPoints{{2.0}, {3.0}}, 0.0, 0.0);
  REQUIRE(M.rows() == 2);
  CHECK(std::abs(M(0, 0) - 49.0 / 36.0) < 1e-15);
  CHECK(std::abs(M(0, 1) - 1.0 / 36.0) < 1e-15);
  CHECK(std::abs(M(1, 0) - 1.0 / 36.0) < 1e-15);
  CHECK(std::abs(M(1, 1) - 25.0 / 36.0) < 1e-15);
}

TEST_CASE("R = 1 recursion matrix is the two-resolvent matrix") {
  for (int rep = 0; rep < 10; ++rep) {
    const SpectralPoints p = random_points(1);
    const cd a = rand_c(-1, 1), b = rand_c(-1, 1);
    const cd x = p.x[0], y = p.y[0];
    const cd u1 = 1.0 / ((x + a) * (y + b)), u2 = 1.0 / ((-x + a) * (-y + b));
    const cd v1 = 1.0 / ((x + a) * (-y + b)), v2 = 1.0 / ((-x + a) * (y + b));
    const CMatrix M = recursion_matrix_bar(1, p, a, b);
    CHECK(std::abs(M(0, 0) - (1.0 + u1) * (1.0 + u2)) < 1e-13);
    CHECK(std::abs(M(1, 1) - (1.0 + v1) * (1.0 + v2)) < 1e-13);
    CHECK(std::abs(M(0, 1) - v1 * v2) < 1e-13);
  }
}

TEST_CASE("recursion matrix tends to the identity for large points") {
  for (int R : {1, 2}) {
    SpectralPoints p;
    for (int i = 0; i < R; ++i) {
      p.x.push_back(1e8 * (i + 1.0));
      p.y.push_back(cd(0.0, 1e8 * (i + 2.0)));
    }
    const CMatrix M = recursion_matrix_bar(R, p, cd(0.3, 0.1), cd(-0.2, 0.4));
    CHECK(max_abs(M - CMatrix::Identity(M.rows(), M.cols())) < 1e-14);
  }
}

TEST_CASE("recursion matrix symmetry is exact and matrices commute") {
  for (int R : {1, 2}) {
    const auto cls = enumerate_classes(R);
    for (int rep = 0; rep < 50; ++rep) {
      const SpectralPoints p = random_points(R);
      const CMatrix A = recursion_matrix_bar(cls, p, rand_c(-1, 1), rand_c(-1, 1));
      const CMatrix B = recursion_matrix_bar(cls, p, rand_c(-1, 1), rand_c(-1, 1));
      CHECK(A == A.transpose());
      const double res = (A * B - B * A).norm() / (A.norm() * B.norm());
      CHECK(res < 1e-12);
    }
  }
}

TEST_CASE("orthogonal-symplectic matrix equals the unitary matrix on doubled points") {
  for (int R : {1, 2}) {
    const auto cls = enumerate_classes(R);
    for (int rep = 0; rep < (R == 1 ? 20 : 5); ++rep) {
      const SpectralPoints p = random_points(R);
      const cd a = rand_c(-1, 1), b = rand_c(-1, 1);
      const CMatrix Mb = recursion_matrix_bar(cls, p, a, b);
      const CMatrix Mu = recursion_matrix_unitary(doubled_points(p.x), doubled_points(p.y), -a, -b);
      CHECK(max_abs(Mb - Mu) < 1e-13 * max_abs(Mb));
    }
  }
}

TEST_CASE("unitary recursion matrix") {
  const std::vector<cd> x{2.0, -2.0}, y{3.0, -3.0};
  const CMatrix Mu = recursion_matrix_unitary(x, y, 0.0, 0.0);
  const CMatrix Mb = recursion_matrix_bar(1, SpectralPoints{{2.0}, {3.0}}, 0.0, 0.0);
  CHECK(max_abs(Mu - Mb) < 1e-15);
  const std::vector<cd> x3{1.5, cd(2, 1), 0.7}, y3{cd(0.3, 2), 2.2, -1.1};
  const cd xi(0.2, -0.4), eta(-0.5, 0.1);
  const CMatrix M3 = recursion_matrix_unitary(x3, y3, xi, eta);
  cd diag = 1.0;
  for (int i = 0; i < 3; ++i) diag *= 1.0 + 1.0 / ((x3[i] - xi) * (y3[i] - eta));
  CHECK(std::abs(M3(0, 0) - diag) < 1e-14);
  const CMatrix Mfar = recursion_matrix_unitary(x3, y3, 1e9, cd(0, 1e9));
  CHECK(max_abs(Mfar - CMatrix::Identity(6, 6)) < 1e-15);
}

TEST_CASE("poles are reported with index and sign") {
  const SpectralPoints p{{cd(0, 1)}, {2.0}};
  try {
    recursion_matrix_bar(1, p, cd(0, 1), 0.0);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.index() == 1);
    CHECK(e.sign() == -1);
  }
  CHECK_THROWS_AS(recursion_matrix_unitary({1.0}, {2.0}, 1.0, 0.0), PoleError);
  CHECK_THROWS_AS(recursion_matrix_bar(1, SpectralPoints{{1.0}, {}}, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("initial conditions") {
  const auto c1 = enumerate_classes(1);
  const CVector i0 = initial_condition(InitialKind::EvenJ, c1);
  CHECK(i0(0) == cd(1.0));
  CHECK(i0(1) == cd(-1.0));
  const CVector i0t = initial_condition(InitialKind::EvenJTilde, c1);
  CHECK(i0t(0) == cd(1.0));
  CHECK(i0t(1) == cd(1.0));
  const CVector i1 = initial_condition(InitialKind::OddJ, c1, SpectralPoints{{1.0}, {1.0}});
  CHECK(i1(0) == cd(2.0));
  CHECK(i1(1) == cd(0.0));
  CHECK_THROWS_AS(initial_condition(InitialKind::OddJ, c1), InvalidArgument);

  // I_1 is the basis evaluated on 1x1 zero matrices.
  for (int R : {1, 2}) {
    const auto cls = enumerate_classes(R);
    const SpectralPoints p = random_points(R);
    const CVector v = initial_condition(InitialKind::OddJ, cls, p);
    const CMatrix Z = CMatrix::Zero(1, 1);
    for (std::size_t k = 0; k < cls.size(); ++k)
      CHECK(std::abs(v(static_cast<Eigen::Index>(k)) - basis_eval(cls[k], p, Z, Z, Twist::J)) < 1e-13);
  }
}

TEST_CASE("n = 2 orthogonal case is exact") {
  for (int rep = 0; rep < 20; ++rep) {
    const int R = rep % 2 + 1;
    const auto cls = enumerate_classes(R);
    const SpectralPoints p = random_points(R);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    const std::vector<double> X{u(gen)}, Y{u(gen)};
    const CVector v = triangular_expectation(Twist::J, 2, X, Y, p, cls);
    const CMatrix A = j_diag_real(X, 2), B = j_diag_real(Y, 2);
    for (std::size_t k = 0; k < cls.size(); ++k)
      CHECK(std::abs(v(static_cast<Eigen::Index>(k)) - basis_eval(cls[k], p, A, B, Twist::J)) < 1e-13);
    if (R == 1) {
      const cd x = p.x[0], y = p.y[0], iX = I_UNIT * X[0], iY = I_UNIT * Y[0];
      CHECK(std::abs(v(0) - (1.0 + 1.0 / ((x - iX) * (y - iY)) + 1.0 / ((x + iX) * (y + iY)))) < 1e-13);
    }
  }
}

TEST_CASE("triangular expectation equals exact quadrature") {
  struct Case {
    Twist twist;
    int n;
    int R;
    int npts;
  };
  for (const Case c : {Case{Twist::J, 3, 2, 6}, Case{Twist::J, 4, 1, 4}, Case{Twist::J, 4, 2, 6},
                       Case{Twist::JTilde, 2, 1, 4}, Case{Twist::JTilde, 2, 2, 5},
                       Case{Twist::JTilde, 4, 1, 4}}) {
    CAPTURE(c.n);
    CAPTURE(c.R);
    const auto cls = enumerate_classes(c.R);
    const SpectralPoints p = random_points(c.R);
    const std::vector<double> X{0.7, 1.5}, Y{1.1, 0.4};
    const std::vector<double> Xm(X.begin(), X.begin() + c.n / 2), Ym(Y.begin(), Y.begin() + c.n / 2);
    const CVector rec = triangular_expectation(c.twist, c.n, Xm, Ym, p, cls);
    const CMatrix A0 = j_diag_real(Xm, c.n), B0 = j_diag_real(Ym, c.n);
    const CVector q = quad::expectation(c.twist, c.n, c.npts, [&](const CMatrix& T) {
      CVector v(static_cast<Eigen::Index>(cls.size()));
      for (std::size_t k = 0; k < cls.size(); ++k)
        v(static_cast<Eigen::Index>(k)) = basis_eval_recursive(cls[k], p, A0 + T, B0 + T.adjoint(), c.twist);
      return v;
    });
    CHECK((rec - q).cwiseAbs().maxCoeff() < 1e-11 * std::max(1.0, q.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("triangular expectation tends to the initial condition for large points") {
  const auto cls = enumerate_classes(2);
  const SpectralPoints p{{1e7, cd(0, 2e7)}, {3e7, -1e7}};
  const CVector v = triangular_expectation(Twist::J, 4, {0.7, 1.5}, {1.1, 0.4}, p, cls);
  const CVector i0 = initial_condition(InitialKind::EvenJ, cls);
  CHECK((v - i0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(triangular_expectation(Twist::JTilde, 3, {0.7}, {1.1}, random_points(2), cls),
                  InvalidArgument);
  CHECK_THROWS_AS(triangular_expectation(Twist::J, 4, {0.7}, {1.1}, random_points(2), cls),
                  InvalidArgument);
}

TEST_CASE("matrix determinant") {
  const CMatrix A = CMatrix::Random(3, 3);
  CHECK(mdet({{A}}) == A);
  const CMatrix I = CMatrix::Identity(4, 4);
  CHECK(max_abs(mdet({{2.0 * I, I}, {I, 2.0 * I}}) - 3.0 * I) < 1e-15);
  Eigen::Matrix3cd s = Eigen::Matrix3cd::Random();
  std::vector<std::vector<CMatrix>> grid(3, std::vector<CMatrix>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = CMatrix::Constant(1, 1, s(i, j));
  CHECK(std::abs(mdet(grid)(0, 0) - s.determinant()) < 1e-14);
  CMatrix P = CMatrix::Zero(2, 2), Q = CMatrix::Zero(2, 2);
  P(0, 1) = 1.0;
  Q(1, 0) = 1.0;
  CHECK_THROWS_AS(mdet({{P, Q}, {Q, P}}), NonCommuting);
  CHECK_THROWS_AS(mdet({{P, Q}}), InvalidArgument);
}

TEST_CASE("correlator: single Mdet equals the explicit sign sum") {
  for (Family f : {Family::OEven, Family::OOdd, Family::Sp}) {
    for (int m = 1; m <= 2; ++m) {
      for (int R = 1; R <= (m == 1 ? 2 : 1); ++R) {
        const auto cls = enumerate_classes(R);
        const SpectralPoints p = random_points(R);
        std::vector<double> xv{0.8, 1.6}, yv{1.3, 0.6};
        xv.resize(static_cast<std::size_t>(m));
        yv.resize(static_cast<std::size_t>(m));
        const auto x = spec(f, xv), y = spec(f, yv);
        const CVector a = correlator_vector(x, y, p, 0.5, cls);
        const CVector b = correlator_vector_weyl_sum(x, y, p, 0.5, cls);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10 * a.cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST_CASE("correlator: large points give the untwisted component 1") {
  for (Family f : {Family::OEven, Family::OOdd, Family::Sp}) {
    const auto cls = enumerate_classes(1);
    const CVector v = correlator_vector(spec(f, {1.0, 0.6}), spec(f, {0.8, 1.3}),
                                        SpectralPoints{{1e4}, {1e4}}, 0.5, cls);
    CHECK(std::abs(v(0) - 1.0) < 1e-4);
  }
}

TEST_CASE("correlator symmetries") {
  for (Family f : {Family::OEven, Family::OOdd, Family::Sp}) {
    const auto cls = enumerate_classes(1);
    for (int rep = 0; rep < 20; ++rep) {
      std::uniform_real_distribution<double> u(0.5, 2.0);
      std::vector<double> xv{u(gen), u(gen)}, yv{u(gen), u(gen)};
      if (std::abs(xv[0] - xv[1]) < 0.05 || std::abs(yv[0] - yv[1]) < 0.05) continue;
      const SpectralPoints p = random_points(1);
      const CVector base = correlator_vector(spec(f, xv), spec(f, yv), p, 0.5, cls);
      const double scale = base.cwiseAbs().maxCoeff();
      std::vector<double> xs{xv[1], xv[0]};
      CHECK((correlator_vector(spec(f, xs), spec(f, yv), p, 0.5, cls) - base).cwiseAbs().maxCoeff() <
            1e-10 * scale);
      std::vector<double> xf{-xv[0], xv[1]};
      CHECK((correlator_vector(spec(f, xf), spec(f, yv), p, 0.5, cls) - base).cwiseAbs().maxCoeff() <
            1e-10 * scale);
      std::vector<double> yf{yv[0], -yv[1]};
      CHECK((correlator_vector(spec(f, xv), spec(f, yf), p, 0.5, cls) - base).cwiseAbs().maxCoeff() <
            1e-10 * scale);
    }
  }
}

TEST_CASE("correlator gamma handling") {
  const auto cls = enumerate_classes(1);
  const auto x = spec(Family::OEven, {1.0}), y = spec(Family::OEven, {0.7});
  const SpectralPoints p{{2.0}, {3.0}};
  CHECK_THROWS_AS(correlator_vector(x, y, p, 0.3, cls), InvalidArgument);
  const CVector a = correlator_vector(x, y, p, 0.5, cls);
  const CVector b = correlator_vector_rescaled(x, y, p, 0.5, cls);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(correlator_vector(x, spec(Family::OOdd, {0.7}), p, 0.5, cls), InvalidArgument);
}
