#include "orthosym/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orthosym {

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

void require_rank(const std::vector<TetradClass>& classes, const SpectralPoints& pts) {
  pts.validate();
  if (classes.empty()) throw InvalidArgument("empty class list");
  if (classes.front().canonical.rank() != pts.rank())
    throw InvalidArgument("spectral points rank does not match the basis rank");
}

cd checked_inverse(cd v, const char* what, int index, int sign) {
  if (std::abs(v) < kPoleTol)
    throw PoleError(std::string("pole in ") + what + " at index " + std::to_string(index) +
                        (sign > 0 ? " (+)" : " (-)"),
                    index, sign);
  return 1.0 / v;
}

// For every position p (1-based signed source vertex) the position of its target.
std::vector<int> edge_targets(const Tetrad& t) {
  const int R = t.rank();
  std::vector<int> dst(uz(2 * R + 1), 0);
  for (int i = 1; i <= R; ++i) {
    const int si = t.s[uz(i - 1)];
    const int sg = t.sigma[uz(i - 1)];
    const int ta = t.tau[uz(i - 1)];
    dst[uz(label_position(si * i, R))] = label_position(t.t[uz(sg - 1)] * sg, R);
    dst[uz(label_position(-si * i, R))] = label_position(-t.t[uz(ta - 1)] * ta, R);
  }
  return dst;
}

// prod over positions of (delta + a_p b_{dst(p)}), evaluated in a fixed order
// that depends only on the unordered pair of rows so the result is exactly symmetric.
cd transfer_entry(const std::vector<int>& d1, const std::vector<int>& d2, const std::vector<cd>& a,
                  const std::vector<cd>& b, std::vector<char>& mark) {
  const std::size_t N = a.size() - 1;
  std::fill(mark.begin(), mark.end(), 0);
  cd diag = 1.0;
  cd off_a = 1.0;
  bool any_off = false;
  for (std::size_t p = 1; p <= N; ++p) {
    if (d1[p] == d2[p]) {
      diag *= 1.0 + a[p] * b[uz(d1[p])];
    } else {
      off_a *= a[p];
      mark[uz(d1[p])] = 1;
      any_off = true;
    }
  }
  if (!any_off) return diag;
  cd off_b = 1.0;
  for (std::size_t q = 1; q <= N; ++q)
    if (mark[q]) off_b *= b[q];
  return diag * (off_a * off_b);
}

} // namespace

void SpectralPoints::validate() const {
  if (x.empty()) throw InvalidArgument("spectral points: at least one x is required");
  if (x.size() != y.size())
    throw InvalidArgument("spectral points: x and y must have the same length");
  for (const auto& v : x)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("spectral points: non-finite x");
  for (const auto& v : y)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("spectral points: non-finite y");
}

std::string twist_name(Twist t) { return t == Twist::J ? "J" : "Jtilde"; }

Twist twist_for(Family f) {
  switch (f) {
  case Family::OEven:
  case Family::OOdd: return Twist::J;
  case Family::Sp: return Twist::JTilde;
  case Family::U: break;
  }
  throw InvalidArgument("no triangular twist for the U family");
}

std::vector<cd> doubled_points(const std::vector<cd>& v) {
  std::vector<cd> out(v.begin(), v.end());
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(-*it);
  return out;
}

CMatrix recursion_matrix_bar(const std::vector<TetradClass>& classes, const SpectralPoints& pts,
                             cd alpha, cd beta) {
  require_rank(classes, pts);
  const int R = pts.rank();
  const std::size_t N = uz(2 * R);
  // a_p = 1/(sgn(alpha(p)) x + alpha) at source positions, b_q likewise for targets.
  std::vector<cd> a(N + 1), b(N + 1);
  for (int p = 1; p <= 2 * R; ++p) {
    const int lab = signed_label(p, R);
    const int sgn = lab > 0 ? 1 : -1;
    const int i = std::abs(lab);
    a[uz(p)] = checked_inverse(static_cast<double>(sgn) * pts.x[uz(i - 1)] + alpha, "x + alpha", i, sgn);
    b[uz(p)] = checked_inverse(static_cast<double>(sgn) * pts.y[uz(i - 1)] + beta, "y + beta", i, sgn);
  }
  std::vector<std::vector<int>> dst;
  dst.reserve(classes.size());
  for (const auto& c : classes) dst.push_back(edge_targets(c.canonical));
  const auto K = static_cast<Eigen::Index>(classes.size());
  CMatrix M(K, K);
  std::vector<char> mark(N + 1);
  for (Eigen::Index r = 0; r < K; ++r)
    for (Eigen::Index c = r; c < K; ++c) {
      const cd v = transfer_entry(dst[uz(static_cast<int>(r))], dst[uz(static_cast<int>(c))], a, b, mark);
      M(r, c) = v;
      M(c, r) = v;
    }
  return M;
}

CMatrix recursion_matrix_bar(int R, const SpectralPoints& pts, cd alpha, cd beta) {
  return recursion_matrix_bar(enumerate_classes(R), pts, alpha, beta);
}

CMatrix recursion_matrix_unitary(const std::vector<cd>& x2R, const std::vector<cd>& y2R, cd xi,
                                 cd eta) {
  if (x2R.empty() || x2R.size() != y2R.size())
    throw InvalidArgument("recursion_matrix_unitary: x and y must have equal positive length");
  const std::size_t N = x2R.size();
  std::vector<cd> a(N + 1), b(N + 1);
  for (std::size_t p = 1; p <= N; ++p) {
    a[p] = checked_inverse(x2R[p - 1] - xi, "x - xi", static_cast<int>(p), 1);
    b[p] = checked_inverse(y2R[p - 1] - eta, "y - eta", static_cast<int>(p), 1);
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> pi(N);
  std::iota(pi.begin(), pi.end(), 1);
  do {
    std::vector<int> d(N + 1, 0);
    for (std::size_t p = 1; p <= N; ++p) d[p] = pi[p - 1];
    perms.push_back(std::move(d));
  } while (std::next_permutation(pi.begin(), pi.end()));
  const auto K = static_cast<Eigen::Index>(perms.size());
  CMatrix M(K, K);
  std::vector<char> mark(N + 1);
  for (Eigen::Index r = 0; r < K; ++r)
    for (Eigen::Index c = 0; c < K; ++c)
      M(r, c) = transfer_entry(perms[uz(static_cast<int>(r))], perms[uz(static_cast<int>(c))], a, b, mark);
  return M;
}

CVector initial_condition(InitialKind kind, const std::vector<TetradClass>& classes,
                          const std::optional<SpectralPoints>& pts) {
  if (classes.empty()) throw InvalidArgument("initial_condition: empty class list");
  const auto K = static_cast<Eigen::Index>(classes.size());
  CVector v = CVector::Zero(K);
  if (kind == InitialKind::OddJ) {
    if (!pts) throw InvalidArgument("initial_condition: I_1 requires spectral points");
    require_rank(classes, *pts);
    for (Eigen::Index k = 0; k < K; ++k) {
      const auto& c = classes[uz(static_cast<int>(k))];
      cd val = 1.0;
      for (const auto& cyc : c.cycles) {
        cd prod = 1.0;
        for (const auto& [i, j] : cyc)
          prod *= checked_inverse(pts->x[uz(i - 1)], "x (odd initial condition)", i, 1) *
                  checked_inverse(pts->y[uz(j - 1)], "y (odd initial condition)", j, 1);
        const double add = cyc.size() == 1 ? c.canonical.t[uz(cyc.front().second - 1)] : 0.0;
        val *= add + prod;
      }
      v(k) = val;
    }
    return v;
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto& t = classes[uz(static_cast<int>(k))].canonical;
    if (t.sigma != t.tau) continue;
    if (kind == InitialKind::EvenJ) {
      int prod = 1;
      for (int s : t.s) prod *= s;
      for (int s : t.t) prod *= s;
      v(k) = static_cast<double>(prod);
    } else {
      v(k) = 1.0;
    }
  }
  return v;
}

CVector triangular_expectation(Twist twist, int n, const std::vector<double>& x_eigs,
                               const std::vector<double>& y_eigs, const SpectralPoints& pts,
                               const std::vector<TetradClass>& classes) {
  require_rank(classes, pts);
  if (n < 1) throw InvalidArgument("triangular_expectation: n must be positive");
  if (twist == Twist::JTilde && n % 2 != 0)
    throw InvalidArgument("triangular_expectation: J~ requires even n");
  const int m = n / 2;
  if (static_cast<int>(x_eigs.size()) != m || static_cast<int>(y_eigs.size()) != m)
    throw InvalidArgument("triangular_expectation: need floor(n/2) eigenvalues for X and Y");
  CVector v;
  if (n % 2 == 1)
    v = initial_condition(InitialKind::OddJ, classes, pts);
  else
    v = initial_condition(twist == Twist::J ? InitialKind::EvenJ : InitialKind::EvenJTilde, classes);
  for (int k = m - 1; k >= 0; --k)
    v = recursion_matrix_bar(classes, pts, I_UNIT * x_eigs[uz(k)], I_UNIT * y_eigs[uz(k)]) * v;
  return v;
}

CMatrix mdet(const std::vector<std::vector<CMatrix>>& grid) {
  const std::size_t m = grid.size();
  if (m == 0) throw InvalidArgument("mdet: empty grid");
  const Eigen::Index k = grid[0][0].rows();
  for (const auto& row : grid) {
    if (row.size() != m) throw InvalidArgument("mdet: grid must be square");
    for (const auto& cell : row)
      if (cell.rows() != k || cell.cols() != k)
        throw InvalidArgument("mdet: cells must be square matrices of equal size");
  }
  std::vector<const CMatrix*> cells;
  for (const auto& row : grid)
    for (const auto& cell : row) cells.push_back(&cell);
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const CMatrix& A = *cells[a];
      const CMatrix& B = *cells[b];
      const double res = (A * B - B * A).norm();
      if (res > kCommuteTol * A.norm() * B.norm())
        throw NonCommuting("mdet: grid cells do not commute (residual " + std::to_string(res) + ")");
    }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  CMatrix out = CMatrix::Zero(k, k);
  do {
    CMatrix prod = grid[0][uz(perm[0])];
    for (std::size_t i = 1; i < m; ++i) prod = prod * grid[i][uz(perm[i])];
    out += static_cast<double>(permutation_sign(perm)) * prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

void require_correlator_args(const GroupSpectrum& x, const GroupSpectrum& y,
                             const SpectralPoints& pts, double gamma,
                             const std::vector<TetradClass>& classes) {
  if (x.family().tag != y.family().tag || x.family().rank != y.family().rank)
    throw InvalidArgument("correlator: X and Y must share family and rank");
  if (x.family().tag == Family::U)
    throw InvalidArgument("correlator: the U family is not supported");
  if (std::abs(gamma - 0.5) > 1e-12)
    throw InvalidArgument("correlator: direct evaluation requires gamma = 1/2; use "
                          "correlator_vector_rescaled for other couplings");
  require_rank(classes, pts);
}

CVector correlator_initial(const GroupSpectrum& x, const SpectralPoints& pts,
                           const std::vector<TetradClass>& classes) {
  switch (x.family().tag) {
  case Family::OEven: return initial_condition(InitialKind::EvenJ, classes);
  case Family::OOdd: return initial_condition(InitialKind::OddJ, classes, pts);
  case Family::Sp: return initial_condition(InitialKind::EvenJTilde, classes);
  case Family::U: break;
  }
  throw InvalidArgument("correlator: unsupported family");
}

double correlator_denominator(const GroupSpectrum& x, const GroupSpectrum& y, double gamma) {
  const int m = x.size();
  RMatrix d(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) {
      const double arg = 2.0 * gamma * x[k] * y[j];
      d(k, j) = x.family().tag == Family::OEven ? 2.0 * std::cosh(arg) : 2.0 * std::sinh(arg);
    }
  const double det = d.fullPivLu().determinant();
  if (std::abs(det) < 1e-300) throw SingularSpectrum("correlator: singular denominator determinant");
  return det;
}

} // namespace

CVector correlator_vector(const GroupSpectrum& x, const GroupSpectrum& y,
                          const SpectralPoints& pts, double gamma,
                          const std::vector<TetradClass>& classes) {
  require_correlator_args(x, y, pts, gamma, classes);
  const int m = x.size();
  const double pm = x.family().tag == Family::OEven ? 1.0 : -1.0;
  std::vector<std::vector<CMatrix>> grid(uz(m), std::vector<CMatrix>(uz(m)));
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) {
      const double e = 2.0 * gamma * x[k] * y[j];
      grid[uz(k)][uz(j)] =
          std::exp(e) * recursion_matrix_bar(classes, pts, I_UNIT * x[k], I_UNIT * y[j]) +
          pm * std::exp(-e) * recursion_matrix_bar(classes, pts, I_UNIT * x[k], -I_UNIT * y[j]);
    }
  return mdet(grid) * correlator_initial(x, pts, classes) / correlator_denominator(x, y, gamma);
}

CVector correlator_vector_weyl_sum(const GroupSpectrum& x, const GroupSpectrum& y,
                                   const SpectralPoints& pts, double gamma,
                                   const std::vector<TetradClass>& classes) {
  require_correlator_args(x, y, pts, gamma, classes);
  const int m = x.size();
  const bool signed_weight = x.family().tag != Family::OEven;
  const auto K = static_cast<Eigen::Index>(classes.size());
  CMatrix total = CMatrix::Zero(K, K);
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> t(uz(m), 1);
    int weight = 1;
    for (int j = 0; j < m; ++j)
      if (mask & (1 << j)) {
        t[uz(j)] = -1;
        weight = -weight;
      }
    std::vector<std::vector<CMatrix>> grid(uz(m), std::vector<CMatrix>(uz(m)));
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        grid[uz(k)][uz(j)] =
            std::exp(2.0 * gamma * t[uz(j)] * x[k] * y[j]) *
            recursion_matrix_bar(classes, pts, I_UNIT * x[k], I_UNIT * (t[uz(j)] * y[j]));
    total += (signed_weight ? weight : 1) * mdet(grid);
  }
  return total * correlator_initial(x, pts, classes) / correlator_denominator(x, y, gamma);
}

CVector correlator_vector_rescaled(const GroupSpectrum& x, const GroupSpectrum& y,
                                   const SpectralPoints& pts, double gamma,
                                   const std::vector<TetradClass>& classes) {
  if (!(gamma > 0.0)) throw InvalidArgument("correlator: gamma must be positive");
  const double c = std::sqrt(2.0 * gamma);
  auto scale = [&](const GroupSpectrum& s) {
    std::vector<double> v = s.eigenvalues();
    for (auto& e : v) e *= c;
    return GroupSpectrum(s.family(), v);
  };
  SpectralPoints sp = pts;
  for (auto& v : sp.x) v *= c;
  for (auto& v : sp.y) v *= c;
  return std::pow(2.0 * gamma, pts.rank()) *
         correlator_vector(scale(x), scale(y), sp, 0.5, classes);
}

} // namespace orthosym
