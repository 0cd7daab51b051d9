#include "orthosym/oracles.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace orthosym {

namespace {

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

// Resolvents (z - M)^{-1} for z = +-v_i, indexed [i][sign == -1].
struct Resolvents {
  std::vector<std::array<CMatrix, 2>> r;

  const CMatrix& get(int one_based, int sign) const { return r[uz(one_based - 1)][sign > 0 ? 0 : 1]; }
};

CMatrix resolvent(cd z, const CMatrix& M) {
  const auto n = M.rows();
  CMatrix shifted = z * CMatrix::Identity(n, n) - M;
  Eigen::PartialPivLU<CMatrix> lu(shifted);
  if (std::abs(lu.determinant()) < 1e-300)
    throw SingularSpectrum("resolvent: spectral point is an eigenvalue");
  return lu.solve(CMatrix::Identity(n, n));
}

Resolvents resolvents(const std::vector<cd>& pts, const CMatrix& M) {
  Resolvents out;
  out.r.reserve(pts.size());
  for (const auto& z : pts) out.r.push_back({resolvent(z, M), resolvent(-z, M)});
  return out;
}

void require_class_rank(const TetradClass& c, const SpectralPoints& pts) {
  if (c.canonical.rank() != pts.rank())
    throw InvalidArgument("class rank does not match the spectral points");
}

void require_square_pair(const CMatrix& A, const CMatrix& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows() || A.rows() == 0)
    throw InvalidArgument("basis evaluation: A and B must be square of equal size");
}

cd untwisted_cached(const TetradClass& c, const Resolvents& rx, const Resolvents& ry,
                    double additive) {
  const auto& t = c.canonical;
  const auto n = rx.r.front()[0].rows();
  cd val = 1.0;
  for (const auto& cyc : c.cycles) {
    CMatrix P = CMatrix::Identity(n, n);
    for (const auto& [i, j] : cyc) P = P * rx.get(i, t.s[uz(i - 1)]) * ry.get(j, t.t[uz(j - 1)]);
    val *= (cyc.size() == 1 ? additive : 0.0) + P.trace();
  }
  return val;
}

int sign_product(const std::vector<int>& v) {
  int p = 1;
  for (int s : v) p *= s;
  return p;
}

int twist_insertions(const TetradClass& c) {
  const auto& t = c.canonical;
  int n = 0;
  for (const auto& cyc : c.cycles)
    for (std::size_t l = 0; l < cyc.size(); ++l) {
      const auto [i, j] = cyc[l];
      const int inext = cyc[(l + 1) % cyc.size()].first;
      n += (t.s[uz(i - 1)] != t.t[uz(j - 1)]) + (t.t[uz(j - 1)] != t.s[uz(inext - 1)]);
    }
  return n;
}

// --- sharded accumulation ---------------------------------------------------

struct Accum {
  CVector sa;         // sum f w
  Eigen::VectorXd saa; // sum |f w|^2
  CVector sab;        // sum f w^2
  double sb = 0.0;    // sum w
  double sbb = 0.0;   // sum w^2
  std::int64_t n = 0;

  explicit Accum(Eigen::Index k)
      : sa(CVector::Zero(k)), saa(Eigen::VectorXd::Zero(k)), sab(CVector::Zero(k)) {}

  void add(const CVector& f, double w) {
    for (Eigen::Index q = 0; q < sa.size(); ++q) {
      const cd a = f(q) * w;
      sa(q) += a;
      saa(q) += std::norm(a);
      sab(q) += a * w;
    }
    sb += w;
    sbb += w * w;
    ++n;
  }

  void merge(const Accum& o) {
    sa += o.sa;
    saa += o.saa;
    sab += o.sab;
    sb += o.sb;
    sbb += o.sbb;
    n += o.n;
  }
};

using ShardBody = std::function<void(Rng&, std::int64_t, Accum&)>;

Accum run_sharded(std::int64_t samples, std::uint64_t seed, McOptions opt, Eigen::Index k,
                  const ShardBody& body) {
  if (samples < 2) throw InvalidArgument("Monte Carlo: at least two samples are required");
  if (opt.shards < 1) throw InvalidArgument("Monte Carlo: shard count must be positive");
  const int shards = opt.shards;
  const int threads = std::max(1, std::min(opt.threads, shards));
  std::vector<Accum> parts(uz(shards), Accum(k));
  std::vector<std::exception_ptr> errors(uz(shards));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next++; s < shards; s = next++) {
      const std::int64_t count = samples / shards + (s < samples % shards ? 1 : 0);
      try {
        Rng rng(seed, static_cast<std::uint64_t>(s));
        body(rng, count, parts[uz(s)]);
      } catch (...) {
        errors[uz(s)] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Accum total(k);
  for (const auto& p : parts) total.merge(p);
  return total;
}

McVectorEstimate ratio_estimate(const Accum& a, std::uint64_t seed) {
  const double N = static_cast<double>(a.n);
  const double wbar = a.sb / N;
  McVectorEstimate out{CVector(a.sa.size()), Eigen::VectorXd(a.sa.size()), a.n, seed};
  for (Eigen::Index q = 0; q < a.sa.size(); ++q) {
    const cd r = a.sa(q) / a.sb;
    const double ss =
        a.saa(q) - 2.0 * std::real(std::conj(r) * a.sab(q)) + std::norm(r) * a.sbb;
    const double var = std::max(0.0, ss) / (N - 1.0);
    out.mean(q) = r;
    out.std_error(q) = std::sqrt(var / N) / wbar;
  }
  return out;
}

CMatrix cartan(const GroupSpectrum& s) {
  return embed(s, s.family().tag == Family::Sp ? EmbedKind::Quaternionic
                                               : EmbedKind::RealAntisymmetricBlocks);
}

// Omega B Omega^{-1} for a freshly drawn Haar element.
CMatrix conjugated_sample(const GroupSpectrum& y, const CMatrix& B, Rng& rng) {
  if (y.family().tag == Family::Sp) {
    const CMatrix W = haar_symplectic(y.family().rank, rng);
    return W * B * W.adjoint();
  }
  const CMatrix W = haar_orthogonal(y.family().matrix_size(), rng).cast<cd>();
  return W * B * W.transpose();
}

void require_group_pair(const GroupSpectrum& x, const GroupSpectrum& y) {
  if (x.family().tag != y.family().tag || x.family().rank != y.family().rank)
    throw InvalidArgument("Monte Carlo: X and Y must share family and rank");
  if (x.family().tag == Family::U)
    throw InvalidArgument("Monte Carlo: Haar sampling over U(n) is not provided");
}

// --- quaternion helpers --------------------------------------------------------

using Quat = Eigen::Quaterniond;

Quat qadd(const Quat& a, const Quat& b) {
  Quat r;
  r.coeffs() = a.coeffs() + b.coeffs();
  return r;
}

Quat qsub(const Quat& a, const Quat& b) {
  Quat r;
  r.coeffs() = a.coeffs() - b.coeffs();
  return r;
}

Quat qscale(const Quat& a, double s) {
  Quat r;
  r.coeffs() = a.coeffs() * s;
  return r;
}

// --- triangular entry map ---------------------------------------------------------

bool independent_entry(Twist twist, int n, int i, int j) {
  if (!(i < j)) return false;
  return twist == Twist::J ? i + j < n + 1 : i + j <= n + 1;
}

int half_sign(int i, int n) { return i <= n / 2 ? 1 : -1; }

double entry_variance(Twist twist, int n, int i, int j) {
  return (twist == Twist::JTilde && i + j == n + 1) ? 2.0 : 1.0;
}

double mirror_kappa(Twist twist, int n, int i, int j) {
  return twist == Twist::J ? 1.0 : static_cast<double>(half_sign(i, n) * half_sign(j, n));
}

struct EntryRef {
  int i = 0; // independent entry (0 if the position is identically zero)
  int j = 0;
  double coeff = 0.0;
};

EntryRef entry_ref(Twist twist, int n, int a, int b) {
  if (independent_entry(twist, n, a, b)) return {a, b, 1.0};
  const int ia = n + 1 - b;
  const int ib = n + 1 - a;
  if (independent_entry(twist, n, ia, ib)) return {ia, ib, -mirror_kappa(twist, n, a, b)};
  return {};
}

void require_twist_size(Twist twist, int n) {
  if (n < 1) throw InvalidArgument("triangular: n must be positive");
  if (twist == Twist::JTilde && n % 2 != 0) throw InvalidArgument("triangular: J~ requires even n");
}

void require_index(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw InvalidArgument("Wick symbol index out of range");
}

cd wick_rec(const std::vector<WickSymbol>& w, std::vector<bool>& used, Twist twist, int n) {
  std::size_t first = 0;
  while (first < w.size() && used[first]) ++first;
  if (first == w.size()) return 1.0;
  used[first] = true;
  cd total = 0.0;
  for (std::size_t k = first + 1; k < w.size(); ++k) {
    if (used[k] || w[k].dagger == w[first].dagger) continue;
    const WickSymbol& t = w[first].dagger ? w[k] : w[first];
    const WickSymbol& d = w[first].dagger ? w[first] : w[k];
    const cd p = propagator_from_entries(twist, n, t.i, t.j, d.i, d.j);
    if (p == cd(0.0)) continue;
    used[k] = true;
    total += p * wick_rec(w, used, twist, n);
    used[k] = false;
  }
  used[first] = false;
  return total;
}

} // namespace

CMatrix twist_matrix(Twist twist, int n) {
  return twist == Twist::J ? j_matrix(n) : jtilde_matrix(n);
}

cd basis_eval(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A, const CMatrix& B,
              Twist twist) {
  require_class_rank(c, pts);
  require_square_pair(A, B);
  const auto n = A.rows();
  const CMatrix Jm = twist_matrix(twist, static_cast<int>(n));
  const Resolvents rx = resolvents(pts.x, A);
  const Resolvents ry = resolvents(pts.y, B);
  const auto& t = c.canonical;
  cd val = 1.0;
  for (const auto& cyc : c.cycles) {
    CMatrix P = CMatrix::Identity(n, n);
    for (std::size_t l = 0; l < cyc.size(); ++l) {
      const auto [i, j] = cyc[l];
      const int inext = cyc[(l + 1) % cyc.size()].first;
      const int si = t.s[uz(i - 1)];
      const int tj = t.t[uz(j - 1)];
      const CMatrix& Rx = rx.get(i, 1);
      const CMatrix& Ry = ry.get(j, 1);
      P = si > 0 ? CMatrix(P * Rx) : CMatrix(P * Rx.transpose());
      if (si != tj) P = P * Jm;
      P = tj > 0 ? CMatrix(P * Ry) : CMatrix(P * Ry.transpose());
      if (tj != t.s[uz(inext - 1)]) P = P * Jm;
    }
    double add = 0.0;
    if (cyc.size() == 1) add = twist == Twist::J ? t.t[uz(cyc.front().second - 1)] : 1.0;
    val *= add + P.trace();
  }
  return val;
}

cd untwisted_product(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A,
                     const CMatrix& B, double additive) {
  require_class_rank(c, pts);
  require_square_pair(A, B);
  return untwisted_cached(c, resolvents(pts.x, A), resolvents(pts.y, B), additive);
}

int literal_basis_sign(const TetradClass& c, Twist twist) {
  const int base = sign_product(c.canonical.s) * sign_product(c.canonical.t);
  if (twist == Twist::J) return base;
  return (twist_insertions(c) / 2) % 2 == 0 ? base : -base;
}

int recursion_basis_sign(const TetradClass& c, Twist twist) {
  return twist == Twist::J ? sign_product(c.canonical.s) * sign_product(c.canonical.t) : 1;
}

cd basis_eval_recursive(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A,
                        const CMatrix& B, Twist twist, double additive) {
  return static_cast<double>(recursion_basis_sign(c, twist)) *
         untwisted_product(c, pts, A, B, additive);
}

RMatrix haar_orthogonal(int n, Rng& rng) {
  if (n < 1) throw InvalidArgument("haar_orthogonal: n must be positive");
  while (true) {
    RMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<RMatrix> qr(g);
    const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    bool degenerate = false;
    RMatrix q = qr.householderQ();
    for (int i = 0; i < n; ++i) {
      const double d = r(i, i);
      if (std::abs(d) < 1e-12) degenerate = true;
      if (d < 0) q.col(i) = -q.col(i);
    }
    if (!degenerate) return q;
  }
}

RMatrix haar_orthogonal(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_orthogonal(n, rng);
}

Eigen::Matrix2cd quaternion_block(double a, double b, double c, double d) {
  Eigen::Matrix2cd m;
  m << cd(a, -d), cd(-c, -b), cd(c, -b), cd(a, d);
  return m;
}

CMatrix haar_symplectic(int m, Rng& rng) {
  if (m < 1) throw InvalidArgument("haar_symplectic: m must be positive");
  std::vector<std::vector<Quat>> cols;
  while (static_cast<int>(cols.size()) < m) {
    std::vector<Quat> v(uz(m));
    for (auto& q : v) {
      const double w = rng.normal(), x = rng.normal(), y = rng.normal(), z = rng.normal();
      q = Quat(w, x, y, z);
    }
    // v <- v - u <u, v> for each previous column u, <u, v> = sum conj(u_i) v_i.
    for (const auto& u : cols) {
      Quat ip(0, 0, 0, 0);
      for (int i = 0; i < m; ++i) ip = qadd(ip, u[uz(i)].conjugate() * v[uz(i)]);
      for (int i = 0; i < m; ++i) v[uz(i)] = qsub(v[uz(i)], u[uz(i)] * ip);
    }
    double norm2 = 0.0;
    for (const auto& q : v) norm2 += q.squaredNorm();
    if (norm2 < 1e-20) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& q : v) q = qscale(q, inv);
    cols.push_back(std::move(v));
  }
  CMatrix out(2 * m, 2 * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const Quat& q = cols[uz(c)][uz(r)];
      out.block<2, 2>(2 * r, 2 * c) = quaternion_block(q.w(), q.x(), q.y(), q.z());
    }
  return out;
}

CMatrix haar_symplectic(int m, std::uint64_t seed) {
  Rng rng(seed);
  return haar_symplectic(m, rng);
}

CMatrix sample_triangular(Twist twist, int n, Rng& rng) {
  require_twist_size(twist, n);
  CMatrix T = CMatrix::Zero(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (!independent_entry(twist, n, i, j)) continue;
      const double sd = std::sqrt(entry_variance(twist, n, i, j) / 2.0);
      const double re = rng.normal();
      const double im = rng.normal();
      const cd v(sd * re, sd * im);
      T(i - 1, j - 1) = v;
      const int i2 = n + 1 - j;
      const int j2 = n + 1 - i;
      if (i2 != i || j2 != j) T(i2 - 1, j2 - 1) = -mirror_kappa(twist, n, i2, j2) * v;
    }
  return T;
}

CMatrix sample_triangular(Twist twist, int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_triangular(twist, n, rng);
}

McEstimate mc_group_partition(const GroupSpectrum& x, const GroupSpectrum& y, double gamma,
                              std::int64_t samples, std::uint64_t seed, McOptions opt) {
  require_group_pair(x, y);
  if (!(gamma >= 0.0)) throw InvalidArgument("Monte Carlo: gamma must be non-negative");
  const CMatrix A = cartan(x);
  const CMatrix B = cartan(y);
  const Accum acc = run_sharded(samples, seed, opt, 0, [&](Rng& rng, std::int64_t count, Accum& a) {
    const CVector none(0);
    for (std::int64_t k = 0; k < count; ++k) {
      const CMatrix Bw = conjugated_sample(y, B, rng);
      a.add(none, std::exp(-gamma * std::real((A * Bw).trace())));
    }
  });
  const double N = static_cast<double>(acc.n);
  const double mean = acc.sb / N;
  const double var = std::max(0.0, acc.sbb - N * mean * mean) / (N - 1.0);
  return McEstimate{mean, std::sqrt(var / N), acc.n, seed};
}

cd group_observable(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A,
                    const CMatrix& B, Family family, double additive) {
  if (family == Family::U) throw InvalidArgument("group_observable: U family not supported");
  const double sign =
      family == Family::Sp ? 1.0 : sign_product(c.canonical.s) * sign_product(c.canonical.t);
  return sign * untwisted_product(c, pts, A, B, additive);
}

McVectorEstimate mc_group_correlator(const GroupSpectrum& x, const GroupSpectrum& y,
                                     const SpectralPoints& pts,
                                     const std::vector<TetradClass>& classes, double gamma,
                                     std::int64_t samples, std::uint64_t seed, McOptions opt,
                                     double additive) {
  require_group_pair(x, y);
  pts.validate();
  if (classes.empty()) throw InvalidArgument("Monte Carlo: empty class list");
  for (const auto& c : classes) require_class_rank(c, pts);
  if (!(gamma >= 0.0)) throw InvalidArgument("Monte Carlo: gamma must be non-negative");
  const Family fam = x.family().tag;
  const CMatrix A = cartan(x);
  const CMatrix B = cartan(y);
  const Resolvents rx = resolvents(pts.x, A);
  std::vector<double> sign(classes.size());
  for (std::size_t q = 0; q < classes.size(); ++q)
    sign[q] = fam == Family::Sp
                  ? 1.0
                  : sign_product(classes[q].canonical.s) * sign_product(classes[q].canonical.t);
  const auto K = static_cast<Eigen::Index>(classes.size());
  const Accum acc = run_sharded(samples, seed, opt, K, [&](Rng& rng, std::int64_t count, Accum& a) {
    CVector f(K);
    for (std::int64_t k = 0; k < count; ++k) {
      const CMatrix Bw = conjugated_sample(y, B, rng);
      const double w = std::exp(-gamma * std::real((A * Bw).trace()));
      const Resolvents ry = resolvents(pts.y, Bw);
      for (Eigen::Index q = 0; q < K; ++q)
        f(q) = sign[uz(static_cast<int>(q))] *
               untwisted_cached(classes[uz(static_cast<int>(q))], rx, ry, additive);
      a.add(f, w);
    }
  });
  return ratio_estimate(acc, seed);
}

McVectorEstimate mc_triangular_expectation(Twist twist, int n, const std::vector<double>& x_eigs,
                                           const std::vector<double>& y_eigs,
                                           const SpectralPoints& pts,
                                           const std::vector<TetradClass>& classes,
                                           std::int64_t samples, std::uint64_t seed,
                                           McOptions opt) {
  require_twist_size(twist, n);
  pts.validate();
  if (classes.empty()) throw InvalidArgument("Monte Carlo: empty class list");
  for (const auto& c : classes) require_class_rank(c, pts);
  const int m = n / 2;
  if (static_cast<int>(x_eigs.size()) != m || static_cast<int>(y_eigs.size()) != m)
    throw InvalidArgument("Monte Carlo: need floor(n/2) eigenvalues for X and Y");
  const CMatrix A0 = I_UNIT * j_diagonal(std::vector<cd>(x_eigs.begin(), x_eigs.end()), n);
  const CMatrix B0 = I_UNIT * j_diagonal(std::vector<cd>(y_eigs.begin(), y_eigs.end()), n);
  const auto K = static_cast<Eigen::Index>(classes.size());
  const Accum acc = run_sharded(samples, seed, opt, K, [&](Rng& rng, std::int64_t count, Accum& a) {
    CVector f(K);
    for (std::int64_t k = 0; k < count; ++k) {
      const CMatrix T = sample_triangular(twist, n, rng);
      const CMatrix A = A0 + T;
      const CMatrix B = B0 + T.adjoint();
      const Resolvents rx = resolvents(pts.x, A);
      const Resolvents ry = resolvents(pts.y, B);
      for (Eigen::Index q = 0; q < K; ++q) {
        const auto& c = classes[uz(static_cast<int>(q))];
        f(q) = static_cast<double>(recursion_basis_sign(c, twist)) * untwisted_cached(c, rx, ry, 1.0);
      }
      a.add(f, 1.0);
    }
  });
  return ratio_estimate(acc, seed);
}

cd propagator_from_entries(Twist twist, int n, int i, int j, int k, int l) {
  require_twist_size(twist, n);
  require_index(n, i, j);
  require_index(n, k, l);
  // <T_ij conj(T_lk)>
  const EntryRef a = entry_ref(twist, n, i, j);
  const EntryRef b = entry_ref(twist, n, l, k);
  if (a.i == 0 || b.i == 0 || a.i != b.i || a.j != b.j) return 0.0;
  return a.coeff * b.coeff * entry_variance(twist, n, a.i, a.j);
}

cd propagator_table(Twist twist, int n, int i, int j, int k, int l) {
  require_twist_size(twist, n);
  require_index(n, i, j);
  require_index(n, k, l);
  if (!(i < j)) return 0.0;
  const double b = twist == Twist::J ? -1.0 : 1.0;
  const CMatrix Jt = twist_matrix(twist, n);
  double v = 0.0;
  if (k == j && l == i) v += 1.0 + (i + j == n + 1 ? b : 0.0);
  if (i + j != n + 1 && k == n + 1 - i && l == n + 1 - j)
    v += -std::real(Jt(k - 1, n - k)) * std::real(Jt(l - 1, n - l));
  return v;
}

cd wick_enumerate(const std::vector<WickSymbol>& word, Twist twist, int n) {
  require_twist_size(twist, n);
  if (word.size() % 2 != 0) throw InvalidArgument("wick_enumerate: word length must be even");
  if (word.size() > 8) throw InvalidArgument("wick_enumerate: word length must be at most 8");
  for (const auto& s : word) require_index(n, s.i, s.j);
  std::vector<bool> used(word.size(), false);
  return wick_rec(word, used, twist, n);
}

McEstimate mc_moment(const std::vector<WickSymbol>& word, Twist twist, int n,
                     std::int64_t samples, std::uint64_t seed, McOptions opt) {
  require_twist_size(twist, n);
  for (const auto& s : word) require_index(n, s.i, s.j);
  const Accum acc = run_sharded(samples, seed, opt, 1, [&](Rng& rng, std::int64_t count, Accum& a) {
    CVector f(1);
    for (std::int64_t k = 0; k < count; ++k) {
      const CMatrix T = sample_triangular(twist, n, rng);
      cd p = 1.0;
      for (const auto& s : word) p *= s.dagger ? std::conj(T(s.j - 1, s.i - 1)) : T(s.i - 1, s.j - 1);
      f(0) = p;
      a.add(f, 1.0);
    }
  });
  return ratio_estimate(acc, seed).component(0);
}

} // namespace orthosym
