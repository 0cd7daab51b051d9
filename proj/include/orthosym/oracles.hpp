#pragma once

#include "orthosym/combinatorics.hpp"
#include "orthosym/groups.hpp"
#include "orthosym/recursion.hpp"
#include "orthosym/rng.hpp"

#include <cstdint>

namespace orthosym {

// ---------------------------------------------------------------------------
// Basis functions on explicit matrices
// ---------------------------------------------------------------------------

// The twist matrix of a given size: J (antidiagonal ones) or J~.
CMatrix twist_matrix(Twist twist, int n);

// Literal product of traces over the cycles of the class: along each cycle the
// factors (x_i - A)^{-1} (transposed when s_i = -1) and (y_j - B)^{-1}
// (transposed when t_j = -1), with a twist matrix inserted between consecutive
// factors whose signs differ; length-one cycles carry the additive term
// t(j) (J) or 1 (J~).
cd basis_eval(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A, const CMatrix& B,
              Twist twist);

// G = prod_k (add * delta_{R_k,1} + tr prod_l (s x - A)^{-1} (t y - B)^{-1}).
cd untwisted_product(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A,
                     const CMatrix& B, double additive = 1.0);

// basis_eval = literal_basis_sign * untwisted_product on twist-antisymmetric
// arguments: Pi(s) Pi(t) for J, and Pi(s) Pi(t) (-1)^{N/2} for J~ where N is
// the number of twist insertions.
int literal_basis_sign(const TetradClass& c, Twist twist);

// Normalisation for which the recursion matrices act exactly:
// Pi(s) Pi(t) for J, +1 for J~.
int recursion_basis_sign(const TetradClass& c, Twist twist);

// recursion_basis_sign * untwisted_product.
cd basis_eval_recursive(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A,
                        const CMatrix& B, Twist twist, double additive = 1.0);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

// Haar-distributed real orthogonal n x n matrix (QR with sign-corrected R).
RMatrix haar_orthogonal(int n, Rng& rng);
RMatrix haar_orthogonal(int n, std::uint64_t seed);

// Haar-distributed element of Sp(2m) = USp(2m) in its 2m x 2m complex
// representation; quaternionic Gram-Schmidt, then the block map
// a + bi + cj + dk -> [[a - id, -c - ib], [c - ib, a + id]].
CMatrix haar_symplectic(int m, Rng& rng);
CMatrix haar_symplectic(int m, std::uint64_t seed);

// 2x2 complex image of the quaternion a + bi + cj + dk.
Eigen::Matrix2cd quaternion_block(double a, double b, double c, double d);

// Strictly upper triangular twist-antisymmetric Gaussian matrix (2 gamma = 1):
// independent entries T_ij (i < j, i + j < n + 1 for J, i + j <= n + 1 for J~)
// complex Gaussian with E|T_ij|^2 = 1, except 2 on the J~ antidiagonal; mirror
// entries T_{n+1-j, n+1-i} = -kappa T_ij with kappa = 1 (J) or eps_i eps_j (J~).
CMatrix sample_triangular(Twist twist, int n, Rng& rng);
CMatrix sample_triangular(Twist twist, int n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Monte Carlo estimators
// ---------------------------------------------------------------------------

struct McEstimate {
  cd mean;
  double std_error;
  std::int64_t samples;
  std::uint64_t seed;
};

struct McVectorEstimate {
  CVector mean;
  Eigen::VectorXd std_error;
  std::int64_t samples;
  std::uint64_t seed;

  McEstimate component(Eigen::Index k) const { return {mean(k), std_error(k), samples, seed}; }
};

// Fixed shard layout: shard k draws from stream k of the seed, and shard
// results are merged in index order, so estimates do not depend on threading.
inline constexpr int kDefaultShards = 8;

struct McOptions {
  int shards = kDefaultShards;
  int threads = kDefaultShards;
};

// Mean of exp(-gamma tr(X^a Omega Y^a Omega^{-1})) over Haar Omega.
McEstimate mc_group_partition(const GroupSpectrum& x, const GroupSpectrum& y, double gamma,
                              std::int64_t samples, std::uint64_t seed, McOptions opt = {});

// The group-side observable: Pi(s) Pi(t) G for O families, G for Sp.
cd group_observable(const TetradClass& c, const SpectralPoints& pts, const CMatrix& A,
                    const CMatrix& B, Family family, double additive = 1.0);

// Ratio estimator mean[F w] / mean[w], w = exp(-gamma tr(...)), for every class;
// standard errors by the delta method (see README).
McVectorEstimate mc_group_correlator(const GroupSpectrum& x, const GroupSpectrum& y,
                                     const SpectralPoints& pts,
                                     const std::vector<TetradClass>& classes, double gamma,
                                     std::int64_t samples, std::uint64_t seed,
                                     McOptions opt = {}, double additive = 1.0);

// Mean of basis_eval_recursive(c, pts, iJX + T, iJY + T^dagger) over the triangular ensemble.
McVectorEstimate mc_triangular_expectation(Twist twist, int n, const std::vector<double>& x_eigs,
                                           const std::vector<double>& y_eigs,
                                           const SpectralPoints& pts,
                                           const std::vector<TetradClass>& classes,
                                           std::int64_t samples, std::uint64_t seed,
                                           McOptions opt = {});

// ---------------------------------------------------------------------------
// Wick pairings
// ---------------------------------------------------------------------------

// T_ij (dagger = false) or (T^dagger)_ij = conj(T_ji) (dagger = true), 1-based.
struct WickSymbol {
  bool dagger;
  int i;
  int j;
};

// <T_ij T^dagger_kl> from the sampler's entry map (independent variance times
// the mirror coefficients).
cd propagator_from_entries(Twist twist, int n, int i, int j, int k, int l);

// <T_ij T^dagger_kl> from the closed table: delta_il delta_jk (1 + b delta_{i+j,n+1})
// for i < j, plus the mirror term -Jt_{k,n+1-k} Jt_{l,n+1-l} when
// (k, l) = (n+1-i, n+1-j), with b = -1 (J) or +1 (J~) and Jt the twist matrix.
cd propagator_table(Twist twist, int n, int i, int j, int k, int l);

// Exact Gaussian moment of a word of even length <= 8 as the sum over pairings.
cd wick_enumerate(const std::vector<WickSymbol>& word, Twist twist, int n);

// Monte Carlo estimate of the same moment.
McEstimate mc_moment(const std::vector<WickSymbol>& word, Twist twist, int n,
                     std::int64_t samples, std::uint64_t seed, McOptions opt = {});

} // namespace orthosym
