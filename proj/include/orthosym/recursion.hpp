#pragma once

#include "orthosym/combinatorics.hpp"
#include "orthosym/groups.hpp"

#include <optional>

namespace orthosym {

// Resolvent arguments {x_1..x_R}, {y_1..y_R}.
struct SpectralPoints {
  std::vector<cd> x;
  std::vector<cd> y;

  int rank() const { return static_cast<int>(x.size()); }
  void validate() const;
};

// Which antisymmetry the triangular ensemble carries: J (orthogonal) or J~ (symplectic).
enum class Twist { J, JTilde };

std::string twist_name(Twist t);
Twist twist_for(Family f);

// (v_1..v_R, -v_R..-v_1): value at position p is sgn(alpha(p)) v_{|alpha(p)|}.
std::vector<cd> doubled_points(const std::vector<cd>& v);

// Recursion matrix over tetrad classes. Entry (c, c') is the product over the
// 2R signed black vertices a = +-i of
//   delta(edge of c at a, edge of c' at a) + 1/(a x_i + alpha) * 1/(b y_j + beta),
// where the edge of c leaving s_i i lands on t_sigma(i) sigma(i) and the edge
// leaving -s_i i lands on -t_tau(i) tau(i), and b y_j is the signed target.
// For class pairs with equal s this is the two-product tetrad formula
// (delta_sigma delta_s delta_t + ...)(delta_tau delta_s delta_t + ...).
// The matrix is exactly symmetric and matrices at different (alpha, beta) commute.
CMatrix recursion_matrix_bar(const std::vector<TetradClass>& classes, const SpectralPoints& pts,
                             cd alpha, cd beta);
CMatrix recursion_matrix_bar(int R, const SpectralPoints& pts, cd alpha, cd beta);

// Unitary recursion matrix over S_{2R} in lexicographic order:
//   prod_i (delta_{pi(i), pi'(i)} + 1/(x_i - xi) * 1/(y_{pi(i)} - eta)).
CMatrix recursion_matrix_unitary(const std::vector<cd>& x2R, const std::vector<cd>& y2R, cd xi,
                                 cd eta);

enum class InitialKind { EvenJ, EvenJTilde, OddJ };

// I_0^J = Pi(s) Pi(t) delta_{sigma,tau}; I_0^J~ = delta_{sigma,tau};
// I_1^J = prod_k (t(j_{k,1}) delta_{R_k,1} + prod_l 1/(x_{i_{k,l}} y_{j_{k,l}})).
CVector initial_condition(InitialKind kind, const std::vector<TetradClass>& classes,
                          const std::optional<SpectralPoints>& pts = std::nullopt);

// Expectation of the basis over the Gaussian triangular ensemble (2 gamma = 1):
//   prod_k Mbar(pts, i X_k, i Y_k) * I,  I = I_0 (n even) or I_1 (n odd, J only).
CVector triangular_expectation(Twist twist, int n, const std::vector<double>& x_eigs,
                               const std::vector<double>& y_eigs, const SpectralPoints& pts,
                               const std::vector<TetradClass>& classes);

// Matrix-valued determinant sum_sigma (-1)^sigma prod_i M_{i, sigma(i)} of a
// grid of pairwise commuting square matrices.
CMatrix mdet(const std::vector<std::vector<CMatrix>>& grid);

// Normalised correlation vector over O(2m), O(2m+1) or Sp(2m) at gamma = 1/2:
//   Mdet(e^{2g X_k Y_j} Mbar(iX_k, iY_j) +- e^{-2g X_k Y_j} Mbar(iX_k, -iY_j)) I
//   / det(2 cosh | 2 sinh (2g X_k Y_j)).
CVector correlator_vector(const GroupSpectrum& x, const GroupSpectrum& y,
                          const SpectralPoints& pts, double gamma,
                          const std::vector<TetradClass>& classes);

// The same quantity as an explicit sum over t in Z_2^m of single Mdets.
CVector correlator_vector_weyl_sum(const GroupSpectrum& x, const GroupSpectrum& y,
                                   const SpectralPoints& pts, double gamma,
                                   const std::vector<TetradClass>& classes);

// General gamma through the rescaling (X, Y, x, y) -> sqrt(2 gamma) (X, Y, x, y).
// The result is the correlation vector of the gamma-adapted basis whose
// length-one cycles carry the additive constant 2 gamma (times t for O):
//   (2 gamma)^R * correlator_vector(scaled arguments, gamma = 1/2).
// At gamma = 1/2 this coincides with correlator_vector.
CVector correlator_vector_rescaled(const GroupSpectrum& x, const GroupSpectrum& y,
                                   const SpectralPoints& pts, double gamma,
                                   const std::vector<TetradClass>& classes);

} // namespace orthosym
