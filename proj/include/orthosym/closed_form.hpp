#pragma once

#include "orthosym/groups.hpp"

namespace orthosym {

struct PartitionResult {
  double value;
  GroupFamily family;
  double gamma;
};

// Normalised group integral of exp(-gamma tr(X^a Omega Y^a Omega^{-1})):
//   O-even: K_{2m} det(2 cosh 2g X_i Y_j) / (Delta(X) Delta(Y))
//   O-odd : K_{2m+1} det(2 sinh 2g X_i Y_j) / (Delta(X) Delta(Y))
//   Sp    : K~_{2m} det(2 sinh 2g X_i Y_j) / (Delta(X) Delta(Y))
//   U     : prod_{p<n} p! det(exp(-g X_i Y_j)) / ((-g)^{n(n-1)/2} Delta(X) Delta(Y))
// with constants fixed so that the gamma -> 0 limit is exactly 1
// (see normalized_k_constant).
PartitionResult partition(const GroupSpectrum& x, const GroupSpectrum& y, double gamma);

// The same determinant expression written as the explicit signed Weyl sum
//   sum_{tau,t} weight * exp(2g sum_i X_i t_i Y_tau(i)).
double partition_weyl_sum(const GroupSpectrum& x, const GroupSpectrum& y, double gamma);

// Constants exactly as printed in the closed-form displays:
//   K_{2m}   = prod_{j=1}^{m-1} (2j)! / (2^m g^{m(m-1)})
//   K_{2m+1} = prod_{j=1}^{m} (2j-1)! / (2^m g^{m^2})
//   K~_{2m}  = 2^{-(m^2+2m)} prod_{j=1}^{m} (2j-1)! / 2^m
double k_constant(const GroupFamily& family, double gamma);

// Constants that make partition() tend to 1 as gamma -> 0:
//   K_{2m}   = prod_{k=0}^{m-1} (2k)!   / (2^m (2g)^{m(m-1)})
//   K_{2m+1} = K~_{2m} = prod_{k=0}^{m-1} (2k+1)! / (2^m (2g)^{m^2})
double normalized_k_constant(const GroupFamily& family, double gamma);

// c_n = 2^{n(n-1)/2} / (4^m m! Jac^O_n);  c~_{2m} = 1 / (2^m m! Jac^Sp_{2m} 4^m).
double c_constant(const GroupFamily& family);

// Gaussian volume of the strictly upper triangular J (or J~) antisymmetric
// matrices: (pi/2g)^{m(m-1)} (n = 2m), (pi/2g)^{m^2} (n = 2m+1), 2^m (pi/2g)^{m^2} (J~).
double triangular_gaussian_volume(const GroupFamily& family, double gamma);

enum class JacobianKind { O, Sp, UJ, UJTilde };

// Printed closed forms of the change-of-variable Jacobians.
double jacobian(JacobianKind kind, int size);

// Laguerre limit of the Selberg integral at gamma-parameter 1:
//   prod_{j=0}^{n-1} Gamma(2 + j) Gamma(a + j) / Gamma(2).
double selberg_laguerre(double a, int n);

// Factorial closed forms of I(1/2, 1, m) and I(3/2, 1, m).
double selberg_half_closed_form(int m);
double selberg_three_halves_closed_form(int m);

double factorial(int k);

} // namespace orthosym
