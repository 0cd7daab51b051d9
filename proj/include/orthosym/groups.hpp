#pragma once

#include "orthosym/common.hpp"

#include <string>
#include <vector>

namespace orthosym {

enum class Family { OEven, OOdd, Sp, U };

// A compact group family together with its rank parameter:
// O(2m), O(2m+1), Sp(2m) (given by m) or U(n) (given by n).
struct GroupFamily {
  Family tag;
  int rank;

  GroupFamily(Family tag, int rank);

  // Size of the matrices the group acts on: 2m, 2m+1, 2m (complex rep), n.
  int matrix_size() const;
  std::string name() const;
};

std::string family_name(Family f);
Family parse_family(const std::string& s);

// The m real "eigenvalues" X_1..X_m of a Cartan element, validated at
// construction against coincidences (and zeros where the family forbids them).
class GroupSpectrum {
public:
  GroupSpectrum(GroupFamily family, std::vector<double> eigenvalues);

  const GroupFamily& family() const { return family_; }
  const std::vector<double>& eigenvalues() const { return eig_; }
  int size() const { return static_cast<int>(eig_.size()); }
  double operator[](int i) const { return eig_[static_cast<std::size_t>(i)]; }

private:
  GroupFamily family_;
  std::vector<double> eig_;
};

// prod_{i<j}(X_i^2 - X_j^2) for O-even; times prod_i X_i for O-odd and Sp;
// prod_{i<j}(X_i - X_j) for U.
double generalized_vandermonde(const GroupSpectrum& spec);

// Element of the Weyl group S_m x Z_2^m: X_i pairs with signs[i] * Y_{perm[i]}.
// perm is 0-based one-line notation.
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> signs;
  int weight;
};

// All 2^m m! elements; weight eps_tau (O-even) or eps_tau * prod t (O-odd, Sp).
std::vector<WeylElement> weyl_elements(const GroupFamily& family);

int permutation_sign(const std::vector<int>& perm);

enum class EmbedKind { RealAntisymmetricBlocks, JDiagonal, Quaternionic };

// Concrete matrix realisation of a Cartan element.
//  - RealAntisymmetricBlocks: blocks [[0, X_i], [-X_i, 0]] (plus a trailing 0 for O-odd).
//  - JDiagonal: diag(X_1..X_m, [0], -X_m..-X_1).
//  - Quaternionic: 2x2 blocks X_i * [[0, -1], [1, 0]], the image of X_i e_2.
CMatrix embed(const GroupSpectrum& spec, EmbedKind kind);

// diag(Z_1..Z_m, [0], -Z_m..-Z_1) of size n (n = 2m or 2m+1).
CMatrix j_diagonal(const std::vector<cd>& z, int n);

// Antidiagonal ones matrix J of size n.
CMatrix j_matrix(int n);
// [[0, J_m], [-J_m, 0]] of size n = 2m.
CMatrix jtilde_matrix(int n);

} // namespace orthosym
