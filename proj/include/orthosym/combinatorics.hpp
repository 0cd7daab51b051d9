#pragma once

#include "orthosym/common.hpp"

#include <string>
#include <utility>
#include <vector>

namespace orthosym {

// Permutation of {1..N} in one-line notation: perm[i-1] = image of i.
using Perm = std::vector<int>;

inline constexpr int kDefaultRMax = 3;

// {sigma, tau, s, t}: sigma, tau permutations of {1..R} (one-line, 1-based),
// s signs attached to black (x-type) vertices, t signs to white (y-type) ones.
struct Tetrad {
  Perm sigma;
  Perm tau;
  std::vector<int> s;
  std::vector<int> t;

  int rank() const { return static_cast<int>(sigma.size()); }
  bool operator==(const Tetrad&) const = default;
};

// One cycle of sigma o tau^{-1}: pairs (i_l, j_l) with sigma(i_l) = j_l and
// tau^{-1}(j_l) = i_{l+1}, starting at its smallest black index.
using TetradCycle = std::vector<std::pair<int, int>>;

struct TetradClass {
  Tetrad canonical;
  std::vector<TetradCycle> cycles;
  Perm perm2R;
};

// Signed relabelling alpha(i) = i for i <= R, i - (2R+1) for i > R.
int signed_label(int i, int R);
// Position carrying a signed label: inverse of signed_label.
int label_position(int a, int R);
// Rainbow involution e(i) = 2R + 1 - i, so that alpha(e(i)) = -alpha(i).
int rainbow(int i, int R);

// Validates that sigma, tau are bijections and sign vectors have entries +-1.
void validate_tetrad(const Tetrad& t);

// Cycles of sigma o tau^{-1}, each opened at the smallest unused black index.
std::vector<TetradCycle> tetrad_cycles(const Tetrad& t);

// Flips signs cycle by cycle so the smallest black index of each cycle has s = +1.
Tetrad canonicalize(const Tetrad& raw);

// pi as the signed edge set {s_i i -> t_sigma(i) sigma(i), -s_i i -> -t_tau(i) tau(i)}
// of the canonical representative.
Perm tetrad_to_perm(const Tetrad& t);

// Iterative construction: s(|a(i)|) = sgn a(i), sigma(|a(i)|) = |a(pi(i))|,
// t(|a(j)|) = sgn a(j), tau^{-1}(|a(j)|) = |a(k)| with k = e pi^{-1} e(j).
TetradClass perm_to_tetrad(const Perm& pi);

// All (2R)! classes in lexicographic order of their permutation pi.
std::vector<TetradClass> enumerate_classes(int R, int r_max = kDefaultRMax);

// Index of pi in the lexicographic enumeration of S_N.
std::size_t perm_rank(const Perm& pi);

bool is_permutation(const Perm& p);
Perm inverse(const Perm& p);
Perm compose(const Perm& a, const Perm& b); // (a o b)(i) = a(b(i))
std::string perm_to_string(const Perm& p);
std::string cycle_notation(const Perm& p);
std::string signs_to_string(const std::vector<int>& s);

} // namespace orthosym
