#include "orthosym/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace orthosym {

namespace {

int sgn(int a) { return a > 0 ? 1 : -1; }

std::size_t idx(int one_based) { return static_cast<std::size_t>(one_based - 1); }

} // namespace

int signed_label(int i, int R) {
  if (i < 1 || i > 2 * R) throw InvalidArgument("signed_label: index out of range");
  return i <= R ? i : i - (2 * R + 1);
}

int label_position(int a, int R) {
  if (a == 0 || a > R || a < -R) throw InvalidArgument("label_position: label out of range");
  return a > 0 ? a : a + 2 * R + 1;
}

int rainbow(int i, int R) {
  if (i < 1 || i > 2 * R) throw InvalidArgument("rainbow: index out of range");
  return 2 * R + 1 - i;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[idx(v)]) return false;
    seen[idx(v)] = true;
  }
  return true;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[idx(p[i])] = static_cast<int>(i + 1);
  return q;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[idx(b[i])];
  return c;
}

void validate_tetrad(const Tetrad& t) {
  const std::size_t R = t.sigma.size();
  if (R == 0) throw InvalidArgument("tetrad: rank must be positive");
  if (t.tau.size() != R || t.s.size() != R || t.t.size() != R)
    throw InvalidArgument("tetrad: sigma, tau, s, t must have equal length");
  if (!is_permutation(t.sigma) || !is_permutation(t.tau))
    throw InvalidArgument("tetrad: sigma and tau must be permutations of 1..R");
  for (std::size_t i = 0; i < R; ++i)
    if ((t.s[i] != 1 && t.s[i] != -1) || (t.t[i] != 1 && t.t[i] != -1))
      throw InvalidArgument("tetrad: signs must be +1 or -1");
}

std::vector<TetradCycle> tetrad_cycles(const Tetrad& t) {
  validate_tetrad(t);
  const int R = t.rank();
  const Perm tau_inv = inverse(t.tau);
  std::vector<bool> used(static_cast<std::size_t>(R), false);
  std::vector<TetradCycle> cycles;
  for (int start = 1; start <= R; ++start) {
    if (used[idx(start)]) continue;
    TetradCycle c;
    int i = start;
    do {
      used[idx(i)] = true;
      const int j = t.sigma[idx(i)];
      c.emplace_back(i, j);
      i = tau_inv[idx(j)];
    } while (i != start);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

Tetrad canonicalize(const Tetrad& raw) {
  Tetrad out = raw;
  for (const auto& cyc : tetrad_cycles(raw)) {
    if (raw.s[idx(cyc.front().first)] == 1) continue;
    for (const auto& [i, j] : cyc) {
      out.s[idx(i)] = -out.s[idx(i)];
      out.t[idx(j)] = -out.t[idx(j)];
    }
  }
  return out;
}

Perm tetrad_to_perm(const Tetrad& raw) {
  const Tetrad t = canonicalize(raw);
  const int R = t.rank();
  Perm pi(static_cast<std::size_t>(2 * R), 0);
  for (int i = 1; i <= R; ++i) {
    const int si = t.s[idx(i)];
    const int sg = t.sigma[idx(i)];
    const int ta = t.tau[idx(i)];
    pi[idx(label_position(si * i, R))] = label_position(t.t[idx(sg)] * sg, R);
    pi[idx(label_position(-si * i, R))] = label_position(-t.t[idx(ta)] * ta, R);
  }
  return pi;
}

TetradClass perm_to_tetrad(const Perm& pi) {
  if (pi.empty() || pi.size() % 2 != 0 || !is_permutation(pi))
    throw InvalidArgument("perm_to_tetrad: expected a permutation of 1..2R");
  const int R = static_cast<int>(pi.size() / 2);
  const Perm pinv = inverse(pi);
  Tetrad t{Perm(idx(R + 1), 0), Perm(idx(R + 1), 0), std::vector<int>(idx(R + 1), 0),
           std::vector<int>(idx(R + 1), 0)};
  Perm tau_inv(idx(R + 1), 0);
  std::vector<bool> used(idx(R + 1), false);
  std::vector<TetradCycle> cycles;
  int n_used = 0;
  while (n_used < R) {
    int start = 1;
    while (used[idx(start)]) ++start;
    TetradCycle cyc;
    int i = start;
    while (true) {
      const int a = signed_label(i, R);
      const int b = std::abs(a);
      if (used[idx(b)]) throw InvalidArgument("perm_to_tetrad: inconsistent cycle structure");
      used[idx(b)] = true;
      ++n_used;
      t.s[idx(b)] = sgn(a);
      const int j = pi[idx(i)];
      const int aj = signed_label(j, R);
      t.sigma[idx(b)] = std::abs(aj);
      t.t[idx(std::abs(aj))] = sgn(aj);
      cyc.emplace_back(b, std::abs(aj));
      const int k = rainbow(pinv[idx(rainbow(j, R))], R);
      const int ak = signed_label(k, R);
      tau_inv[idx(std::abs(aj))] = std::abs(ak);
      if (std::abs(ak) == start) {
        if (sgn(ak) != 1) throw InvalidArgument("perm_to_tetrad: cycle closes with wrong sign");
        break;
      }
      i = k;
    }
    cycles.push_back(std::move(cyc));
  }
  t.tau = inverse(tau_inv);
  return TetradClass{t, std::move(cycles), pi};
}

std::vector<TetradClass> enumerate_classes(int R, int r_max) {
  if (R < 1) throw InvalidArgument("enumerate_classes: R must be positive");
  if (R > r_max)
    throw RankTooLarge("enumerate_classes: R = " + std::to_string(R) + " exceeds R_max = " +
                       std::to_string(r_max));
  Perm pi(static_cast<std::size_t>(2 * R));
  std::iota(pi.begin(), pi.end(), 1);
  std::vector<TetradClass> out;
  do {
    out.push_back(perm_to_tetrad(pi));
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

std::size_t perm_rank(const Perm& pi) {
  if (!is_permutation(pi)) throw InvalidArgument("perm_rank: not a permutation");
  std::size_t rank = 0;
  std::set<int> remaining;
  for (std::size_t i = 1; i <= pi.size(); ++i) remaining.insert(static_cast<int>(i));
  std::size_t fact = 1;
  for (std::size_t i = 2; i < pi.size(); ++i) fact *= i;
  for (std::size_t pos = 0; pos < pi.size(); ++pos) {
    const auto it = remaining.find(pi[pos]);
    const auto smaller = static_cast<std::size_t>(std::distance(remaining.begin(), it));
    rank += smaller * fact;
    remaining.erase(it);
    const std::size_t left = pi.size() - pos - 1;
    if (left > 0) fact /= left;
  }
  return rank;
}

std::string perm_to_string(const Perm& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

std::string cycle_notation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    if (seen[idx(static_cast<int>(i))]) continue;
    out += "(";
    int j = static_cast<int>(i);
    bool first = true;
    while (!seen[idx(j)]) {
      seen[idx(j)] = true;
      if (!first) out += ",";
      out += std::to_string(j);
      first = false;
      j = p[idx(j)];
    }
    out += ")";
  }
  return out;
}

std::string signs_to_string(const std::vector<int>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i] > 0 ? "+" : "-";
  }
  return out + ")";
}

} // namespace orthosym
