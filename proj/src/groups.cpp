#include "orthosym/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orthosym {

GroupFamily::GroupFamily(Family t, int r) : tag(t), rank(r) {
  if (r < 1) throw InvalidArgument("group rank must be positive");
}

int GroupFamily::matrix_size() const {
  switch (tag) {
  case Family::OEven: return 2 * rank;
  case Family::OOdd: return 2 * rank + 1;
  case Family::Sp: return 2 * rank;
  case Family::U: return rank;
  }
  return 0;
}

std::string GroupFamily::name() const {
  switch (tag) {
  case Family::OEven: return "O(" + std::to_string(2 * rank) + ")";
  case Family::OOdd: return "O(" + std::to_string(2 * rank + 1) + ")";
  case Family::Sp: return "Sp(" + std::to_string(2 * rank) + ")";
  case Family::U: return "U(" + std::to_string(rank) + ")";
  }
  return "?";
}

std::string family_name(Family f) {
  switch (f) {
  case Family::OEven: return "o-even";
  case Family::OOdd: return "o-odd";
  case Family::Sp: return "sp";
  case Family::U: return "u";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "o-even") return Family::OEven;
  if (s == "o-odd") return Family::OOdd;
  if (s == "sp") return Family::Sp;
  if (s == "u") return Family::U;
  throw InvalidArgument("unknown family '" + s + "' (expected o-even, o-odd, sp, u)");
}

GroupSpectrum::GroupSpectrum(GroupFamily family, std::vector<double> eigenvalues)
    : family_(family), eig_(std::move(eigenvalues)) {
  if (static_cast<int>(eig_.size()) != family_.rank)
    throw InvalidArgument("spectrum length " + std::to_string(eig_.size()) +
                          " does not match rank " + std::to_string(family_.rank));
  for (double v : eig_)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite eigenvalue");

  const bool zero_forbidden = family_.tag == Family::OOdd || family_.tag == Family::Sp;
  for (std::size_t i = 0; i < eig_.size(); ++i) {
    if (zero_forbidden && std::abs(eig_[i]) < kCoincidenceTol)
      throw SingularSpectrum("zero eigenvalue X_" + std::to_string(i + 1) + " for " +
                             family_.name());
    for (std::size_t j = i + 1; j < eig_.size(); ++j) {
      double a = eig_[i], b = eig_[j];
      bool coincident;
      if (family_.tag == Family::U) {
        coincident = std::abs(a - b) < kCoincidenceTol * std::max({1.0, std::abs(a), std::abs(b)});
      } else {
        coincident = std::abs(a * a - b * b) < kCoincidenceTol * std::max({1.0, a * a, b * b});
      }
      if (coincident)
        throw SingularSpectrum("coincident eigenvalues X_" + std::to_string(i + 1) + ", X_" +
                               std::to_string(j + 1));
    }
  }
}

double generalized_vandermonde(const GroupSpectrum& spec) {
  const auto& x = spec.eigenvalues();
  const int m = spec.size();
  double d = 1.0;
  if (spec.family().tag == Family::U) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) d *= x[i] - x[j];
    return d;
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) d *= x[i] * x[i] - x[j] * x[j];
  if (spec.family().tag != Family::OEven)
    for (int i = 0; i < m; ++i) d *= x[i];
  return d;
}

int permutation_sign(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::vector<WeylElement> weyl_elements(const GroupFamily& family) {
  if (family.tag == Family::U)
    throw InvalidArgument("weyl_elements: U family is handled by the HCIZ formula");
  const int m = family.rank;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<WeylElement> out;
  do {
    const int eps = permutation_sign(perm);
    for (int mask = 0; mask < (1 << m); ++mask) {
      WeylElement w{perm, std::vector<int>(static_cast<std::size_t>(m), 1), eps};
      int prod = 1;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) {
          w.signs[static_cast<std::size_t>(i)] = -1;
          prod = -prod;
        }
      if (family.tag != Family::OEven) w.weight *= prod;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CMatrix j_diagonal(const std::vector<cd>& z, int n) {
  const int m = static_cast<int>(z.size());
  if (n != 2 * m && n != 2 * m + 1)
    throw InvalidArgument("j_diagonal: size must be 2m or 2m+1");
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    d(i, i) = z[static_cast<std::size_t>(i)];
    d(n - 1 - i, n - 1 - i) = -z[static_cast<std::size_t>(i)];
  }
  return d;
}

CMatrix embed(const GroupSpectrum& spec, EmbedKind kind) {
  const auto tag = spec.family().tag;
  const int m = spec.size();
  const int n = spec.family().matrix_size();
  if (tag == Family::U) throw InvalidArgument("embed: U spectra have no Cartan embedding here");
  switch (kind) {
  case EmbedKind::RealAntisymmetricBlocks: {
    if (tag == Family::Sp) throw InvalidArgument("embed: real blocks need an orthogonal family");
    CMatrix a = CMatrix::Zero(n, n);
    for (int i = 0; i < m; ++i) {
      a(2 * i, 2 * i + 1) = spec[i];
      a(2 * i + 1, 2 * i) = -spec[i];
    }
    return a;
  }
  case EmbedKind::JDiagonal: {
    std::vector<cd> z(spec.eigenvalues().begin(), spec.eigenvalues().end());
    return j_diagonal(z, n);
  }
  case EmbedKind::Quaternionic: {
    if (tag != Family::Sp) throw InvalidArgument("embed: quaternionic kind needs the Sp family");
    CMatrix a = CMatrix::Zero(n, n);
    for (int i = 0; i < m; ++i) {
      a(2 * i, 2 * i + 1) = -spec[i];
      a(2 * i + 1, 2 * i) = spec[i];
    }
    return a;
  }
  }
  throw InvalidArgument("embed: unknown kind");
}

CMatrix j_matrix(int n) {
  if (n < 1) throw InvalidArgument("j_matrix: size must be positive");
  CMatrix j = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

CMatrix jtilde_matrix(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("jtilde_matrix: size must be even");
  const int m = n / 2;
  CMatrix j = CMatrix::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    j(i, n - 1 - i) = 1.0;
    j(m + i, m - 1 - i) = -1.0;
  }
  return j;
}

} // namespace orthosym
