#include "measrep/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace measrep {

Permutation identity_permutation(int n) {
  Permutation perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

Permutation inverse(const Permutation& perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  return inv;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<std::size_t>(p[i])];
  return r;
}

Vector apply(const Permutation& perm, const Vector& x) {
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = x(perm[static_cast<std::size_t>(i)]);
  return y;
}

Matrix conjugate(const Permutation& perm, const Matrix& a) {
  const auto n = a.rows();
  Matrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = a(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return b;
}

Matrix permutation_matrix(const Permutation& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return m;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
  Permutation perm = identity_permutation(n);
  do {
    visit(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<Permutation> stabilizer_permutations(const Vector& p) {
  std::vector<Permutation> out;
  for_each_permutation(static_cast<int>(p.size()), [&](const Permutation& perm) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (std::abs(p(perm[static_cast<std::size_t>(i)]) - p(i)) > 1e-12) return;
    }
    out.push_back(perm);
  });
  return out;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

}  // namespace measrep
