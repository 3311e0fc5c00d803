#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace measrep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Permutation of {0..n-1} acting on vectors by (P x)_i = x[perm[i]];
/// the matrix P has P(i, perm[i]) = 1.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation inverse(const Permutation& perm);
/// (P * Q) as permutations: (PQ x)_i = x[q[p[i]]].
Permutation compose(const Permutation& p, const Permutation& q);

Vector apply(const Permutation& perm, const Vector& x);
/// P A P^T, i.e. entry (i, j) is a(perm[i], perm[j]).
Matrix conjugate(const Permutation& perm, const Matrix& a);
Matrix permutation_matrix(const Permutation& perm);

/// Calls `visit` with every permutation of order n in lexicographic order.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit);

/// All permutations with P p = p (entries compared within 1e-12).
std::vector<Permutation> stabilizer_permutations(const Vector& p);

std::size_t factorial(int n);

}  // namespace measrep
