#pragma once

// Bundled algebras. The Vec ones give every predicate a failing input.

#include "modcat/algebra.hpp"
#include "modcat/bundled.hpp"

namespace modcat::bundled {

namespace detail {

// Structure constants on n copies of the unit: m(e_i (x) e_j) = sum_k c[i][j][k] e_k.
inline AlgebraPresentation vec_algebra(const Category& C, std::string name, int n,
                                       const std::function<Complex(int, int, int)>& c, const std::vector<Complex>& unit,
                                       const std::vector<Complex>& counit) {
  const Object A = C.atomic({n});
  Matrix m = Matrix::Zero(n, n * n), eta(n, 1), eps(1, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, i * n + j) = c(i, j, k);
  for (int i = 0; i < n; ++i) {
    eta(i, 0) = unit[i];
    eps(0, i) = counit[i];
  }
  AlgebraPresentation a;
  a.name = std::move(name);
  a.A = A;
  a.m = C.make(A * A, A, {m});
  a.eta = C.make(C.unit(), A, {eta});
  a.eps = C.make(A, C.unit(), {eps});
  return solve_coalgebra(C, a);
}

}  // namespace detail

/// C (+) C with componentwise product: commutative, special, neither haploid nor simple.
inline AlgebraPresentation direct_sum_unit(const Category& C) {
  return detail::vec_algebra(
      C, "direct_sum", 2, [](int i, int j, int k) { return Complex(i == j && j == k ? 1.0 : 0.0); }, {1.0, 1.0},
      {1.0, 1.0});
}

/// C[x]/(x^2) with eps(x) = 1: commutative symmetric Frobenius, not special.
inline AlgebraPresentation dual_numbers(const Category& C) {
  return detail::vec_algebra(
      C, "dual_numbers", 2, [](int i, int j, int k) { return Complex(i + j == k ? 1.0 : 0.0); }, {1.0, 0.0},
      {0.0, 1.0});
}

/// 2x2 matrices, End(C^2).
inline AlgebraPresentation matrix2(const Category& C) { return endomorphism_algebra(C, C.atomic({2}), "matrix2"); }

/// 2x2 matrices with eps(x) = eps_tr(D x) for the non-central D = 1 + e/2, e the first
/// basis element: Frobenius, not symmetric.
inline AlgebraPresentation matrix2_twisted(const Category& C) {
  const AlgebraPresentation a = with_coalgebra(C, matrix2(C));
  Morphism e = C.zero(C.unit(), a.A);
  e.blocks[0](0, 0) = 1.0;
  const Morphism D = a.eta + 0.5 * e;
  AlgebraPresentation t;
  t.name = "matrix2_twisted";
  t.A = a.A;
  t.m = a.m;
  t.eta = a.eta;
  t.eps = C.compose_all({*a.eps, a.m, C.tensor(D, C.identity(a.A))});
  return solve_coalgebra(C, t);
}

/// End(U_i) for a simple label i.
inline AlgebraPresentation end_simple(const Category& C, int i) {
  return endomorphism_algebra(C, C.simple(i), "end_" + C.ring().name(i));
}

}  // namespace modcat::bundled
