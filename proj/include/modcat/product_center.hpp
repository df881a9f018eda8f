#pragma once

// Deligne product C (x) D (optionally with D reversed), the functors T and R, the
// projector P^l, idempotent splitting, left centre and full centre.

#include "modcat/algebra.hpp"
#include "modcat/invariants.hpp"

namespace modcat {

/// C (x) D realised as a CategoryData over pair labels (i, j) -> i * rank(D) + j.
/// A vertex (mu, nu) of the factors has multiplicity index mu * N_D + nu.
struct ProductCategory {
  std::shared_ptr<const CategoryData> first;
  std::shared_ptr<const CategoryData> second;
  bool reversed = false;
  std::shared_ptr<const CategoryData> data;

  int pair(int i, int j) const { return i * second->rank() + j; }
  std::pair<int, int> unpair(int k) const { return {k / second->rank(), k % second->rank()}; }
  bool same_factors() const { return first == second || first->name == second->name; }
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

/// C (x) D, or C (x) D_- when reverse_second (braiding and twist of D inverted).
inline ProductCategory deligne_product(std::shared_ptr<const CategoryData> C, std::shared_ptr<const CategoryData> D,
                                       bool reverse_second) {
  const int n1 = C->rank(), n2 = D->rank();
  const auto& N1 = C->ring;
  const auto& N2 = D->ring;
  ProductCategory P;
  P.first = C;
  P.second = D;
  P.reversed = reverse_second;
  auto pr = [n2](int i, int j) { return i * n2 + j; };

  std::vector<Label> labels;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      labels.push_back({pr(i, j), N1.name(i) + "|" + N2.name(j), pr(C->dual(i), D->dual(j)), i == 0 && j == 0});
  CategoryData out;
  out.name = C->name + (reverse_second ? "+|" : "|") + D->name + (reverse_second ? "-" : "");
  out.ring = FusionRing(labels);
  for (int a = 0; a < n1 * n2; ++a)
    for (int b = 0; b < n1 * n2; ++b)
      for (int c = 0; c < n1 * n2; ++c)
        out.ring.set(a, b, c, N1(a / n2, b / n2, c / n2) * N2(a % n2, b % n2, c % n2));

  const int n = n1 * n2;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          FBlock blk;
          blk.rows = f_rows(out.ring, a, b, c, d);
          blk.cols = f_cols(out.ring, a, b, c, d);
          if (blk.rows.empty()) continue;
          const FBlock& F1 = C->f(a / n2, b / n2, c / n2, d / n2);
          const FBlock& F2 = D->f(a % n2, b % n2, c % n2, d % n2);
          // split (e, alpha, beta) of the product into factor vertices
          auto split_row = [&](const Vertex3& v, int l, int r, bool row) {
            const auto [e, al, be] = v;
            const int e1 = e / n2, e2 = e % n2;
            Vertex3 v1, v2;
            if (row) {  // a b -> e, e c -> d
              const int m2a = N2(l % n2, r % n2, e2);
              const int m2b = N2(e2, c % n2, d % n2);
              v1 = {e1, al / m2a, be / m2b};
              v2 = {e2, al % m2a, be % m2b};
            } else {  // b c -> f, a f -> d
              const int m2a = N2(l % n2, r % n2, e2);
              const int m2b = N2(a % n2, e2, d % n2);
              v1 = {e1, al / m2a, be / m2b};
              v2 = {e2, al % m2a, be % m2b};
            }
            return std::make_pair(v1, v2);
          };
          blk.matrix = Matrix(blk.rows.size(), blk.cols.size());
          for (std::size_t i = 0; i < blk.rows.size(); ++i) {
            const auto [r1, r2] = split_row(blk.rows[i], a, b, true);
            const int i1 = F1.row_index(r1), i2 = F2.row_index(r2);
            for (std::size_t j = 0; j < blk.cols.size(); ++j) {
              const auto [c1, c2] = split_row(blk.cols[j], b, c, false);
              blk.matrix(i, j) = F1.matrix(i1, F1.col_index(c1)) * F2.matrix(i2, F2.col_index(c2));
            }
          }
          out.set_f(a, b, c, d, std::move(blk));
        }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (out.ring(a, b, c) == 0) continue;
        const Matrix& R1 = C->r(a / n2, b / n2, c / n2);
        const Matrix R2 = reverse_second ? D->r_inverse(b % n2, a % n2, c % n2) : D->r(a % n2, b % n2, c % n2);
        out.set_r(a, b, c, kron(R1, R2));
      }

  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      out.theta.push_back(C->theta[i] * (reverse_second ? 1.0 / D->theta[j] : D->theta[j]));
      out.dualcoef.push_back(C->dualcoef[i] * D->dualcoef[j]);
    }
  out.dagger = C->dagger && D->dagger;
  out.tol = C->tol;
  out.finalize();
  P.data = std::make_shared<const CategoryData>(std::move(out));
  return P;
}

/// C_+ (x) C_-.
inline ProductCategory doubled(std::shared_ptr<const CategoryData> C) { return deligne_product(C, C, true); }

// ---- T and R ---------------------------------------------------------------------

inline void require_same_factors(const ProductCategory& P) {
  if (!P.same_factors())
    throw Error(ErrorKind::FactorMismatch, "T and R need a product of a category with itself");
}

/// T((+) n_ij U_i x U_j) = (+) n_ij U_i (x) U_j, flattened. Copies of U_k in the
/// result are ordered by (i, j, copy, vertex).
inline Object functor_T(const Category& C, const ProductCategory& P, const Object& X) {
  require_same_factors(P);
  if (!X.is_atomic()) throw Error(ErrorKind::ObjectMismatch, "functor_T expects an atomic object");
  Mult m(C.rank(), 0);
  for (int k = 0; k < P.data->rank(); ++k) {
    const auto [i, j] = P.unpair(k);
    for (int l = 0; l < C.rank(); ++l) m[l] += X.leaf(0)[k] * C.ring()(i, j, l);
  }
  return C.atomic(m);
}

inline Morphism functor_T(const Category& C, const ProductCategory& P, const Morphism& f) {
  const Object S = functor_T(C, P, f.source), T = functor_T(C, P, f.target);
  Morphism out = C.zero(S, T);
  const int n = C.rank();
  // offsets[k][l]: first copy of U_l in T(X) coming from pair label k
  auto offsets = [&](const Object& X) {
    std::vector<Mult> off(P.data->rank(), Mult(n, 0));
    Mult run(n, 0);
    for (int k = 0; k < P.data->rank(); ++k) {
      const auto [i, j] = P.unpair(k);
      for (int l = 0; l < n; ++l) {
        off[k][l] = run[l];
        run[l] += X.leaf(0)[k] * C.ring()(i, j, l);
      }
    }
    return off;
  };
  const auto os = offsets(f.source), ot = offsets(f.target);
  for (int k = 0; k < P.data->rank(); ++k) {
    const auto [i, j] = P.unpair(k);
    const Matrix& fk = f.blocks[k];
    for (int l = 0; l < n; ++l) {
      const int v = C.ring()(i, j, l);
      for (Eigen::Index r = 0; r < fk.rows(); ++r)
        for (Eigen::Index c = 0; c < fk.cols(); ++c)
          for (int mu = 0; mu < v; ++mu) out.blocks[l](ot[k][l] + r * v + mu, os[k][l] + c * v + mu) = fk(r, c);
    }
  }
  return out;
}

/// R(V) = (+)_j (V (x) U_j*) x U_j. Copies of (i, j) are the basis trees of Hom(U_i, V (x) U_j*).
inline Object functor_R(const Category& C, const ProductCategory& P, const Object& V) {
  require_same_factors(P);
  if (!V.is_atomic()) throw Error(ErrorKind::ObjectMismatch, "functor_R expects an atomic object");
  Mult m(P.data->rank(), 0);
  for (int i = 0; i < C.rank(); ++i)
    for (int j = 0; j < C.rank(); ++j) m[P.pair(i, j)] = C.multiplicity(V * C.simple(C.ring().dual(j)), i);
  return Object::atomic(m);
}

/// R(f) = (+)_j (f (x) id_{U_j*}) x id_{U_j}.
inline Morphism functor_R(const Category& C, const ProductCategory& P, const Morphism& f) {
  Morphism out{functor_R(C, P, f.source), functor_R(C, P, f.target), {}};
  out.blocks.resize(P.data->rank());
  for (int i = 0; i < C.rank(); ++i)
    for (int j = 0; j < C.rank(); ++j) {
      const Object jd = C.simple(C.ring().dual(j));
      out.blocks[P.pair(i, j)] = C.tensor(f, C.identity(jd)).blocks[i];
    }
  return out;
}

/// Shared context for computations in C and C_+ (x) C_-.
struct Doubled {
  std::shared_ptr<const Category> C;
  ProductCategory product;
  std::shared_ptr<const Category> P;

  explicit Doubled(std::shared_ptr<const CategoryData> data)
      : C(std::make_shared<Category>(data)), product(doubled(data)), P(std::make_shared<Category>(product.data)) {}
};

namespace detail {

/// phi_x = s_ij (id_V (x) d_j) o (alpha_x (x) id_j) : U_i (x) U_j -> V for copy x of (i, j) in R(V).
/// (d_i d_j)^{1/4}: makes the identification isometric for unitary data, so R and Z
/// of a *-Frobenius algebra are again *-Frobenius.
inline Complex r_copy_scale(const Category& C, int i, int j) {
  return std::pow(C.loop_value(i) * C.loop_value(j), 0.25);
}
inline Morphism r_copy_map(const Category& C, const Object& V, int i, int j, int x) {
  const Object jd = C.simple(C.ring().dual(j)), J = C.simple(j);
  const Morphism alpha = C.tree_embedding(V * jd, i, x);
  return r_copy_scale(C, i, j) * C.compose(C.tensor(C.identity(V), C.ev(J)), C.tensor(alpha, C.identity(J)));
}

/// Inverse of r_copy_map: psi : U_p (x) U_q -> V  |->  block p of (psi (x) id_{q*}) o (id_p (x) b_q).
inline Matrix r_copy_coordinates(const Category& C, const Morphism& psi, int p, int q) {
  const Object Q = C.simple(q), Qd = C.simple(C.ring().dual(q));
  const Morphism a = C.compose(C.tensor(psi, C.identity(Qd)), C.tensor(C.identity(C.simple(p)), C.coev(Q)));
  return a.blocks[p] / r_copy_scale(C, p, q);
}

}  // namespace detail

/// Placement of the braiding in m_{R(A)}: U_{i2} is moved past U_{j1} by c_{i2,j1} or
/// by c_{j1,i2}^{-1}. Under is the default; both variants are exercised by the tests.
enum class RBraid { Over, Under };
inline constexpr RBraid kRBraid = RBraid::Under;

/// Counit normalisation of R(A): eps_{R(A)} = Dim(C) eps_A on the (1,1) copies, so that
/// R(A) is special with beta_{R(A)} = beta_A.
inline Complex r_counit_scale(const Category& C) { return global_dimension(C); }

/// R(A) with m, eta, eps induced from A through the lax structure of R and Delta solved.
inline AlgebraPresentation R_frobenius(const Doubled& Dd, const AlgebraPresentation& a0, RBraid braid = kRBraid) {
  const Category& C = *Dd.C;
  const Category& P = *Dd.P;
  const ProductCategory& PC = Dd.product;
  const AlgebraPresentation a = with_coalgebra(C, a0);
  const int n = C.rank();
  AlgebraPresentation r;
  r.name = "R(" + a.name + ")";
  r.A = functor_R(C, PC, a.A);
  const Object RR = r.A * r.A;
  r.m = P.zero(RR, r.A);

  const auto& rmult = r.A.leaf(0);
  // phi maps per pair label and copy
  std::vector<std::vector<Morphism>> phi(P.rank());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int x = 0; x < rmult[PC.pair(i, j)]; ++x) phi[PC.pair(i, j)].push_back(detail::r_copy_map(C, a.A, i, j, x));

  const WordBasis& bRR = P.decompose(RR);
  for (int k = 0; k < P.rank(); ++k) {
    const auto [p, q] = PC.unpair(k);
    for (int col = 0; col < bRR.size(k); ++col) {
      // (k1, x1, k2, x2, k, M); when R(A) is the unit the strict unit collapses RR to one leaf
      const TreeKey t = r.A.is_unit() ? TreeKey{0, 0, 0, 0, 0, 0} : bRR.trees[k][col];
      const int k1 = t[0], x1 = t[1], k2 = t[2], x2 = t[3], M = t[5];
      const auto [i1, j1] = PC.unpair(k1);
      const auto [i2, j2] = PC.unpair(k2);
      const int nv = C.ring()(j1, j2, q);
      const int mu = M / nv, nu = M % nv;
      const Object I2 = C.simple(i2), J1 = C.simple(j1);
      const Morphism swap = braid == RBraid::Over ? C.braiding(I2, J1) : C.braiding_inv(J1, I2);
      const Morphism mid = C.tensor_all({C.identity(C.simple(i1)), swap, C.identity(C.simple(j2))});
      const Morphism prod = C.compose_all({a.m, C.tensor(phi[k1][x1], phi[k2][x2]), mid});
      const Morphism psi = C.compose(prod, C.tensor(C.vertex(i1, i2, p, mu), C.vertex(j1, j2, q, nu)));
      r.m.blocks[k].col(col) = detail::r_copy_coordinates(C, psi, p, q).col(0);
    }
  }

  r.eta = P.zero(P.unit(), r.A);
  r.eta.blocks[0] = a.eta.blocks[0] * C.duality_scalars(0).b;
  r.eps = P.zero(r.A, P.unit());
  r.eps->blocks[0] = r_counit_scale(C) * a.eps->blocks[0];
  return solve_coalgebra(P, r);
}

// ---- projector, splitting, centres -----------------------------------------------

/// P^l_A = (d_A (x) id_A) o (id_{A*} (x) (c_{A,A} o Delta o m)) o (b~_A (x) id_A).
inline Morphism pl_projector(const Category& C, const AlgebraPresentation& a0) {
  const AlgebraPresentation a = with_coalgebra(C, a0);
  const Object Ad = C.dual(a.A);
  const Morphism idA = C.identity(a.A);
  const Morphism core = C.compose_all({C.braiding(a.A, a.A), *a.delta, a.m});
  return C.compose_all({C.tensor(C.ev(a.A), idA), C.tensor(C.identity(Ad), core), C.tensor(C.coev_tilde(a.A), idA)});
}

inline Complex special_beta(const Category& C, const AlgebraPresentation& a) {
  const Report s = is_special(C, a);
  if (!s.passed("special_fit") || !s.passed("beta_A_nonzero"))
    throw Error(ErrorKind::PreconditionFailed, a.name + " is not special");
  return s.scalars.at("beta_A");
}

/// beta_A^{-1} P^l_A.
inline Morphism normalized_pl(const Category& C, const AlgebraPresentation& a) {
  const AlgebraPresentation b = with_coalgebra(C, a);
  return (1.0 / special_beta(C, b)) * pl_projector(C, b);
}

struct SplitIdempotent {
  Morphism p;
  Morphism e;  // Im -> X
  Morphism r;  // X -> Im
  Object image;
};

/// Blockwise rank factorisation p = e o r with r o e = id; e has orthonormal columns.
inline SplitIdempotent split_idempotent(const Category& C, const Morphism& p) {
  if (p.source != p.target) throw Error(ErrorKind::ObjectMismatch, "idempotent must be an endomorphism");
  const double scale = std::max(1.0, p.norm());
  const double dev = residual(C.compose(p, p), p);
  if (!(dev <= C.tol().threshold(scale) * 10))
    throw Error(ErrorKind::NotIdempotent, "p o p differs from p by " + std::to_string(dev));
  SplitIdempotent s;
  s.p = p;
  Mult m(C.rank(), 0);
  std::vector<Matrix> E, R;
  for (int k = 0; k < C.rank(); ++k) {
    const Matrix& pk = p.blocks[k];
    if (pk.size() == 0) {
      E.push_back(Matrix(pk.rows(), 0));
      R.push_back(Matrix(0, pk.cols()));
      continue;
    }
    Eigen::JacobiSVD<Matrix> svd(pk, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 0.5) ++rank;  // singular values of a projector cluster at 0 and >= 1
    m[k] = rank;
    Matrix e = svd.matrixU().leftCols(rank);
    E.push_back(e);
    R.push_back(e.adjoint() * pk);
  }
  s.image = C.atomic(m);
  s.e = C.make(s.image, p.source, E);
  s.r = C.make(p.source, s.image, R);
  return s;
}

/// Restriction of an algebra to the image of an idempotent: m' = r o m o (e (x) e),
/// eta' = r o eta, eps' = eps o e, Delta' solved from eps'.
inline AlgebraPresentation restrict_algebra(const Category& C, const AlgebraPresentation& a, const SplitIdempotent& s,
                                            std::string name) {
  AlgebraPresentation z;
  z.name = std::move(name);
  z.A = s.image;
  z.m = C.compose_all({s.r, a.m, C.tensor(s.e, s.e)});
  z.eta = C.compose(s.r, a.eta);
  if (a.eps) z.eps = C.compose(*a.eps, s.e);
  return solve_coalgebra(C, z);
}

struct LeftCentre {
  AlgebraPresentation algebra;
  SplitIdempotent split;
};

inline LeftCentre left_centre(const Category& C, const AlgebraPresentation& a) {
  const AlgebraPresentation b = with_coalgebra(C, a);
  SplitIdempotent s = split_idempotent(C, normalized_pl(C, b));
  AlgebraPresentation z = restrict_algebra(C, b, s, "C_l(" + b.name + ")");
  return {std::move(z), std::move(s)};
}

struct FullCentre {
  AlgebraPresentation A;   // in C
  AlgebraPresentation RA;  // R(A) in C_+ (x) C_-
  AlgebraPresentation Z;   // Z(A) in C_+ (x) C_-
  SplitIdempotent split;   // e : Z(A) -> R(A), r : R(A) -> Z(A)
  Complex beta_RA;
};

/// Z(A) = im beta^{-1} P^l_{R(A)} with the Frobenius structure restricted along e
/// (eps_Z = eps_{R(A)} o e). This is the normalisation for which iota = e satisfies
/// iota o iota* = P^l_{R(A)}; star_normalize(Z) gives the one with m* = Delta.
inline FullCentre full_centre(const Doubled& D, const AlgebraPresentation& a) {
  FullCentre fc;
  fc.A = with_coalgebra(*D.C, a);
  fc.RA = R_frobenius(D, fc.A);
  fc.beta_RA = special_beta(*D.P, fc.RA);
  fc.split = split_idempotent(*D.P, (1.0 / fc.beta_RA) * pl_projector(*D.P, fc.RA));
  fc.Z = restrict_algebra(*D.P, fc.RA, fc.split, "Z(" + fc.A.name + ")");
  return fc;
}

}  // namespace modcat
