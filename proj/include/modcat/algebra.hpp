#pragma once

// Algebra objects and the Frobenius-algebra predicates.

#include "modcat/homspace.hpp"

#include <Eigen/SVD>
#include <functional>
#include <future>
#include <optional>

namespace modcat {

/// (A, m, eta) with optional (Delta, eps). A is atomic.
struct AlgebraPresentation {
  std::string name;
  Object A;
  Morphism m;
  Morphism eta;
  std::optional<Morphism> delta;
  std::optional<Morphism> eps;

  bool has_coalgebra() const { return delta.has_value() && eps.has_value(); }
  const Morphism& Delta() const {
    if (!delta) throw Error(ErrorKind::MissingCoalgebra, name + " has no coproduct");
    return *delta;
  }
  const Morphism& Eps() const {
    if (!eps) throw Error(ErrorKind::MissingCoalgebra, name + " has no counit");
    return *eps;
  }
};

// ---- linear-algebra helpers -------------------------------------------------

/// All block entries of a morphism, column-major per block, concatenated.
inline Vector vectorize(const Morphism& f) {
  Eigen::Index n = 0;
  for (const auto& b : f.blocks) n += b.size();
  Vector v(n);
  Eigen::Index o = 0;
  for (const auto& b : f.blocks) {
    v.segment(o, b.size()) = Eigen::Map<const Vector>(b.data(), b.size());
    o += b.size();
  }
  return v;
}

/// Inverse of vectorize onto the shape of `like`.
inline Morphism unvectorize(const Vector& v, const Morphism& like) {
  Morphism f = like;
  Eigen::Index o = 0;
  for (auto& b : f.blocks) {
    b = Eigen::Map<const Matrix>(v.data() + o, b.rows(), b.cols());
    o += b.size();
  }
  return f;
}

/// Basis of Hom(src, tgt): one morphism per block entry.
inline std::vector<Morphism> hom_basis(const Category& C, const Object& src, const Object& tgt) {
  std::vector<Morphism> out;
  const Morphism z = C.zero(src, tgt);
  for (std::size_t k = 0; k < z.blocks.size(); ++k)
    for (Eigen::Index j = 0; j < z.blocks[k].cols(); ++j)
      for (Eigen::Index i = 0; i < z.blocks[k].rows(); ++i) {
        Morphism e = z;
        e.blocks[k](i, j) = 1.0;
        out.push_back(std::move(e));
      }
  return out;
}

/// Matrix of a linear map Hom(src,tgt) -> (vectorized codomain), column per basis element.
inline Matrix linear_map_matrix(const std::vector<Morphism>& basis, const std::function<Vector(const Morphism&)>& L) {
  if (basis.empty()) return Matrix(0, 0);
  std::vector<Vector> cols;
  for (const auto& e : basis) cols.push_back(L(e));
  Matrix M(cols[0].size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = cols[j];
  return M;
}

struct NullspaceResult {
  Matrix basis;  // columns span the numerical nullspace
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
  bool gray = false;  // a singular value sits too close to the threshold to classify
};

/// Numerical nullspace of M with singular values thresholded at `thr`. Values in
/// (thr, 1e3 thr] are flagged as undecidable.
inline NullspaceResult nullspace(const Matrix& M, double thr) {
  NullspaceResult r;
  const Eigen::Index n = M.cols();
  if (n == 0) return r;
  if (M.rows() == 0) {
    r.basis = Matrix::Identity(n, n);
    return r;
  }
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) {
      ++rank;
      r.smallest_kept = s(i);
      if (s(i) <= 1e3 * thr) r.gray = true;
    } else {
      r.largest_dropped = std::max(r.largest_dropped, s(i));
    }
  }
  r.basis = svd.matrixV().rightCols(n - rank);
  return r;
}

// ---- validation ---------------------------------------------------------------

inline void validate_algebra(const Category& C, const AlgebraPresentation& a) {
  if (!a.A.is_atomic()) throw Error(ErrorKind::ShapeMismatch, "algebra object must be atomic");
  auto expect = [&](const Morphism& f, const Object& s, const Object& t, const char* what) {
    if (f.source != s || f.target != t)
      throw Error(ErrorKind::ShapeMismatch, std::string(what) + " has type " + f.source.str() + " -> " +
                                                f.target.str() + ", expected " + s.str() + " -> " + t.str());
    C.check_shapes(f);
  };
  const Object AA = a.A * a.A, one = C.unit();
  expect(a.m, AA, a.A, "m");
  expect(a.eta, one, a.A, "eta");
  if (a.delta) expect(*a.delta, a.A, AA, "delta");
  if (a.eps) expect(*a.eps, a.A, one, "eps");
}

// ---- coalgebra solve -----------------------------------------------------------

/// eps_tr = d~_A o (m (x) id_{A*}) o (id_A (x) b_A): the trace of left multiplication.
inline Morphism trace_counit(const Category& C, const AlgebraPresentation& a) {
  const Object Ad = C.dual(a.A);
  return C.compose_all({C.ev_tilde(a.A), C.tensor(a.m, C.identity(Ad)), C.tensor(C.identity(a.A), C.coev(a.A))});
}

/// Fills in Delta from eps (or from the trace counit when eps is absent) by solving
/// the copairing equation ((eps o m) (x) id) o (id (x) Q) = id_A for Q : 1 -> A (x) A,
/// then Delta = (m (x) id) o (id (x) Q).
inline AlgebraPresentation solve_coalgebra(const Category& C, AlgebraPresentation a) {
  validate_algebra(C, a);
  if (a.delta && a.eps) return a;
  if (a.delta && !a.eps) throw Error(ErrorKind::MissingCoalgebra, "a coproduct without counit cannot be completed");
  if (!a.eps) a.eps = trace_counit(C, a);
  const Object A = a.A, AA = A * A, one = C.unit();
  const Morphism idA = C.identity(A);
  const Morphism kappa = C.compose(*a.eps, a.m);
  const Morphism kid = C.tensor(kappa, idA);
  const auto basis = hom_basis(C, one, AA);
  const Matrix M = linear_map_matrix(basis, [&](const Morphism& q) {
    return vectorize(C.compose(kid, C.tensor(idA, q)));
  });
  const Vector rhs = vectorize(idA);
  const double thr = C.tol().threshold(M.size() ? max_abs(M) : 0.0);
  const auto ns = nullspace(M, thr);
  if (ns.gray) throw Error(ErrorKind::SolverFailure, "copairing system is ill-conditioned");
  const Vector q = M.colPivHouseholderQr().solve(rhs);
  const double res = rhs.size() ? (M * q - rhs).cwiseAbs().maxCoeff() : 0.0;
  if (!(res <= C.tol().threshold(1.0) * 10))
    throw Error(ErrorKind::MissingCoalgebra, "counit pairing is degenerate; no coproduct exists");
  if (ns.basis.cols() > 0)
    throw Error(ErrorKind::NonUnique, "copairing has a " + std::to_string(ns.basis.cols()) + "-dimensional ambiguity");
  const Morphism Q = unvectorize(q, C.zero(one, AA));
  a.delta = C.compose(C.tensor(a.m, idA), C.tensor(idA, Q));
  return a;
}

// ---- predicates ------------------------------------------------------------------

inline Report check_unit_assoc(const Category& C, const AlgebraPresentation& a) {
  validate_algebra(C, a);
  Report rep;
  rep.subject = a.name;
  const Morphism idA = C.identity(a.A);
  const double s = std::max(1.0, a.m.norm());
  const auto thr = C.tol().threshold(s);
  rep.add("unit_right", residual(C.compose(a.m, C.tensor(idA, a.eta)), idA), thr);
  rep.add("unit_left", residual(C.compose(a.m, C.tensor(a.eta, idA)), idA), thr);
  rep.add("associativity",
          residual(C.compose(a.m, C.tensor(a.m, idA)), C.compose(a.m, C.tensor(idA, a.m))), C.tol().threshold(s * s));
  return rep;
}

inline AlgebraPresentation with_coalgebra(const Category& C, const AlgebraPresentation& a) {
  return a.has_coalgebra() ? a : solve_coalgebra(C, a);
}

inline Report check_frobenius(const Category& C, const AlgebraPresentation& a0) {
  const AlgebraPresentation a = with_coalgebra(C, a0);
  Report rep;
  rep.subject = a.name;
  const Morphism idA = C.identity(a.A);
  const Morphism& D = *a.delta;
  const Morphism& e = *a.eps;
  const double s = std::max({1.0, a.m.norm(), D.norm(), e.norm()});
  const auto thr = C.tol().threshold(s * s);
  rep.add("counit_left", residual(C.compose(C.tensor(e, idA), D), idA), thr);
  rep.add("counit_right", residual(C.compose(C.tensor(idA, e), D), idA), thr);
  rep.add("coassociativity", residual(C.compose(C.tensor(D, idA), D), C.compose(C.tensor(idA, D), D)), thr);
  const Morphism dm = C.compose(D, a.m);
  rep.add("frobenius_left", residual(C.compose(C.tensor(a.m, idA), C.tensor(idA, D)), dm), thr);
  rep.add("frobenius_right", residual(C.compose(C.tensor(idA, a.m), C.tensor(D, idA)), dm), thr);
  return rep;
}

/// Phi_1 = ((eps o m) (x) id_{A*}) o (id_A (x) b_A),  Phi_2 = (id_{A*} (x) (eps o m)) o (b~_A (x) id_A).
inline Report is_symmetric(const Category& C, const AlgebraPresentation& a0) {
  const AlgebraPresentation a = with_coalgebra(C, a0);
  Report rep;
  rep.subject = a.name;
  const Object Ad = C.dual(a.A);
  const Morphism kappa = C.compose(*a.eps, a.m);
  const Morphism phi1 = C.compose(C.tensor(kappa, C.identity(Ad)), C.tensor(C.identity(a.A), C.coev(a.A)));
  const Morphism phi2 = C.compose(C.tensor(C.identity(Ad), kappa), C.tensor(C.coev_tilde(a.A), C.identity(a.A)));
  rep.add("symmetric", residual(phi1, phi2), C.tol().threshold(std::max(phi1.norm(), phi2.norm())));
  return rep;
}

/// Least-squares fit m o Delta = beta_A id_A; beta_1 = eps o eta.
inline Report is_special(const Category& C, const AlgebraPresentation& a0) {
  const AlgebraPresentation a = with_coalgebra(C, a0);
  Report rep;
  rep.subject = a.name;
  const Morphism md = C.compose(a.m, *a.delta);
  const Vector x = vectorize(md), y = vectorize(C.identity(a.A));
  const Complex beta_a = y.squaredNorm() > 0 ? y.dot(x) / y.squaredNorm() : Complex(0.0);
  const Complex beta_1 = C.compose(*a.eps, a.eta).blocks[0](0, 0);
  const double fit = y.size() ? (x - beta_a * y).cwiseAbs().maxCoeff() : 0.0;
  rep.scalars["beta_A"] = beta_a;
  rep.scalars["beta_1"] = beta_1;
  const double s = std::max(1.0, md.norm());
  rep.add("special_fit", fit, C.tol().threshold(s));
  rep.add_flag("beta_A_nonzero", std::abs(beta_a) > C.tol().threshold(s), "beta_A = " + format_complex(beta_a));
  rep.add_flag("beta_1_nonzero", std::abs(beta_1) > C.tol().abs_tol, "beta_1 = " + format_complex(beta_1));
  return rep;
}

inline Report is_commutative(const Category& C, const AlgebraPresentation& a) {
  validate_algebra(C, a);
  Report rep;
  rep.subject = a.name;
  const Morphism lhs = C.compose(a.m, C.braiding(a.A, a.A));
  rep.add("commutative", residual(lhs, a.m), C.tol().threshold(a.m.norm()));
  return rep;
}

/// Hom(1, A) = C eta: the unit occurs once in A and eta does not vanish there.
inline bool is_haploid(const Category& C, const AlgebraPresentation& a) {
  validate_algebra(C, a);
  if (C.multiplicity(a.A, 0) != 1) return false;
  return std::abs(a.eta.blocks[0](0, 0)) > C.tol().abs_tol;
}

/// Dimension of the space of bimodule endomorphisms f : A -> A with
/// f o m = m o (f (x) id) = m o (id (x) f). Simple iff it is 1.
inline Report is_simple_bimodule(const Category& C, const AlgebraPresentation& a) {
  validate_algebra(C, a);
  Report rep;
  rep.subject = a.name;
  const Morphism idA = C.identity(a.A);
  const auto basis = hom_basis(C, a.A, a.A);
  const Matrix M = linear_map_matrix(basis, [&](const Morphism& f) {
    const Morphism fm = C.compose(f, a.m);
    const Vector l = vectorize(fm - C.compose(a.m, C.tensor(f, idA)));
    const Vector r = vectorize(fm - C.compose(a.m, C.tensor(idA, f)));
    Vector v(l.size() + r.size());
    v << l, r;
    return v;
  });
  const double thr = C.tol().threshold(std::max(1.0, max_abs(M)));
  const auto ns = nullspace(M, thr);
  if (ns.gray)
    throw Error(ErrorKind::SolverFailure, "bimodule endomorphism system is ill-conditioned (singular value " +
                                              std::to_string(ns.smallest_kept) + ")");
  const int dim = static_cast<int>(ns.basis.cols());
  rep.scalars["bimodule_endomorphisms"] = static_cast<double>(dim);
  rep.add_flag("simple", dim == 1, "bimodule endomorphism space has dimension " + std::to_string(dim));
  return rep;
}

/// m^dagger = Delta and eta^dagger = eps, with the dagger as blockwise adjoint, plus a
/// positivity probe s^dagger o s != 0 on random nonzero endomorphisms of A.
inline Report check_star_frobenius(const Category& C, const AlgebraPresentation& a0, std::uint64_t seed = 1) {
  if (!C.data().dagger) throw Error(ErrorKind::NoDaggerStructure, C.data().name + " carries no dagger structure");
  const AlgebraPresentation a = with_coalgebra(C, a0);
  Report rep;
  rep.subject = a.name;
  const double s = std::max({1.0, a.m.norm(), a.delta->norm()});
  rep.add("m_star_delta", residual(a.m.adjoint(), *a.delta), C.tol().threshold(s));
  rep.add("eta_star_eps", residual(a.eta.adjoint(), *a.eps), C.tol().threshold(s));
  std::mt19937_64 rng(seed);
  bool pos = true;
  for (int t = 0; t < 4 && pos; ++t) {
    const Morphism x = random_morphism(C, a.A, a.A * a.A, rng);
    const Morphism xx = C.compose(x.adjoint(), x);
    Complex tr = 0.0;
    for (const auto& b : xx.blocks) tr += b.trace();
    pos = tr.real() > 0 && std::abs(tr.imag()) <= C.tol().threshold(tr.real());
  }
  rep.add_flag("positivity", pos, "s* o s has non-positive trace for a random s");
  return rep;
}

/// f* = ((eps_B o m_B) (x) id_A) o (id_B (x) f (x) id_A) o (id_B (x) (Delta_A o eta_A)) : B -> A.
inline Morphism f_star(const Category& C, const Morphism& f, const AlgebraPresentation& A0,
                       const AlgebraPresentation& B0) {
  const AlgebraPresentation A = with_coalgebra(C, A0);
  const AlgebraPresentation B = with_coalgebra(C, B0);
  if (f.source != A.A || f.target != B.A) throw Error(ErrorKind::ObjectMismatch, "f_star expects f : A -> B");
  const Morphism idA = C.identity(A.A), idB = C.identity(B.A);
  const Morphism kappa_b = C.compose(*B.eps, B.m);
  const Morphism cop = C.compose(*A.delta, A.eta);
  return C.compose_all({C.tensor(kappa_b, idA), C.tensor_all({idB, f, idA}), C.tensor(idB, cop)});
}

/// Runs every predicate (concurrently; merged in a fixed order). Entries that raise are
/// recorded as failures with the error text. "star" is skipped on non-dagger categories
/// unless requested explicitly.
inline Report check_all_properties(const Category& C, const AlgebraPresentation& a,
                                   const std::vector<std::string>& which = {}, std::uint64_t seed = 1) {
  Report rep;
  rep.subject = a.name;
  auto wanted = [&](const std::string& p) { return which.empty() || std::find(which.begin(), which.end(), p) != which.end(); };
  const std::vector<std::pair<std::string, std::function<Report()>>> jobs = {
      {"algebra", [&] { return check_unit_assoc(C, a); }},
      {"frobenius", [&] { return check_frobenius(C, a); }},
      {"symmetric", [&] { return is_symmetric(C, a); }},
      {"special", [&] { return is_special(C, a); }},
      {"commutative", [&] { return is_commutative(C, a); }},
      {"haploid",
       [&] {
         Report r;
         r.add_flag("haploid", is_haploid(C, a), "unit multiplicity " + std::to_string(C.multiplicity(a.A, 0)));
         return r;
       }},
      {"simple", [&] { return is_simple_bimodule(C, a); }},
      {"star", [&] { return check_star_frobenius(C, a, seed); }},
  };
  std::vector<std::pair<std::string, std::future<Report>>> running;
  for (const auto& [name, fn] : jobs) {
    if (!wanted(name)) continue;
    if (name == "star" && !C.data().dagger && which.empty()) continue;
    running.emplace_back(name, std::async(std::launch::async, fn));
  }
  for (auto& [name, fut] : running) {
    try {
      rep.merge(fut.get());
    } catch (const Error& e) {
      rep.add_flag(name, false, e.what());
    }
  }
  rep.scalars["dim"] = C.dimension(a.A);
  return rep;
}

inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> p = {"algebra", "frobenius", "symmetric", "special",
                                             "commutative", "haploid", "simple", "star"};
  return p;
}

// ---- constructions ----------------------------------------------------------------

/// Transports an algebra structure along the identity-block isomorphism between the
/// word W and its flattening (+)_k mult_k(W) U_k.
inline AlgebraPresentation flatten_algebra(const Category& C, const Object& W, const Morphism& m, const Morphism& eta,
                                           const std::optional<Morphism>& delta, const std::optional<Morphism>& eps,
                                           std::string name) {
  const Morphism fl = C.flatten(W), un = C.unflatten(W);
  AlgebraPresentation a;
  a.name = std::move(name);
  a.A = fl.target;
  a.m = C.compose_all({fl, m, C.tensor(un, un)});
  a.eta = C.compose(fl, eta);
  if (delta) a.delta = C.compose_all({C.tensor(fl, fl), *delta, un});
  if (eps) a.eps = C.compose(*eps, un);
  return a;
}

/// End(X) = X (x) X* with m = id (x) d_X (x) id, eta = b_X, Delta = id (x) b~_X (x) id, eps = d~_X.
inline AlgebraPresentation endomorphism_algebra(const Category& C, const Object& X, std::string name) {
  const Object Xd = C.dual(X);
  const Object W = X * Xd;
  const Morphism idX = C.identity(X), idXd = C.identity(Xd);
  const Morphism m = C.tensor_all({idX, C.ev(X), idXd});
  const Morphism D = C.tensor_all({idX, C.coev_tilde(X), idXd});
  return flatten_algebra(C, W, m, C.coev(X), D, C.ev_tilde(X), std::move(name));
}

/// The unit object with m = id, eta = id, Delta = id, eps = id.
inline AlgebraPresentation unit_algebra(const Category& C) {
  const Morphism id = C.identity(C.unit());
  return {"unit", C.unit(), id.retyped(C.unit() * C.unit(), C.unit()), id, id, id};
}

/// Rescales (Delta, eps) -> (lambda Delta, eps / lambda).
inline AlgebraPresentation rescale_coalgebra(AlgebraPresentation a, Complex lambda) {
  if (a.delta) *a.delta *= lambda;
  if (a.eps) *a.eps *= (1.0 / lambda);
  return a;
}

/// Rescales (Delta, eps) so that eps o eta = eta^dagger o eta.
inline AlgebraPresentation star_normalize(const Category& C, AlgebraPresentation a) {
  a = with_coalgebra(C, a);
  const Complex ee = C.compose(*a.eps, a.eta).blocks[0](0, 0);
  const double nn = vectorize(a.eta).squaredNorm();
  if (std::abs(ee) <= C.tol().abs_tol || nn <= C.tol().abs_tol) return a;
  return rescale_coalgebra(a, ee / nn);
}

}  // namespace modcat
