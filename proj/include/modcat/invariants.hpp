#pragma once

// Derived quantities and consistency checks that need the morphism calculus:
// hexagons, ribbon identity, zig-zags, dimensions, S/T matrices, modularity.

#include "modcat/homspace.hpp"

#include <Eigen/SVD>

namespace modcat {

namespace detail {

inline std::string label_tuple(const FusionRing& ring, std::initializer_list<int> ls) {
  std::string s = "(";
  bool first = true;
  for (int l : ls) {
    if (!first) s += ",";
    s += ring.name(l);
    first = false;
  }
  return s + ")";
}

}  // namespace detail

/// Both hexagons, as compatibility of the braiding with every basis vertex:
///   c_{a, b c} o (id_a (x) v) = (v (x) id_a) o c_{a,f}       for v : f -> b (x) c
///   c_{b c, a} o (v (x) id_a) = (id_a (x) v) o c_{f,a}
/// and the same two identities for the inverse braiding.
inline Report verify_hexagon(const Category& C) {
  Report rep;
  rep.subject = C.data().name;
  const int n = C.rank();
  const auto& N = C.ring();
  struct Worst {
    double r = 0.0;
    std::string w;
  };
  Worst h[4];
  for (int a = 0; a < n; ++a)
    for (int b = 1; b < n; ++b)
      for (int c = 1; c < n; ++c) {
        const Object A = C.simple(a), bc = C.word({b, c});
        const Morphism ida = C.identity(A);
        for (int f = 0; f < n; ++f)
          for (int mu = 0; mu < N(b, c, f); ++mu) {
            const Morphism v = C.vertex(b, c, f, mu);
            const Object F = C.simple(f);
            const double r[4] = {
                residual(C.compose(C.braiding(A, bc), C.tensor(ida, v)),
                         C.compose(C.tensor(v, ida), C.braiding(A, F))),
                residual(C.compose(C.braiding(bc, A), C.tensor(v, ida)),
                         C.compose(C.tensor(ida, v), C.braiding(F, A))),
                residual(C.compose(C.braiding_inv(bc, A), C.tensor(ida, v)),
                         C.compose(C.tensor(v, ida), C.braiding_inv(F, A))),
                residual(C.compose(C.braiding_inv(A, bc), C.tensor(v, ida)),
                         C.compose(C.tensor(ida, v), C.braiding_inv(A, F))),
            };
            for (int t = 0; t < 4; ++t)
              if (!(r[t] <= h[t].r)) {
                h[t].r = r[t];
                h[t].w = detail::label_tuple(N, {a, b, c, f}) + " mu=" + std::to_string(mu);
              }
          }
      }
  const double thr = C.tol().abs_tol;
  rep.add("hexagon", h[0].r, thr, h[0].w);
  rep.add("hexagon_mirror", h[1].r, thr, h[1].w);
  rep.add("hexagon_inverse", h[2].r, thr, h[2].w);
  rep.add("hexagon_inverse_mirror", h[3].r, thr, h[3].w);
  return rep;
}

inline Report verify_hexagon(const CategoryData& cat) { return verify_hexagon(Category(cat)); }

/// theta_{a b} = c_{b,a} o c_{a,b} o (theta_a (x) theta_b) on every pair of simples.
inline Report verify_ribbon(const Category& C) {
  Report rep;
  rep.subject = C.data().name;
  double worst = 0.0;
  std::string w;
  for (int a = 0; a < C.rank(); ++a)
    for (int b = 0; b < C.rank(); ++b) {
      const Object A = C.simple(a), B = C.simple(b);
      const Morphism lhs = C.twist(A * B);
      const Morphism rhs = C.compose_all({C.braiding(B, A), C.braiding(A, B), C.tensor(C.twist(A), C.twist(B))});
      const double r = residual(lhs, rhs);
      if (!(r <= worst)) {
        worst = r;
        w = detail::label_tuple(C.ring(), {a, b});
      }
    }
  rep.add("ribbon", worst, C.tol().abs_tol, w);
  return rep;
}

/// Zig-zag identities of all four duality morphisms and sphericality d o b~ = d~ o b.
inline Report verify_dualities(const Category& C) {
  Report rep;
  rep.subject = C.data().name;
  double zl = 0.0, zr = 0.0, zl2 = 0.0, zr2 = 0.0, sph = 0.0;
  for (int i = 0; i < C.rank(); ++i) {
    const Object u = C.simple(i), ud = C.dual(u);
    const Dualities D = C.dualities(i);
    const Morphism idu = C.identity(u), idud = C.identity(ud);
    zl = std::max(zl, residual(C.compose(C.tensor(idu, D.d), C.tensor(D.b, idu)), idu));
    zl2 = std::max(zl2, residual(C.compose(C.tensor(D.d, idud), C.tensor(idud, D.b)), idud));
    zr = std::max(zr, residual(C.compose(C.tensor(D.d_tilde, idu), C.tensor(idu, D.b_tilde)), idu));
    zr2 = std::max(zr2, residual(C.compose(C.tensor(idud, D.d_tilde), C.tensor(D.b_tilde, idud)), idud));
    sph = std::max(sph, residual(C.compose(D.d, D.b_tilde), C.compose(D.d_tilde, D.b)));
  }
  const double thr = C.tol().threshold(1.0);
  rep.add("zigzag_left", zl, thr);
  rep.add("zigzag_left_dual", zl2, thr);
  rep.add("zigzag_right", zr, thr);
  rep.add("zigzag_right_dual", zr2, thr);
  rep.add("spherical", sph, thr);
  return rep;
}

/// d_i = d~_i o b_i.
inline std::vector<Complex> quantum_dimensions(const Category& C) {
  std::vector<Complex> d;
  for (int i = 0; i < C.rank(); ++i) d.push_back(C.loop_value(i));
  return d;
}
inline std::vector<Complex> quantum_dimensions(const CategoryData& cat) { return quantum_dimensions(Category(cat)); }

inline Complex global_dimension(const Category& C) {
  Complex s = 0.0;
  for (Complex d : quantum_dimensions(C)) s += d * d;
  return s;
}
inline Complex global_dimension(const CategoryData& cat) { return global_dimension(Category(cat)); }

/// Square root of Dim(C): the positive root in the dagger case, the principal
/// branch otherwise (callers may retry with the other sign).
inline Complex global_dimension_sqrt(const Category& C) {
  const Complex D = global_dimension(C);
  if (C.data().dagger) return std::sqrt(std::abs(D.real()));
  return std::sqrt(D);
}

/// S~[i][j] = sum_k N[i*][j][k] theta_k / (theta_i theta_j) d_k.
inline Matrix smatrix(const Category& C) {
  const int n = C.rank();
  const auto d = quantum_dimensions(C);
  const auto& th = C.data().theta;
  const auto& N = C.ring();
  Matrix S = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (int m = N(N.dual(i), j, k)) S(i, j) += static_cast<double>(m) * th[k] / (th[i] * th[j]) * d[k];
  return S;
}
inline Matrix smatrix(const CategoryData& cat) { return smatrix(Category(cat)); }

inline Matrix tmatrix(const CategoryData& cat) {
  const int n = cat.rank();
  Matrix T = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) T(i, i) = cat.theta[i];
  return T;
}

/// Labels i with S~[i][j] = d_i d_j for all j.
inline std::vector<int> transparent_objects(const Category& C) {
  const Matrix S = smatrix(C);
  const auto d = quantum_dimensions(C);
  std::vector<int> out;
  for (int i = 0; i < C.rank(); ++i) {
    bool t = true;
    for (int j = 0; j < C.rank() && t; ++j) {
      const Complex ref = d[i] * d[j];
      t = std::abs(S(i, j) - ref) <= C.tol().threshold(std::abs(ref));
    }
    if (t) out.push_back(i);
  }
  return out;
}
inline std::vector<int> transparent_objects(const CategoryData& cat) { return transparent_objects(Category(cat)); }

inline bool is_modular(const Category& C) {
  const auto t = transparent_objects(C);
  return t.size() == 1 && t[0] == 0;
}
inline bool is_modular(const CategoryData& cat) { return is_modular(Category(cat)); }

/// Invertibility of S~: smallest singular value above tol relative to the largest.
inline bool smatrix_invertible(const Category& C) {
  Eigen::JacobiSVD<Matrix> svd(smatrix(C));
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > C.tol().threshold(s(0));
}

/// Everything checkable on a category: data invariants, pentagon, hexagons, ribbon,
/// dualities, dimension identities, S-matrix identities and modularity.
inline Report verify_category(const Category& C) {
  const CategoryData& cat = C.data();
  Report rep;
  rep.subject = cat.name;
  rep.merge(check_data_invariants(cat));
  rep.merge(verify_pentagon(cat));
  rep.merge(verify_hexagon(C));
  rep.merge(verify_ribbon(C));

  std::vector<Complex> d;
  try {
    d = quantum_dimensions(C);
  } catch (const Error& e) {
    rep.add_flag("dimensions", false, e.what());
    return rep;
  }
  rep.merge(verify_dualities(C));
  const auto& tol = C.tol();
  double dual_dev = std::abs(d[0] - 1.0);
  for (int i = 0; i < C.rank(); ++i) {
    dual_dev = std::max(dual_dev, std::abs(d[i] - d[cat.dual(i)]));
    rep.scalars["dim[" + C.ring().name(i) + "]"] = d[i];
  }
  rep.add("dimension_duality", dual_dev, tol.threshold(1.0));
  const Complex D = global_dimension(C);
  rep.scalars["global_dimension"] = D;
  if (cat.dagger) {
    const auto pf = perron_frobenius_dims(cat.ring);
    double dev = 0.0;
    for (int i = 0; i < C.rank(); ++i) dev = std::max(dev, std::abs(d[i] - pf[i]));
    rep.add("perron_frobenius", dev, tol.threshold(1.0));
    rep.add_flag("global_dimension_real", std::abs(D.imag()) <= tol.threshold(std::abs(D)) && D.real() >= 1.0 - tol.abs_tol,
                 "Dim = " + format_complex(D));
  }

  const Matrix S = smatrix(C);
  double sym = max_abs(S - S.transpose()), row0 = 0.0;
  for (int j = 0; j < C.rank(); ++j) row0 = std::max(row0, std::abs(S(0, j) - d[j]));
  rep.add("smatrix_symmetric", sym, tol.threshold(max_abs(S)));
  rep.add("smatrix_unit_row", row0, tol.threshold(max_abs(S)));

  const auto tr = transparent_objects(C);
  const bool mod = tr.size() == 1 && tr[0] == 0;
  const bool inv = smatrix_invertible(C);
  rep.add_flag("modularity_criteria_agree", mod == inv,
               std::string("transparency says ") + (mod ? "modular" : "not modular") + ", S~ is " +
                   (inv ? "invertible" : "singular"));
  std::string w = "not modular: transparent label";
  for (int t : tr)
    if (t != 0) w += " " + C.ring().name(t);
  rep.add_flag("modular", mod, w);
  return rep;
}

inline Report verify_category(const CategoryData& cat) { return verify_category(Category(cat)); }

}  // namespace modcat
