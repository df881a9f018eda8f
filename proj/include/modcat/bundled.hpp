#pragma once

// Bundled example categories. All are multiplicity-free and unitary; each one pins a
// single hexagon solution and uses the unitary duality normalisation
// dualcoef_i = sqrt(d_i), so that b_i^dagger = d~_i.

#include "modcat/fusion_data.hpp"

#include <functional>

namespace modcat::bundled {

struct LabelSpec {
  std::string name;
  int dual;
};

using FusionRule = std::function<int(int, int, int)>;
using FSymbol = std::function<Complex(int a, int b, int c, int d, int e, int f)>;
using RSymbol = std::function<Complex(int a, int b, int c)>;

/// Assembles a multiplicity-free category from symbol functions. F is queried for
/// every admissible (a,b,c,d;e,f); R for every admissible (a,b;c).
inline CategoryData multiplicity_free(const std::string& name, const std::vector<LabelSpec>& specs,
                                      const FusionRule& fusion, const FSymbol& F, const RSymbol& R,
                                      std::vector<Complex> theta, std::vector<Complex> dualcoef) {
  std::vector<Label> labels;
  for (std::size_t i = 0; i < specs.size(); ++i)
    labels.push_back({static_cast<int>(i), specs[i].name, specs[i].dual, i == 0});
  CategoryData cat;
  cat.name = name;
  cat.ring = FusionRing(labels);
  const int n = static_cast<int>(specs.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) cat.ring.set(a, b, c, fusion(a, b, c));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          FBlock blk;
          blk.rows = f_rows(cat.ring, a, b, c, d);
          blk.cols = f_cols(cat.ring, a, b, c, d);
          if (blk.rows.empty()) continue;
          blk.matrix = Matrix(blk.rows.size(), blk.cols.size());
          for (std::size_t i = 0; i < blk.rows.size(); ++i)
            for (std::size_t j = 0; j < blk.cols.size(); ++j)
              blk.matrix(i, j) = F(a, b, c, d, blk.rows[i][0], blk.cols[j][0]);
          cat.set_f(a, b, c, d, std::move(blk));
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (cat.ring(a, b, c) > 0) cat.set_r(a, b, c, Matrix::Constant(1, 1, R(a, b, c)));
  cat.theta = std::move(theta);
  cat.dualcoef = std::move(dualcoef);
  cat.dagger = true;
  cat.finalize();
  return cat;
}

inline Complex expi(double x) { return std::polar(1.0, x); }

inline CategoryData vec() {
  return multiplicity_free(
      "vec", {{"1", 0}}, [](int, int, int) { return 1; }, [](int, int, int, int, int, int) { return Complex(1.0); },
      [](int, int, int) { return Complex(1.0); }, {1.0}, {1.0});
}

inline CategoryData fibonacci() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  auto fusion = [](int a, int b, int c) {
    if (a == 0) return b == c ? 1 : 0;
    if (b == 0) return a == c ? 1 : 0;
    return 1;  // tau x tau = 1 + tau
  };
  auto F = [phi](int a, int b, int c, int d, int e, int f) -> Complex {
    if (a == 1 && b == 1 && c == 1 && d == 1) {
      const double s = 1.0 / std::sqrt(phi);
      if (e == 0 && f == 0) return 1.0 / phi;
      if (e == 1 && f == 1) return -1.0 / phi;
      return s;
    }
    return 1.0;
  };
  auto R = [](int a, int b, int c) -> Complex {
    if (a == 1 && b == 1) return c == 0 ? expi(-4.0 * kPi / 5.0) : expi(3.0 * kPi / 5.0);
    return 1.0;
  };
  return multiplicity_free("fibonacci", {{"1", 0}, {"tau", 1}}, fusion, F, R, {1.0, expi(4.0 * kPi / 5.0)},
                           {1.0, std::sqrt(phi)});
}

inline CategoryData ising() {
  // labels: 0 = 1, 1 = sigma, 2 = psi
  auto fusion = [](int a, int b, int c) {
    if (a == 0) return b == c ? 1 : 0;
    if (b == 0) return a == c ? 1 : 0;
    if (a == 1 && b == 1) return (c == 0 || c == 2) ? 1 : 0;
    if (a == 2 && b == 2) return c == 0 ? 1 : 0;
    return c == 1 ? 1 : 0;  // sigma x psi = psi x sigma = sigma
  };
  auto F = [](int a, int b, int c, int d, int e, int f) -> Complex {
    if (a == 1 && b == 1 && c == 1 && d == 1) {
      const double s = 1.0 / std::sqrt(2.0);
      return (e == 2 && f == 2) ? -s : s;
    }
    if (a == 1 && b == 2 && c == 1 && d == 2) return -1.0;
    if (a == 2 && b == 1 && c == 2 && d == 1) return -1.0;
    return 1.0;
  };
  auto R = [](int a, int b, int c) -> Complex {
    if (a == 1 && b == 1) return c == 0 ? expi(-kPi / 8.0) : expi(3.0 * kPi / 8.0);
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) return Complex(0.0, -1.0);
    if (a == 2 && b == 2) return -1.0;
    return 1.0;
  };
  return multiplicity_free("ising", {{"1", 0}, {"sigma", 1}, {"psi", 2}}, fusion, F, R,
                           {1.0, expi(kPi / 8.0), -1.0}, {1.0, std::pow(2.0, 0.25), 1.0});
}

/// Pointed category on Z_2 with F^{ggg}_g = f_sign, R^{gg}_1 = r, theta_g = r.
inline CategoryData pointed_z2(const std::string& name, double f_sign, Complex r) {
  auto fusion = [](int a, int b, int c) { return ((a + b) % 2) == c ? 1 : 0; };
  auto F = [f_sign](int a, int b, int c, int, int, int) -> Complex {
    return (a == 1 && b == 1 && c == 1) ? f_sign : 1.0;
  };
  auto R = [r](int a, int b, int) -> Complex { return (a == 1 && b == 1) ? r : 1.0; };
  return multiplicity_free(name, {{"1", 0}, {"g", 1}}, fusion, F, R, {1.0, r}, {1.0, 1.0});
}

inline CategoryData semion() { return pointed_z2("semion", -1.0, Complex(0.0, 1.0)); }

inline CategoryData z2_symmetric() { return pointed_z2("z2_symmetric", 1.0, 1.0); }

/// Pointed Z_3 with trivial associator, R^{ab} = exp(2 pi i ab/3), theta_a = exp(2 pi i a^2/3).
inline CategoryData z3() {
  auto fusion = [](int a, int b, int c) { return ((a + b) % 3) == c ? 1 : 0; };
  auto F = [](int, int, int, int, int, int) -> Complex { return 1.0; };
  auto R = [](int a, int b, int) -> Complex { return expi(2.0 * kPi * a * b / 3.0); };
  return multiplicity_free("z3", {{"0", 0}, {"1", 2}, {"2", 1}}, fusion, F, R,
                           {1.0, expi(2.0 * kPi / 3.0), expi(2.0 * kPi / 3.0)}, {1.0, 1.0, 1.0});
}

/// Names of the bundled categories, in bundle order.
inline std::vector<std::string> names() {
  return {"vec", "fibonacci", "ising", "semion", "z2_symmetric", "z3"};
}

inline CategoryData by_name(const std::string& name) {
  if (name == "vec") return vec();
  if (name == "fibonacci") return fibonacci();
  if (name == "ising") return ising();
  if (name == "semion") return semion();
  if (name == "z2_symmetric") return z2_symmetric();
  if (name == "z3") return z3();
  throw Error(ErrorKind::InvalidData, "unknown bundled category " + name);
}

}  // namespace modcat::bundled
