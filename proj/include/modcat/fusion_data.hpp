#pragma once

// Skeletal data of a ribbon fusion category: labels, fusion multiplicities,
// F-symbols, R-symbols, twists and duality normalisations.
//
// Conventions (used consistently by every other header):
//   * label 0 is the unit; dual(dual(i)) == i.
//   * Fusion trees are splitting trees U_c -> U_a (x) U_b; a vertex carries a
//     multiplicity index in [0, N[a][b][c]).
//   * F^{abc}_d relates left- and right-nested trees:
//       |((a b)_e^alpha c)_d^beta> = sum F[(e,alpha,beta),(f,gamma,delta)] |(a (b c)_f^gamma)_d^delta>
//     rows are (e,alpha,beta), columns (f,gamma,delta), both in lexicographic order.
//   * R^{ab}_c is the block of c_{a,b} : a(x)b -> b(x)a on channel c, target
//     vertex index as row, source vertex index as column.

#include "modcat/types.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace modcat {

struct Label {
  int index = 0;
  std::string name;
  int dual = 0;
  bool is_unit = false;
};

class FusionRing {
 public:
  FusionRing() = default;
  explicit FusionRing(std::vector<Label> labels)
      : labels_(std::move(labels)), n_(static_cast<int>(labels_.size())),
        mult_(static_cast<std::size_t>(n_) * n_ * n_, 0) {}

  int rank() const { return n_; }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(int i) const { return labels_.at(i); }
  int dual(int i) const { return labels_[i].dual; }
  const std::string& name(int i) const { return labels_[i].name; }

  int operator()(int a, int b, int c) const { return mult_[idx(a, b, c)]; }
  void set(int a, int b, int c, int value) { mult_[idx(a, b, c)] = value; }

  /// Labels c with N[a][b][c] > 0, ascending.
  std::vector<int> channels(int a, int b) const {
    std::vector<int> out;
    for (int c = 0; c < n_; ++c)
      if ((*this)(a, b, c) > 0) out.push_back(c);
    return out;
  }

  std::optional<int> find(const std::string& name) const {
    for (const auto& l : labels_)
      if (l.name == name) return l.index;
    return std::nullopt;
  }

  /// Fusion matrix (N_a)_{bc} = N[a][b][c].
  Eigen::MatrixXd fusion_matrix(int a) const {
    Eigen::MatrixXd m(n_, n_);
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c) m(b, c) = (*this)(a, b, c);
    return m;
  }

  /// Structural invariants of the ring; empty string when all hold.
  std::string violation() const {
    std::ostringstream os;
    if (n_ == 0) return "no labels";
    int units = 0;
    for (int i = 0; i < n_; ++i) {
      if (labels_[i].index != i) os << "label " << i << " has index " << labels_[i].index << "; ";
      if (labels_[i].is_unit) ++units;
      int d = labels_[i].dual;
      if (d < 0 || d >= n_) {
        os << "dual of " << i << " out of range; ";
        continue;
      }
      if (labels_[d].dual != i) os << "dual not an involution at " << i << "; ";
    }
    if (units != 1 || !labels_[0].is_unit) os << "label 0 must be the unique unit; ";
    if (labels_[0].dual != 0) os << "unit must be self-dual; ";
    if (!os.str().empty()) return os.str();
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        if ((*this)(0, i, k) != (i == k ? 1 : 0) || (*this)(i, 0, k) != (i == k ? 1 : 0))
          os << "unit fusion violated at (" << i << "," << k << "); ";
        if ((*this)(i, k, 0) != (k == dual(i) ? 1 : 0))
          os << "N[" << i << "][" << k << "][0] must be delta_{k,dual(i)}; ";
      }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l) {
            long lhs = 0, rhs = 0;
            for (int m = 0; m < n_; ++m) {
              lhs += static_cast<long>((*this)(i, j, m)) * (*this)(m, k, l);
              rhs += static_cast<long>((*this)(j, k, m)) * (*this)(i, m, l);
            }
            if (lhs != rhs) {
              os << "fusion not associative at (" << i << "," << j << "," << k << "," << l << "); ";
              return os.str();
            }
          }
    return os.str();
  }

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  std::vector<Label> labels_;
  int n_ = 0;
  std::vector<int> mult_;
};

/// Internal channel of a three-leg fusion tree: (channel, inner vertex, outer vertex).
using Vertex3 = std::array<int, 3>;

struct FBlock {
  std::vector<Vertex3> rows;  // (e, alpha, beta), left-nested
  std::vector<Vertex3> cols;  // (f, gamma, delta), right-nested
  Matrix matrix;
  Matrix inverse;

  int row_index(const Vertex3& v) const { return index_of(rows, v); }
  int col_index(const Vertex3& v) const { return index_of(cols, v); }

 private:
  static int index_of(const std::vector<Vertex3>& vs, const Vertex3& v) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (vs[i] == v) return static_cast<int>(i);
    return -1;
  }
};

/// Canonical row basis (e, alpha, beta) of F^{abc}_d.
inline std::vector<Vertex3> f_rows(const FusionRing& ring, int a, int b, int c, int d) {
  std::vector<Vertex3> out;
  for (int e = 0; e < ring.rank(); ++e)
    for (int al = 0; al < ring(a, b, e); ++al)
      for (int be = 0; be < ring(e, c, d); ++be) out.push_back({e, al, be});
  return out;
}

/// Canonical column basis (f, gamma, delta) of F^{abc}_d.
inline std::vector<Vertex3> f_cols(const FusionRing& ring, int a, int b, int c, int d) {
  std::vector<Vertex3> out;
  for (int f = 0; f < ring.rank(); ++f)
    for (int ga = 0; ga < ring(b, c, f); ++ga)
      for (int de = 0; de < ring(a, f, d); ++de) out.push_back({f, ga, de});
  return out;
}

class CategoryData {
 public:
  std::string name;
  FusionRing ring;
  std::vector<Complex> theta;
  std::vector<Complex> dualcoef;
  bool dagger = false;
  ToleranceConfig tol;

  int rank() const { return ring.rank(); }
  int dual(int i) const { return ring.dual(i); }

  std::uint64_t key(int a, int b, int c, int d = 0) const {
    const std::uint64_t n = static_cast<std::uint64_t>(rank());
    return ((static_cast<std::uint64_t>(a) * n + b) * n + c) * n + d;
  }

  void set_f(int a, int b, int c, int d, FBlock block) { f_[key(a, b, c, d)] = std::move(block); }
  void set_r(int a, int b, int c, Matrix m) { r_[key(a, b, c)] = std::move(m); }

  bool has_f(int a, int b, int c, int d) const { return f_.count(key(a, b, c, d)) > 0; }
  bool has_r(int a, int b, int c) const { return r_.count(key(a, b, c)) > 0; }

  const FBlock& f(int a, int b, int c, int d) const {
    auto it = f_.find(key(a, b, c, d));
    if (it == f_.end())
      throw Error(ErrorKind::ShapeMismatch, "missing F-block " + quad(a, b, c, d));
    return it->second;
  }

  const Matrix& r(int a, int b, int c) const {
    auto it = r_.find(key(a, b, c));
    if (it == r_.end())
      throw Error(ErrorKind::ShapeMismatch, "missing R-block (" + std::to_string(a) + "," +
                                                std::to_string(b) + "," + std::to_string(c) + ")");
    return it->second;
  }

  const Matrix& r_inverse(int a, int b, int c) const {
    auto it = r_inv_.find(key(a, b, c));
    if (it == r_inv_.end()) return r(a, b, c);  // forces the missing-block error
    return it->second;
  }

  const std::unordered_map<std::uint64_t, FBlock>& f_blocks() const { return f_; }
  const std::unordered_map<std::uint64_t, Matrix>& r_blocks() const { return r_; }

  std::array<int, 4> unkey(std::uint64_t k) const {
    const std::uint64_t n = static_cast<std::uint64_t>(rank());
    std::array<int, 4> out{};
    for (int i = 3; i >= 0; --i) {
      out[i] = static_cast<int>(k % n);
      k /= n;
    }
    return out;
  }

  std::string quad(int a, int b, int c, int d) const {
    return "(" + ring.name(a) + "," + ring.name(b) + "," + ring.name(c) + ";" + ring.name(d) + ")";
  }

  /// Fills unit-leg F/R blocks, reorders nothing, checks every block shape against the
  /// fusion multiplicities and caches inverses. Throws ShapeMismatch / InvalidData.
  void finalize() {
    const std::string bad = ring.violation();
    if (!bad.empty()) throw Error(ErrorKind::InvalidData, "fusion ring: " + bad);
    const int n = rank();
    if (static_cast<int>(theta.size()) != n)
      throw Error(ErrorKind::ShapeMismatch, "theta must have one entry per label");
    if (dualcoef.empty()) dualcoef.assign(n, Complex(1.0));
    if (static_cast<int>(dualcoef.size()) != n)
      throw Error(ErrorKind::ShapeMismatch, "dualcoef must have one entry per label");
    if (!tol.valid()) throw Error(ErrorKind::InvalidData, "tolerance must be finite and non-negative");

    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            auto rows = f_rows(ring, a, b, c, d);
            auto cols = f_cols(ring, a, b, c, d);
            if (rows.size() != cols.size())
              throw Error(ErrorKind::ShapeMismatch, "fusion ring inconsistent at " + quad(a, b, c, d));
            if (rows.empty()) {
              if (has_f(a, b, c, d))
                throw Error(ErrorKind::ShapeMismatch, "F-block given for inadmissible " + quad(a, b, c, d));
              continue;
            }
            if (!has_f(a, b, c, d)) {
              if (a != 0 && b != 0 && c != 0)
                throw Error(ErrorKind::ShapeMismatch, "missing F-block " + quad(a, b, c, d));
              FBlock blk;
              blk.rows = rows;
              blk.cols = cols;
              blk.matrix = unit_leg_identity(rows, cols, a, b, c, d);
              set_f(a, b, c, d, std::move(blk));
            }
            FBlock& blk = f_[key(a, b, c, d)];
            if (blk.rows != rows || blk.cols != cols ||
                blk.matrix.rows() != static_cast<Eigen::Index>(rows.size()) ||
                blk.matrix.cols() != static_cast<Eigen::Index>(cols.size()))
              throw Error(ErrorKind::ShapeMismatch, "F-block shape disagrees with fusion multiplicities at " +
                                                        quad(a, b, c, d));
            Eigen::FullPivLU<Matrix> lu(blk.matrix);
            if (!lu.isInvertible())
              throw Error(ErrorKind::InvalidData, "F-block not invertible at " + quad(a, b, c, d));
            blk.inverse = lu.inverse();
          }

    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const int m = ring(a, b, c);
          if (m == 0) {
            if (has_r(a, b, c))
              throw Error(ErrorKind::ShapeMismatch, "R-block given for inadmissible channel");
            continue;
          }
          if (!has_r(a, b, c)) {
            if (a != 0 && b != 0)
              throw Error(ErrorKind::ShapeMismatch, "missing R-block (" + ring.name(a) + "," +
                                                        ring.name(b) + ";" + ring.name(c) + ")");
            set_r(a, b, c, Matrix::Identity(m, m));
          }
          const Matrix& rb = r_[key(a, b, c)];
          if (rb.rows() != m || rb.cols() != m)
            throw Error(ErrorKind::ShapeMismatch, "R-block shape disagrees with N at (" + ring.name(a) +
                                                      "," + ring.name(b) + ";" + ring.name(c) + ")");
          Eigen::FullPivLU<Matrix> lu(rb);
          if (!lu.isInvertible()) throw Error(ErrorKind::InvalidData, "R-block not invertible");
          r_inv_[key(a, b, c)] = lu.inverse();
        }
  }

 private:
  // With a strict unit every F-move with a unit leg is the identity once
  // rows and columns are matched through the unit's trivial vertex.
  static Matrix unit_leg_identity(const std::vector<Vertex3>& rows, const std::vector<Vertex3>& cols, int a,
                                  int b, int c, int d) {
    Matrix m = Matrix::Zero(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto& [e, al, be] = rows[i];
        const auto& [f, ga, de] = cols[j];
        bool match = false;
        if (a == 0) match = (e == b && al == 0 && f == d && be == ga && de == 0);
        else if (b == 0) match = (e == a && f == c && al == 0 && ga == 0 && be == de);
        else if (c == 0) match = (f == b && ga == 0 && e == d && be == 0 && al == de);
        if (match) m(i, j) = 1.0;
      }
    return m;
  }

  std::unordered_map<std::uint64_t, FBlock> f_;
  std::unordered_map<std::uint64_t, Matrix> r_;
  std::unordered_map<std::uint64_t, Matrix> r_inv_;
};

/// Numerical invariants of loaded data that do not need the morphism calculus.
inline Report check_data_invariants(const CategoryData& cat) {
  Report rep;
  rep.subject = cat.name;
  const auto& tol = cat.tol;
  const int n = cat.rank();
  rep.add("unit_twist", std::abs(cat.theta[0] - 1.0), tol.threshold(1.0), "theta of the unit differs from 1");
  double dual_twist = 0.0;
  std::string w;
  for (int i = 0; i < n; ++i) {
    double r = std::abs(cat.theta[cat.dual(i)] - cat.theta[i]);
    if (r > dual_twist) {
      dual_twist = r;
      w = "label " + cat.ring.name(i);
    }
  }
  rep.add("dual_twist", dual_twist, tol.threshold(1.0), w);
  if (cat.dagger) {
    double worst = 0.0;
    std::string where;
    for (const auto& [k, blk] : cat.f_blocks()) {
      Matrix id = Matrix::Identity(blk.matrix.rows(), blk.matrix.rows());
      double r = max_abs(blk.matrix * blk.matrix.adjoint() - id);
      if (r > worst) {
        worst = r;
        auto q = cat.unkey(k);
        where = "F" + cat.quad(q[0], q[1], q[2], q[3]);
      }
    }
    for (const auto& [k, blk] : cat.r_blocks()) {
      Matrix id = Matrix::Identity(blk.rows(), blk.rows());
      double r = max_abs(blk * blk.adjoint() - id);
      if (r > worst) {
        worst = r;
        where = "R-block";
      }
    }
    for (int i = 0; i < n; ++i) {
      double r = std::abs(std::abs(cat.theta[i]) - 1.0);
      if (r > worst) {
        worst = r;
        where = "theta of " + cat.ring.name(i);
      }
    }
    rep.add("dagger_unitarity", worst, tol.threshold(1.0), where);
  }
  return rep;
}

/// Pentagon identity for every 4-tuple of external labels and every total charge.
/// Both sides are computed as change-of-basis matrices between the fully
/// left-nested and fully right-nested four-leaf trees.
inline Report verify_pentagon(const CategoryData& cat) {
  const auto& N = cat.ring;
  const int n = cat.rank();
  double worst = 0.0;
  std::string witness;
  long tuples = 0;

  using Key5 = std::array<int, 5>;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int t = 0; t < n; ++t) {
            // (((a b)_x c)_y d)_t with vertices mu1, mu2, mu3
            std::map<Key5, int> left;
            for (int x = 0; x < n; ++x)
              for (int m1 = 0; m1 < N(a, b, x); ++m1)
                for (int y = 0; y < n; ++y)
                  for (int m2 = 0; m2 < N(x, c, y); ++m2)
                    for (int m3 = 0; m3 < N(y, d, t); ++m3) left.emplace(Key5{x, m1, y, m2, m3}, 0);
            if (left.empty()) continue;
            // (a (b (c d)_z)_w)_t with vertices nu1, rho1, rho2
            std::map<Key5, int> right;
            for (int z = 0; z < n; ++z)
              for (int v1 = 0; v1 < N(c, d, z); ++v1)
                for (int w = 0; w < n; ++w)
                  for (int r1 = 0; r1 < N(b, z, w); ++r1)
                    for (int r2 = 0; r2 < N(a, w, t); ++r2) right.emplace(Key5{z, v1, w, r1, r2}, 0);
            int i = 0;
            for (auto& kv : left) kv.second = i++;
            i = 0;
            for (auto& kv : right) kv.second = i++;
            if (left.size() != right.size())
              throw Error(ErrorKind::ShapeMismatch, "pentagon bases differ in size");

            Matrix p1 = Matrix::Zero(left.size(), right.size());
            Matrix p2 = Matrix::Zero(left.size(), right.size());
            for (const auto& [s, row] : left) {
              const auto [x, m1, y, m2, m3] = s;
              // path 1: F^{xcd}_t then F^{abz}_t
              const FBlock& f1 = cat.f(x, c, d, t);
              const int r1 = f1.row_index({y, m2, m3});
              for (std::size_t j = 0; j < f1.cols.size(); ++j) {
                const auto [z, v1, v2] = f1.cols[j];
                const Complex c1 = f1.matrix(r1, j);
                if (c1 == 0.0) continue;
                const FBlock& f2 = cat.f(a, b, z, t);
                const int r2 = f2.row_index({x, m1, v2});
                for (std::size_t k = 0; k < f2.cols.size(); ++k) {
                  const auto [w, q1, q2] = f2.cols[k];
                  p1(row, right.at({z, v1, w, q1, q2})) += c1 * f2.matrix(r2, k);
                }
              }
              // path 2: F^{abc}_y, then F^{aud}_t, then F^{bcd}_w
              const FBlock& g1 = cat.f(a, b, c, y);
              const int s1 = g1.row_index({x, m1, m2});
              for (std::size_t j = 0; j < g1.cols.size(); ++j) {
                const auto [u, s1a, s2a] = g1.cols[j];
                const Complex c1 = g1.matrix(s1, j);
                if (c1 == 0.0) continue;
                const FBlock& g2 = cat.f(a, u, d, t);
                const int s2 = g2.row_index({y, s2a, m3});
                for (std::size_t k = 0; k < g2.cols.size(); ++k) {
                  const auto [w, t1, t2] = g2.cols[k];
                  const Complex c2 = g2.matrix(s2, k);
                  if (c2 == 0.0) continue;
                  const FBlock& g3 = cat.f(b, c, d, w);
                  const int s3 = g3.row_index({u, s1a, t1});
                  for (std::size_t l = 0; l < g3.cols.size(); ++l) {
                    const auto [z, v1, q1] = g3.cols[l];
                    p2(row, right.at({z, v1, w, q1, t2})) += c1 * c2 * g3.matrix(s3, l);
                  }
                }
              }
            }
            ++tuples;
            const double r = max_abs(p1 - p2);
            if (r > worst) {
              worst = r;
              witness = "(a,b,c,d;t) = (" + N.name(a) + "," + N.name(b) + "," + N.name(c) + "," +
                        N.name(d) + ";" + N.name(t) + ")";
            }
          }
  Report rep;
  rep.subject = cat.name;
  rep.add("pentagon", worst, cat.tol.abs_tol, witness);
  rep.scalars["pentagon_tuples"] = static_cast<double>(tuples);
  return rep;
}

/// Perron-Frobenius dimension of each label: spectral radius of its fusion matrix.
inline std::vector<double> perron_frobenius_dims(const FusionRing& ring) {
  std::vector<double> out;
  for (int i = 0; i < ring.rank(); ++i) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(ring.fusion_matrix(i), false);
    double best = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      best = std::max(best, std::abs(es.eigenvalues()(k)));
    out.push_back(best);
  }
  return out;
}

}  // namespace modcat
