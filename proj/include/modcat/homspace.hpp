#pragma once

// Morphism calculus for a skeletal category.
//
// An object is a tensor word whose leaves are multiplicity vectors (a leaf is the
// direct sum  (+)_i n_i U_i). Words are strictly associative; the associator is
// absorbed into the canonical basis: for a word W and a label k, Hom(U_k, W) has
// the basis of left-nested splitting trees, sorted lexicographically by the key
//     (l1, c1, l2, c2, e2, mu2, ..., ln, cn, en, mun)
// where (l_i, c_i) picks copy c_i of label l_i in leaf i, e_i is the channel after
// fusing the first i leaves and mu_i the vertex multiplicity index.
//
// A morphism X -> Y is one matrix per label k of shape mult_k(Y) x mult_k(X) in
// these bases. Composition is blockwise; the tensor product conjugates the
// Kronecker action by the F-derived change of basis between the split basis
// (tree of X) (x) (tree of Y) and the left-nested basis of the concatenated word.

#include "modcat/fusion_data.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <random>

namespace modcat {

using Mult = std::vector<int>;
using TreeKey = std::vector<int>;

class Object {
 public:
  Object() = default;
  explicit Object(std::vector<Mult> leaves) : leaves_(std::move(leaves)) { normalize(); }

  static Object unit(int rank) {
    Mult m(rank, 0);
    m[0] = 1;
    return Object({m});
  }
  static Object simple(int rank, int i) {
    Mult m(rank, 0);
    m.at(i) = 1;
    return Object({m});
  }
  static Object atomic(Mult m) { return Object({std::move(m)}); }
  static Object word(int rank, const std::vector<int>& labels) {
    std::vector<Mult> leaves;
    for (int l : labels) {
      Mult m(rank, 0);
      m.at(l) = 1;
      leaves.push_back(m);
    }
    return Object(std::move(leaves));
  }

  const std::vector<Mult>& leaves() const { return leaves_; }
  std::size_t length() const { return leaves_.size(); }
  bool is_atomic() const { return leaves_.size() == 1; }
  const Mult& leaf(std::size_t i) const { return leaves_.at(i); }
  int rank() const { return leaves_.empty() ? 0 : static_cast<int>(leaves_[0].size()); }

  bool is_unit() const { return leaves_.size() == 1 && is_unit_leaf(leaves_[0]); }

  /// Concatenation X (x) Y.
  friend Object operator*(const Object& x, const Object& y) {
    std::vector<Mult> l = x.leaves_;
    l.insert(l.end(), y.leaves_.begin(), y.leaves_.end());
    return Object(std::move(l));
  }

  Object prefix(std::size_t n) const {
    return Object(std::vector<Mult>(leaves_.begin(), leaves_.begin() + static_cast<long>(n)));
  }
  Object suffix(std::size_t from) const {
    return Object(std::vector<Mult>(leaves_.begin() + static_cast<long>(from), leaves_.end()));
  }

  friend bool operator==(const Object& a, const Object& b) { return a.leaves_ == b.leaves_; }
  friend bool operator!=(const Object& a, const Object& b) { return !(a == b); }
  friend bool operator<(const Object& a, const Object& b) { return a.leaves_ < b.leaves_; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      if (i) s += " (x) ";
      s += "[";
      for (std::size_t j = 0; j < leaves_[i].size(); ++j) {
        if (j) s += ",";
        s += std::to_string(leaves_[i][j]);
      }
      s += "]";
    }
    return s;
  }

  static bool is_unit_leaf(const Mult& m) {
    if (m.empty() || m[0] != 1) return false;
    for (std::size_t i = 1; i < m.size(); ++i)
      if (m[i] != 0) return false;
    return true;
  }

 private:
  // Strict unit: drop single-copy unit leaves unless the word would become empty.
  void normalize() {
    if (leaves_.size() <= 1) return;
    std::vector<Mult> kept;
    for (auto& l : leaves_)
      if (!is_unit_leaf(l)) kept.push_back(l);
    if (kept.empty()) kept.push_back(leaves_[0]);
    leaves_ = std::move(kept);
  }

  std::vector<Mult> leaves_;
};

/// Canonical left-nested fusion-tree basis of a word, one list per target label.
struct WordBasis {
  std::vector<std::vector<TreeKey>> trees;
  std::vector<std::map<TreeKey, int>> index;

  int size(int k) const { return static_cast<int>(trees[k].size()); }
  int find(int k, const TreeKey& t) const {
    auto it = index[k].find(t);
    return it == index[k].end() ? -1 : it->second;
  }
  Mult multiplicities() const {
    Mult m;
    for (const auto& t : trees) m.push_back(static_cast<int>(t.size()));
    return m;
  }
};

struct Morphism {
  Object source;
  Object target;
  std::vector<Matrix> blocks;

  int rank() const { return static_cast<int>(blocks.size()); }

  Morphism& operator*=(Complex s) {
    for (auto& b : blocks) b *= s;
    return *this;
  }
  friend Morphism operator*(Complex s, Morphism f) { return f *= s; }

  friend Morphism operator+(Morphism f, const Morphism& g) {
    check_same_shape(f, g);
    for (std::size_t k = 0; k < f.blocks.size(); ++k) f.blocks[k] += g.blocks[k];
    return f;
  }
  friend Morphism operator-(Morphism f, const Morphism& g) {
    check_same_shape(f, g);
    for (std::size_t k = 0; k < f.blocks.size(); ++k) f.blocks[k] -= g.blocks[k];
    return f;
  }

  /// Blockwise conjugate transpose (the dagger in orthonormal bases).
  Morphism adjoint() const {
    Morphism a{target, source, {}};
    for (const auto& b : blocks) a.blocks.push_back(b.adjoint());
    return a;
  }

  /// Same blocks, reinterpreted between other words with identical decompositions.
  Morphism retyped(Object src, Object tgt) const {
    Morphism m{std::move(src), std::move(tgt), blocks};
    return m;
  }

  double norm() const {
    double n = 0.0;
    for (const auto& b : blocks) n = std::max(n, max_abs(b));
    return n;
  }

  static void check_same_shape(const Morphism& f, const Morphism& g) {
    if (f.blocks.size() != g.blocks.size())
      throw Error(ErrorKind::ShapeMismatch, "morphisms over different label sets");
    for (std::size_t k = 0; k < f.blocks.size(); ++k)
      if (f.blocks[k].rows() != g.blocks[k].rows() || f.blocks[k].cols() != g.blocks[k].cols())
        throw Error(ErrorKind::ShapeMismatch, "block shapes differ at label " + std::to_string(k));
  }
};

/// Max-abs blockwise difference of two morphisms whose decompositions align.
inline double residual(const Morphism& f, const Morphism& g) {
  Morphism::check_same_shape(f, g);
  double r = 0.0;
  for (std::size_t k = 0; k < f.blocks.size(); ++k) r = std::max(r, max_abs(f.blocks[k] - g.blocks[k]));
  return r;
}

struct Dualities {
  Morphism b;        // 1 -> U (x) U*
  Morphism d;        // U* (x) U -> 1
  Morphism b_tilde;  // 1 -> U* (x) U
  Morphism d_tilde;  // U (x) U* -> 1
};

/// Scalar coefficients of the four duality morphisms of a simple label on the
/// unique channel-0 tree.
struct DualityScalars {
  Complex b, d, b_tilde, d_tilde;
};

/// The morphism calculus over one CategoryData. Immutable after construction apart
/// from internal caches, which are guarded; instances may be shared across threads.
class Category {
 public:
  explicit Category(CategoryData data) : data_(std::make_shared<CategoryData>(std::move(data))) {}
  explicit Category(std::shared_ptr<const CategoryData> data) : data_(std::move(data)) {}

  Category(const Category&) = delete;
  Category& operator=(const Category&) = delete;

  const CategoryData& data() const { return *data_; }
  std::shared_ptr<const CategoryData> data_ptr() const { return data_; }
  int rank() const { return data_->rank(); }
  const ToleranceConfig& tol() const { return data_->tol; }
  const FusionRing& ring() const { return data_->ring; }

  Object unit() const { return Object::unit(rank()); }
  Object simple(int i) const { return Object::simple(rank(), i); }
  Object word(const std::vector<int>& labels) const { return Object::word(rank(), labels); }
  Object atomic(Mult m) const {
    if (static_cast<int>(m.size()) != rank())
      throw Error(ErrorKind::ShapeMismatch, "multiplicity vector has wrong length");
    return Object::atomic(std::move(m));
  }

  /// Dual of an atomic object: copy c of U_i becomes copy c of U_i^vee.
  Object dual(const Object& x) const {
    if (!x.is_atomic()) throw Error(ErrorKind::ObjectMismatch, "dual() expects an atomic object");
    Mult m(rank(), 0);
    for (int i = 0; i < rank(); ++i) m[data_->dual(i)] = x.leaf(0)[i];
    return atomic(m);
  }

  // ---- decompositions -------------------------------------------------------

  const WordBasis& decompose(const Object& w) const { return *basis_ptr(w); }

  Mult decomposition(const Object& w) const { return decompose(w).multiplicities(); }

  int multiplicity(const Object& w, int k) const { return decompose(w).size(k); }

  int dim_hom(const Object& x, const Object& y) const {
    const auto mx = decomposition(x), my = decomposition(y);
    int s = 0;
    for (int k = 0; k < rank(); ++k) s += mx[k] * my[k];
    return s;
  }

  // ---- basic morphisms -------------------------------------------------------

  Morphism zero(const Object& src, const Object& tgt) const {
    Morphism m{src, tgt, {}};
    const auto ms = decomposition(src), mt = decomposition(tgt);
    for (int k = 0; k < rank(); ++k) m.blocks.push_back(Matrix::Zero(mt[k], ms[k]));
    return m;
  }

  Morphism identity(const Object& x) const {
    Morphism m{x, x, {}};
    for (int mk : decomposition(x)) m.blocks.push_back(Matrix::Identity(mk, mk));
    return m;
  }

  Morphism scalar(Complex s) const { return s * identity(unit()); }

  /// Morphism with the given blocks; shapes are validated.
  Morphism make(const Object& src, const Object& tgt, std::vector<Matrix> blocks) const {
    Morphism m{src, tgt, std::move(blocks)};
    check_shapes(m);
    return m;
  }

  void check_shapes(const Morphism& m) const {
    if (m.rank() != rank()) throw Error(ErrorKind::ShapeMismatch, "morphism has wrong number of blocks");
    const auto ms = decomposition(m.source), mt = decomposition(m.target);
    for (int k = 0; k < rank(); ++k)
      if (m.blocks[k].rows() != mt[k] || m.blocks[k].cols() != ms[k])
        throw Error(ErrorKind::ShapeMismatch, "block " + ring().name(k) + " has shape " +
                                                  std::to_string(m.blocks[k].rows()) + "x" +
                                                  std::to_string(m.blocks[k].cols()) + ", expected " +
                                                  std::to_string(mt[k]) + "x" + std::to_string(ms[k]));
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (g.source != f.target)
      throw Error(ErrorKind::ObjectMismatch, "compose: source " + g.source.str() + " != target " + f.target.str());
    Morphism h{f.source, g.target, {}};
    for (int k = 0; k < rank(); ++k) h.blocks.push_back(g.blocks[k] * f.blocks[k]);
    return h;
  }

  /// g o f o ... composed right to left: compose_all({h, g, f}) = h o g o f.
  Morphism compose_all(std::initializer_list<Morphism> ms) const {
    auto it = std::rbegin(ms);
    Morphism acc = *it;
    for (++it; it != std::rend(ms); ++it) acc = compose(*it, acc);
    return acc;
  }

  Morphism tensor(const Morphism& f, const Morphism& g) const {
    const Object src = f.source * g.source;
    const Object tgt = f.target * g.target;
    Morphism out{src, tgt, {}};
    const auto& S = split(f.source, g.source);
    const auto& T = split(f.target, g.target);
    for (int c = 0; c < rank(); ++c) {
      const auto& sc = S.channels[c];
      const auto& tc = T.channels[c];
      Matrix k = Matrix::Zero(tc.entries.size(), sc.entries.size());
      for (std::size_t j = 0; j < sc.entries.size(); ++j) {
        const auto& [a, s, b, t, mu] = sc.entries[j];
        const Matrix& fa = f.blocks[a];
        const Matrix& gb = g.blocks[b];
        for (int s2 = 0; s2 < fa.rows(); ++s2) {
          const Complex x = fa(s2, s);
          if (x == 0.0) continue;
          for (int t2 = 0; t2 < gb.rows(); ++t2) {
            const Complex y = gb(t2, t);
            if (y == 0.0) continue;
            k(tc.find({a, s2, b, t2, mu}), j) += x * y;
          }
        }
      }
      out.blocks.push_back(tc.to_nested * k * sc.from_nested);
    }
    return out;
  }

  Morphism tensor_all(std::initializer_list<Morphism> ms) const {
    auto it = ms.begin();
    Morphism acc = *it;
    for (++it; it != ms.end(); ++it) acc = tensor(acc, *it);
    return acc;
  }

  // ---- braiding and twist ----------------------------------------------------

  /// c_{X,Y} : X (x) Y -> Y (x) X.
  Morphism braiding(const Object& x, const Object& y) const { return braid(x, y, false); }

  /// c_{X,Y}^{-1} : Y (x) X -> X (x) Y.
  Morphism braiding_inv(const Object& x, const Object& y) const { return braid(x, y, true); }

  Morphism twist(const Object& x) const {
    Morphism m = identity(x);
    for (int k = 0; k < rank(); ++k) m.blocks[k] *= data_->theta[k];
    return m;
  }

  Morphism twist_inv(const Object& x) const {
    Morphism m = identity(x);
    for (int k = 0; k < rank(); ++k) m.blocks[k] /= data_->theta[k];
    return m;
  }

  // ---- dualities ---------------------------------------------------------------

  /// Coefficients of b, d, b~, d~ for a simple label. b is fixed by dualcoef, d by the
  /// left zig-zag, d~ = d o c_{U,U*} o (theta_U (x) id) and b~ by the right zig-zag.
  const DualityScalars& duality_scalars(int i) const {
    std::call_once(duality_once_, [this] { compute_duality_scalars(); });
    if (!duality_error_.empty()) throw Error(ErrorKind::DegenerateDuality, duality_error_);
    return duality_[i];
  }

  Dualities dualities(int i) const {
    Object u = simple(i);
    return {coev(u), ev(u), coev_tilde(u), ev_tilde(u)};
  }

  /// b_X : 1 -> X (x) X*, X atomic.
  Morphism coev(const Object& x) const { return pairing_morphism(x, Kind::Coev); }
  /// d_X : X* (x) X -> 1.
  Morphism ev(const Object& x) const { return pairing_morphism(x, Kind::Ev); }
  /// b~_X : 1 -> X* (x) X.
  Morphism coev_tilde(const Object& x) const { return pairing_morphism(x, Kind::CoevTilde); }
  /// d~_X : X (x) X* -> 1.
  Morphism ev_tilde(const Object& x) const { return pairing_morphism(x, Kind::EvTilde); }

  /// Categorical dimension of an atomic object: sum_i n_i d_i.
  Complex dimension(const Object& x) const {
    if (!x.is_atomic()) return dimension(atomic(decomposition(x)));
    Complex s = 0.0;
    for (int i = 0; i < rank(); ++i)
      if (x.leaf(0)[i]) s += static_cast<double>(x.leaf(0)[i]) * loop_value(i);
    return s;
  }

  /// d~_i o b_i.
  Complex loop_value(int i) const {
    const auto& s = duality_scalars(i);
    return s.d_tilde * s.b;
  }

  // ---- flattening ----------------------------------------------------------------

  /// Isomorphism W -> (+)_k mult_k(W) U_k with identity blocks.
  Morphism flatten(const Object& w) const {
    Object flat = atomic(decomposition(w));
    return identity(w).retyped(w, flat);
  }
  Morphism unflatten(const Object& w) const {
    Object flat = atomic(decomposition(w));
    return identity(w).retyped(flat, w);
  }

  /// The basis embedding U_k -> W of tree `index` in Hom(U_k, W).
  Morphism tree_embedding(const Object& w, int k, int index) const {
    Morphism m = zero(simple(k), w);
    m.blocks[k](index, 0) = 1.0;
    return m;
  }

  /// Basis vertex mu of Hom(U_c, U_a (x) U_b); unit legs are absorbed by the strict unit.
  Morphism vertex(int a, int b, int c, int mu = 0) const {
    const Object w = word({a, b});
    if (mu < 0 || mu >= ring()(a, b, c))
      throw Error(ErrorKind::ShapeMismatch, "no vertex " + std::to_string(mu) + " in " + ring().name(a) + " (x) " +
                                                ring().name(b) + " -> " + ring().name(c));
    const int idx = (a == 0 || b == 0) ? 0 : decompose(w).find(c, TreeKey{a, 0, b, 0, c, mu});
    return tree_embedding(w, c, idx);
  }

  // ---- split bases ------------------------------------------------------------

  /// Split-basis entry (a, s, b, t, mu): tree s of U on channel a, tree t of V on
  /// channel b, vertex mu in a (x) b -> c.
  using SplitEntry = std::array<int, 5>;

  struct SplitChannel {
    std::vector<SplitEntry> entries;
    std::map<SplitEntry, int> lookup;
    Matrix to_nested;    // nested coordinates of each split vector (columns)
    Matrix from_nested;  // inverse
    int find(const SplitEntry& e) const {
      auto it = lookup.find(e);
      if (it == lookup.end()) throw Error(ErrorKind::ShapeMismatch, "split entry not found");
      return it->second;
    }
  };

  struct SplitData {
    std::vector<SplitChannel> channels;
  };

  /// Change of basis between (tree of U) (x) (tree of V) and the left-nested basis of U V.
  const SplitData& split(const Object& u, const Object& v) const { return *split_ptr(u.leaves(), v.leaves()); }

 private:
  enum class Kind { Coev, Ev, CoevTilde, EvTilde };

  using WordKey = std::vector<Mult>;

  std::shared_ptr<const WordBasis> basis_ptr(const Object& w) const { return basis_raw(w.leaves()); }

  std::shared_ptr<const WordBasis> basis_raw(const WordKey& leaves) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = bases_.find(leaves);
      if (it != bases_.end()) return it->second;
    }
    auto b = std::make_shared<WordBasis>(build_basis(leaves));
    std::lock_guard<std::mutex> lock(mu_);
    return bases_.emplace(leaves, std::move(b)).first->second;
  }

  WordBasis build_basis(const WordKey& leaves) const {
    const int n = rank();
    const auto& N = ring();
    for (const auto& l : leaves)
      if (static_cast<int>(l.size()) != n) throw Error(ErrorKind::ShapeMismatch, "leaf has wrong rank");
    std::vector<std::pair<int, TreeKey>> cur;  // (channel, key)
    for (int l = 0; l < n; ++l)
      for (int c = 0; c < leaves[0][l]; ++c) cur.push_back({l, {l, c}});
    for (std::size_t i = 1; i < leaves.size(); ++i) {
      std::vector<std::pair<int, TreeKey>> next;
      for (const auto& [e, key] : cur)
        for (int l = 0; l < n; ++l)
          for (int c = 0; c < leaves[i][l]; ++c)
            for (int k = 0; k < n; ++k)
              for (int mu = 0; mu < N(e, l, k); ++mu) {
                TreeKey t = key;
                t.insert(t.end(), {l, c, k, mu});
                next.push_back({k, std::move(t)});
              }
      cur = std::move(next);
    }
    WordBasis wb;
    wb.trees.resize(n);
    wb.index.resize(n);
    for (auto& [k, key] : cur) wb.trees[k].push_back(std::move(key));
    for (int k = 0; k < n; ++k) {
      std::sort(wb.trees[k].begin(), wb.trees[k].end());
      for (std::size_t i = 0; i < wb.trees[k].size(); ++i) wb.index[k][wb.trees[k][i]] = static_cast<int>(i);
    }
    return wb;
  }

  std::shared_ptr<const SplitData> split_ptr(const WordKey& u, const WordKey& v) const {
    auto key = std::make_pair(u, v);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = splits_.find(key);
      if (it != splits_.end()) return it->second;
    }
    auto s = std::make_shared<SplitData>(build_split(u, v));
    std::lock_guard<std::mutex> lock(mu_);
    return splits_.emplace(std::move(key), std::move(s)).first->second;
  }

  static int channel_of(const TreeKey& t) { return t.size() == 2 ? t[0] : t[t.size() - 2]; }

  SplitData build_split(const WordKey& u, const WordKey& v) const {
    const int n = rank();
    const auto& N = ring();
    const auto bu = basis_raw(u);
    const auto bv = basis_raw(v);
    WordKey uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const auto buv = basis_raw(uv);

    SplitData out;
    out.channels.resize(n);
    for (int a = 0; a < n; ++a)
      for (int s = 0; s < bu->size(a); ++s)
        for (int b = 0; b < n; ++b)
          for (int t = 0; t < bv->size(b); ++t)
            for (int c = 0; c < n; ++c)
              for (int mu = 0; mu < N(a, b, c); ++mu) out.channels[c].entries.push_back({a, s, b, t, mu});

    std::shared_ptr<const SplitData> prev;  // split of (u, v minus its last leaf)
    if (v.size() > 1) prev = split_ptr(u, WordKey(v.begin(), v.end() - 1));
    WordKey uv_prev = u;
    uv_prev.insert(uv_prev.end(), v.begin(), v.end() - 1);
    const auto buv_prev = v.size() > 1 ? basis_raw(uv_prev) : nullptr;
    const auto bv_prev = v.size() > 1 ? basis_raw(WordKey(v.begin(), v.end() - 1)) : nullptr;

    for (int c = 0; c < n; ++c) {
      auto& ch = out.channels[c];
      std::sort(ch.entries.begin(), ch.entries.end());
      for (std::size_t i = 0; i < ch.entries.size(); ++i) ch.lookup[ch.entries[i]] = static_cast<int>(i);
      const int dim = buv->size(c);
      if (static_cast<int>(ch.entries.size()) != dim)
        throw Error(ErrorKind::ShapeMismatch, "split and nested bases differ in size");
      ch.to_nested = Matrix::Zero(dim, dim);
      for (std::size_t j = 0; j < ch.entries.size(); ++j) {
        const auto [a, s, b, t, mu] = ch.entries[j];
        const TreeKey& ts = bu->trees[a][s];
        const TreeKey& tt = bv->trees[b][t];
        if (v.size() == 1) {
          TreeKey nested = ts;
          nested.insert(nested.end(), {tt[0], tt[1], c, mu});
          ch.to_nested(buv->find(c, nested), j) = 1.0;
          continue;
        }
        // tt = t' ++ (l, copy, b, nu); split vector is (a (b' l)_b^nu)_c^mu.
        const int l = tt[tt.size() - 4], copy = tt[tt.size() - 3], nu = tt[tt.size() - 1];
        const TreeKey tprev(tt.begin(), tt.end() - 4);
        const int bp = channel_of(tprev);
        const int tprev_idx = bv_prev->find(bp, tprev);
        const FBlock& F = data_->f(a, bp, l, c);
        const int col = F.col_index({b, nu, mu});
        for (std::size_t r = 0; r < F.rows.size(); ++r) {
          const Complex coef = F.inverse(col, r);
          if (coef == 0.0) continue;
          const auto [e, al, be] = F.rows[r];
          const auto& pch = prev->channels[e];
          const int pj = pch.find({a, s, bp, tprev_idx, al});
          for (int i = 0; i < buv_prev->size(e); ++i) {
            const Complex x = pch.to_nested(i, pj);
            if (x == 0.0) continue;
            TreeKey nested = buv_prev->trees[e][i];
            nested.insert(nested.end(), {l, copy, c, be});
            ch.to_nested(buv->find(c, nested), j) += coef * x;
          }
        }
      }
      ch.from_nested = dim == 0 ? Matrix(0, 0) : Matrix(ch.to_nested.inverse());
    }
    return out;
  }

  Morphism braid(const Object& x, const Object& y, bool inverse) const {
    if (x.is_unit() || y.is_unit()) return identity(x * y);
    if (x.length() == 1 && y.length() == 1) return braid_atomic(x, y, inverse);
    if (y.length() > 1) {
      const Object y1 = y.prefix(y.length() - 1), y2 = y.suffix(y.length() - 1);
      // c_{X, Y1 Y2} = (id_{Y1} (x) c_{X,Y2}) o (c_{X,Y1} (x) id_{Y2})
      Morphism first = tensor(braid(x, y1, inverse), identity(y2));
      Morphism second = tensor(identity(y1), braid(x, y2, inverse));
      return inverse ? compose(first, second) : compose(second, first);
    }
    const Object x1 = x.prefix(x.length() - 1), x2 = x.suffix(x.length() - 1);
    // c_{X1 X2, Y} = (c_{X1,Y} (x) id_{X2}) o (id_{X1} (x) c_{X2,Y})
    Morphism first = tensor(identity(x1), braid(x2, y, inverse));
    Morphism second = tensor(braid(x1, y, inverse), identity(x2));
    return inverse ? compose(first, second) : compose(second, first);
  }

  Morphism braid_atomic(const Object& x, const Object& y, bool inverse) const {
    const Object xy = x * y, yx = y * x;
    Morphism m = inverse ? zero(yx, xy) : zero(xy, yx);
    const auto bxy_p = basis_raw({x.leaf(0), y.leaf(0)});
    const auto byx_p = basis_raw({y.leaf(0), x.leaf(0)});
    const auto& bxy = *bxy_p;
    const auto& byx = *byx_p;
    const auto& N = ring();
    for (int k = 0; k < rank(); ++k)
      for (int i = 0; i < bxy.size(k); ++i) {
        const TreeKey& t = bxy.trees[k][i];  // (l1, c1, l2, c2, k, mu)
        const int l1 = t[0], c1 = t[1], l2 = t[2], c2 = t[3], mu = t[5];
        const Matrix& R = inverse ? data_->r_inverse(l1, l2, k) : data_->r(l1, l2, k);
        for (int nu = 0; nu < N(l2, l1, k); ++nu) {
          const int j = byx.find(k, TreeKey{l2, c2, l1, c1, k, nu});
          if (inverse) m.blocks[k](i, j) = R(mu, nu);
          else m.blocks[k](j, i) = R(nu, mu);
        }
      }
    return m;
  }

  Morphism pairing_morphism(const Object& x, Kind kind) const {
    if (!x.is_atomic()) throw Error(ErrorKind::ObjectMismatch, "dualities are defined for atomic objects");
    const Object xd = dual(x);
    const Object one = unit();
    const bool x_first = (kind == Kind::Coev || kind == Kind::EvTilde);
    const Object pair = x_first ? x * xd : xd * x;
    const bool into_pair = (kind == Kind::Coev || kind == Kind::CoevTilde);
    Morphism m = into_pair ? zero(one, pair) : zero(pair, one);
    const auto bp_p = x_first ? basis_raw({x.leaf(0), xd.leaf(0)}) : basis_raw({xd.leaf(0), x.leaf(0)});
    const auto& bp = *bp_p;
    for (int i = 0; i < rank(); ++i) {
      const int id = data_->dual(i);
      const auto& s = duality_scalars(i);
      const Complex coef = kind == Kind::Coev ? s.b : kind == Kind::Ev ? s.d : kind == Kind::CoevTilde ? s.b_tilde : s.d_tilde;
      for (int c = 0; c < x.leaf(0)[i]; ++c) {
        const TreeKey t = x_first ? TreeKey{i, c, id, c, 0, 0} : TreeKey{id, c, i, c, 0, 0};
        const int row = bp.find(0, t);
        if (into_pair) m.blocks[0](row, 0) = coef;
        else m.blocks[0](0, row) = coef;
      }
    }
    return m;
  }

  void compute_duality_scalars() const {
    const int n = rank();
    duality_.assign(n, DualityScalars{});
    const double eps = std::min(tol().abs_tol, 1e-12);
    for (int i = 0; i < n; ++i) {
      const int id = data_->dual(i);
      const Object u = simple(i), ud = simple(id), one = unit();
      DualityScalars s;
      s.b = data_->dualcoef[i];
      if (std::abs(s.b) <= eps) {
        duality_error_ = "dualcoef of " + ring().name(i) + " is zero";
        return;
      }
      // left zig-zag with a provisional unit-coefficient d
      Morphism b = zero(one, u * ud);
      b.blocks[0](0, 0) = s.b;
      Morphism d = zero(ud * u, one);
      d.blocks[0](0, 0) = 1.0;
      Morphism zz = compose(tensor(identity(u), d), tensor(b, identity(u)));
      const Complex zl = zz.blocks[i](0, 0);
      if (std::abs(zl) <= eps) {
        duality_error_ = "left zig-zag of " + ring().name(i) + " vanishes";
        return;
      }
      s.d = 1.0 / zl;
      s.d_tilde = s.d * data_->r(i, id, 0)(0, 0) * data_->theta[i];
      Morphism dt = zero(u * ud, one);
      dt.blocks[0](0, 0) = s.d_tilde;
      Morphism bt = zero(one, ud * u);
      bt.blocks[0](0, 0) = 1.0;
      Morphism zr = compose(tensor(dt, identity(u)), tensor(identity(u), bt));
      const Complex zrv = zr.blocks[i](0, 0);
      if (std::abs(zrv) <= eps) {
        duality_error_ = "right zig-zag of " + ring().name(i) + " vanishes";
        return;
      }
      s.b_tilde = 1.0 / zrv;
      if (std::abs(s.d_tilde * s.b) <= eps) {
        duality_error_ = "loop value of " + ring().name(i) + " vanishes";
        return;
      }
      duality_[i] = s;
    }
  }

  std::shared_ptr<const CategoryData> data_;
  mutable std::mutex mu_;
  mutable std::map<WordKey, std::shared_ptr<const WordBasis>> bases_;
  mutable std::map<std::pair<WordKey, WordKey>, std::shared_ptr<const SplitData>> splits_;
  mutable std::once_flag duality_once_;
  mutable std::vector<DualityScalars> duality_;
  mutable std::string duality_error_;
};

/// Morphism with independent standard complex Gaussian entries.
inline Morphism random_morphism(const Category& cat, const Object& src, const Object& tgt, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Morphism m = cat.zero(src, tgt);
  for (auto& b : m.blocks)
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace modcat
