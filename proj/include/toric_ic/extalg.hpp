#pragma once
// Exterior algebras A(sigma) with negative grading and finitely generated
// graded modules over them, presented by per-degree bases and action matrices.

#include <toric_ic/exactq.hpp>
#include <toric_ic/fan.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric_ic {

using Mask = std::uint32_t;

// Subsets of {0..n-1} of size s as bitmasks, lexicographic in their sorted
// index lists.
inline std::vector<Mask> combinations(std::size_t n, std::size_t s) {
  std::vector<Mask> out;
  if (s > n) return out;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (auto i : idx) m |= Mask(1) << i;
    out.push_back(m);
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// All subsets ordered by size, then lexicographically.
inline std::vector<Mask> all_subsets(std::size_t n) {
  std::vector<Mask> out;
  for (std::size_t s = 0; s <= n; ++s) {
    auto c = combinations(n, s);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

inline int popcount(Mask m) { return std::popcount(m); }

// Sign of x_u ^ x_S against the sorted monomial x_{S+u}.
inline int insertion_sign(Mask s, std::size_t u) { return (popcount(s & ((Mask(1) << u) - 1)) % 2) ? -1 : 1; }

inline int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

// A(sigma): generators are the columns of `basis` (ambient coordinates).
struct ConeAlgebra {
  QMatrix basis;

  std::size_t gens() const { return basis.cols(); }
  std::size_t ambient() const { return basis.rows(); }
  bool operator==(const ConeAlgebra& o) const { return basis == o.basis; }

  // Coefficients of an ambient vector in the generator basis; throws if the
  // vector lies outside N(sigma)_Q.
  std::vector<Rational> coefficients(const std::vector<Rational>& y) const {
    const QMatrix c = solve_or_throw(basis, QMatrix::column(y), "ConeAlgebra::coefficients");
    std::vector<Rational> out(gens());
    for (std::size_t i = 0; i < gens(); ++i) out[i] = c(i, 0);
    return out;
  }
  bool contains(const ConeAlgebra& sub) const {
    return sub.gens() == 0 || solve(basis, sub.basis).has_value();
  }
};

inline ConeAlgebra cone_algebra(const Fan& fan, int sigma) { return {fan.cone(sigma).basis}; }
inline ConeAlgebra ambient_algebra(std::size_t r) { return {QMatrix::identity(r)}; }

using GradedMap = std::map<int, QMatrix>;

class ExtModule {
 public:
  ExtModule() = default;
  explicit ExtModule(ConeAlgebra alg) : alg_(std::move(alg)), act_(alg_.gens()) {}

  const ConeAlgebra& algebra() const { return alg_; }
  std::size_t gens() const { return alg_.gens(); }

  std::size_t dim(int j) const {
    auto it = dims_.find(j);
    return it == dims_.end() ? 0 : it->second;
  }
  const std::map<int, std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& [_, d] : dims_) s += d;
    return s;
  }
  bool is_zero() const { return dims_.empty(); }

  void set_dim(int j, std::size_t d) {
    if (d == 0) dims_.erase(j);
    else dims_[j] = d;
  }

  // x_t : V_j -> V_{j-1}
  QMatrix action(std::size_t t, int j) const {
    auto it = act_.at(t).find(j);
    if (it != act_[t].end()) return it->second;
    return QMatrix(dim(j - 1), dim(j));
  }
  void set_action(std::size_t t, int j, QMatrix m) {
    if (m.rows() != dim(j - 1) || m.cols() != dim(j)) throw std::logic_error("ExtModule::set_action: shape");
    if (m.is_zero()) act_.at(t).erase(j);
    else act_.at(t)[j] = std::move(m);
  }

  // Left multiplication by an ambient vector y in N(sigma)_Q.
  QMatrix action_by(const std::vector<Rational>& y, int j) const {
    const auto c = alg_.coefficients(y);
    QMatrix out(dim(j - 1), dim(j));
    for (std::size_t t = 0; t < c.size(); ++t)
      if (sgn(c[t]) != 0) out = out + action(t, j) * c[t];
    return out;
  }

  // x^2 = 0 and anticommutation, as exact matrix identities.
  bool check_axioms(std::string* why = nullptr) const {
    for (const auto& [j, _] : dims_) {
      for (std::size_t s = 0; s < gens(); ++s)
        for (std::size_t t = s; t < gens(); ++t) {
          QMatrix m = action(s, j - 1) * action(t, j);
          if (s != t) m = m + action(t, j - 1) * action(s, j);
          if (!m.is_zero()) {
            if (why) *why = "action relation fails at degree " + std::to_string(j);
            return false;
          }
        }
    }
    return true;
  }

 private:
  ConeAlgebra alg_;
  std::map<int, std::size_t> dims_;
  std::vector<std::map<int, QMatrix>> act_;
};

inline QMatrix graded_at(const GradedMap& f, int j, std::size_t rows, std::size_t cols) {
  auto it = f.find(j);
  if (it == f.end()) return QMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols) throw std::logic_error("graded_at: shape mismatch");
  return it->second;
}

inline void graded_set(GradedMap& f, int j, QMatrix m) {
  if (m.is_zero()) f.erase(j);
  else f[j] = std::move(m);
}

inline std::vector<int> degree_union(const ExtModule& a, const ExtModule& b) {
  std::set<int> s;
  for (const auto& [j, _] : a.dims()) s.insert(j);
  for (const auto& [j, _] : b.dims()) s.insert(j);
  return {s.begin(), s.end()};
}

inline GradedMap compose(const GradedMap& g, const GradedMap& f) {
  GradedMap out;
  for (const auto& [j, fj] : f) {
    auto it = g.find(j);
    if (it != g.end()) graded_set(out, j, it->second * fj);
  }
  return out;
}

inline GradedMap add(const GradedMap& a, const GradedMap& b, const Rational& scale_b = 1) {
  GradedMap out = a;
  for (const auto& [j, m] : b) {
    auto it = out.find(j);
    if (it == out.end()) graded_set(out, j, m * scale_b);
    else graded_set(out, j, it->second + m * scale_b);
  }
  return out;
}

inline GradedMap scale(const GradedMap& a, const Rational& c) {
  GradedMap out;
  if (sgn(c) == 0) return out;
  for (const auto& [j, m] : a) out[j] = m * c;
  return out;
}

inline bool graded_is_zero(const GradedMap& f) {
  for (const auto& [_, m] : f)
    if (!m.is_zero()) return false;
  return true;
}

inline GradedMap identity_map(const ExtModule& v) {
  GradedMap out;
  for (const auto& [j, d] : v.dims()) out[j] = QMatrix::identity(d);
  return out;
}

// f : V -> W is a degree-zero A-linear map, with A the algebra of V acting on
// W by restriction.
inline bool is_module_hom(const ExtModule& v, const ExtModule& w, const GradedMap& f, std::string* why = nullptr) {
  for (const auto& [j, m] : f) {
    if (m.rows() != w.dim(j) || m.cols() != v.dim(j)) {
      if (why) *why = "shape mismatch at degree " + std::to_string(j);
      return false;
    }
  }
  for (int j : degree_union(v, w)) {
    for (std::size_t t = 0; t < v.gens(); ++t) {
      std::vector<Rational> y(v.algebra().ambient());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = v.algebra().basis(i, t);
      const QMatrix lhs = graded_at(f, j - 1, w.dim(j - 1), v.dim(j - 1)) * v.action(t, j);
      const QMatrix rhs = w.action_by(y, j) * graded_at(f, j, w.dim(j), v.dim(j));
      if (!(lhs == rhs)) {
        if (why) *why = "map does not commute with generator " + std::to_string(t) + " at degree " + std::to_string(j);
        return false;
      }
    }
  }
  return true;
}

// Graded ambient column of the t-th generator.
inline std::vector<Rational> generator_vector(const ConeAlgebra& a, std::size_t t) {
  std::vector<Rational> y(a.ambient());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.basis(i, t);
  return y;
}

inline ExtModule free_module(const ConeAlgebra& alg) {
  const std::size_t k = alg.gens();
  ExtModule v(alg);
  std::vector<std::map<Mask, std::size_t>> index(k + 1);
  for (std::size_t s = 0; s <= k; ++s) {
    auto c = combinations(k, s);
    for (std::size_t i = 0; i < c.size(); ++i) index[s][c[i]] = i;
    v.set_dim(-static_cast<int>(s), c.size());
  }
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t s = 0; s < k; ++s) {
      QMatrix m(index[s + 1].size(), index[s].size());
      for (const auto& [mask, col] : index[s]) {
        if (mask & (Mask(1) << t)) continue;
        m(index[s + 1].at(mask | (Mask(1) << t)), col) = insertion_sign(mask, t);
      }
      v.set_action(t, -static_cast<int>(s), std::move(m));
    }
  }
  return v;
}

// Det(sigma)_Q: one dimension in degree -r_sigma.
inline ExtModule det_module(const ConeAlgebra& alg) {
  ExtModule v(alg);
  v.set_dim(-static_cast<int>(alg.gens()), 1);
  return v;
}

// Splitting N(rho)_Q = N(sigma)_Q + H with H spanned by unit vectors of the
// rho-basis picked by extend_basis.
struct Induction {
  ConeAlgebra from, to;
  std::size_t h = 0;
  QMatrix split;       // to.gens() x to.gens(): column t = (sigma-part | H-part) of x_t
  QMatrix complement;  // ambient x h
};

inline Induction induction_data(const ConeAlgebra& from, const ConeAlgebra& to) {
  if (!to.contains(from)) throw PreconditionError("induce: NotAFace");
  Induction d;
  d.from = from;
  d.to = to;
  const std::size_t kr = to.gens();
  const std::size_t ks = from.gens();
  const QMatrix c = ks == 0 ? QMatrix(kr, 0) : solve_or_throw(to.basis, from.basis, "induction_data");
  const QMatrix hcols = extend_basis(c, kr);
  d.h = hcols.cols();
  const QMatrix p = hstack(c, hcols);
  d.split = *inverse(p);
  d.complement = to.basis * hcols;
  return d;
}

// Position of the block v (x) h_S inside degree m of V_{A(rho)}.
struct InducedBlock {
  Mask s;
  int p;
  std::size_t offset;
  std::size_t size;
};

using InducedLayout = std::map<int, std::vector<InducedBlock>>;

inline InducedLayout induced_layout(const ExtModule& v, std::size_t h) {
  InducedLayout layout;
  std::map<int, std::size_t> fill;
  const auto subsets = all_subsets(h);
  std::set<int> degrees;
  for (const auto& [p, _] : v.dims())
    for (std::size_t s = 0; s <= h; ++s) degrees.insert(p - static_cast<int>(s));
  for (int m : degrees) {
    for (Mask s : subsets) {
      const int p = m + popcount(s);
      const std::size_t d = v.dim(p);
      if (d == 0) continue;
      layout[m].push_back({s, p, fill[m], d});
      fill[m] += d;
    }
  }
  return layout;
}

inline std::size_t layout_dim(const InducedLayout& l, int m) {
  auto it = l.find(m);
  if (it == l.end() || it->second.empty()) return 0;
  return it->second.back().offset + it->second.back().size;
}

inline const InducedBlock* find_block(const InducedLayout& l, int m, Mask s) {
  auto it = l.find(m);
  if (it == l.end()) return nullptr;
  for (const auto& b : it->second)
    if (b.s == s) return &b;
  return nullptr;
}

inline ExtModule induce(const ExtModule& v, const Induction& ind) {
  if (!(v.algebra() == ind.from)) throw std::logic_error("induce: algebra mismatch");
  const std::size_t ks = ind.from.gens();
  const std::size_t h = ind.h;
  const auto layout = induced_layout(v, h);
  ExtModule out(ind.to);
  for (const auto& [m, _] : layout) out.set_dim(m, layout_dim(layout, m));
  for (std::size_t t = 0; t < ind.to.gens(); ++t) {
    for (const auto& [m, blocks] : layout) {
      QMatrix a(out.dim(m - 1), out.dim(m));
      for (const auto& b : blocks) {
        // sigma part: (n_sigma v) (x) h_S
        QMatrix ns(v.dim(b.p - 1), b.size);
        for (std::size_t i = 0; i < ks; ++i)
          if (sgn(ind.split(i, t)) != 0) ns = ns + v.action(i, b.p) * ind.split(i, t);
        if (!ns.is_zero()) {
          const auto* tgt = find_block(layout, m - 1, b.s);
          if (tgt) a.add_block(tgt->offset, b.offset, ns);
        }
        // H part: (-1)^p v (x) (h_u ^ h_S)
        for (std::size_t u = 0; u < h; ++u) {
          const Rational& c = ind.split(ks + u, t);
          if (sgn(c) == 0 || (b.s & (Mask(1) << u))) continue;
          const auto* tgt = find_block(layout, m - 1, b.s | (Mask(1) << u));
          const Rational coef = c * parity_sign(b.p) * insertion_sign(b.s, u);
          a.add_block(tgt->offset, b.offset, QMatrix::identity(b.size) * coef);
        }
      }
      out.set_action(t, m, std::move(a));
    }
  }
  return out;
}

inline ExtModule induce(const ExtModule& v, const ConeAlgebra& to) { return induce(v, induction_data(v.algebra(), to)); }

// f (x) id on induced modules.
inline GradedMap induce_hom(const ExtModule& v, const ExtModule& w, const GradedMap& f, std::size_t h) {
  const auto lv = induced_layout(v, h);
  const auto lw = induced_layout(w, h);
  GradedMap out;
  for (const auto& [m, blocks] : lv) {
    QMatrix a(layout_dim(lw, m), layout_dim(lv, m));
    for (const auto& b : blocks) {
      const auto* tgt = find_block(lw, m, b.s);
      if (!tgt) continue;
      a.place(tgt->offset, b.offset, graded_at(f, b.p, w.dim(b.p), v.dim(b.p)));
    }
    graded_set(out, m, std::move(a));
  }
  return out;
}

// Given an A(sigma)-linear f : V -> W with W a module over an algebra
// containing A(rho), returns the A(rho)-linear extension V_{A(rho)} -> W,
// v (x) h_S |-> (-1)^{p|S|} h_S . f(v).
inline GradedMap extend_linear(const ExtModule& v, const Induction& ind, const ExtModule& w, const GradedMap& f) {
  const auto layout = induced_layout(v, ind.h);
  std::vector<std::vector<Rational>> hvec(ind.h);
  for (std::size_t u = 0; u < ind.h; ++u) {
    hvec[u].resize(ind.complement.rows());
    for (std::size_t i = 0; i < ind.complement.rows(); ++i) hvec[u][i] = ind.complement(i, u);
  }
  GradedMap out;
  for (const auto& [m, blocks] : layout) {
    QMatrix a(w.dim(m), layout_dim(layout, m));
    for (const auto& b : blocks) {
      QMatrix img = graded_at(f, b.p, w.dim(b.p), v.dim(b.p));
      int deg = b.p;
      for (int u = static_cast<int>(ind.h) - 1; u >= 0; --u) {
        if (!(b.s & (Mask(1) << u))) continue;
        img = w.action_by(hvec[static_cast<std::size_t>(u)], deg) * img;
        --deg;
      }
      const int sign = parity_sign(static_cast<long long>(b.p) * popcount(b.s));
      a.place(0, b.offset, img * Rational(sign));
    }
    graded_set(out, m, std::move(a));
  }
  return out;
}

// The canonical unit V -> V_{A(rho)}, v |-> v (x) 1.
inline GradedMap unit_map(const ExtModule& v, std::size_t h) {
  const auto layout = induced_layout(v, h);
  GradedMap out;
  for (const auto& [p, d] : v.dims()) {
    const auto* b = find_block(layout, p, 0);
    QMatrix a(layout_dim(layout, p), d);
    a.place(b->offset, 0, QMatrix::identity(d));
    out[p] = std::move(a);
  }
  return out;
}

// The natural A(rho)-linear map V_{A(rho)} -> V_{A(mu)} for A(sigma) in
// A(rho) in A(mu).
inline GradedMap induction_transition(const ExtModule& v, const ConeAlgebra& rho, const ConeAlgebra& mu) {
  const Induction to_mu = induction_data(v.algebra(), mu);
  const ExtModule vmu = induce(v, to_mu);
  const Induction to_rho = induction_data(v.algebra(), rho);
  return extend_linear(v, to_rho, vmu, unit_map(v, to_mu.h));
}

// d_sigma(V)_q = (V_{-k-q})^*, x_t acting by (-1)^q times the transpose.
inline ExtModule dualize(const ExtModule& v) {
  const int k = static_cast<int>(v.gens());
  ExtModule out(v.algebra());
  for (const auto& [j, d] : v.dims()) out.set_dim(-k - j, d);
  for (std::size_t t = 0; t < v.gens(); ++t)
    for (const auto& [q, _] : out.dims())
      out.set_action(t, q, v.action(t, -k - q + 1).transpose() * Rational(parity_sign(q)));
  return out;
}

// d_sigma(f) for f : V -> W, a map d(W) -> d(V).
inline GradedMap dualize_hom(const ExtModule& v, const GradedMap& f) {
  const int k = static_cast<int>(v.gens());
  GradedMap out;
  for (const auto& [j, m] : f) out[-k - j] = m.transpose();
  return out;
}

// iota : V -> d(d(V)).
inline GradedMap double_dual_iso(const ExtModule& v) {
  const long long k = static_cast<long long>(v.gens());
  GradedMap out;
  for (const auto& [p, d] : v.dims()) out[p] = QMatrix::identity(d) * Rational(parity_sign(p * (k + 1)));
  return out;
}

// Pairing between V_{-k-j} and d(V)_j in the chosen dual bases.
inline QMatrix pairing_matrix(const ExtModule& v, int j) {
  return QMatrix::identity(v.dim(-static_cast<int>(v.gens()) - j));
}

// Coefficient c with omega_rho ^ h_1 ^ ... ^ h_h = c * omega_mu, where the
// omegas are the wedges of the lattice bases and the h_u the complement.
inline Rational complement_orientation(const Induction& ind) {
  const QMatrix full = hstack(ind.from.basis, ind.complement);
  if (full.cols() == 0) return 1;
  return determinant(solve_or_throw(ind.to.basis, full, "complement_orientation"));
}

// Transition map d_sigma(V) -> d_rho(V_{A(rho)}), y |-> c * y-hat with
// y-hat(x (x) h_S) = y(x) if S is the full complement and 0 otherwise.
inline GradedMap dual_lift(const ExtModule& v, const Induction& ind) {
  const auto layout = induced_layout(v, ind.h);
  const int ks = static_cast<int>(ind.from.gens());
  const int kr = static_cast<int>(ind.to.gens());
  const Mask full = ind.h == 0 ? 0 : static_cast<Mask>((Mask(1) << ind.h) - 1);
  const Rational c = complement_orientation(ind);
  GradedMap out;
  for (const auto& [p, d] : v.dims()) {
    const int q = -ks - p;
    const int m = -kr - q;
    const auto* b = find_block(layout, m, full);
    if (!b) continue;
    QMatrix a(layout_dim(layout, m), d);
    a.place(b->offset, 0, QMatrix::identity(d) * c);
    out[q] = std::move(a);
  }
  return out;
}

// Isomorphism d_sigma(V)_{A(rho)} -> d_rho(V_{A(rho)}).
inline GradedMap induce_dual_iso(const ExtModule& v, const ConeAlgebra& rho) {
  const Induction ind = induction_data(v.algebra(), rho);
  const ExtModule dv = dualize(v);
  const ExtModule target = dualize(induce(v, ind));
  const Induction dind = induction_data(dv.algebra(), rho);
  return extend_linear(dv, dind, target, dual_lift(v, ind));
}

// Direct sum with summands stacked in order.
struct DirectSum {
  ExtModule module;
  std::vector<std::map<int, std::size_t>> offsets;  // per summand, per degree
};

inline DirectSum direct_sum(const ConeAlgebra& alg, const std::vector<const ExtModule*>& parts) {
  DirectSum ds{ExtModule(alg), {}};
  std::map<int, std::size_t> fill;
  for (const auto* p : parts) {
    if (!(p->algebra() == alg)) throw std::logic_error("direct_sum: algebra mismatch");
    std::map<int, std::size_t> off;
    for (const auto& [j, d] : p->dims()) {
      off[j] = fill[j];
      fill[j] += d;
    }
    ds.offsets.push_back(std::move(off));
  }
  for (const auto& [j, d] : fill) ds.module.set_dim(j, d);
  for (std::size_t t = 0; t < alg.gens(); ++t)
    for (const auto& [j, _] : ds.module.dims()) {
      QMatrix a(ds.module.dim(j - 1), ds.module.dim(j));
      for (std::size_t s = 0; s < parts.size(); ++s) {
        const auto& part = *parts[s];
        if (part.dim(j) == 0 || part.dim(j - 1) == 0) continue;
        a.place(ds.offsets[s].at(j - 1), ds.offsets[s].at(j), part.action(t, j));
      }
      ds.module.set_action(t, j, std::move(a));
    }
  return ds;
}

// Submodule spanned per degree by the columns of `basis` (must be stable under
// the action); also returns the inclusion.
inline std::pair<ExtModule, GradedMap> submodule(const ExtModule& v, const GradedMap& basis) {
  ExtModule out(v.algebra());
  for (const auto& [j, b] : basis) out.set_dim(j, b.cols());
  for (std::size_t t = 0; t < v.gens(); ++t)
    for (const auto& [j, b] : basis) {
      if (out.dim(j - 1) == 0 || b.cols() == 0) continue;
      const QMatrix& lower = basis.at(j - 1);
      out.set_action(t, j, solve_or_throw(lower, v.action(t, j) * b, "submodule: not stable"));
    }
  GradedMap incl;
  for (const auto& [j, b] : basis)
    if (b.cols() > 0) incl[j] = b;
  return {std::move(out), std::move(incl)};
}

// Quotient V/U with U spanned per degree by the columns of `sub`; returns the
// quotient and the projection.
inline std::pair<ExtModule, GradedMap> quotient_module(const ExtModule& v, const GradedMap& sub) {
  ExtModule out(v.algebra());
  std::map<int, QMatrix> comp, proj;
  for (const auto& [j, d] : v.dims()) {
    const QMatrix u = graded_at(sub, j, d, sub.count(j) ? sub.at(j).cols() : 0);
    const QMatrix c = extend_basis(u, d);
    const QMatrix pinv = *inverse(hstack(u, c));
    comp[j] = c;
    proj[j] = pinv.block(u.cols(), 0, c.cols(), d);
    out.set_dim(j, c.cols());
  }
  for (std::size_t t = 0; t < v.gens(); ++t)
    for (const auto& [j, _] : out.dims()) {
      if (out.dim(j - 1) == 0) continue;
      out.set_action(t, j, proj.at(j - 1) * v.action(t, j) * comp.at(j));
    }
  GradedMap p;
  for (auto& [j, m] : proj)
    if (m.rows() > 0) p[j] = std::move(m);
  return {std::move(out), std::move(p)};
}

}  // namespace toric_ic
