#pragma once
// Finite complexes of graded A(sigma)-modules: cohomology tables, shifts,
// mapping cones, duals and the gradual truncations.

#include <toric_ic/extalg.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toric_ic {

// (p, q) -> dim H^p(.)_q, nonzero entries only.
using CohomTable = std::map<std::pair<int, int>, std::size_t>;

// Per cohomological degree, a graded map.
using ComplexMap = std::map<int, GradedMap>;

class GMComplex {
 public:
  GMComplex() = default;
  explicit GMComplex(ConeAlgebra alg) : alg_(std::move(alg)) {}

  const ConeAlgebra& algebra() const { return alg_; }

  ExtModule term(int i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? ExtModule(alg_) : it->second;
  }
  const ExtModule* term_ptr(int i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? nullptr : &it->second;
  }
  std::size_t dim(int i, int j) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? 0 : it->second.dim(j);
  }
  const std::map<int, ExtModule>& terms() const { return terms_; }
  const std::map<int, GradedMap>& differentials() const { return d_; }

  // d^i_j : V^i_j -> V^{i+1}_j
  QMatrix d(int i, int j) const {
    auto it = d_.find(i);
    if (it == d_.end()) return QMatrix(dim(i + 1, j), dim(i, j));
    return graded_at(it->second, j, dim(i + 1, j), dim(i, j));
  }
  GradedMap d(int i) const {
    auto it = d_.find(i);
    return it == d_.end() ? GradedMap{} : it->second;
  }

  void set_term(int i, ExtModule v) {
    if (!(v.algebra() == alg_)) throw std::logic_error("GMComplex::set_term: algebra mismatch");
    if (v.is_zero()) terms_.erase(i);
    else terms_[i] = std::move(v);
  }
  void set_d(int i, GradedMap f) {
    for (auto it = f.begin(); it != f.end();) {
      if (it->second.is_zero()) it = f.erase(it);
      else ++it;
    }
    if (f.empty()) d_.erase(i);
    else d_[i] = std::move(f);
  }

  bool is_zero() const { return terms_.empty(); }

  // Internal degrees j with some nonzero term.
  std::set<int> internal_degrees() const {
    std::set<int> s;
    for (const auto& [_, v] : terms_)
      for (const auto& [j, __] : v.dims()) s.insert(j);
    return s;
  }

  bool check(std::string* why = nullptr) const {
    for (const auto& [i, v] : terms_) {
      if (!v.check_axioms(why)) return false;
      const ExtModule next = term(i + 1);
      if (!is_module_hom(v, next, d(i), why)) {
        if (why) *why = "d^" + std::to_string(i) + " is not A-linear: " + *why;
        return false;
      }
      for (int j : internal_degrees())
        if (!(d(i + 1, j) * d(i, j)).is_zero()) {
          if (why) *why = "d^2 != 0 at (" + std::to_string(i) + "," + std::to_string(j) + ")";
          return false;
        }
    }
    return true;
  }

 private:
  ConeAlgebra alg_;
  std::map<int, ExtModule> terms_;
  std::map<int, GradedMap> d_;
};

inline CohomTable cohomology_dims(const GMComplex& c) {
  CohomTable out;
  const auto js = c.internal_degrees();
  for (const auto& [p, v] : c.terms()) {
    for (int q : js) {
      const std::size_t n = v.dim(q);
      if (n == 0) continue;
      const std::size_t ker = n - rank(c.d(p, q));
      const std::size_t im = rank(c.d(p - 1, q));
      if (ker > im) out[{p, q}] = ker - im;
    }
  }
  return out;
}

inline bool is_acyclic(const GMComplex& c) { return cohomology_dims(c).empty(); }

// E[n]^i = E^{i+n}, d_{E[n]}^i = (-1)^n d^{i+n}.
inline GMComplex shift(const GMComplex& c, int n) {
  GMComplex out(c.algebra());
  for (const auto& [i, v] : c.terms()) out.set_term(i - n, v);
  for (const auto& [i, f] : c.differentials()) out.set_d(i - n, scale(f, parity_sign(n)));
  return out;
}

inline ComplexMap shift_map(const ComplexMap& f, int n) {
  ComplexMap out;
  for (const auto& [i, g] : f) out[i - n] = g;
  return out;
}

inline QMatrix map_at(const ComplexMap& f, int i, int j, std::size_t rows, std::size_t cols) {
  auto it = f.find(i);
  if (it == f.end()) return QMatrix(rows, cols);
  return graded_at(it->second, j, rows, cols);
}

inline std::set<int> all_internal_degrees(const GMComplex& a, const GMComplex& b) {
  auto s = a.internal_degrees();
  auto t = b.internal_degrees();
  s.insert(t.begin(), t.end());
  return s;
}

inline std::set<int> all_cohomological_degrees(const GMComplex& a, const GMComplex& b) {
  std::set<int> s;
  for (const auto& [i, _] : a.terms()) s.insert(i);
  for (const auto& [i, _] : b.terms()) s.insert(i);
  return s;
}

// f : K -> L commutes with differentials and each f^i is A-linear.
inline bool is_chain_map(const GMComplex& k, const GMComplex& l, const ComplexMap& f, std::string* why = nullptr) {
  const auto js = all_internal_degrees(k, l);
  auto is = all_cohomological_degrees(k, l);
  for (int i : std::set<int>(is)) is.insert(i - 1);
  for (int i : is) {
    const ExtModule ki = k.term(i);
    auto it = f.find(i);
    if (it != f.end() && !is_module_hom(ki, l.term(i), it->second, why)) return false;
    for (int j : js) {
      const QMatrix lhs = l.d(i, j) * map_at(f, i, j, l.dim(i, j), k.dim(i, j));
      const QMatrix rhs = map_at(f, i + 1, j, l.dim(i + 1, j), k.dim(i + 1, j)) * k.d(i, j);
      if (!(lhs == rhs)) {
        if (why) *why = "chain map law fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  }
  return true;
}

// cone(f)^i = K^{i+1} (+) L^i, d = [[-d_K, 0], [f, d_L]].
inline GMComplex mapping_cone(const GMComplex& k, const GMComplex& l, const ComplexMap& f) {
  if (!(k.algebra() == l.algebra())) throw std::invalid_argument("mapping_cone: SourceTargetMismatch");
  GMComplex out(k.algebra());
  std::set<int> degrees;
  for (const auto& [i, _] : k.terms()) degrees.insert(i - 1);
  for (const auto& [i, _] : l.terms()) degrees.insert(i);
  std::map<int, DirectSum> sums;
  for (int i : degrees) {
    const ExtModule a = k.term(i + 1);
    const ExtModule b = l.term(i);
    sums.emplace(i, direct_sum(k.algebra(), {&a, &b}));
    out.set_term(i, sums.at(i).module);
  }
  for (int i : degrees) {
    if (!sums.count(i + 1)) continue;
    GradedMap di;
    for (const auto& [j, n] : sums.at(i).module.dims()) {
      const std::size_t rows = sums.at(i + 1).module.dim(j);
      if (rows == 0) continue;
      QMatrix m(rows, n);
      const std::size_t k1 = k.dim(i + 1, j), k2 = k.dim(i + 2, j);
      m.place(0, 0, -k.d(i + 1, j));
      m.place(k2, 0, map_at(f, i + 1, j, l.dim(i + 1, j), k1));
      m.place(k2, k1, l.d(i, j));
      graded_set(di, j, std::move(m));
    }
    out.set_d(i, std::move(di));
  }
  return out;
}

inline bool is_quasi_iso(const GMComplex& k, const GMComplex& l, const ComplexMap& f) {
  return is_acyclic(mapping_cone(k, l, f));
}

inline ComplexMap identity_map(const GMComplex& c) {
  ComplexMap out;
  for (const auto& [i, v] : c.terms()) out[i] = identity_map(v);
  return out;
}

inline ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  ComplexMap out;
  for (const auto& [i, fi] : f) {
    auto it = g.find(i);
    if (it == g.end()) continue;
    GradedMap c = compose(it->second, fi);
    if (!c.empty()) out[i] = std::move(c);
  }
  return out;
}

// Sub/quotient complexes from per-bidegree bases.
using BigradedBasis = std::map<int, GradedMap>;  // i -> j -> columns

struct SubOrQuotient {
  GMComplex complex;
  ComplexMap map;      // inclusion into V, or projection from V
  ComplexMap section;  // for quotients: lift of the quotient basis into V
};

inline SubOrQuotient subcomplex(const GMComplex& v, const BigradedBasis& basis) {
  SubOrQuotient out{GMComplex(v.algebra()), {}, {}};
  std::map<int, GradedMap> incl;
  for (const auto& [i, vi] : v.terms()) {
    GradedMap b;
    for (const auto& [j, n] : vi.dims()) {
      auto it = basis.find(i);
      QMatrix m = (it != basis.end() && it->second.count(j)) ? it->second.at(j) : QMatrix(n, 0);
      if (m.cols() > 0) b[j] = std::move(m);
    }
    auto [sub, inc] = submodule(vi, b);
    out.complex.set_term(i, std::move(sub));
    if (!inc.empty()) incl[i] = std::move(inc);
  }
  for (const auto& [i, inc] : incl) {
    auto nx = incl.find(i + 1);
    if (nx == incl.end()) continue;
    GradedMap di;
    for (const auto& [j, b] : inc) {
      auto bj = nx->second.find(j);
      if (bj == nx->second.end()) continue;
      graded_set(di, j, solve_or_throw(bj->second, v.d(i, j) * b, "subcomplex: not closed under d"));
    }
    out.complex.set_d(i, std::move(di));
  }
  out.map = std::move(incl);
  return out;
}

inline SubOrQuotient quotient_complex(const GMComplex& v, const BigradedBasis& sub) {
  SubOrQuotient out{GMComplex(v.algebra()), {}, {}};
  for (const auto& [i, vi] : v.terms()) {
    GradedMap s;
    auto it = sub.find(i);
    if (it != sub.end()) s = it->second;
    for (const auto& [j, n] : vi.dims())
      if (!s.count(j)) s[j] = QMatrix(n, 0);
    auto [quot, proj] = quotient_module(vi, s);
    GradedMap sec;
    for (const auto& [j, n] : vi.dims()) {
      const QMatrix c = extend_basis(s.at(j), n);
      if (c.cols() > 0) sec[j] = c;
    }
    out.complex.set_term(i, std::move(quot));
    if (!proj.empty()) out.map[i] = std::move(proj);
    if (!sec.empty()) out.section[i] = std::move(sec);
  }
  for (const auto& [i, sec] : out.section) {
    auto nx = out.map.find(i + 1);
    if (nx == out.map.end()) continue;
    GradedMap di;
    for (const auto& [j, c] : sec) {
      auto pj = nx->second.find(j);
      if (pj == nx->second.end()) continue;
      graded_set(di, j, pj->second * v.d(i, j) * c);
    }
    out.complex.set_d(i, std::move(di));
  }
  return out;
}

namespace detail {

enum class Keep { All, Kernel, Image, None };

// Builds the per-bidegree basis selecting, at total degree i + j = t, the
// subspace chosen by `rule(t)`.
template <class Rule>
BigradedBasis select(const GMComplex& v, Rule rule) {
  BigradedBasis out;
  for (const auto& [i, vi] : v.terms()) {
    for (const auto& [j, n] : vi.dims()) {
      QMatrix b;
      switch (rule(i + j)) {
        case Keep::All: b = QMatrix::identity(n); break;
        case Keep::Kernel: b = kernel(v.d(i, j)); break;
        case Keep::Image: b = decompose(v.d(i - 1, j)).image_basis; break;
        case Keep::None: b = QMatrix(n, 0); break;
      }
      out[i][j] = std::move(b);
    }
  }
  return out;
}

}  // namespace detail

inline SubOrQuotient gt_le(int k, const GMComplex& v) {
  using detail::Keep;
  return subcomplex(v, detail::select(v, [k](int t) { return t < k ? Keep::All : t == k ? Keep::Kernel : Keep::None; }));
}

inline SubOrQuotient gt_ge(int k, const GMComplex& v) {
  using detail::Keep;
  return quotient_complex(v, detail::select(v, [k](int t) { return t < k ? Keep::All : t == k ? Keep::Image : Keep::None; }));
}

inline SubOrQuotient tgt_le(int k, const GMComplex& v) {
  using detail::Keep;
  return subcomplex(v, detail::select(v, [k](int t) { return t <= k ? Keep::All : t == k + 1 ? Keep::Image : Keep::None; }));
}

// Component at total degree k - 1 is the coimage V/Ker d.
inline SubOrQuotient tgt_ge(int k, const GMComplex& v) {
  using detail::Keep;
  return quotient_complex(v, detail::select(v, [k](int t) { return t < k - 1 ? Keep::All : t == k - 1 ? Keep::Kernel : Keep::None; }));
}

// Map between two subcomplexes A in B of V, given their inclusions into V.
inline ComplexMap sub_to_sub(const ComplexMap& inc_a, const ComplexMap& inc_b) {
  ComplexMap out;
  for (const auto& [i, a] : inc_a) {
    GradedMap g;
    for (const auto& [j, m] : a) {
      auto bi = inc_b.find(i);
      if (bi == inc_b.end() || !bi->second.count(j)) throw std::logic_error("sub_to_sub: not contained");
      graded_set(g, j, solve_or_throw(bi->second.at(j), m, "sub_to_sub"));
    }
    if (!g.empty()) out[i] = std::move(g);
  }
  return out;
}

// Map V/A -> V/B for A in B, from the section of V/A and the projection to V/B.
inline ComplexMap quotient_to_quotient(const SubOrQuotient& a, const SubOrQuotient& b) {
  return compose(b.map, a.section);
}

// d(V)^i = d(V^{-i}), d^i = (-1)^{i+1} d(d_V^{-i-1}).
inline GMComplex dual_complex(const GMComplex& v) {
  GMComplex out(v.algebra());
  for (const auto& [i, vi] : v.terms()) out.set_term(-i, dualize(vi));
  for (const auto& [i, f] : v.differentials()) {
    const int di = -i - 1;
    out.set_d(di, scale(dualize_hom(v.term(i), f), parity_sign(di + 1)));
  }
  return out;
}

inline std::size_t total_dim(const GMComplex& c) {
  std::size_t s = 0;
  for (const auto& [_, v] : c.terms()) s += v.total_dim();
  return s;
}

// dim table of terms: (i, j) -> dim V^i_j.
inline CohomTable term_dims(const GMComplex& c) {
  CohomTable out;
  for (const auto& [i, v] : c.terms())
    for (const auto& [j, n] : v.dims()) out[{i, j}] = n;
  return out;
}

// Complexes assembled as direct sums of labelled pieces with block maps.
class BlockAssembler {
 public:
  explicit BlockAssembler(ConeAlgebra alg) : alg_(std::move(alg)) {}

  int add(std::map<int, ExtModule> terms) {
    pieces_.push_back(std::move(terms));
    return static_cast<int>(pieces_.size()) - 1;
  }
  std::size_t pieces() const { return pieces_.size(); }

  // Fixes the layout; must be called before offsets are queried.
  GMComplex build_terms() {
    std::set<int> degrees;
    for (const auto& p : pieces_)
      for (const auto& [i, _] : p) degrees.insert(i);
    offsets_.assign(pieces_.size(), {});
    GMComplex out(alg_);
    for (int i : degrees) {
      std::vector<ExtModule> zeros;
      std::vector<const ExtModule*> parts;
      std::vector<int> owner;
      for (std::size_t s = 0; s < pieces_.size(); ++s) {
        auto it = pieces_[s].find(i);
        if (it == pieces_[s].end()) continue;
        parts.push_back(&it->second);
        owner.push_back(static_cast<int>(s));
      }
      DirectSum ds = direct_sum(alg_, parts);
      for (std::size_t k = 0; k < owner.size(); ++k) offsets_[static_cast<std::size_t>(owner[k])][i] = ds.offsets[k];
      dims_[i] = ds.module.dims();
      out.set_term(i, std::move(ds.module));
    }
    return out;
  }

  std::size_t dim(int i, int j) const {
    auto it = dims_.find(i);
    if (it == dims_.end()) return 0;
    auto jt = it->second.find(j);
    return jt == it->second.end() ? 0 : jt->second;
  }
  bool has(int s, int i, int j) const {
    const auto& o = offsets_.at(static_cast<std::size_t>(s));
    auto it = o.find(i);
    return it != o.end() && it->second.count(j);
  }
  std::size_t offset(int s, int i, int j) const { return offsets_.at(static_cast<std::size_t>(s)).at(i).at(j); }
  const ExtModule& piece(int s, int i) const { return pieces_.at(static_cast<std::size_t>(s)).at(i); }
  bool has_piece(int s, int i) const { return pieces_.at(static_cast<std::size_t>(s)).count(i) > 0; }

 private:
  ConeAlgebra alg_;
  std::vector<std::map<int, ExtModule>> pieces_;
  std::vector<std::map<int, std::map<int, std::size_t>>> offsets_;
  std::map<int, std::map<int, std::size_t>> dims_;
};

// Adds the graded block g : piece s (degree i_src of `src`) -> piece t
// (degree i_tgt of `tgt`) into the complex map `out`, keyed by i_src.
inline void add_block(ComplexMap& out, const BlockAssembler& src, int s, int i_src, const BlockAssembler& tgt, int t,
                      int i_tgt, const GradedMap& g) {
  for (const auto& [j, m] : g) {
    if (m.is_zero()) continue;
    if (!src.has(s, i_src, j) || !tgt.has(t, i_tgt, j)) throw std::logic_error("add_block: missing piece");
    auto& slot = out[i_src][j];
    if (slot.rows() == 0 && slot.cols() == 0) slot = QMatrix(tgt.dim(i_tgt, j), src.dim(i_src, j));
    slot.add_block(tgt.offset(t, i_tgt, j), src.offset(s, i_src, j), m);
  }
}

// Extracts the block piece s -> piece t of a map keyed by source degree.
inline GradedMap get_block(const ComplexMap& f, const BlockAssembler& src, int s, int i_src, const BlockAssembler& tgt,
                           int t, int i_tgt) {
  GradedMap g;
  auto it = f.find(i_src);
  if (it == f.end()) return g;
  for (const auto& [j, m] : it->second) {
    if (!src.has(s, i_src, j) || !tgt.has(t, i_tgt, j)) continue;
    const std::size_t rows = tgt.piece(t, i_tgt).dim(j);
    const std::size_t cols = src.piece(s, i_src).dim(j);
    graded_set(g, j, m.block(tgt.offset(t, i_tgt, j), src.offset(s, i_src, j), rows, cols));
  }
  return g;
}

}  // namespace toric_ic
