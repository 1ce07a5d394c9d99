#pragma once
// Complexes of graded exterior modules on a fan: per-cone complexes with
// mixing maps, and the functors i^*, i^!, i^o, Gamma, j_!, gt_pi, the shallow
// resolution and the dualizing functors.

#include <toric_ic/fan.hpp>
#include <toric_ic/gmcx.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace toric_ic {

// Index fan.size() stands for the imaginary cone alpha of the augmented fan.
class GemComplex {
 public:
  GemComplex() = default;
  explicit GemComplex(std::shared_ptr<const Fan> fan, bool augmented = false)
      : fan_(std::move(fan)), augmented_(augmented) {
    for (int s = 0; s < fan_->size(); ++s) parts_.emplace_back(cone_algebra(*fan_, s));
    if (augmented_) parts_.emplace_back(ambient_algebra(static_cast<std::size_t>(fan_->rank())));
  }

  const Fan& fan() const { return *fan_; }
  const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
  bool augmented() const { return augmented_; }
  int alpha() const { return fan_->size(); }
  int size() const { return static_cast<int>(parts_.size()); }

  int cone_dim(int s) const { return s == alpha() ? fan_->rank() + 1 : fan_->cone(s).dim; }
  ConeAlgebra algebra(int s) const {
    return s == alpha() ? ambient_algebra(static_cast<std::size_t>(fan_->rank())) : cone_algebra(*fan_, s);
  }
  bool is_face(int s, int t) const {
    if (t == alpha()) return true;
    if (s == alpha()) return false;
    return fan_->is_face(s, t);
  }
  // F(s) in ascending index order; F(alpha) lists every cone and alpha itself
  // when the complex is augmented.
  std::vector<int> faces(int s) const {
    if (s == alpha()) {
      std::vector<int> all;
      for (int t = 0; t < size(); ++t) all.push_back(t);
      return all;
    }
    return fan_->cone(s).faces;
  }
  int incidence(int s, int t) const {
    if (t == alpha()) return incidence_sign_alpha(*fan_, s);
    return incidence_sign(*fan_, s, t);
  }

  const GMComplex& at(int s) const { return parts_.at(static_cast<std::size_t>(s)); }
  void set(int s, GMComplex c) {
    if (!(c.algebra() == algebra(s))) throw std::logic_error("GemComplex::set: algebra mismatch");
    parts_.at(static_cast<std::size_t>(s)) = std::move(c);
  }

  // d(s/t)^i : L(s)^i -> L(t)^{i+1}
  const ComplexMap* mix(int s, int t) const {
    auto it = mix_.find({s, t});
    return it == mix_.end() ? nullptr : &it->second;
  }
  void set_mix(int s, int t, ComplexMap m) {
    if (s == t || !is_face(s, t)) throw std::logic_error("GemComplex::set_mix: not a proper face pair");
    for (auto it = m.begin(); it != m.end();) {
      if (graded_is_zero(it->second)) it = m.erase(it);
      else ++it;
    }
    if (m.empty()) mix_.erase({s, t});
    else mix_[{s, t}] = std::move(m);
  }
  const std::map<std::pair<int, int>, ComplexMap>& mixes() const { return mix_; }

  // Component map including the internal differential for s == t.
  QMatrix component(int s, int t, int i, int j) const {
    const std::size_t rows = at(t).dim(i + 1, j);
    const std::size_t cols = at(s).dim(i, j);
    if (s == t) return at(s).d(i, j);
    const auto* m = mix(s, t);
    if (!m) return QMatrix(rows, cols);
    return map_at(*m, i, j, rows, cols);
  }
  GradedMap component(int s, int t, int i) const {
    if (s == t) return at(s).d(i);
    const auto* m = mix(s, t);
    if (!m) return {};
    auto it = m->find(i);
    return it == m->end() ? GradedMap{} : it->second;
  }

  bool is_zero() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const GMComplex& c) { return c.is_zero(); });
  }

 private:
  std::shared_ptr<const Fan> fan_;
  bool augmented_ = false;
  std::vector<GMComplex> parts_;
  std::map<std::pair<int, int>, ComplexMap> mix_;
};

// Homomorphism components f(s/t) : L(s)^i -> K(t)^i for s a face of t.
using GemHom = std::map<std::pair<int, int>, ComplexMap>;

struct Violation {
  int rho = -1;
  int mu = -1;
  int degree = 0;
  std::string what;
};

struct ValidationReport {
  bool ok = true;
  std::optional<Violation> first;
};

inline ValidationReport validate(const GemComplex& l) {
  ValidationReport rep;
  auto fail = [&](int rho, int mu, int i, std::string what) {
    rep.ok = false;
    rep.first = Violation{rho, mu, i, std::move(what)};
    return rep;
  };
  for (int s = 0; s < l.size(); ++s) {
    std::string why;
    if (!l.at(s).check(&why)) return fail(s, s, 0, why);
  }
  for (const auto& [key, m] : l.mixes()) {
    const auto [s, t] = key;
    for (const auto& [i, g] : m) {
      std::string why;
      if (!is_module_hom(l.at(s).term(i), l.at(t).term(i + 1), g, &why))
        return fail(s, t, i, "mixing map not A-linear: " + why);
    }
  }
  for (int rho = 0; rho < l.size(); ++rho) {
    for (int mu = 0; mu < l.size(); ++mu) {
      if (rho == mu || !l.is_face(rho, mu)) continue;
      std::set<int> is;
      for (const auto& [i, _] : l.at(rho).terms()) is.insert(i);
      for (int i : is) {
        const ExtModule term = l.at(rho).term(i);
        for (const auto& [j, _] : term.dims()) {
          QMatrix sum(l.at(mu).dim(i + 2, j), l.at(rho).dim(i, j));
          for (int s = 0; s < l.size(); ++s) {
            if (!l.is_face(rho, s) || !l.is_face(s, mu)) continue;
            sum = sum + l.component(s, mu, i + 1, j) * l.component(rho, s, i, j);
          }
          if (!sum.is_zero()) return fail(rho, mu, i, "coboundary relation fails at internal degree " + std::to_string(j));
        }
      }
    }
  }
  return rep;
}

// i_rho^*(L) restricted to the summands `cones` (a subset of F(rho)); the
// assembler records where each summand L(sigma)_{A(rho)} sits.
struct StarSum {
  GMComplex complex;
  std::vector<int> cones;
  BlockAssembler layout{ConeAlgebra{}};
};

inline StarSum star_sum(const GemComplex& l, int rho, const std::vector<int>& cones) {
  const ConeAlgebra target = l.algebra(rho);
  StarSum out{GMComplex(target), cones, BlockAssembler(target)};
  std::vector<Induction> inds;
  for (int s : cones) {
    inds.push_back(induction_data(l.algebra(s), target));
    std::map<int, ExtModule> terms;
    for (const auto& [i, v] : l.at(s).terms()) terms[i] = induce(v, inds.back());
    out.layout.add(std::move(terms));
  }
  out.complex = out.layout.build_terms();
  ComplexMap d;
  for (std::size_t a = 0; a < cones.size(); ++a) {
    const int s = cones[a];
    for (const auto& [i, v] : l.at(s).terms()) {
      for (std::size_t b = 0; b < cones.size(); ++b) {
        const int t = cones[b];
        if (!l.is_face(s, t)) continue;
        const GradedMap g = l.component(s, t, i);
        if (graded_is_zero(g)) continue;
        const ExtModule w = l.at(t).term(i + 1);
        GradedMap block;
        if (s == t) {
          block = induce_hom(v, w, g, inds[a].h);
        } else {
          const ExtModule& w_ind = out.layout.piece(static_cast<int>(b), i + 1);
          block = extend_linear(v, inds[a], w_ind, compose(unit_map(w, inds[b].h), g));
        }
        add_block(d, out.layout, static_cast<int>(a), i, out.layout, static_cast<int>(b), i + 1, block);
      }
    }
  }
  for (auto& [i, g] : d) out.complex.set_d(i, std::move(g));
  return out;
}

inline void require_index(const GemComplex& l, int rho, bool allow_alpha) {
  const bool ok = (rho >= 0 && rho < l.fan().size()) || (allow_alpha && rho == l.alpha());
  if (!ok) throw PreconditionError("ConeNotInFan");
}

inline GMComplex i_star(int rho, const GemComplex& l) {
  require_index(l, rho, true);
  return star_sum(l, rho, l.faces(rho)).complex;
}

inline GMComplex gamma(const GemComplex& l) { return i_star(l.alpha(), l); }

inline GMComplex i_shriek(int rho, const GemComplex& l) {
  require_index(l, rho, l.augmented());
  return l.at(rho);
}

inline std::vector<int> proper_faces(const GemComplex& l, int rho) {
  std::vector<int> out;
  for (int s : l.faces(rho))
    if (s != rho) out.push_back(s);
  return out;
}

inline GMComplex i_circ(int rho, const GemComplex& l) {
  require_index(l, rho, true);
  return star_sum(l, rho, proper_faces(l, rho)).complex;
}

inline void require_top_of_support(const GemComplex& l, int pi) {
  require_index(l, pi, false);
  for (int t = 0; t < l.size(); ++t)
    if (t != pi && l.is_face(pi, t) && !l.at(t).is_zero()) throw PreconditionError("NotMaximal");
}

// L(pi) := i^o_pi(L)[-1] with mixing maps the inclusions of the summands.
inline GemComplex j_shriek_extend(const GemComplex& l, int pi) {
  require_top_of_support(l, pi);
  if (!l.at(pi).is_zero()) throw PreconditionError("j_shriek_extend: L(pi) must vanish");
  GemComplex out = l;
  const auto cones = proper_faces(l, pi);
  StarSum ss = star_sum(l, pi, cones);
  out.set(pi, shift(ss.complex, -1));
  for (std::size_t a = 0; a < cones.size(); ++a) {
    const int s = cones[a];
    const Induction ind = induction_data(l.algebra(s), l.algebra(pi));
    ComplexMap m;
    for (const auto& [i, v] : l.at(s).terms()) {
      // L(s)^i -> L(pi)^{i+1} = i^o(pi)^i
      GradedMap u = unit_map(v, ind.h);
      for (const auto& [j, blk] : u) {
        QMatrix full(ss.layout.dim(i, j), v.dim(j));
        full.place(ss.layout.offset(static_cast<int>(a), i, j), 0, blk);
        m[i][j] = std::move(full);
      }
    }
    out.set_mix(s, pi, std::move(m));
  }
  return out;
}

// Replaces L(pi) by gt^{>=k} L(pi), composing incoming mixing maps with the
// projection.
inline GemComplex gt_pi_ge(int k, int pi, const GemComplex& l) {
  require_top_of_support(l, pi);
  GemComplex out = l;
  SubOrQuotient q = gt_ge(k, l.at(pi));
  for (int s = 0; s < l.size(); ++s) {
    if (s == pi || !l.is_face(s, pi)) continue;
    const auto* m = l.mix(s, pi);
    if (!m) continue;
    ComplexMap nm;
    for (const auto& [i, g] : *m) {
      auto p = q.map.find(i + 1);
      if (p == q.map.end()) continue;
      GradedMap c = compose(p->second, g);
      if (!c.empty()) nm[i] = std::move(c);
    }
    out.set_mix(s, pi, std::move(nm));
  }
  out.set(pi, std::move(q.complex));
  return out;
}

// Chain-map law for a homomorphism of complexes on the fan:
// sum_t f(t/rho) d_L(s/t) = sum_t d_K(t/rho) f(s/t).
inline bool is_gem_chain_map(const GemComplex& l, const GemComplex& k, const GemHom& f, std::string* why = nullptr) {
  auto fcomp = [&](int s, int t, int i, int j) {
    auto it = f.find({s, t});
    const std::size_t rows = k.at(t).dim(i, j), cols = l.at(s).dim(i, j);
    if (it == f.end()) return QMatrix(rows, cols);
    return map_at(it->second, i, j, rows, cols);
  };
  for (int s = 0; s < l.size(); ++s) {
    for (int rho = 0; rho < k.size(); ++rho) {
      if (!l.is_face(s, rho)) continue;
      std::set<int> is;
      for (const auto& [i, _] : l.at(s).terms()) {
        is.insert(i);
        is.insert(i - 1);
      }
      std::set<int> js;
      for (const auto& [_, v] : l.at(s).terms())
        for (const auto& [j, __] : v.dims()) js.insert(j);
      for (int i : is)
        for (int j : js) {
          QMatrix lhs(k.at(rho).dim(i + 1, j), l.at(s).dim(i, j));
          QMatrix rhs = lhs;
          for (int t = 0; t < l.size(); ++t) {
            if (!l.is_face(s, t) || !l.is_face(t, rho)) continue;
            lhs = lhs + fcomp(t, rho, i + 1, j) * l.component(s, t, i, j);
            rhs = rhs + k.component(t, rho, i, j) * fcomp(s, t, i, j);
          }
          if (!(lhs == rhs)) {
            if (why)
              *why = "chain-map law fails for (" + std::to_string(s) + "," + std::to_string(rho) + ") at (" +
                     std::to_string(i) + "," + std::to_string(j) + ")";
            return false;
          }
        }
    }
  }
  return true;
}

// The shallow resolution L~ of L together with f_L : L -> L~.
struct ShallowResolution {
  GemComplex complex;
  GemHom f;
};

inline ShallowResolution shallow_resolve(const GemComplex& l) {
  if (l.augmented()) throw PreconditionError("shallow_resolve: augmented complexes are not supported");
  const Fan& fan = l.fan();
  ShallowResolution out{GemComplex(l.fan_ptr()), {}};
  struct Piece {
    int sigma, eta;
  };
  std::vector<std::vector<Piece>> pieces(static_cast<std::size_t>(fan.size()));
  std::vector<BlockAssembler> layouts;
  for (int rho = 0; rho < fan.size(); ++rho) {
    const ConeAlgebra target = l.algebra(rho);
    const int rr = fan.cone(rho).dim;
    BlockAssembler asmb(target);
    for (int sigma : fan.cone(rho).faces) {
      const int rs = fan.cone(sigma).dim;
      for (int eta : fan.cone(sigma).faces) {
        const Induction ind = induction_data(l.algebra(eta), target);
        std::map<int, ExtModule> terms;
        for (const auto& [n, v] : l.at(eta).terms()) terms[n + rr - rs] = induce(v, ind);
        asmb.add(std::move(terms));
        pieces[static_cast<std::size_t>(rho)].push_back({sigma, eta});
      }
    }
    out.complex.set(rho, asmb.build_terms());
    layouts.push_back(std::move(asmb));
  }
  auto piece_index = [&](int rho, int sigma, int eta) {
    const auto& ps = pieces[static_cast<std::size_t>(rho)];
    for (std::size_t k = 0; k < ps.size(); ++k)
      if (ps[k].sigma == sigma && ps[k].eta == eta) return static_cast<int>(k);
    return -1;
  };
  for (int rho = 0; rho < fan.size(); ++rho) {
    const BlockAssembler& la = layouts[static_cast<std::size_t>(rho)];
    const ConeAlgebra target = l.algebra(rho);
    const int rr = fan.cone(rho).dim;
    ComplexMap d;
    const auto& ps = pieces[static_cast<std::size_t>(rho)];
    for (std::size_t a = 0; a < ps.size(); ++a) {
      const int sigma = ps[a].sigma, eta = ps[a].eta;
      const int rs = fan.cone(sigma).dim;
      const Induction ind = induction_data(l.algebra(eta), target);
      for (const auto& [n, v] : l.at(eta).terms()) {
        const int i = n + rr - rs;
        // (a): within sigma, eta -> zeta
        for (int zeta : fan.cone(sigma).faces) {
          if (!fan.is_face(eta, zeta)) continue;
          const GradedMap g = l.component(eta, zeta, n);
          if (graded_is_zero(g)) continue;
          const int b = piece_index(rho, sigma, zeta);
          const ExtModule w = l.at(zeta).term(n + 1);
          GradedMap block;
          if (eta == zeta) {
            block = induce_hom(v, w, g, ind.h);
          } else {
            const Induction wind = induction_data(l.algebra(zeta), target);
            block = extend_linear(v, ind, la.piece(b, i + 1), compose(unit_map(w, wind.h), g));
          }
          add_block(d, la, static_cast<int>(a), i, la, b, i + 1, scale(block, parity_sign(rr - rs)));
        }
        // (b): sigma -> tau facet of sigma, identity on L(eta)_{A(rho)}
        for (int tau : fan.cone(sigma).facets) {
          if (!fan.is_face(eta, tau)) continue;
          const int b = piece_index(rho, tau, eta);
          const int sign = parity_sign(rr - rs - 1) * incidence_sign(fan, tau, sigma);
          add_block(d, la, static_cast<int>(a), i, la, b, i + 1,
                    scale(identity_map(la.piece(static_cast<int>(a), i)), sign));
        }
      }
    }
    GMComplex c = out.complex.at(rho);
    for (auto& [i, g] : d) c.set_d(i, std::move(g));
    out.complex.set(rho, std::move(c));
  }
  // Mixing maps for facet pairs rho < mu.
  for (int rho = 0; rho < fan.size(); ++rho) {
    const BlockAssembler& la = layouts[static_cast<std::size_t>(rho)];
    const int rr = fan.cone(rho).dim;
    for (int mu : fan.cone(rho).cofacets) {
      const BlockAssembler& lb = layouts[static_cast<std::size_t>(mu)];
      const int sign = incidence_sign(fan, rho, mu);
      ComplexMap m;
      const auto& ps = pieces[static_cast<std::size_t>(rho)];
      for (std::size_t a = 0; a < ps.size(); ++a) {
        const int sigma = ps[a].sigma, eta = ps[a].eta;
        const int rs = fan.cone(sigma).dim;
        const int b = piece_index(mu, sigma, eta);
        for (const auto& [n, v] : l.at(eta).terms()) {
          const int i = n + rr - rs;
          const GradedMap tr = induction_transition(v, l.algebra(rho), l.algebra(mu));
          add_block(m, la, static_cast<int>(a), i, lb, b, i + 1, scale(tr, sign));
        }
      }
      out.complex.set_mix(rho, mu, std::move(m));
    }
  }
  // f_L(tau/rho) : L(tau) -> component (rho, tau) of L~(rho).
  for (int rho = 0; rho < fan.size(); ++rho) {
    const BlockAssembler& la = layouts[static_cast<std::size_t>(rho)];
    for (int tau : fan.cone(rho).faces) {
      const int b = piece_index(rho, rho, tau);
      const Induction ind = induction_data(l.algebra(tau), l.algebra(rho));
      ComplexMap m;
      for (const auto& [i, v] : l.at(tau).terms()) {
        for (const auto& [j, blk] : unit_map(v, ind.h)) {
          QMatrix full(la.dim(i, j), v.dim(j));
          full.place(la.offset(b, i, j), 0, blk);
          m[i][j] = std::move(full);
        }
      }
      if (!m.empty()) out.f[{tau, rho}] = std::move(m);
    }
  }
  return out;
}

namespace detail {

// Matrix of y |-> y-hat o theta^{-1}: the dual of the natural map
// W_{A(mu)} -> W_{A(rho)} picking the full-complement block, where
// W = v_{A(rho)} for a module v over a face algebra.
inline GradedMap dual_transition(const ExtModule& v, const ConeAlgebra& rho, const ConeAlgebra& mu) {
  const Induction to_rho = induction_data(v.algebra(), rho);
  const ExtModule w = induce(v, to_rho);
  const Induction rho_mu = induction_data(rho, mu);
  const Induction to_mu = induction_data(v.algebra(), mu);
  const ExtModule vmu = induce(v, to_mu);
  // theta : (W)_{A(mu)} -> v_{A(mu)}
  const GradedMap tr = induction_transition(v, rho, mu);
  const GradedMap theta = extend_linear(w, rho_mu, vmu, tr);
  const GradedMap lift = dual_lift(w, rho_mu);  // d_rho(W) -> d_mu(W_{A(mu)})
  const int kmu = static_cast<int>(mu.gens());
  GradedMap out;
  for (const auto& [q, l] : lift) {
    const int m = -kmu - q;
    const QMatrix th = graded_at(theta, m, vmu.dim(m), l.rows());
    const QMatrix inv = *inverse(th);
    graded_set(out, q, inv.transpose() * l);
  }
  return out;
}

}  // namespace detail

// D(L)(rho) = det(rho) (x) d_rho(i_rho^* L)[-r_rho], with mixing maps
// q'_{rho/mu} times the induced-dual transition.
inline GemComplex dualize_D(const GemComplex& l) {
  if (l.augmented()) throw PreconditionError("dualize_D: augmented complexes are not supported");
  const Fan& fan = l.fan();
  GemComplex out(l.fan_ptr());
  std::vector<StarSum> stars;
  std::vector<BlockAssembler> duals;
  for (int rho = 0; rho < fan.size(); ++rho) {
    stars.push_back(star_sum(l, rho, fan.cone(rho).faces));
    const int rr = fan.cone(rho).dim;
    out.set(rho, shift(dual_complex(stars.back().complex), -rr));
    // Layout of the dual, summand by summand.
    BlockAssembler da(l.algebra(rho));
    const auto& st = stars.back();
    for (std::size_t a = 0; a < st.cones.size(); ++a) {
      std::map<int, ExtModule> terms;
      for (const auto& [n, v] : l.at(st.cones[a]).terms())
        terms[rr - n] = dualize(st.layout.piece(static_cast<int>(a), n));
      da.add(std::move(terms));
    }
    da.build_terms();
    duals.push_back(std::move(da));
  }
  for (int rho = 0; rho < fan.size(); ++rho) {
    const int rr = fan.cone(rho).dim;
    const auto& st = stars[static_cast<std::size_t>(rho)];
    for (int mu : fan.cone(rho).cofacets) {
      const auto& smu = stars[static_cast<std::size_t>(mu)];
      const int sign = incidence_sign(fan, rho, mu);
      ComplexMap m;
      for (std::size_t a = 0; a < st.cones.size(); ++a) {
        const int s = st.cones[a];
        const int b = static_cast<int>(std::find(smu.cones.begin(), smu.cones.end(), s) - smu.cones.begin());
        for (const auto& [n, v] : l.at(s).terms()) {
          const int i = rr - n;  // D(L)(rho)^i holds d_rho(K^n)
          const GradedMap g = detail::dual_transition(v, l.algebra(rho), l.algebra(mu));
          add_block(m, duals[static_cast<std::size_t>(rho)], static_cast<int>(a), i, duals[static_cast<std::size_t>(mu)],
                    b, i + 1, scale(g, sign));
        }
      }
      out.set_mix(rho, mu, std::move(m));
    }
  }
  return out;
}

// Gamma(D^(L)) over the augmented fan: D(L) on the cones and
// det N (x) d_N(Gamma(L))[-r-1] on alpha.
inline GemComplex dualize_Dhat(const GemComplex& l) {
  const Fan& fan = l.fan();
  if (!fan.is_complete()) throw PreconditionError("FanNotComplete");
  const GemComplex d = dualize_D(l);
  GemComplex out(l.fan_ptr(), true);
  for (int s = 0; s < fan.size(); ++s) out.set(s, d.at(s));
  for (const auto& [key, m] : d.mixes()) out.set_mix(key.first, key.second, m);
  const int r = fan.rank();
  const int alpha = out.alpha();
  const StarSum g = star_sum(l, alpha, l.faces(alpha));
  out.set(alpha, shift(dual_complex(g.complex), -(r + 1)));
  BlockAssembler ga(l.algebra(alpha));
  for (std::size_t a = 0; a < g.cones.size(); ++a) {
    std::map<int, ExtModule> terms;
    for (const auto& [n, v] : l.at(g.cones[a]).terms()) terms[r + 1 - n] = dualize(g.layout.piece(static_cast<int>(a), n));
    ga.add(std::move(terms));
  }
  ga.build_terms();
  for (int tau : fan.cones_of_dim(r)) {
    const StarSum st = star_sum(l, tau, fan.cone(tau).faces);
    BlockAssembler ta(l.algebra(tau));
    for (std::size_t a = 0; a < st.cones.size(); ++a) {
      std::map<int, ExtModule> terms;
      for (const auto& [n, v] : l.at(st.cones[a]).terms()) terms[r - n] = dualize(st.layout.piece(static_cast<int>(a), n));
      ta.add(std::move(terms));
    }
    ta.build_terms();
    ComplexMap m;
    for (std::size_t a = 0; a < st.cones.size(); ++a) {
      const int s = st.cones[a];
      const int b = static_cast<int>(std::find(g.cones.begin(), g.cones.end(), s) - g.cones.begin());
      for (const auto& [n, v] : l.at(s).terms()) {
        const GradedMap id = identity_map(ta.piece(static_cast<int>(a), r - n));
        add_block(m, ta, static_cast<int>(a), r - n, ga, b, r - n + 1, id);
      }
    }
    out.set_mix(tau, alpha, std::move(m));
  }
  return out;
}

inline GMComplex dualize_Dhat_gamma(const GemComplex& l) { return gamma(dualize_Dhat(l)); }

}  // namespace toric_ic
