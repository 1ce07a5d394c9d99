#pragma once
// Seeded generators of random modules, complexes and complexes on fans, for
// property tests and the self-check suite.

#include <toric_ic/ic.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace toric_ic::random {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline QMatrix small_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound = 2, double density = 0.6) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(rng, density)) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

inline QMatrix invertible_matrix(Rng& rng, std::size_t n) {
  while (true) {
    QMatrix m = small_matrix(rng, n, n, 2, 0.7);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 1;
    if (rank(m) == n) return m;
  }
}

// Moves every component from degree j to j + shift.
inline ExtModule regrade(const ExtModule& v, int shift) {
  ExtModule out(v.algebra());
  for (const auto& [j, d] : v.dims()) out.set_dim(j + shift, d);
  for (std::size_t t = 0; t < v.gens(); ++t)
    for (const auto& [j, _] : v.dims()) out.set_action(t, j + shift, v.action(t, j));
  return out;
}

inline GradedMap regrade_map(const GradedMap& f, int shift) {
  GradedMap out;
  for (const auto& [j, m] : f) out[j + shift] = m;
  return out;
}

// Free module with generators in the given degrees.
inline ExtModule free_on(const ConeAlgebra& alg, const std::vector<int>& degrees) {
  const ExtModule f = free_module(alg);
  std::vector<ExtModule> parts;
  for (int g : degrees) parts.push_back(regrade(f, g));
  std::vector<const ExtModule*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return toric_ic::direct_sum(alg, ptrs).module;
}

// The A-linear map from free_on(alg, degrees) sending generator g to the
// column images[g] of W in degree degrees[g].
inline GradedMap free_hom(const ConeAlgebra& alg, const std::vector<int>& degrees, const ExtModule& w,
                          const std::vector<QMatrix>& images) {
  const std::size_t k = alg.gens();
  GradedMap out;
  std::map<int, std::size_t> fill;
  std::map<int, std::vector<std::pair<std::size_t, QMatrix>>> cols;  // degree -> (position, column)
  for (std::size_t g = 0; g < degrees.size(); ++g) {
    for (std::size_t s = 0; s <= k; ++s) {
      for (Mask mask : combinations(k, s)) {
        const int deg = degrees[g] - static_cast<int>(s);
        QMatrix c = images[g];
        int cur = degrees[g];
        for (int u = static_cast<int>(k) - 1; u >= 0; --u) {
          if (!(mask & (Mask(1) << u))) continue;
          c = w.action(static_cast<std::size_t>(u), cur) * c;
          --cur;
        }
        cols[deg].push_back({fill[deg]++, std::move(c)});
      }
    }
  }
  for (auto& [deg, list] : cols) {
    QMatrix m(w.dim(deg), list.size());
    for (auto& [pos, c] : list) m.place(0, pos, c);
    graded_set(out, deg, std::move(m));
  }
  return out;
}

inline std::vector<int> random_degrees(Rng& rng, std::size_t count, int lo, int hi) {
  std::vector<int> d(count);
  for (auto& x : d) x = uniform(rng, lo, hi);
  std::sort(d.begin(), d.end());
  return d;
}

inline GradedMap random_free_hom(Rng& rng, const ConeAlgebra& alg, const std::vector<int>& degrees, const ExtModule& w) {
  std::vector<QMatrix> images;
  for (int g : degrees) images.push_back(small_matrix(rng, w.dim(g), 1));
  return free_hom(alg, degrees, w, images);
}

// Random finitely generated module: a free module, a cokernel of a random
// map of free modules, an image, or the dual of one of these.
inline ExtModule random_module(Rng& rng, const ConeAlgebra& alg, int lo = -1, int hi = 1) {
  const auto dg = random_degrees(rng, static_cast<std::size_t>(uniform(rng, 1, 2)), lo, hi);
  ExtModule f = free_on(alg, dg);
  ExtModule out = f;
  const int kind = uniform(rng, 0, 3);
  if (kind >= 1) {
    const auto rel = random_degrees(rng, static_cast<std::size_t>(uniform(rng, 1, 2)), lo - 1, hi);
    const GradedMap h = random_free_hom(rng, alg, rel, f);
    GradedMap img;
    for (const auto& [j, m] : h) img[j] = decompose(m).image_basis;
    out = (kind == 2) ? submodule(f, img).first : quotient_module(f, img).first;
  }
  if (kind == 3 && coin(rng)) out = dualize(out);
  return out;
}

// Conjugates every component by a random invertible change of basis.
inline GMComplex conjugate(Rng& rng, const GMComplex& c) {
  std::map<int, std::map<int, QMatrix>> p, pinv;
  for (const auto& [i, v] : c.terms())
    for (const auto& [j, d] : v.dims()) {
      p[i][j] = invertible_matrix(rng, d);
      pinv[i][j] = *inverse(p[i][j]);
    }
  auto at = [](const std::map<int, std::map<int, QMatrix>>& m, int i, int j, std::size_t d) {
    auto it = m.find(i);
    if (it == m.end() || !it->second.count(j)) return QMatrix::identity(d);
    return it->second.at(j);
  };
  GMComplex out(c.algebra());
  for (const auto& [i, v] : c.terms()) {
    ExtModule w(v.algebra());
    for (const auto& [j, d] : v.dims()) w.set_dim(j, d);
    for (std::size_t t = 0; t < v.gens(); ++t)
      for (const auto& [j, d] : v.dims())
        w.set_action(t, j, at(pinv, i, j - 1, v.dim(j - 1)) * v.action(t, j) * at(p, i, j, d));
    out.set_term(i, std::move(w));
  }
  for (const auto& [i, f] : c.differentials()) {
    GradedMap g;
    for (const auto& [j, m] : f) graded_set(g, j, at(pinv, i + 1, j, c.dim(i + 1, j)) * m * at(p, i, j, c.dim(i, j)));
    out.set_d(i, std::move(g));
  }
  return out;
}

// Two-term complex F -> W given by a random map from a free module.
inline GMComplex random_two_term(Rng& rng, const ConeAlgebra& alg, int at) {
  const ExtModule w = random_module(rng, alg);
  const auto dg = random_degrees(rng, static_cast<std::size_t>(uniform(rng, 1, 2)), -1, 1);
  GMComplex c(alg);
  c.set_term(at, free_on(alg, dg));
  c.set_term(at + 1, w);
  c.set_d(at, random_free_hom(rng, alg, dg, w));
  return c;
}

// V -> V -> ... with d(v) = (-1)^p y v, term n regraded up by n.
inline GMComplex random_koszul(Rng& rng, const ConeAlgebra& alg, int at) {
  GMComplex c(alg);
  if (alg.gens() == 0) return random_two_term(rng, alg, at);
  const ExtModule v = random_module(rng, alg);
  std::vector<Rational> y(alg.ambient());
  std::vector<Rational> coeffs(alg.gens());
  for (auto& x : coeffs) x = uniform(rng, -2, 2);
  for (std::size_t t = 0; t < alg.gens(); ++t)
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += coeffs[t] * alg.basis(i, t);
  const int len = uniform(rng, 2, 3);
  for (int n = 0; n < len; ++n) c.set_term(at + n, regrade(v, n));
  for (int n = 0; n + 1 < len; ++n) {
    GradedMap d;
    for (const auto& [p, _] : v.dims()) {
      const QMatrix a = v.action_by(y, p);
      if (a.rows() == 0) continue;
      graded_set(d, p + n, a * Rational(parity_sign(p)));
    }
    c.set_d(at + n, std::move(d));
  }
  return c;
}

inline GMComplex direct_sum(const GMComplex& a, const GMComplex& b) {
  GMComplex out(a.algebra());
  std::set<int> is;
  for (const auto& [i, _] : a.terms()) is.insert(i);
  for (const auto& [i, _] : b.terms()) is.insert(i);
  for (int i : is) {
    const ExtModule x = a.term(i), y = b.term(i);
    out.set_term(i, toric_ic::direct_sum(a.algebra(), {&x, &y}).module);
  }
  for (int i : is) {
    GradedMap d;
    for (int j : all_internal_degrees(a, b)) {
      const std::size_t rows = out.dim(i + 1, j), cols = out.dim(i, j);
      if (rows == 0 || cols == 0) continue;
      QMatrix m(rows, cols);
      m.place(0, 0, a.d(i, j));
      m.place(a.dim(i + 1, j), a.dim(i, j), b.d(i, j));
      graded_set(d, j, std::move(m));
    }
    out.set_d(i, std::move(d));
  }
  return out;
}

inline GMComplex random_complex(Rng& rng, const ConeAlgebra& alg, int lo = -1, int hi = 1) {
  GMComplex c = coin(rng) ? random_two_term(rng, alg, uniform(rng, lo, hi)) : random_koszul(rng, alg, uniform(rng, lo, hi));
  if (coin(rng)) c = direct_sum(c, random_two_term(rng, alg, uniform(rng, lo, hi)));
  switch (uniform(rng, 0, 4)) {
    case 0: c = gt_le(uniform(rng, -2, 2), c).complex; break;
    case 1: c = gt_ge(uniform(rng, -2, 2), c).complex; break;
    case 2: c = shift(c, uniform(rng, -1, 1)); break;
    case 3: c = dual_complex(c); break;
    default: break;
  }
  return conjugate(rng, c);
}

// Adds R to L(pi) with zero mixing maps in and out.
inline GemComplex add_unmixed_summand(const GemComplex& l, int pi, const GMComplex& r) {
  GemComplex out = l;
  const GMComplex& old = l.at(pi);
  out.set(pi, direct_sum(old, r));
  // Mixing into pi: pad rows; mixing out of pi: pad columns.
  for (const auto& [key, m] : l.mixes()) {
    const auto [s, t] = key;
    if (t == pi) {
      ComplexMap nm;
      for (const auto& [i, g] : m)
        for (const auto& [j, a] : g) {
          QMatrix b(out.at(pi).dim(i + 1, j), a.cols());
          b.place(0, 0, a);
          nm[i][j] = std::move(b);
        }
      out.set_mix(s, t, std::move(nm));
    } else if (s == pi) {
      ComplexMap nm;
      for (const auto& [i, g] : m)
        for (const auto& [j, a] : g) {
          QMatrix b(a.rows(), out.at(pi).dim(i, j));
          b.place(0, 0, a);
          nm[i][j] = std::move(b);
        }
      out.set_mix(s, t, std::move(nm));
    }
  }
  return out;
}

struct GemShape {
  bool point_base = false;     // start from Q on the zero cone
  double summand_chance = 0.25;
};

// A random valid complex on the fan, produced by builder-style steps with
// random truncation levels and random unmixed summands.
inline GemComplex random_gem(Rng& rng, std::shared_ptr<const Fan> fan, GemShape shape = {}) {
  GemComplex l(fan);
  GMComplex base = point_complex(l.algebra(0));
  if (!shape.point_base) {
    GMComplex extra = random_complex(rng, l.algebra(0), 0, 1);
    base = coin(rng) ? direct_sum(extra, base) : extra;
  }
  l.set(0, base);
  for (int pi : default_build_order(*fan)) {
    l = j_shriek_extend(l, pi);
    l = gt_pi_ge(uniform(rng, -fan->cone(pi).dim, 2), pi, l);
    if (coin(rng, shape.summand_chance))
      l = add_unmixed_summand(l, pi, random_two_term(rng, l.algebra(pi), uniform(rng, 0, 1)));
  }
  return l;
}

}  // namespace toric_ic::random
