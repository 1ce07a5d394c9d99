#pragma once
// Rational polyhedral fans: face lattices, lattice bases N(sigma), incidence
// signs between facet pairs and the incidence complexes E(Phi, Z).

#include <toric_ic/exactq.hpp>
#include <toric_ic/polyhedral.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toric_ic {

enum class FanErrorKind { Malformed, NonPrimitiveRay, NotStronglyConvex, NotAFan, DuplicateCone };

inline const char* to_string(FanErrorKind k) {
  switch (k) {
    case FanErrorKind::Malformed: return "Malformed";
    case FanErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case FanErrorKind::NotStronglyConvex: return "NotStronglyConvex";
    case FanErrorKind::NotAFan: return "NotAFan";
    case FanErrorKind::DuplicateCone: return "DuplicateCone";
  }
  return "?";
}

class FanError : public std::runtime_error {
 public:
  FanError(FanErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  FanErrorKind kind() const { return kind_; }

 private:
  FanErrorKind kind_;
};

// Raised by operations whose preconditions on cone pairs or subsets fail
// (NotFacet, NotLocallyStarClosed, Not1Complete, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using RayVector = std::vector<long>;

struct Cone {
  int id = 0;
  std::vector<int> rays;  // sorted ray indices
  int dim = 0;
  QMatrix basis;              // rank x dim, canonical HNF Z-basis of N(sigma)
  std::vector<int> faces;     // all faces including itself, ascending ids
  std::vector<int> facets;    // faces of dimension dim - 1
  std::vector<int> cofacets;  // cones having this one as a facet
};

class Fan {
 public:
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(cones_.size()); }
  const std::vector<RayVector>& rays() const { return rays_; }
  const std::vector<Cone>& cones() const { return cones_; }
  const Cone& cone(int id) const { return cones_.at(static_cast<std::size_t>(id)); }
  int zero_cone() const { return 0; }
  bool is_complete() const { return complete_; }
  const std::vector<int>& maximal_cones() const { return maximal_; }

  bool is_face(int sigma, int tau) const { return face_[static_cast<std::size_t>(sigma) * cones_.size() + tau]; }

  std::vector<int> cones_of_dim(int d) const {
    std::vector<int> out;
    for (const auto& c : cones_)
      if (c.dim == d) out.push_back(c.id);
    return out;
  }

  // Looks up a cone by its (unsorted) ray set; -1 when absent.
  int find(std::vector<int> rays) const {
    std::sort(rays.begin(), rays.end());
    auto it = by_rays_.find(rays);
    return it == by_rays_.end() ? -1 : it->second;
  }

  // Cones rho with sigma a face of rho (the star Delta(sigma <)).
  std::vector<int> star(int sigma) const {
    std::vector<int> out;
    for (const auto& c : cones_)
      if (is_face(sigma, c.id)) out.push_back(c.id);
    return out;
  }

  // Sub-fan F(sigma) re-indexed as a standalone Fan, with the map from new ids
  // to ids of this fan.
  std::pair<Fan, std::vector<int>> face_fan(int sigma) const;

  friend Fan load_fan(int rank, const std::vector<RayVector>& rays, const std::vector<std::vector<int>>& maximal);

 private:
  int rank_ = 0;
  std::vector<RayVector> rays_;
  std::vector<Cone> cones_;
  std::vector<int> maximal_;
  std::vector<bool> face_;
  std::map<std::vector<int>, int> by_rays_;
  bool complete_ = false;
};

namespace detail {

inline QMatrix ray_matrix(int rank, const std::vector<RayVector>& rays, const std::vector<int>& idx) {
  QMatrix m(static_cast<std::size_t>(rank), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (int i = 0; i < rank; ++i) m(static_cast<std::size_t>(i), j) = rays[static_cast<std::size_t>(idx[j])][static_cast<std::size_t>(i)];
  return m;
}

// Coordinates of the columns of `m` with respect to the basis columns `basis`.
inline QMatrix coords_in(const QMatrix& basis, const QMatrix& m) {
  return solve_or_throw(basis, m, "coords_in");
}

// Facets of the cone generated by rays[idx], computed as the tight sets of the
// extreme rays of its dual cone inside the linear span. Throws
// NotStronglyConvex when the cone contains a line.
inline std::vector<std::vector<int>> facets_of(int rank, const std::vector<RayVector>& rays, const std::vector<int>& idx) {
  if (idx.empty()) return {};
  const QMatrix gens = ray_matrix(rank, rays, idx);
  const QMatrix basis = hnf_lattice_basis(gens);
  const std::size_t d = basis.cols();
  const QMatrix c = coords_in(basis, gens);  // d x |idx|
  const QMatrix constraints = c.transpose();  // one row per ray: <m, ray> >= 0
  std::vector<polyhedral::Vec> normals = polyhedral::extreme_rays(constraints);
  {
    QMatrix nm(normals.size(), d);
    for (std::size_t k = 0; k < normals.size(); ++k)
      for (std::size_t j = 0; j < d; ++j) nm(k, j) = normals[k][j];
    if (toric_ic::rank(nm) != d) throw FanError(FanErrorKind::NotStronglyConvex, "cone contains a line");
  }
  std::vector<std::vector<int>> out;
  for (const auto& m : normals) {
    std::vector<int> tight;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      Rational s = 0;
      for (std::size_t t = 0; t < d; ++t) s += m[t] * c(t, j);
      if (sgn(s) == 0) tight.push_back(idx[j]);
    }
    out.push_back(std::move(tight));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void collect_faces(int rank, const std::vector<RayVector>& rays, const std::vector<int>& idx,
                          std::set<std::vector<int>>& out) {
  if (!out.insert(idx).second) return;
  for (const auto& f : facets_of(rank, rays, idx)) collect_faces(rank, rays, f, out);
}

// Inequality description (A x >= 0) of the cone generated by rays[idx] in the
// ambient space: facet normals pulled back through the span coordinates plus
// the linear equations of the span (as pairs of inequalities).
inline QMatrix ambient_inequalities(int rank, const std::vector<RayVector>& rays, const std::vector<int>& idx) {
  const std::size_t r = static_cast<std::size_t>(rank);
  const QMatrix gens = ray_matrix(rank, rays, idx);
  if (idx.empty()) {
    QMatrix a(2 * r, r);
    for (std::size_t i = 0; i < r; ++i) {
      a(2 * i, i) = 1;
      a(2 * i + 1, i) = -1;
    }
    return a;
  }
  const QMatrix basis = hnf_lattice_basis(gens);
  const std::size_t d = basis.cols();
  const QMatrix c = coords_in(basis, gens);
  const auto normals = polyhedral::extreme_rays(c.transpose());
  // Left inverse of basis: (B^T B)^{-1} B^T.
  const QMatrix bt = basis.transpose();
  const QMatrix left = solve_or_throw(bt * basis, bt, "ambient_inequalities");
  const QMatrix perp = kernel(bt).transpose();  // rows annihilate the span
  QMatrix a(normals.size() + 2 * perp.rows(), r);
  for (std::size_t k = 0; k < normals.size(); ++k) {
    QMatrix row(1, d);
    for (std::size_t j = 0; j < d; ++j) row(0, j) = normals[k][j];
    a.place(k, 0, row * left);
  }
  for (std::size_t k = 0; k < perp.rows(); ++k) {
    for (std::size_t j = 0; j < r; ++j) {
      a(normals.size() + 2 * k, j) = perp(k, j);
      a(normals.size() + 2 * k + 1, j) = -perp(k, j);
    }
  }
  return a;
}

}  // namespace detail

inline Fan load_fan(int rank, const std::vector<RayVector>& rays, const std::vector<std::vector<int>>& maximal) {
  if (rank < 0) throw FanError(FanErrorKind::Malformed, "negative rank");
  const std::size_t r = static_cast<std::size_t>(rank);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != r) throw FanError(FanErrorKind::Malformed, "ray " + std::to_string(i) + " has wrong length");
    Integer g = 0;
    for (long x : rays[i]) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(x).get_mpz_t());
    if (g != 1) throw FanError(FanErrorKind::NonPrimitiveRay, "ray " + std::to_string(i) + " is zero or not primitive");
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j])
        throw FanError(FanErrorKind::DuplicateCone, "rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  // Generating cones: the listed maximal cones plus every ray on its own.
  std::vector<std::vector<int>> gens;
  std::set<std::vector<int>> seen;
  for (const auto& mc : maximal) {
    std::vector<int> s = mc;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw FanError(FanErrorKind::Malformed, "repeated ray index in a maximal cone");
    for (int x : s)
      if (x < 0 || static_cast<std::size_t>(x) >= rays.size())
        throw FanError(FanErrorKind::Malformed, "ray index out of range");
    if (!seen.insert(s).second) throw FanError(FanErrorKind::DuplicateCone, "maximal cone listed twice");
    gens.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::vector<int> s{static_cast<int>(i)};
    if (seen.insert(s).second) gens.push_back(std::move(s));
  }

  std::vector<std::set<std::vector<int>>> faces_of_gen(gens.size());
  std::set<std::vector<int>> all;
  all.insert({});
  for (std::size_t g = 0; g < gens.size(); ++g) {
    detail::collect_faces(rank, rays, gens[g], faces_of_gen[g]);
    faces_of_gen[g].insert({});
    std::set<int> extremal;
    for (const auto& f : faces_of_gen[g])
      if (f.size() == 1) extremal.insert(f.front());
    for (int x : gens[g])
      if (!extremal.count(x))
        throw FanError(FanErrorKind::NotAFan, "ray " + std::to_string(x) + " is not an extremal ray of its cone");
    all.insert(faces_of_gen[g].begin(), faces_of_gen[g].end());
  }

  // Fan axiom: the geometric intersection of two generating cones is the
  // cone on their common rays, which must be a face of both.
  std::vector<QMatrix> ineq(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) ineq[g] = detail::ambient_inequalities(rank, rays, gens[g]);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t h = g + 1; h < gens.size(); ++h) {
      std::vector<int> common;
      std::set_intersection(gens[g].begin(), gens[g].end(), gens[h].begin(), gens[h].end(), std::back_inserter(common));
      if (!faces_of_gen[g].count(common) || !faces_of_gen[h].count(common))
        throw FanError(FanErrorKind::NotAFan, "common rays of two cones do not form a common face");
      const QMatrix both = vstack(ineq[g], ineq[h]);
      const auto ext = polyhedral::extreme_rays(both);
      const QMatrix span = detail::ray_matrix(rank, rays, common);
      const std::size_t span_rank = toric_ic::rank(span);
      for (const auto& v : ext) {
        QMatrix trial = hstack(span, QMatrix::column(v));
        if (toric_ic::rank(trial) != span_rank)
          throw FanError(FanErrorKind::NotAFan, "two cones overlap beyond a common face");
      }
    }
  }

  Fan fan;
  fan.rank_ = rank;
  fan.rays_ = rays;
  std::vector<std::vector<int>> list(all.begin(), all.end());
  std::vector<std::pair<int, std::vector<int>>> keyed;
  for (auto& s : list) {
    const int d = s.empty() ? 0 : static_cast<int>(toric_ic::rank(detail::ray_matrix(rank, rays, s)));
    keyed.emplace_back(d, std::move(s));
  }
  std::sort(keyed.begin(), keyed.end());
  const std::size_t n = keyed.size();
  fan.cones_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Cone& c = fan.cones_[k];
    c.id = static_cast<int>(k);
    c.dim = keyed[k].first;
    c.rays = keyed[k].second;
    c.basis = hnf_lattice_basis(detail::ray_matrix(rank, rays, c.rays));
    if (static_cast<int>(c.basis.cols()) != c.dim) throw std::logic_error("load_fan: lattice rank mismatch");
    fan.by_rays_[c.rays] = c.id;
  }
  fan.face_.assign(n * n, false);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& ra = fan.cones_[a].rays;
      const auto& rb = fan.cones_[b].rays;
      // A ray subset of a cone is a face iff it is one of its enumerated faces;
      // since all faces are present in the fan, subset + membership suffices.
      if (!std::includes(rb.begin(), rb.end(), ra.begin(), ra.end())) continue;
      bool face = false;
      for (std::size_t g = 0; g < gens.size() && !face; ++g)
        if (faces_of_gen[g].count(rb) && faces_of_gen[g].count(ra)) {
          // Both are faces of one generating cone; ra is a face of rb iff
          // ra = rb cap (some face of g), which holds since the face lattice of
          // g is closed under intersection and ra is a face of g.
          face = true;
        }
      fan.face_[a * n + b] = face;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    Cone& c = fan.cones_[b];
    for (std::size_t a = 0; a < n; ++a) {
      if (!fan.face_[a * n + b]) continue;
      c.faces.push_back(static_cast<int>(a));
      if (fan.cones_[a].dim + 1 == c.dim) {
        c.facets.push_back(static_cast<int>(a));
        fan.cones_[a].cofacets.push_back(static_cast<int>(b));
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool maximal_cone = true;
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && fan.face_[a * n + b]) maximal_cone = false;
    if (maximal_cone) fan.maximal_.push_back(static_cast<int>(a));
  }

  // Completeness by the adjacency criterion.
  const auto top = fan.cones_of_dim(rank);
  bool complete = !top.empty();
  if (complete) {
    for (int t : fan.cones_of_dim(rank - 1)) {
      int count = 0;
      for (int c : fan.cones_[static_cast<std::size_t>(t)].cofacets)
        if (fan.cones_[static_cast<std::size_t>(c)].dim == rank) ++count;
      if (count != 2) complete = false;
    }
  }
  if (complete && top.size() > 1) {
    std::map<int, int> comp;
    for (std::size_t k = 0; k < top.size(); ++k) comp[top[k]] = static_cast<int>(k);
    std::vector<int> parent(top.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (int t : fan.cones_of_dim(rank - 1)) {
      const auto& cf = fan.cones_[static_cast<std::size_t>(t)].cofacets;
      if (cf.size() == 2) parent[static_cast<std::size_t>(find(comp[cf[0]]))] = find(comp[cf[1]]);
    }
    const int root = find(0);
    for (std::size_t k = 0; k < top.size(); ++k)
      if (find(static_cast<int>(k)) != root) complete = false;
  }
  fan.complete_ = complete;
  return fan;
}

inline std::pair<Fan, std::vector<int>> Fan::face_fan(int sigma) const {
  const Cone& s = cone(sigma);
  std::vector<RayVector> sub_rays;
  std::map<int, int> remap;
  for (int x : s.rays) {
    remap[x] = static_cast<int>(sub_rays.size());
    sub_rays.push_back(rays_[static_cast<std::size_t>(x)]);
  }
  std::vector<int> mc;
  for (int x : s.rays) mc.push_back(remap[x]);
  std::vector<std::vector<int>> maximal;
  if (!mc.empty()) maximal.push_back(mc);
  Fan sub = load_fan(rank_, sub_rays, maximal);
  std::vector<int> to_parent(static_cast<std::size_t>(sub.size()));
  for (const auto& c : sub.cones()) {
    std::vector<int> orig;
    for (int x : c.rays) orig.push_back(s.rays[static_cast<std::size_t>(x)]);
    to_parent[static_cast<std::size_t>(c.id)] = find(orig);
  }
  return {std::move(sub), std::move(to_parent)};
}

// q'_{sigma/tau}(det generator of sigma) = sign * (det generator of tau).
inline int incidence_sign(const Fan& fan, int sigma, int tau) {
  const Cone& s = fan.cone(sigma);
  const Cone& t = fan.cone(tau);
  if (!fan.is_face(sigma, tau) || t.dim != s.dim + 1) throw PreconditionError("incidence_sign: NotFacet");
  // Any ray of tau outside sigma represents a positive multiple of the
  // generator class of N(tau)/N(sigma) modulo N(sigma).
  int outside = -1;
  for (int x : t.rays)
    if (!std::binary_search(s.rays.begin(), s.rays.end(), x)) {
      outside = x;
      break;
    }
  const QMatrix a = detail::ray_matrix(fan.rank(), fan.rays(), {outside});
  const QMatrix m = detail::coords_in(t.basis, hstack(a, s.basis));
  const Rational det = determinant(m);
  if (sgn(det) == 0) throw std::logic_error("incidence_sign: degenerate facet pair");
  return sgn(det) > 0 ? 1 : -1;
}

// Incidence sign into the imaginary top cone of the augmented fan: identity
// with respect to det(tau) = det N, so +1 for every full-dimensional tau.
inline int incidence_sign_alpha(const Fan& fan, int tau) {
  if (fan.cone(tau).dim != fan.rank()) throw PreconditionError("incidence_sign_alpha: NotFacet");
  return 1;
}

inline bool is_locally_star_closed(const Fan& fan, const std::vector<int>& phi) {
  std::vector<bool> in(static_cast<std::size_t>(fan.size()), false);
  for (int x : phi) in[static_cast<std::size_t>(x)] = true;
  for (int s : phi)
    for (int rho : phi) {
      if (!fan.is_face(s, rho)) continue;
      for (int t : fan.cone(rho).faces)
        if (fan.is_face(s, t) && !in[static_cast<std::size_t>(t)]) return false;
    }
  return true;
}

inline bool is_one_complete(const Fan& fan, const std::vector<int>& phi) {
  std::set<int> in(phi.begin(), phi.end());
  for (int s : phi) {
    if (fan.cone(s).dim != fan.rank() - 1) continue;
    int count = 0;
    for (int t : fan.cone(s).cofacets)
      if (fan.cone(t).dim == fan.rank() && in.count(t)) ++count;
    if (count != 2) return false;
  }
  return true;
}

enum class EMode { Plain, Augmented };

// Free Z-module complex with one basis vector per cone of each degree. The
// label -1 stands for the imaginary cone alpha.
struct ZComplex {
  std::map<int, std::vector<int>> labels;  // degree -> cone ids
  std::map<int, QMatrix> d;                // degree i -> matrix (dim i+1) x (dim i)

  std::size_t dim(int i) const {
    auto it = labels.find(i);
    return it == labels.end() ? 0 : it->second.size();
  }
  QMatrix differential(int i) const {
    auto it = d.find(i);
    if (it != d.end()) return it->second;
    return QMatrix(dim(i + 1), dim(i));
  }
  bool squares_to_zero() const {
    for (const auto& [i, _] : labels)
      if (!(differential(i + 1) * differential(i)).is_zero()) return false;
    return true;
  }
  // Betti numbers over Q per degree (only nonzero ones are listed).
  std::map<int, std::size_t> rational_cohomology() const {
    std::map<int, std::size_t> h;
    for (const auto& [i, lab] : labels) {
      const std::size_t ker = lab.size() - toric_ic::rank(differential(i));
      const std::size_t im = toric_ic::rank(differential(i - 1));
      if (ker > im) h[i] = ker - im;
    }
    return h;
  }
};

inline ZComplex e_complex(const Fan& fan, const std::vector<int>& phi, EMode mode) {
  if (!is_locally_star_closed(fan, phi)) throw PreconditionError("e_complex: NotLocallyStarClosed");
  if (mode == EMode::Augmented && !is_one_complete(fan, phi)) throw PreconditionError("e_complex: Not1Complete");
  ZComplex z;
  std::vector<int> sorted = phi;
  std::sort(sorted.begin(), sorted.end());
  for (int s : sorted) z.labels[fan.cone(s).dim].push_back(s);
  if (mode == EMode::Augmented) z.labels[fan.rank() + 1].push_back(-1);
  for (const auto& [i, src] : z.labels) {
    auto it = z.labels.find(i + 1);
    if (it == z.labels.end()) continue;
    const auto& dst = it->second;
    QMatrix m(dst.size(), src.size());
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < dst.size(); ++b) {
        if (dst[b] == -1) {
          m(b, a) = incidence_sign_alpha(fan, src[a]);
        } else if (fan.is_face(src[a], dst[b])) {
          m(b, a) = incidence_sign(fan, src[a], dst[b]);
        }
      }
    z.d[i] = std::move(m);
  }
  return z;
}

inline bool is_acyclic_z(const ZComplex& c) { return c.rational_cohomology().empty(); }

}  // namespace toric_ic
