#pragma once
// Shared helpers for the test binaries: corpus access and independent oracles
// that do not reuse the library's elimination code.

#include <toric_ic/io.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace testing {

using namespace toric_ic;

inline std::string corpus(const std::string& name) { return std::string(TORIC_IC_CORPUS) + "/" + name + ".json"; }

inline std::shared_ptr<const Fan> corpus_fan(const std::string& name) {
  return std::make_shared<const Fan>(io::fan_from_file(corpus(name)));
}

inline std::shared_ptr<const Fan> make_fan(int rank, const std::vector<RayVector>& rays,
                                           const std::vector<std::vector<int>>& maximal) {
  return std::make_shared<const Fan>(load_fan(rank, rays, maximal));
}

inline const std::vector<std::string>& complete_corpus() {
  static const std::vector<std::string> names{"point", "p1", "p2", "p1xp1", "octahedron", "cube"};
  return names;
}

// Determinant by the permutation expansion.
inline Rational leibniz_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Rank as the size of the largest nonzero minor.
inline std::size_t minor_rank(const QMatrix& m) {
  const std::size_t top = std::min(m.rows(), m.cols());
  for (std::size_t k = top; k > 0; --k) {
    std::vector<bool> rs(m.rows(), false), cs(m.cols(), false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
      do {
        QMatrix sub(k, k);
        std::size_t a = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (!rs[i]) continue;
          std::size_t b = 0;
          for (std::size_t j = 0; j < m.cols(); ++j)
            if (cs[j]) sub(a, b++) = m(i, j);
          ++a;
        }
        if (leibniz_det(sub) != 0) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

// gcd of all maximal minors of an n x d integer matrix (d <= n).
inline Integer maximal_minor_gcd(const QMatrix& m) {
  const std::size_t d = m.cols();
  std::vector<bool> rs(m.rows(), false);
  std::fill(rs.begin(), rs.begin() + static_cast<long>(d), true);
  Integer g = 0;
  do {
    QMatrix sub(d, d);
    std::size_t a = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!rs[i]) continue;
      for (std::size_t j = 0; j < d; ++j) sub(a, j) = m(i, j);
      ++a;
    }
    const Rational det = leibniz_det(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_num().get_mpz_t());
  } while (std::prev_permutation(rs.begin(), rs.end()));
  return g;
}

// Faces of the cone spanned by `rays` by brute force: a subset S of rays is a
// face iff some integer functional in a small box is >= 0 on all rays and
// vanishes exactly on S. Returns ray-index subsets.
inline std::set<std::vector<int>> brute_faces(const std::vector<RayVector>& rays, int box) {
  const std::size_t n = rays.empty() ? 0 : rays[0].size();
  std::set<std::vector<int>> out;
  std::vector<long> u(n, -box);
  while (true) {
    bool ok = true;
    std::vector<int> zero;
    for (std::size_t k = 0; k < rays.size() && ok; ++k) {
      long s = 0;
      for (std::size_t i = 0; i < n; ++i) s += u[i] * rays[k][i];
      if (s < 0) ok = false;
      if (s == 0) zero.push_back(static_cast<int>(k));
    }
    if (ok) out.insert(zero);
    std::size_t i = 0;
    while (i < n && u[i] == box) u[i++] = -box;
    if (i == n) break;
    ++u[i];
  }
  return out;
}

// Generalized h-vector of a complete fan from its face poset (the toric
// h-vector recursion), as coefficients h_0..h_r.
namespace detail {
using Poly = std::vector<long>;  // coefficient of x^k

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline Poly x_minus_one_pow(int e) {
  Poly p{1};
  for (int k = 0; k < e; ++k) p = poly_mul(p, Poly{-1, 1});
  return p;
}

// h and g of the lower interval [0, sigma] in the face poset of a cone with
// dimension d: g collects coefficients of h up to degree floor(d/2).
struct Memo {
  std::map<int, Poly> h;
};

inline Poly g_from_h(const Poly& h, int d) {
  // g_0 = h_0, g_i = h_i - h_{i-1} for i <= d/2
  Poly g(static_cast<std::size_t>(d / 2 + 1), 0);
  for (int i = 0; i <= d / 2; ++i) {
    const long hi = i < static_cast<int>(h.size()) ? h[static_cast<std::size_t>(i)] : 0;
    const long hprev = (i > 0 && i - 1 < static_cast<int>(h.size())) ? h[static_cast<std::size_t>(i - 1)] : 0;
    g[static_cast<std::size_t>(i)] = hi - hprev;
  }
  return g;
}

// h of a polyhedral sphere of dimension d - 1 whose faces are the proper faces
// `faces` of an apex, each with its own g polynomial:
// h(x) = sum over faces F of g(F, x) (x - 1)^{d - 1 - dim F}.
inline Poly cone_h(const Fan& fan, int sigma, Memo& memo);

inline Poly cone_g(const Fan& fan, int sigma, Memo& memo) {
  const int d = fan.cone(sigma).dim;
  if (d == 0) return Poly{1};
  return g_from_h(cone_h(fan, sigma, memo), d - 1);
}

inline Poly cone_h(const Fan& fan, int sigma, Memo& memo) {
  auto it = memo.h.find(sigma);
  if (it != memo.h.end()) return it->second;
  const int d = fan.cone(sigma).dim;
  Poly h{0};
  for (int f : fan.cone(sigma).faces) {
    if (f == sigma) continue;
    const Poly term = poly_mul(cone_g(fan, f, memo), x_minus_one_pow(d - 1 - fan.cone(f).dim));
    if (term.size() > h.size()) h.resize(term.size(), 0);
    for (std::size_t k = 0; k < term.size(); ++k) h[k] += term[k];
  }
  memo.h[sigma] = h;
  return h;
}
}  // namespace detail

inline std::vector<long> generalized_h_vector(const Fan& fan) {
  detail::Memo memo;
  const int r = fan.rank();
  detail::Poly h{0};
  for (const auto& c : fan.cones()) {
    const detail::Poly term = detail::poly_mul(detail::cone_g(fan, c.id, memo), detail::x_minus_one_pow(r - c.dim));
    if (term.size() > h.size()) h.resize(term.size(), 0);
    for (std::size_t k = 0; k < term.size(); ++k) h[k] += term[k];
  }
  h.resize(static_cast<std::size_t>(r + 1), 0);
  // The recursion yields coefficients of x^{r-k}; reverse to h_0..h_r.
  std::reverse(h.begin(), h.end());
  return h;
}

// (h_0, 0, h_1, 0, ..., h_r)
inline std::vector<long> interleave_zeros(const std::vector<long>& h) {
  std::vector<long> out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k) out.push_back(0);
    out.push_back(h[k]);
  }
  return out;
}

}  // namespace testing
