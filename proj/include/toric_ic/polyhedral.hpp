#pragma once
// Double-description enumeration of extreme rays of a pointed polyhedral cone
// {x in Q^n : A x >= 0}.

#include <toric_ic/exactq.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace toric_ic::polyhedral {

using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

// Scales a nonzero rational vector to the primitive integer vector on its ray.
inline Vec primitive(Vec v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  Integer g = 0;
  for (auto& x : v) {
    x *= Rational(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (g != 0)
    for (auto& x : v) x /= Rational(g);
  return v;
}

inline std::vector<Vec> rows_of(const QMatrix& a) {
  std::vector<Vec> out(a.rows(), Vec(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

// Extreme rays of {x : A x >= 0}, returned as primitive integer vectors in a
// deterministic order. Requires rank(A) = n (the cone is pointed); throws
// otherwise. Adjacency of ray pairs uses the algebraic rank test.
inline std::vector<Vec> extreme_rays(const QMatrix& a) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  const auto rows = rows_of(a);
  if (n == 0) return {};
  // Initial basis: greedily collect independent rows in order.
  std::vector<std::size_t> basis_rows;
  {
    QMatrix acc(0, n);
    for (std::size_t i = 0; i < m && basis_rows.size() < n; ++i) {
      QMatrix trial = vstack(acc, a.block(i, 0, 1, n));
      if (rank(trial) == basis_rows.size() + 1) {
        acc = std::move(trial);
        basis_rows.push_back(i);
      }
    }
    if (basis_rows.size() != n) throw std::invalid_argument("extreme_rays: constraint system not of full rank");
  }
  QMatrix a0(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) a0(k, j) = a(basis_rows[k], j);
  const QMatrix a0inv = *inverse(a0);

  struct Ray {
    Vec v;
    std::vector<bool> zero;  // zero[i]: constraint i is tight (over processed constraints)
  };
  std::vector<bool> processed(m, false);
  for (auto i : basis_rows) processed[i] = true;

  auto tight_set = [&](const Vec& v) {
    std::vector<bool> z(m, false);
    for (std::size_t i = 0; i < m; ++i)
      if (processed[i] && sgn(dot(rows[i], v)) == 0) z[i] = true;
    return z;
  };

  std::vector<Ray> rays;
  for (std::size_t k = 0; k < n; ++k) {
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = a0inv(j, k);
    v = primitive(std::move(v));
    rays.push_back({v, {}});
  }
  for (auto& r : rays) r.zero = tight_set(r.v);

  auto adjacent = [&](const Ray& p, const Ray& q) {
    std::vector<std::size_t> common;
    for (std::size_t i = 0; i < m; ++i)
      if (p.zero[i] && q.zero[i]) common.push_back(i);
    if (common.size() + 2 < n) return false;
    QMatrix sub(common.size(), n);
    for (std::size_t k = 0; k < common.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) sub(k, j) = rows[common[k]][j];
    return rank(sub) == n - 2;
  };

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    std::vector<Rational> s(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) s[k] = dot(rows[i], rays[k].v);
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (sgn(s[k]) >= 0) next.push_back(rays[k]);
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (sgn(s[p]) <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (sgn(s[q]) >= 0) continue;
        if (!adjacent(rays[p], rays[q])) continue;
        Vec v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = s[p] * rays[q].v[j] - s[q] * rays[p].v[j];
        next.push_back({primitive(std::move(v)), {}});
      }
    }
    processed[i] = true;
    for (auto& r : next) r.zero = tight_set(r.v);
    rays = std::move(next);
  }
  std::vector<Vec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace toric_ic::polyhedral
