#include "support.hpp"

#include <toric_ic/random.hpp>

#include <catch_amalgamated.hpp>

using namespace toric_ic;

namespace {

// sum over p of (-1)^p dim X^p_q, from a dimension table.
std::map<int, long> euler(const CohomTable& t) {
  std::map<int, long> e;
  for (const auto& [pq, d] : t) e[pq.second] += (pq.first % 2 ? -1 : 1) * static_cast<long>(d);
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

CohomTable restrict_total(const CohomTable& t, int lo, int hi) {
  CohomTable out;
  for (const auto& [pq, d] : t)
    if (pq.first + pq.second >= lo && pq.first + pq.second <= hi) out[pq] = d;
  return out;
}

std::vector<GMComplex> random_corpus(std::uint64_t seed, int per_rank) {
  random::Rng rng(seed);
  std::vector<GMComplex> out;
  for (std::size_t k = 0; k <= 3; ++k)
    for (int n = 0; n < per_rank; ++n) out.push_back(random::random_complex(rng, ambient_algebra(k)));
  return out;
}

GMComplex point(std::size_t k = 0) { return point_complex(ambient_algebra(k)); }

}  // namespace

TEST_CASE("cohomology of small complexes") {
  CHECK(cohomology_dims(GMComplex(ambient_algebra(1))).empty());
  GMComplex id(ambient_algebra(0));
  ExtModule q(ambient_algebra(0));
  q.set_dim(0, 1);
  id.set_term(0, q);
  id.set_term(1, q);
  id.set_d(0, {{0, QMatrix::identity(1)}});
  CHECK(is_acyclic(id));
  CHECK(cohomology_dims(point()) == CohomTable{{{0, 0}, 1}});
  // A(ray) -> A(ray) by the nonzero element of degree -1, regraded.
  const GMComplex k = random::random_koszul(*std::make_unique<random::Rng>(3), ambient_algebra(1), 0);
  std::string why;
  CHECK(k.check(&why));
}

TEST_CASE("cohomology respects the Euler characteristic") {
  for (const auto& c : random_corpus(21, 25)) {
    REQUIRE(c.check());
    CHECK(euler(cohomology_dims(c)) == euler(term_dims(c)));
  }
}

TEST_CASE("a broken differential is rejected") {
  GMComplex c(ambient_algebra(0));
  ExtModule q(ambient_algebra(0));
  q.set_dim(0, 1);
  for (int i = 0; i < 3; ++i) c.set_term(i, q);
  c.set_d(0, {{0, QMatrix::identity(1)}});
  c.set_d(1, {{0, QMatrix::identity(1)}});
  std::string why;
  CHECK_FALSE(c.check(&why));
}

TEST_CASE("shifts") {
  for (const auto& c : random_corpus(22, 10)) {
    const GMComplex s0 = shift(c, 0);
    CHECK(term_dims(s0) == term_dims(c));
    const GMComplex back = shift(shift(c, 2), -2);
    CHECK(back.differentials() == c.differentials());
    for (int n : {-2, 1, 3}) {
      const GMComplex s = shift(c, n);
      REQUIRE(s.check());
      CohomTable expect;
      for (const auto& [pq, d] : cohomology_dims(c)) expect[{pq.first - n, pq.second}] = d;
      CHECK(cohomology_dims(s) == expect);
    }
  }
}

TEST_CASE("mapping cones") {
  for (const auto& c : random_corpus(23, 8)) {
    CHECK(is_acyclic(mapping_cone(c, c, identity_map(c))));
    CHECK(is_quasi_iso(c, c, identity_map(c)));
    const GMComplex zero(c.algebra());
    const GMComplex cz = mapping_cone(c, zero, {});
    CHECK(term_dims(cz) == term_dims(shift(c, 1)));
    CHECK(cohomology_dims(cz) == cohomology_dims(shift(c, 1)));
    if (!is_acyclic(c)) CHECK_FALSE(is_quasi_iso(zero, c, {}));
  }
  CHECK_THROWS(mapping_cone(point(0), point(1), {}));
}

TEST_CASE("cone of an injection computes the cokernel") {
  for (const auto& c : random_corpus(24, 8)) {
    for (int k = -2; k <= 2; ++k) {
      const SubOrQuotient sub = gt_le(k, c);
      REQUIRE(is_chain_map(sub.complex, c, sub.map));
      BigradedBasis basis;
      for (const auto& [i, g] : sub.map)
        for (const auto& [j, m] : g) basis[i][j] = m;
      const SubOrQuotient coker = quotient_complex(c, basis);
      REQUIRE(coker.complex.check());
      const GMComplex cone = mapping_cone(sub.complex, c, sub.map);
      REQUIRE(cone.check());
      CHECK(cohomology_dims(cone) == cohomology_dims(coker.complex));
      // Long exact sequence bookkeeping on Euler characteristics.
      std::map<int, long> e = euler(term_dims(c));
      for (const auto& [q, x] : euler(term_dims(sub.complex))) e[q] -= x;
      for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
      CHECK(euler(cohomology_dims(cone)) == e);
    }
  }
}

TEST_CASE("gradual truncations keep cohomology in the right range") {
  for (const auto& c : random_corpus(25, 15)) {
    const CohomTable h = cohomology_dims(c);
    for (int k = -5; k <= 5; ++k) {
      const SubOrQuotient le = gt_le(k, c);
      const SubOrQuotient ge = gt_ge(k, c);
      REQUIRE(le.complex.check());
      REQUIRE(ge.complex.check());
      CHECK(is_chain_map(le.complex, c, le.map));
      CHECK(is_chain_map(c, ge.complex, ge.map));
      CHECK(cohomology_dims(le.complex) == restrict_total(h, -100, k));
      CHECK(cohomology_dims(ge.complex) == restrict_total(h, k, 100));
    }
  }
}

TEST_CASE("tilde truncations are quasi-isomorphic to the plain ones") {
  for (const auto& c : random_corpus(26, 12)) {
    for (int k = -4; k <= 4; ++k) {
      const SubOrQuotient le = gt_le(k, c);
      const SubOrQuotient tle = tgt_le(k, c);
      REQUIRE(tle.complex.check());
      const ComplexMap inc = sub_to_sub(le.map, tle.map);
      CHECK(is_chain_map(le.complex, tle.complex, inc));
      CHECK(is_quasi_iso(le.complex, tle.complex, inc));
      CHECK(euler(term_dims(le.complex)) == euler(term_dims(tle.complex)));

      const SubOrQuotient ge = gt_ge(k, c);
      const SubOrQuotient tge = tgt_ge(k, c);
      REQUIRE(tge.complex.check());
      const ComplexMap proj = quotient_to_quotient(tge, ge);
      CHECK(is_chain_map(tge.complex, ge.complex, proj));
      CHECK(is_quasi_iso(tge.complex, ge.complex, proj));
    }
  }
}

TEST_CASE("truncation short exact sequence") {
  for (const auto& c : random_corpus(27, 10)) {
    for (int k = -4; k <= 4; ++k) {
      const CohomTable a = term_dims(tgt_le(k, c).complex);
      const CohomTable b = term_dims(gt_ge(k + 1, c).complex);
      CohomTable sum = a;
      for (const auto& [pq, d] : b) sum[pq] += d;
      CHECK(sum == term_dims(c));
    }
  }
}

TEST_CASE("truncation examples") {
  // Complex concentrated above total degree 0.
  const GMComplex high = shift(point(), -2);
  CHECK(gt_le(1, high).complex.is_zero());
  // A(ray)[-1], truncated from total degree 1: one dimension at (1,0).
  GMComplex a(ambient_algebra(1));
  a.set_term(0, free_module(ambient_algebra(1)));
  const GMComplex shifted = shift(a, -1);
  CHECK(term_dims(gt_ge(1, shifted).complex) == CohomTable{{{1, 0}, 1}});
}

TEST_CASE("dual complexes") {
  CHECK(dual_complex(GMComplex(ambient_algebra(2))).is_zero());
  CHECK(term_dims(dual_complex(point())) == term_dims(point()));
  for (const auto& c : random_corpus(28, 20)) {
    const int r = static_cast<int>(c.algebra().gens());
    const GMComplex d = dual_complex(c);
    REQUIRE(d.check());
    CohomTable expect;
    for (const auto& [pq, n] : cohomology_dims(c)) expect[{-pq.first, -r - pq.second}] = n;
    CHECK(cohomology_dims(d) == expect);
    CHECK(term_dims(dual_complex(d)) == term_dims(c));
    CHECK(cohomology_dims(dual_complex(d)) == cohomology_dims(c));
  }
}

TEST_CASE("truncation of the dual") {
  for (const auto& c : random_corpus(29, 20)) {
    const int r = static_cast<int>(c.algebra().gens());
    const GMComplex d = dual_complex(c);
    for (int k = -r - 2; k <= r + 2; ++k)
      CHECK(is_acyclic(gt_le(k, d).complex) == is_acyclic(gt_ge(-r - k, c).complex));
  }
}
