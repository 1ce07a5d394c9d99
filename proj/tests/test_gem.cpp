#include "support.hpp"

#include <toric_ic/ic.hpp>
#include <toric_ic/random.hpp>

#include <catch_amalgamated.hpp>

using namespace toric_ic;
using testing::corpus_fan;

namespace {

std::size_t total(const CohomTable& t) {
  std::size_t n = 0;
  for (const auto& [pq, d] : t) n += d;
  return n;
}

GemComplex point_base(std::shared_ptr<const Fan> fan) {
  GemComplex l(fan);
  l.set(0, point_complex(l.algebra(0)));
  return l;
}

std::vector<GemComplex> random_gems(const std::string& name, std::uint64_t seed, int count) {
  const auto fan = corpus_fan(name);
  random::Rng rng(seed);
  random::GemShape shape;
  if (fan->rank() >= 3) shape = {true, 0.0};
  std::vector<GemComplex> out;
  for (int n = 0; n < count; ++n) out.push_back(random::random_gem(rng, fan, shape));
  return out;
}

CohomTable mirrored(const CohomTable& t, int r) {
  CohomTable m;
  for (const auto& [pq, d] : t) m[{r - pq.first, -r - pq.second}] = d;
  return m;
}

}  // namespace

TEST_CASE("validation") {
  const auto p2 = corpus_fan("p2");
  CHECK(validate(GemComplex(p2)).ok);
  const GemComplex ic = build_ic(p2, Perversity::middle(*p2));
  CHECK(validate(ic).ok);
  // Doubling one mixing map from a ray into a 2-cone breaks the
  // codimension-two cancellation.
  bool caught = false;
  for (const auto& [key, m] : ic.mixes()) {
    if (p2->cone(key.first).dim != 1 || p2->cone(key.second).dim != 2) continue;
    GemComplex bad = ic;
    ComplexMap doubled = m;
    for (auto& [i, g] : doubled)
      for (auto& [j, a] : g) a = a * Rational(2);
    bad.set_mix(key.first, key.second, doubled);
    const ValidationReport rep = validate(bad);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.first);
    CHECK_FALSE(rep.first->what.empty());
    caught = true;
    break;
  }
  CHECK(caught);
  CHECK_THROWS(GemComplex(p2).set_mix(1, 1, {}));
  CHECK_THROWS(GemComplex(p2).set(0, GMComplex(ambient_algebra(2))));
}

TEST_CASE("extension by zero on the line") {
  const auto p1 = corpus_fan("p1");
  const int plus = p1->find({0});
  const GemComplex l = j_shriek_extend(point_base(p1), plus);
  CHECK(validate(l).ok);
  CHECK(term_dims(l.at(plus)) == CohomTable{{{1, 0}, 1}, {{1, -1}, 1}});
  CHECK(is_acyclic(i_star(plus, l)));
  CHECK(cohomology_dims(i_circ(plus, l)) == CohomTable{{{0, 0}, 1}, {{0, -1}, 1}});
  // Truncating at 1 keeps only the degree-0 part.
  const GemComplex t = gt_pi_ge(1, plus, l);
  CHECK(validate(t).ok);
  CHECK(cohomology_dims(t.at(plus)) == CohomTable{{{1, 0}, 1}});
}

TEST_CASE("extension by zero gives acyclic stars") {
  for (const char* name : {"p2", "p1xp1", "quadrant", "octahedron"}) {
    const auto fan = corpus_fan(name);
    GemComplex l = point_base(fan);
    for (int pi : default_build_order(*fan)) {
      l = j_shriek_extend(l, pi);
      INFO(name << " cone " << pi);
      REQUIRE(validate(l).ok);
      CHECK(is_acyclic(i_star(pi, l)));
      l = gt_pi_ge(fan->cone(pi).dim / 2 + 1, pi, l);
      REQUIRE(validate(l).ok);
    }
  }
}

TEST_CASE("functor preconditions") {
  const auto p2 = corpus_fan("p2");
  const GemComplex ic = build_ic(p2, Perversity::middle(*p2));
  const int ray = p2->cones_of_dim(1).front();
  CHECK_THROWS_AS(j_shriek_extend(ic, ray), PreconditionError);
  CHECK_THROWS_AS(gt_pi_ge(0, ray, ic), PreconditionError);
  CHECK_THROWS_AS(j_shriek_extend(ic, p2->maximal_cones().front()), PreconditionError);
  CHECK_THROWS_AS(i_star(-1, ic), PreconditionError);
  CHECK_THROWS_AS(i_star(p2->size() + 1, ic), PreconditionError);
  CHECK_THROWS_AS(i_shriek(ic.alpha(), ic), PreconditionError);
  CHECK_THROWS_AS(dualize_Dhat(GemComplex(corpus_fan("quadrant"))), PreconditionError);
}

TEST_CASE("stars are sums of induced pieces") {
  for (const auto& l : random_gems("p2", 31, 6)) {
    REQUIRE(validate(l).ok);
    for (int rho = 0; rho <= l.alpha(); ++rho) {
      const int rr = l.cone_dim(rho) - (rho == l.alpha() ? 1 : 0);
      std::size_t expect = 0, circ = 0;
      for (int s : l.faces(rho)) {
        const std::size_t piece = total(term_dims(l.at(s))) << (rr - l.fan().cone(s).dim);
        expect += piece;
        if (s != rho) circ += piece;
      }
      const GMComplex st = i_star(rho, l);
      CHECK(st.check());
      CHECK(total(term_dims(st)) == expect);
      CHECK(total(term_dims(i_circ(rho, l))) == circ);
    }
    CHECK(term_dims(gamma(l)) == term_dims(i_star(l.alpha(), l)));
  }
}

TEST_CASE("random complexes on fans are valid") {
  for (const char* name : {"p1", "p2", "p1xp1", "quadrant"})
    for (const auto& l : random_gems(name, 32, 8)) {
      const ValidationReport rep = validate(l);
      INFO(name << (rep.first ? ": " + rep.first->what : std::string()));
      CHECK(rep.ok);
    }
}

TEST_CASE("shallow resolution") {
  std::vector<GemComplex> inputs = random_gems("p2", 33, 5);
  for (auto& l : random_gems("p1xp1", 34, 5)) inputs.push_back(std::move(l));
  const auto quad = corpus_fan("quadrant");
  inputs.push_back(build_ic(quad, Perversity::middle(*quad)));
  for (const auto& l : inputs) {
    const ShallowResolution sr = shallow_resolve(l);
    REQUIRE(validate(sr.complex).ok);
    std::string why;
    CHECK(is_gem_chain_map(l, sr.complex, sr.f, &why));
    for (int s = 0; s < l.fan().size(); ++s) {
      auto it = sr.f.find({s, s});
      const ComplexMap f = it == sr.f.end() ? ComplexMap{} : it->second;
      CHECK(is_quasi_iso(l.at(s), sr.complex.at(s), f));
    }
  }
  CHECK_THROWS_AS(shallow_resolve(GemComplex(corpus_fan("p1"), true)), PreconditionError);
}

TEST_CASE("the dual of a complex on a fan") {
  for (const char* name : {"p1", "p2", "p1xp1", "quadrant"})
    for (const auto& l : random_gems(name, 35, 5)) {
      const GemComplex d = dualize_D(l);
      REQUIRE(validate(d).ok);
      const GemComplex dd = dualize_D(d);
      for (int s = 0; s < l.fan().size(); ++s) CHECK(cohomology_dims(dd.at(s)) == cohomology_dims(l.at(s)));
    }
}

TEST_CASE("global sections of the dual") {
  for (const char* name : {"p1", "p2", "p1xp1"})
    for (const auto& l : random_gems(name, 36, 6)) {
      const int r = l.fan().rank();
      CHECK(cohomology_dims(gamma(dualize_D(l))) == mirrored(cohomology_dims(gamma(l)), r));
      const GemComplex dh = dualize_Dhat(l);
      CHECK(validate(dh).ok);
      CHECK(is_acyclic(gamma(dh)));
    }
  const auto p2 = corpus_fan("p2");
  CHECK(dualize_Dhat_gamma(GemComplex(p2)).is_zero());
}

TEST_CASE("global sections of the dual in rank three") {
  for (const auto& l : random_gems("octahedron", 37, 1)) {
    CHECK(cohomology_dims(gamma(dualize_D(l))) == mirrored(cohomology_dims(gamma(l)), 3));
    CHECK(is_acyclic(dualize_Dhat_gamma(l)));
  }
}
