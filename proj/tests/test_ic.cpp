#include "support.hpp"

#include <toric_ic/ic.hpp>
#include <toric_ic/random.hpp>

#include <catch_amalgamated.hpp>

using namespace toric_ic;
using testing::corpus_fan;

namespace {

const char* const kPresets[] = {"middle", "top", "bottom"};

std::vector<std::string> small_corpus() { return {"point", "p1", "p2", "p1xp1", "quadrant"}; }

// Local intersection cohomology of the stalk at sigma: g_k in bidegree (k, k - r).
CohomTable local_ih(const Fan& fan, int sigma) {
  testing::detail::Memo memo;
  const auto g = testing::detail::cone_g(fan, sigma, memo);
  const int r = fan.cone(sigma).dim;
  CohomTable t;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] != 0) t[{static_cast<int>(k), static_cast<int>(k) - r}] = static_cast<std::size_t>(g[k]);
  return t;
}

}  // namespace

TEST_CASE("intersection complex on the line") {
  const auto p1 = corpus_fan("p1");
  const GemComplex ic = build_ic(p1, Perversity::middle(*p1));
  CHECK(cohomology_dims(ic.at(0)) == CohomTable{{{0, 0}, 1}});
  for (int ray : p1->cones_of_dim(1)) {
    CHECK(cohomology_dims(ic.at(ray)) == CohomTable{{{1, 0}, 1}});
    CHECK(cohomology_dims(i_star(ray, ic)) == CohomTable{{{0, -1}, 1}});
  }
}

TEST_CASE("the point fan") {
  const auto pt = corpus_fan("point");
  const GemComplex ic = build_ic(pt, Perversity::middle(*pt));
  CHECK(ic.size() == 1);
  CHECK(cohomology_dims(gamma(ic)) == CohomTable{{{0, 0}, 1}});
  CHECK(verify_conditions(ic, Perversity::middle(*pt)).ok());
  CHECK(support_box(ic).ok());
}

TEST_CASE("stalks match local intersection cohomology") {
  for (const char* name : {"p2", "p1xp1", "quadrant", "octahedron", "cube"}) {
    const auto fan = corpus_fan(name);
    const GemComplex ic = build_ic(fan, Perversity::middle(*fan));
    for (const auto& c : fan->cones()) {
      INFO(name << " cone " << c.id);
      CHECK(cohomology_dims(i_star(c.id, ic)) == local_ih(*fan, c.id));
    }
  }
}

TEST_CASE("simplicial stalks do not depend on the perversity") {
  const auto fan = corpus_fan("p2");
  for (const char* p : kPresets) {
    const GemComplex ic = build_ic(fan, Perversity::preset(*fan, p));
    for (const auto& c : fan->cones())
      CHECK(cohomology_dims(ic.at(c.id)) == CohomTable{{{c.dim, 0}, 1}});
  }
}

TEST_CASE("defining conditions and support boxes") {
  std::vector<std::string> names = small_corpus();
  names.push_back("octahedron");
  names.push_back("cube");
  for (const auto& name : names) {
    const auto fan = corpus_fan(name);
    for (const char* pn : kPresets) {
      const Perversity p = Perversity::preset(*fan, pn);
      const GemComplex ic = build_ic(fan, p);
      INFO(name << " " << pn);
      CHECK(validate(ic).ok);
      CHECK(verify_conditions(ic, p).ok());
      CHECK(support_box(ic).ok());
    }
  }
}

TEST_CASE("broken complexes fail the conditions") {
  const auto p2 = corpus_fan("p2");
  const Perversity p = Perversity::middle(*p2);
  const GemComplex ic = build_ic(p2, p);
  // L = 0 fails the normalization on the zero cone.
  const ConditionReport zero = verify_conditions(GemComplex(p2), p);
  REQUIRE_FALSE(zero.ok());
  CHECK(zero.violations.front().condition == 1);
  // Skipping the truncation on a maximal cone leaves low-degree cohomology.
  GemComplex untrunc(p2);
  untrunc.set(0, point_complex(untrunc.algebra(0)));
  for (int pi : default_build_order(*p2)) {
    untrunc = j_shriek_extend(untrunc, pi);
    if (p2->cone(pi).dim == 1) untrunc = gt_pi_ge(p(pi) + 1, pi, untrunc);
  }
  const ConditionReport rep = verify_conditions(untrunc, p);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().condition == 2);
  // A shifted complex fails too.
  GemComplex shifted(p2);
  for (int s = 0; s < p2->size(); ++s) shifted.set(s, shift(ic.at(s), 1));
  CHECK_FALSE(verify_conditions(shifted, p).ok());
  // Wrong perversity: top conditions do not hold for bottom on a singular fan.
  const auto cube = corpus_fan("cube");
  CHECK_FALSE(verify_conditions(build_ic(cube, Perversity::bottom(*cube)), Perversity::top(*cube)).ok());
}

TEST_CASE("box violations are reported") {
  const auto p1 = corpus_fan("p1");
  GemComplex l = build_ic(p1, Perversity::middle(*p1));
  const int ray = p1->cones_of_dim(1).front();
  GMComplex extra(l.algebra(ray));
  extra.set_term(4, free_module(l.algebra(ray)));
  l = random::add_unmixed_summand(l, ray, extra);
  REQUIRE(validate(l).ok);
  const BoxReport rep = support_box(l);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().which == "ic");
  CHECK(rep.violations.front().cone == ray);
}

TEST_CASE("build order does not matter") {
  for (const char* name : {"p2", "p1xp1", "cube"}) {
    const auto fan = corpus_fan(name);
    const Perversity p = Perversity::middle(*fan);
    const GemComplex a = build_ic(fan, p);
    std::vector<int> order;
    for (int d = 1; d <= fan->rank(); ++d) {
      auto c = fan->cones_of_dim(d);
      order.insert(order.end(), c.rbegin(), c.rend());
    }
    const GemComplex b = build_ic(fan, p, order);
    for (const auto& c : fan->cones()) {
      CHECK(cohomology_dims(a.at(c.id)) == cohomology_dims(b.at(c.id)));
      CHECK(cohomology_dims(i_star(c.id, a)) == cohomology_dims(i_star(c.id, b)));
    }
  }
}

TEST_CASE("restriction to a face fan") {
  const auto cube = corpus_fan("cube");
  const GemComplex ic = build_ic(cube, Perversity::middle(*cube));
  for (int sigma : cube->maximal_cones()) {
    auto [sub, to_parent] = cube->face_fan(sigma);
    const auto subp = std::make_shared<const Fan>(std::move(sub));
    const GemComplex local = build_ic(subp, Perversity::middle(*subp));
    for (const auto& c : subp->cones()) {
      const int parent = to_parent[static_cast<std::size_t>(c.id)];
      CHECK(cohomology_dims(local.at(c.id)) == cohomology_dims(ic.at(parent)));
      CHECK(cohomology_dims(i_star(c.id, local)) == cohomology_dims(i_star(parent, ic)));
    }
  }
}

TEST_CASE("dual of the intersection complex") {
  for (const char* name : {"p1", "p2", "p1xp1", "quadrant", "cube"}) {
    const auto fan = corpus_fan(name);
    for (const char* pn : kPresets) {
      INFO(name << " " << pn);
      const DualityPairingReport rep = duality_pairing_check(fan, Perversity::preset(*fan, pn));
      CHECK(rep.conditions.ok());
      CHECK(rep.mismatches.empty());
    }
  }
}

TEST_CASE("perversities") {
  const auto cube = corpus_fan("cube");
  const Perversity m = Perversity::middle(*cube);
  const Perversity t = Perversity::top(*cube);
  const Perversity b = Perversity::bottom(*cube);
  for (const auto& c : cube->cones()) {
    if (c.dim == 0) {
      CHECK_THROWS_AS(m(c.id), std::out_of_range);
      continue;
    }
    CHECK(m(c.id) == 0);
    CHECK(t(c.id) == c.dim - 1);
    CHECK(b(c.id) == 1 - c.dim);
  }
  CHECK(t.negated().values() == b.values());
  CHECK(t.negated().name() == "bottom");
  CHECK(Perversity::by_dimension(*cube, {{1, 0}, {2, 1}, {3, 2}}).values() == t.values());
  CHECK_THROWS_AS(Perversity::by_dimension(*cube, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Perversity::preset(*cube, "sideways"), std::invalid_argument);
}

TEST_CASE("perversities from JSON") {
  const auto p2 = corpus_fan("p2");
  CHECK(io::perversity_from_arg(*p2, "top").values() == Perversity::top(*p2).values());
  CHECK(io::perversity_from_arg(*p2, R"({"name":"bottom"})").values() == Perversity::bottom(*p2).values());
  CHECK(io::perversity_from_arg(*p2, R"({"by_dimension":{"1":0,"2":1}})").values() == Perversity::top(*p2).values());
  const std::string by_cone = R"({"by_cone":[{"cone":[0],"value":1},{"cone":[1],"value":0},{"cone":[2],"value":0},)"
                              R"({"cone":[0,1],"value":0},{"cone":[1,2],"value":0},{"cone":[0,2],"value":0}]})";
  std::map<int, int> expect = Perversity::middle(*p2).values();
  expect[p2->find({0})] = 1;
  CHECK(io::perversity_from_arg(*p2, by_cone).values() == expect);
  CHECK_THROWS_AS(io::perversity_from_arg(*p2, R"({"by_dimension":{"1":0}})"), io::ParseError);
  CHECK_THROWS_AS(io::perversity_from_arg(*p2, R"({"by_dimension":{"x":0,"2":0}})"), io::ParseError);
  CHECK_THROWS_AS(io::perversity_from_arg(*p2, R"({"by_cone":[{"cone":[0,1,2],"value":0}]})"), io::ParseError);
  CHECK_THROWS_AS(io::perversity_from_arg(*p2, R"({"name":"sideways"})"), io::ParseError);
  CHECK_THROWS_AS(io::perversity_from_arg(*p2, "/nonexistent/perversity.json"), io::ParseError);
}
