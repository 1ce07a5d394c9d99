#pragma once
// Property suite run by `toric-ic selfcheck`: every invariant of the library
// checked on one fan, one perversity and seeded random inputs.

#include <toric_ic/cohom.hpp>
#include <toric_ic/random.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace toric_ic {

struct PropertyResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct SelfCheckOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int random_complexes = 8;     // per cone dimension
  int random_gems = 3;
  bool corrupt_builder = false;  // test hook: skips every truncation
};

// TORIC_IC_THREADS, clamped to [1, hardware threads]; 1 when unset.
inline unsigned threads_from_env() {
  const char* v = std::getenv("TORIC_IC_THREADS");
  if (!v) return 1;
  const long n = std::strtol(v, nullptr, 10);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (n < 1) return 1;
  return std::min<unsigned>(static_cast<unsigned>(n), hw);
}

// Runs jobs[i] for every i on at most `threads` workers.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  for (auto& th : pool) th.join();
}

namespace detail {

inline bool tables_mirror(const CohomTable& a, const CohomTable& b, int r) {
  CohomTable m;
  for (const auto& [pq, d] : b) m[{r - pq.first, -r - pq.second}] = d;
  return a == m;
}

inline GemComplex build_untruncated(std::shared_ptr<const Fan> fan) {
  GemComplex l(fan);
  l.set(0, point_complex(l.algebra(0)));
  for (int pi : default_build_order(*fan)) l = j_shriek_extend(l, pi);
  return l;
}

inline std::string first_violation(const ConditionReport& rep) {
  if (rep.ok()) return {};
  const auto& v = rep.violations.front();
  return "condition " + std::to_string(v.condition) + " fails on cone " + std::to_string(v.cone) + " at (" +
         std::to_string(v.i) + "," + std::to_string(v.j) + ")";
}

inline bool same_cone_tables(const GemComplex& a, const GemComplex& b) {
  for (int s = 0; s < a.fan().size(); ++s)
    if (cohomology_dims(a.at(s)) != cohomology_dims(b.at(s))) return false;
  return true;
}

inline std::vector<int> reversed_within_dimension(const Fan& fan) {
  std::vector<int> order;
  for (int d = 1; d <= fan.rank(); ++d) {
    auto c = fan.cones_of_dim(d);
    order.insert(order.end(), c.rbegin(), c.rend());
  }
  return order;
}

}  // namespace detail

inline std::vector<PropertyResult> run_selfcheck(std::shared_ptr<const Fan> fan, const Perversity& p,
                                                 const SelfCheckOptions& opt = {}) {
  using Check = std::function<std::string()>;  // empty string on success
  const int r = fan->rank();
  const bool complete = fan->is_complete();
  const GemComplex ic = opt.corrupt_builder ? detail::build_untruncated(fan) : build_ic(fan, p);

  // Random inputs are drawn up front so every property sees the same data
  // whatever the thread count.
  random::Rng rng(opt.seed);
  std::vector<GMComplex> local;
  for (int k = 0; k <= std::min(r, 3); ++k)
    for (int n = 0; n < opt.random_complexes; ++n) local.push_back(random::random_complex(rng, ambient_algebra(static_cast<std::size_t>(k))));
  std::vector<GemComplex> gems{ic};
  const random::GemShape shape = r >= 3 ? random::GemShape{true, 0.0} : random::GemShape{};
  for (int n = 0; n < opt.random_gems; ++n) gems.push_back(random::random_gem(rng, fan, shape));

  std::vector<std::pair<std::string, Check>> checks;
  checks.push_back({"incidence_codim2", [&] {
    for (const auto& c : fan->cones())
      if (!e_complex(*fan, fan->star(c.id), EMode::Plain).squares_to_zero())
        return "incidence signs do not cancel in the star of cone " + std::to_string(c.id);
    return std::string();
  }});
  if (complete)
    checks.push_back({"augmented_e_acyclic", [&] {
      for (const auto& c : fan->cones())
        if (!is_acyclic_z(e_complex(*fan, fan->star(c.id), EMode::Augmented)))
          return "augmented complex of the star of cone " + std::to_string(c.id) + " has cohomology";
      return std::string();
    }});
  checks.push_back({"module_axioms", [&] {
    std::string why;
    for (const auto& c : local)
      for (const auto& [i, v] : c.terms()) {
        if (!v.check_axioms(&why)) return "random module: " + why;
        if (!dualize(v).check_axioms(&why)) return "dual module: " + why;
      }
    for (const auto& c : fan->cones())
      for (int rho : fan->star(c.id)) {
        const ExtModule v = induce(free_module(cone_algebra(*fan, c.id)), cone_algebra(*fan, rho));
        if (!v.check_axioms(&why)) return "induced module: " + why;
      }
    return std::string();
  }});
  checks.push_back({"double_dual", [&] {
    for (const auto& c : local)
      for (const auto& [i, v] : c.terms()) {
        const GradedMap iota = double_dual_iso(v);
        std::string why;
        if (!is_module_hom(v, dualize(dualize(v)), iota, &why)) return "double dual map not linear: " + why;
        for (const auto& [j, m] : iota)
          if (rank(m) != v.dim(j)) return std::string("double dual map not invertible");
      }
    return std::string();
  }});
  checks.push_back({"complex_axioms", [&] {
    std::string why;
    for (const auto& c : local)
      if (!c.check(&why)) return "random complex: " + why;
    return std::string();
  }});
  checks.push_back({"dual_dimension_identity", [&] {
    for (const auto& c : local) {
      const int k = static_cast<int>(c.algebra().gens());
      CohomTable expect;
      for (const auto& [ij, d] : cohomology_dims(c)) expect[{-ij.first, -k - ij.second}] = d;
      if (cohomology_dims(dual_complex(c)) != expect) return std::string("dual cohomology dimensions differ");
    }
    return std::string();
  }});
  checks.push_back({"truncation_duality", [&] {
    for (const auto& c : local) {
      const int k = static_cast<int>(c.algebra().gens());
      const GMComplex dc = dual_complex(c);
      for (int t = -k - 2; t <= k + 2; ++t)
        if (is_acyclic(gt_le(t, dc).complex) != is_acyclic(gt_ge(-k - t, c).complex))
          return "truncation equivalence fails at k = " + std::to_string(t);
    }
    return std::string();
  }});
  checks.push_back({"tilde_truncation", [&] {
    for (const auto& c : local)
      for (int t = -4; t <= 4; ++t) {
        if (cohomology_dims(tgt_le(t, c).complex) != cohomology_dims(gt_le(t, c).complex))
          return "lower truncations disagree at k = " + std::to_string(t);
        if (cohomology_dims(tgt_ge(t, c).complex) != cohomology_dims(gt_ge(t, c).complex))
          return "upper truncations disagree at k = " + std::to_string(t);
      }
    return std::string();
  }});
  checks.push_back({"gem_valid", [&] {
    for (std::size_t n = 0; n < gems.size(); ++n) {
      const auto v = validate(gems[n]);
      if (!v.ok) return "complex " + std::to_string(n) + ": " + v.first->what;
    }
    return std::string();
  }});
  checks.push_back({"ic_conditions", [&] { return detail::first_violation(verify_conditions(ic, p)); }});
  checks.push_back({"support_boxes", [&] {
    const BoxReport rep = support_box(ic);
    if (rep.ok()) return std::string();
    const auto& v = rep.violations.front();
    return v.which + " of cone " + std::to_string(v.cone) + " has a term at (" + std::to_string(v.i) + "," +
           std::to_string(v.j) + ")";
  }});
  checks.push_back({"build_order_independence", [&] {
    const GemComplex other = build_ic(fan, p, detail::reversed_within_dimension(*fan));
    return detail::same_cone_tables(ic, other) ? std::string() : std::string("tables depend on the cone order");
  }});
  checks.push_back({"shallow_resolution", [&] {
    for (std::size_t n = 0; n < gems.size(); ++n) {
      const auto sr = shallow_resolve(gems[n]);
      std::string why;
      if (!is_gem_chain_map(gems[n], sr.complex, sr.f, &why)) return "resolution map is not a chain map: " + why;
      for (int s = 0; s < fan->size(); ++s) {
        auto it = sr.f.find({s, s});
        const ComplexMap f = it == sr.f.end() ? ComplexMap{} : it->second;
        if (!is_quasi_iso(gems[n].at(s), sr.complex.at(s), f))
          return "complex " + std::to_string(n) + ": cone " + std::to_string(s) + " is not resolved";
      }
    }
    return std::string();
  }});
  checks.push_back({"double_dual_dimensions", [&] {
    for (std::size_t n = 0; n < gems.size(); ++n) {
      const GemComplex dd = dualize_D(dualize_D(gems[n]));
      if (!detail::same_cone_tables(gems[n], dd)) return "D(D(L)) differs from L for complex " + std::to_string(n);
      if (!validate(dualize_D(gems[n])).ok) return "D(L) invalid for complex " + std::to_string(n);
    }
    return std::string();
  }});
  if (complete) {
    checks.push_back({"gamma_duality_symmetry", [&] {
      for (std::size_t n = 0; n < gems.size(); ++n)
        if (!detail::tables_mirror(cohomology_dims(gamma(gems[n])), cohomology_dims(gamma(dualize_D(gems[n]))), r))
          return "complex " + std::to_string(n) + ": Gamma tables of L and D(L) are not mirror images";
      return std::string();
    }});
    checks.push_back({"dhat_gamma_acyclic", [&] {
      for (std::size_t n = 0; n < gems.size(); ++n)
        if (!is_acyclic(dualize_Dhat_gamma(gems[n]))) return "complex " + std::to_string(n) + " has cohomology";
      return std::string();
    }});
    checks.push_back({"serre_duality", [&] {
      const SerreReport rep = serre_duality_report(fan, p);
      if (rep.ok()) return std::string();
      const auto& v = rep.violations.front();
      return "mismatch at (i,j) = (" + std::to_string(v.i) + "," + std::to_string(v.j) + ")";
    }});
  }
  checks.push_back({"dual_ic_pairing", [&] {
    const DualityPairingReport rep = duality_pairing_check(fan, p);
    if (rep.ok()) return std::string();
    if (!rep.conditions.ok()) return "D(ic): " + detail::first_violation(rep.conditions);
    return rep.mismatches.front().what + " tables differ on cone " + std::to_string(rep.mismatches.front().cone);
  }});

  std::vector<PropertyResult> out(checks.size());
  parallel_for(checks.size(), opt.threads, [&](std::size_t i) {
    out[i].name = checks[i].first;
    try {
      out[i].detail = checks[i].second();
    } catch (const std::exception& e) {
      out[i].detail = std::string("exception: ") + e.what();
    }
    out[i].ok = out[i].detail.empty();
  });
  return out;
}

inline const PropertyResult* first_failure(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (!r.ok) return &r;
  return nullptr;
}

}  // namespace toric_ic
