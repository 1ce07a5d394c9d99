#pragma once
// Global cohomology of complexes on a fan: Gamma tables, intersection
// cohomology Betti numbers, Omega_j slices and the Serre duality report.

#include <toric_ic/ic.hpp>

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric_ic {

class FanNotCompleteError : public PreconditionError {
 public:
  FanNotCompleteError() : PreconditionError("FanNotComplete") {}
};

inline void require_complete(const Fan& fan) {
  if (!fan.is_complete()) throw FanNotCompleteError();
}

struct GammaTable {
  CohomTable table;
  bool hypercohomology = false;  // only meaningful on complete fans
};

inline GammaTable gamma_table(const GemComplex& l) { return {cohomology_dims(gamma(l)), l.fan().is_complete()}; }

// B_m = sum over p + q = m - r of dim H^p(Gamma(L))_q, for m = 0..2r.
inline std::vector<long> betti_from_table(const CohomTable& t, int r) {
  std::vector<long> b(static_cast<std::size_t>(2 * r + 1), 0);
  for (const auto& [pq, d] : t) {
    const int m = pq.first + pq.second + r;
    if (m < 0 || m > 2 * r) throw std::logic_error("betti_from_table: entry outside [0, 2r]");
    b[static_cast<std::size_t>(m)] += static_cast<long>(d);
  }
  return b;
}

inline std::vector<long> ih_betti(std::shared_ptr<const Fan> fan, const Perversity& p) {
  require_complete(*fan);
  return betti_from_table(gamma_table(build_ic(fan, p)).table, fan->rank());
}

// dim H^i(Gamma(ic_p))_{-j} for i = 0..r.
inline std::vector<long> omega_slice(const CohomTable& t, int r, int j) {
  std::vector<long> out(static_cast<std::size_t>(r + 1), 0);
  for (const auto& [pq, d] : t)
    if (pq.second == -j && pq.first >= 0 && pq.first <= r) out[static_cast<std::size_t>(pq.first)] = static_cast<long>(d);
  return out;
}

inline std::vector<long> omega_betti(std::shared_ptr<const Fan> fan, const Perversity& p, int j) {
  require_complete(*fan);
  if (j < 0 || j > fan->rank()) throw PreconditionError("JOutOfRange");
  return omega_slice(gamma_table(build_ic(fan, p)).table, fan->rank(), j);
}

struct SerreViolation {
  int i = 0;
  int j = 0;
  long lhs = 0;
  long rhs = 0;
};

struct SerreReport {
  bool ok() const { return violations.empty(); }
  std::vector<SerreViolation> violations;
  CohomTable table_p, table_minus_p;
};

// dim H^i(Omega_j(p)) = dim H^{r-i}(Omega_{r-j}(-p)) for all i, j.
inline SerreReport serre_compare(const CohomTable& tp, const CohomTable& tq, int r) {
  SerreReport rep{{}, tp, tq};
  auto at = [](const CohomTable& t, int p, int q) -> long {
    auto it = t.find({p, q});
    return it == t.end() ? 0 : static_cast<long>(it->second);
  };
  std::set<std::pair<int, int>> keys;
  for (const auto& [pq, _] : tp) keys.insert({pq.first, -pq.second});
  for (const auto& [pq, _] : tq) keys.insert({r - pq.first, r + pq.second});
  for (const auto& [i, j] : keys) {
    const long lhs = at(tp, i, -j);
    const long rhs = at(tq, r - i, -(r - j));
    if (lhs != rhs) rep.violations.push_back({i, j, lhs, rhs});
  }
  return rep;
}

inline SerreReport serre_duality_report(std::shared_ptr<const Fan> fan, const Perversity& p) {
  require_complete(*fan);
  const CohomTable tp = gamma_table(build_ic(fan, p)).table;
  const CohomTable tq = gamma_table(build_ic(fan, p.negated())).table;
  return serre_compare(tp, tq, fan->rank());
}

inline std::vector<long> h_vector_oracle(const Fan& fan) {
  require_complete(fan);
  for (const auto& c : fan.cones())
    if (static_cast<int>(c.rays.size()) != c.dim) throw PreconditionError("NotSimplicial");
  const int r = fan.rank();
  // sum_k h_k t^{r-k} = sum_i f_{i-1} (t-1)^{r-i}
  std::vector<long> poly(static_cast<std::size_t>(r + 1), 0);  // coefficient of t^e
  for (int i = 0; i <= r; ++i) {
    const long f = static_cast<long>(fan.cones_of_dim(i).size());
    const int e = r - i;
    long binom = 1;
    for (int a = 0; a <= e; ++a) {
      // coefficient of t^a in (t-1)^e is C(e,a) (-1)^{e-a}
      poly[static_cast<std::size_t>(a)] += f * binom * (((e - a) % 2) ? -1 : 1);
      binom = binom * (e - a) / (a + 1);
    }
  }
  std::vector<long> h(static_cast<std::size_t>(r + 1));
  for (int k = 0; k <= r; ++k) h[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(r - k)];
  return h;
}

}  // namespace toric_ic
