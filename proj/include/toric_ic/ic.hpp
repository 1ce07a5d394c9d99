#pragma once
// Perversities and the inductive construction of the intersection complex,
// with checks of its defining conditions and support boxes.

#include <toric_ic/gem.hpp>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric_ic {

class Perversity {
 public:
  Perversity() = default;

  static Perversity middle(const Fan& fan) { return by_rule(fan, "middle", [](int) { return 0; }); }
  static Perversity top(const Fan& fan) { return by_rule(fan, "top", [](int d) { return d - 1; }); }
  static Perversity bottom(const Fan& fan) { return by_rule(fan, "bottom", [](int d) { return 1 - d; }); }

  static Perversity preset(const Fan& fan, const std::string& name) {
    if (name == "middle") return middle(fan);
    if (name == "top") return top(fan);
    if (name == "bottom") return bottom(fan);
    throw std::invalid_argument("unknown perversity preset '" + name + "'");
  }

  // Values indexed by cone dimension 1..r.
  static Perversity by_dimension(const Fan& fan, const std::map<int, int>& values) {
    Perversity p;
    for (const auto& c : fan.cones()) {
      if (c.dim == 0) continue;
      auto it = values.find(c.dim);
      if (it == values.end()) throw std::invalid_argument("perversity missing dimension " + std::to_string(c.dim));
      p.values_[c.id] = it->second;
    }
    return p;
  }

  static Perversity by_cone(const Fan& fan, const std::map<int, int>& values) {
    Perversity p;
    for (const auto& c : fan.cones()) {
      if (c.dim == 0) continue;
      auto it = values.find(c.id);
      if (it == values.end()) throw std::invalid_argument("perversity missing cone " + std::to_string(c.id));
      p.values_[c.id] = it->second;
    }
    return p;
  }

  int operator()(int cone) const {
    auto it = values_.find(cone);
    if (it == values_.end()) throw std::out_of_range("perversity undefined on cone " + std::to_string(cone));
    return it->second;
  }
  const std::map<int, int>& values() const { return values_; }
  const std::string& name() const { return name_; }

  Perversity negated() const {
    Perversity p;
    for (const auto& [c, v] : values_) p.values_[c] = -v;
    if (name_ == "middle") p.name_ = "middle";
    else if (name_ == "top") p.name_ = "bottom";
    else if (name_ == "bottom") p.name_ = "top";
    return p;
  }

 private:
  template <class Rule>
  static Perversity by_rule(const Fan& fan, const char* name, Rule rule) {
    Perversity p;
    p.name_ = name;
    for (const auto& c : fan.cones())
      if (c.dim > 0) p.values_[c.id] = rule(c.dim);
    return p;
  }

  std::string name_;
  std::map<int, int> values_;
};

inline GMComplex point_complex(const ConeAlgebra& alg) {
  GMComplex c(alg);
  ExtModule q(alg);
  q.set_dim(0, 1);
  c.set_term(0, std::move(q));
  return c;
}

// Cone order refining dimension; the default is ascending id.
inline std::vector<int> default_build_order(const Fan& fan) {
  std::vector<int> order;
  for (const auto& c : fan.cones())
    if (c.dim > 0) order.push_back(c.id);
  return order;
}

inline GemComplex build_ic(std::shared_ptr<const Fan> fan, const Perversity& p,
                           std::optional<std::vector<int>> order = std::nullopt) {
  GemComplex l(fan);
  l.set(0, point_complex(l.algebra(0)));
  const std::vector<int> seq = order ? *order : default_build_order(*fan);
  for (int pi : seq) {
    l = j_shriek_extend(l, pi);
    l = gt_pi_ge(p(pi) + 1, pi, l);
  }
  return l;
}

struct ConditionViolation {
  int condition = 0;
  int cone = 0;
  int i = 0;
  int j = 0;
};

struct ConditionReport {
  bool ok() const { return violations.empty(); }
  std::vector<ConditionViolation> violations;
};

inline ConditionReport verify_conditions(const GemComplex& l, const Perversity& p) {
  ConditionReport rep;
  const CohomTable h0 = cohomology_dims(l.at(0));
  if (h0 != CohomTable{{{0, 0}, 1}}) {
    if (h0.empty()) rep.violations.push_back({1, 0, 0, 0});
    for (const auto& [ij, d] : h0)
      if (ij != std::pair<int, int>{0, 0} || d != 1) rep.violations.push_back({1, 0, ij.first, ij.second});
  }
  for (const auto& c : l.fan().cones()) {
    if (c.dim == 0) continue;
    const int pv = p(c.id);
    for (const auto& [ij, d] : cohomology_dims(l.at(c.id)))
      if (ij.first + ij.second <= pv) rep.violations.push_back({2, c.id, ij.first, ij.second});
    for (const auto& [ij, d] : cohomology_dims(i_star(c.id, l)))
      if (ij.first + ij.second >= pv) rep.violations.push_back({3, c.id, ij.first, ij.second});
  }
  return rep;
}

struct BoxViolation {
  std::string which;  // "ic", "i_circ", "i_star" or "gamma"
  int cone = 0;
  int i = 0;
  int j = 0;
};

struct BoxReport {
  bool ok() const { return violations.empty(); }
  std::vector<BoxViolation> violations;
};

inline BoxReport support_box(const GemComplex& l) {
  BoxReport rep;
  auto scan = [&](const GMComplex& c, const char* which, int cone, int ilo, int ihi, int jlo, int jhi) {
    for (const auto& [ij, d] : term_dims(c))
      if (ij.first < ilo || ij.first > ihi || ij.second < jlo || ij.second > jhi)
        rep.violations.push_back({which, cone, ij.first, ij.second});
  };
  for (const auto& c : l.fan().cones()) {
    if (c.dim == 0) continue;
    const int r = c.dim;
    scan(l.at(c.id), "ic", c.id, 1, r, -r, 0);
    scan(i_circ(c.id, l), "i_circ", c.id, 0, r - 1, -r, 0);
    scan(i_star(c.id, l), "i_star", c.id, 0, r, -r, 0);
  }
  const int r = l.fan().rank();
  scan(gamma(l), "gamma", l.alpha(), 0, r, -r, 0);
  return rep;
}

struct DualityMismatch {
  std::string what;  // "conditions", "cone" or "i_star"
  int cone = 0;
};

struct DualityPairingReport {
  bool ok() const { return mismatches.empty() && conditions.ok(); }
  ConditionReport conditions;
  std::vector<DualityMismatch> mismatches;
};

// Computable consequences of D(ic_p) ~ ic_{-p}.
inline DualityPairingReport duality_pairing_check(std::shared_ptr<const Fan> fan, const Perversity& p) {
  DualityPairingReport rep;
  const GemComplex ic = build_ic(fan, p);
  const Perversity q = p.negated();
  const GemComplex icq = build_ic(fan, q);
  const GemComplex d = dualize_D(ic);
  rep.conditions = verify_conditions(d, q);
  for (const auto& c : fan->cones()) {
    if (cohomology_dims(d.at(c.id)) != cohomology_dims(icq.at(c.id))) rep.mismatches.push_back({"cone", c.id});
    if (cohomology_dims(i_star(c.id, d)) != cohomology_dims(i_star(c.id, icq))) rep.mismatches.push_back({"i_star", c.id});
  }
  return rep;
}

}  // namespace toric_ic
