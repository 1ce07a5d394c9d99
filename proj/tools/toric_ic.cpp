// toric-ic: intersection cohomology of toric varieties from fan files.

#include <toric_ic/io.hpp>
#include <toric_ic/selfcheck.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <string>

namespace {

using namespace toric_ic;
using io::json;

enum Exit { Ok = 0, Parse = 2, InvalidFan = 3, Incomplete = 4, PropertyFailed = 5 };

struct RunConfig {
  std::string fan_path;
  std::string perversity = "middle";
  std::string format = "table";
  int j = 0;
  std::uint64_t seed = 0;
  bool corrupt_builder = false;
};

bool as_json(const RunConfig& c) { return c.format == "json"; }

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void print_table(const CohomTable& t) {
  std::cout << "p q dim\n";
  for (const auto& [pq, d] : t) std::cout << pq.first << " " << pq.second << " " << d << "\n";
}

std::shared_ptr<const Fan> load(const RunConfig& c) { return std::make_shared<const Fan>(io::fan_from_file(c.fan_path)); }

int cmd_validate(const RunConfig& c) {
  const auto fan = load(c);
  std::vector<long> census;
  for (int d = 0; d <= fan->rank(); ++d) census.push_back(static_cast<long>(fan->cones_of_dim(d).size()));
  const std::string flag = fan->is_complete() ? "complete" : "not complete";
  if (as_json(c)) {
    print_json({{"cones", fan->size()}, {"complete", fan->is_complete()}, {"by_dimension", census}});
  } else {
    std::cout << fan->size() << (fan->size() == 1 ? " cone, " : " cones, ") << flag << "\n";
    for (int d = 0; d <= fan->rank(); ++d) std::cout << "dim " << d << ": " << census[static_cast<std::size_t>(d)] << "\n";
  }
  return Ok;
}

int cmd_betti(const RunConfig& c) {
  const auto fan = load(c);
  const Perversity p = io::perversity_from_arg(*fan, c.perversity);
  require_complete(*fan);
  const CohomTable t = gamma_table(build_ic(fan, p)).table;
  const auto betti = betti_from_table(t, fan->rank());
  if (as_json(c)) print_json(io::report_json(betti, t, serre_duality_report(fan, p)));
  else std::cout << join(betti) << "\n";
  return Ok;
}

int cmd_gamma(const RunConfig& c) {
  const auto fan = load(c);
  const Perversity p = io::perversity_from_arg(*fan, c.perversity);
  const GammaTable g = gamma_table(build_ic(fan, p));
  if (as_json(c)) {
    print_json({{"gamma", io::table_to_json(g.table)}, {"hypercohomology", g.hypercohomology}});
  } else {
    print_table(g.table);
    if (!g.hypercohomology) std::cout << "(fan not complete: no hypercohomology interpretation)\n";
  }
  return Ok;
}

int cmd_omega(const RunConfig& c) {
  const auto fan = load(c);
  const Perversity p = io::perversity_from_arg(*fan, c.perversity);
  const auto slice = omega_betti(fan, p, c.j);
  if (as_json(c)) print_json({{"j", c.j}, {"omega", slice}});
  else std::cout << join(slice) << "\n";
  return Ok;
}

int cmd_duality(const RunConfig& c) {
  const auto fan = load(c);
  const Perversity p = io::perversity_from_arg(*fan, c.perversity);
  const DualityPairingReport pairing = duality_pairing_check(fan, p);
  std::optional<SerreReport> serre;
  if (fan->is_complete()) serre = serre_duality_report(fan, p);
  const bool ok = pairing.ok() && (!serre || serre->ok());
  if (as_json(c)) {
    print_json({{"ok", ok},
                {"pairing", io::pairing_to_json(pairing)},
                {"serre", serre ? io::serre_to_json(*serre) : json(nullptr)}});
  } else {
    std::cout << "D(ic) against ic of the dual perversity: " << (pairing.ok() ? "ok" : "FAILED") << "\n";
    if (serre) std::cout << "Serre duality of Omega tables: " << (serre->ok() ? "ok" : "FAILED") << "\n";
    else std::cout << "Serre duality of Omega tables: skipped (fan not complete)\n";
  }
  return ok ? Ok : PropertyFailed;
}

int cmd_selfcheck(const RunConfig& c) {
  const auto fan = load(c);
  const Perversity p = io::perversity_from_arg(*fan, c.perversity);
  SelfCheckOptions opt;
  opt.seed = c.seed;
  opt.threads = threads_from_env();
  opt.corrupt_builder = c.corrupt_builder;
  const auto results = run_selfcheck(fan, p, opt);
  const PropertyResult* bad = first_failure(results);
  if (as_json(c)) {
    json list = json::array();
    for (const auto& r : results) list.push_back({{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
    print_json({{"ok", bad == nullptr}, {"seed", c.seed}, {"properties", list}});
  } else {
    for (const auto& r : results)
      std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << (r.ok ? "" : ": " + r.detail) << "\n";
  }
  if (bad) {
    std::cerr << "first failing property: " << bad->name << "\n";
    return PropertyFailed;
  }
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection cohomology of toric varieties"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool perversity) {
    sub->add_option("fan", cfg.fan_path, "fan JSON file")->required();
    if (perversity) sub->add_option("-p,--perversity", cfg.perversity, "middle, top, bottom, inline JSON or a JSON file");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "json"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "check fan axioms and completeness");
  add_common(validate_cmd, false);
  auto* betti_cmd = app.add_subcommand("betti", "intersection cohomology Betti numbers");
  add_common(betti_cmd, true);
  auto* gamma_cmd = app.add_subcommand("gamma", "cohomology table of global sections");
  add_common(gamma_cmd, true);
  auto* omega_cmd = app.add_subcommand("omega", "cohomology of Omega_j");
  add_common(omega_cmd, true);
  omega_cmd->add_option("-j", cfg.j, "internal degree")->required();
  auto* duality_cmd = app.add_subcommand("duality", "duality checks for ic");
  add_common(duality_cmd, true);
  auto* selfcheck_cmd = app.add_subcommand("selfcheck", "run every property suite");
  add_common(selfcheck_cmd, true);
  selfcheck_cmd->add_option("--seed", cfg.seed, "random seed");
  selfcheck_cmd->add_flag("--corrupt-builder", cfg.corrupt_builder)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Parse;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg);
    if (*betti_cmd) return cmd_betti(cfg);
    if (*gamma_cmd) return cmd_gamma(cfg);
    if (*omega_cmd) return cmd_omega(cfg);
    if (*duality_cmd) return cmd_duality(cfg);
    if (*selfcheck_cmd) return cmd_selfcheck(cfg);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return Parse;
  } catch (const FanError& e) {
    std::cerr << "invalid fan: " << e.what() << "\n";
    return e.kind() == FanErrorKind::Malformed ? Parse : InvalidFan;
  } catch (const FanNotCompleteError& e) {
    std::cerr << "fan is not complete\n";
    return Incomplete;
  } catch (const PreconditionError& e) {
    std::cerr << "bad argument: " << e.what() << "\n";
    return Parse;
  }
  return Parse;
}
