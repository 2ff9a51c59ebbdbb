// fanchaos: chaos diagnostics for closed relations and their collapsed fans.

#include "fanchaos/config.hpp"
#include "fanchaos/diagnostics.hpp"
#include "fanchaos/errors.hpp"
#include "fanchaos/fans.hpp"
#include "fanchaos/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>

using namespace fanchaos;
using nlohmann::json;

namespace {

struct Options {
  std::string preset = "robinson";
  std::string config;
  std::string r = "1/2", rho = "3/2";
  std::string expect;
  std::string epsilon = "1/4";
  std::string mesh = "1/8";
  std::string x = "1/2", x0 = "1/2";
  std::size_t nmax = 200, depth = 2, budget = 12, steps = 100000;
  std::string json_path, csv_path, out_path;
  int jobs = 0;
  std::uint64_t seed = 1;
  bool serial = false;
};

struct Loaded {
  RelationSystem sys;
  SpineSet spine;
};

Loaded load(const Options& o) {
  if (!o.config.empty()) {
    auto cfg = load_config(o.config);
    if (!cfg.system) throw ConfigError(o.config + ": no pieces or segments");
    auto alphabet = cfg.spine.empty() ? cfg.system->corners() : cfg.spine;
    SpineSet s = SpineSet::make(*cfg.system, alphabet);
    return {std::move(*cfg.system), std::move(s)};
  }
  auto p = preset(parse_preset_name(o.preset), parse_rational(o.r), parse_rational(o.rho));
  return {std::move(p.sys), std::move(p.spine)};
}

Rational positive(const std::string& flag, const std::string& text) {
  Rational q = parse_rational(text);
  if (q <= 0) throw ConfigError(flag + " must be positive");
  return q;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

void emit(const Options& o, const json& j) {
  if (o.json_path.empty()) std::cout << j.dump(2) << '\n';
  else write_file(o.json_path, j.dump(2) + "\n");
}

Exec exec_of(const Options& o) { return o.serial ? Exec::Serial : Exec::Parallel; }

json verdict_report(const Loaded& L, const Options& o, std::vector<Verdict> vs) {
  json j;
  j["system"] = L.sys.name();
  j["params"] = {{"depth", o.depth}, {"mesh", o.mesh}, {"epsilon", o.epsilon}, {"n_max", o.nmax},
                 {"budget", o.budget}, {"serial", o.serial}};
  j["verdicts"] = json::array();
  for (const auto& v : vs) j["verdicts"].push_back(to_json(v));
  return j;
}

int run_classify(const Options& o) {
  auto L = load(o);
  ClassifyParams p;
  p.depth = o.depth;
  p.mesh = positive("--mesh", o.mesh);
  p.n_max = o.nmax;
  p.budget = o.budget;
  p.epsilon = positive("--epsilon", o.epsilon);
  p.exec = exec_of(o);
  auto r = classify(L.sys, L.spine, p);
  emit(o, to_json(r));
  if (!o.expect.empty() && normalize_label(o.expect) != normalize_label(r.label)) {
    std::cerr << "label " << r.label << " does not match expected " << o.expect << '\n';
    return 1;
  }
  return 0;
}

int run_sensitivity(const Options& o) {
  auto L = load(o);
  SdicOptions so{positive("--epsilon", o.epsilon), o.nmax, 30};
  auto base = cylinder_base(L.sys, o.depth, positive("--mesh", o.mesh), exec_of(o));
  auto q = spine_sdic(L.sys, L.spine, base, so, exec_of(o));
  auto b = empirical_sdic(L.sys, base, so, exec_of(o));
  b.kind = "base_sdic";
  emit(o, verdict_report(L, o, {q, b}));
  if (!o.csv_path.empty() && !base.empty()) {
    std::string text;
    for (const auto& c : base) {
      try {
        auto w = sdic_witness_wrt_spine(L.sys, L.spine, c, so.window);
        text = witness_csv(L.sys, w, 12);
        break;
      } catch (const NoWitness&) {
      }
    }
    write_file(o.csv_path, text);
  }
  return 0;
}

int run_transitivity(const Options& o) {
  auto L = load(o);
  auto base = cylinder_base(L.sys, o.depth, positive("--mesh", o.mesh), exec_of(o));
  auto q = transitivity_check(L.sys, base, o.nmax, exec_of(o), &L.spine);
  emit(o, verdict_report(L, o, {q}));
  return 0;
}

int run_periodic(const Options& o) {
  auto L = load(o);
  auto base = cylinder_base(L.sys, o.depth, positive("--mesh", o.mesh), exec_of(o));
  auto q = periodic_density_check(L.sys, base, SearchLimits{o.budget, 100000}, exec_of(o), &L.spine);
  emit(o, verdict_report(L, o, {q}));
  if (!o.csv_path.empty()) {
    for (const auto& c : base)
      if (auto p = periodic_from_cylinder(L.sys, c, SearchLimits{o.budget, 100000})) {
        std::size_t per = verified_period(L.sys, *p);
        if (per == 0) continue;
        write_file(o.csv_path, path_csv(materialize(L.sys, *p, per + 1)));
        break;
      }
  }
  return 0;
}

int run_impression(const Options& o) {
  auto L = load(o);
  Rational eps = positive("--epsilon", o.epsilon);
  auto d = impression_density(L.sys, L.sys.value(parse_rational(o.x)), eps, o.budget, 40);
  json j;
  j["system"] = L.sys.name();
  j["params"] = {{"x", o.x}, {"epsilon", o.epsilon}, {"budget", o.budget}, {"exponent_bound", 40}};
  j["status"] = d.covered ? "NET" : "GAP";
  j["points"] = d.points;
  j["gaps"] = json::array();
  for (const auto& g : d.gaps)
    j["gaps"].push_back({{"lo", g.lo}, {"hi", g.hi}, {"exact", g.exact}, {"lo_form", g.lo_form}, {"hi_form", g.hi_form}});
  emit(o, j);
  return 0;
}

int run_lelek(const Options& o) {
  Rational r = parse_rational(o.r), rho = parse_rational(o.rho);
  auto nc = nc_check(r, rho);
  json j;
  j["system"] = "lelek";
  j["params"] = {{"r", o.r}, {"rho", o.rho}, {"x0", o.x0}, {"steps", o.steps}};
  if (nc.status == NcVerdict::Status::Rejected) throw ConfigError("need 0 < r < 1 < rho");
  if (nc.status == NcVerdict::Status::Dependent) {
    j["nc"] = {{"status", "DEP"}, {"k", nc.k}, {"l", nc.l}};
    emit(o, j);
    return 1;
  }
  j["nc"] = {{"status", "NC"}};
  auto c = lelek_climb(r, rho, parse_rational(o.x0), o.steps);
  std::size_t first = 0;
  for (std::size_t k = 0; k < c.trajectory.size(); ++k)
    if (c.trajectory[k] >= 0.99) {
      first = k;
      break;
    }
  j["climb"] = {{"max", c.max_seen}, {"first_above_0.99", first}};
  j["periodic"] = lelek_periodic_points(r, rho);
  emit(o, j);
  if (!o.csv_path.empty()) {
    std::string text = "index,value\n";
    for (std::size_t k = 0; k < c.trajectory.size(); ++k) text += std::to_string(k) + "," + std::to_string(c.trajectory[k]) + "\n";
    write_file(o.csv_path, text);
  }
  return 0;
}

int run_render(const Options& o) {
  auto L = load(o);
  auto e = embed_fan(L.sys, L.spine, o.depth, 400, o.seed);
  write_file(o.out_path.empty() ? "fan.svg" : o.out_path, fan_svg(e));
  if (!o.csv_path.empty()) write_file(o.csv_path, fan_csv(e));
  std::cerr << e.legs.size() << " legs, " << e.points.size() << " points\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaos diagnostics for closed relations and collapsed fans"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--preset", o.preset, "devaney4 | robinson | knudsen | lelek");
    s->add_option("--config", o.config, "system description file");
    s->add_option("--r", o.r);
    s->add_option("--rho", o.rho);
    s->add_option("--epsilon", o.epsilon);
    s->add_option("--nmax", o.nmax);
    s->add_option("--depth", o.depth);
    s->add_option("--mesh", o.mesh);
    s->add_option("--budget", o.budget);
    s->add_option("--json", o.json_path, "write the report here instead of stdout");
    s->add_option("--csv", o.csv_path);
    s->add_option("-o", o.out_path);
    s->add_option("--jobs", o.jobs, "OpenMP threads (default: all cores)");
    s->add_option("--seed", o.seed);
    s->add_flag("--serial", o.serial, "use the serial reference kernels");
  };

  auto classify_cmd = app.add_subcommand("classify", "run all three diagnostics and label the system");
  common(classify_cmd);
  classify_cmd->add_option("--expect", o.expect, "expected label, e.g. robinson-not-devaney");
  auto sens = app.add_subcommand("sensitivity", "sensitive dependence on initial conditions");
  common(sens);
  auto trans = app.add_subcommand("transitivity", "topological transitivity");
  common(trans);
  auto per = app.add_subcommand("periodic", "density of periodic points");
  common(per);
  auto imp = app.add_subcommand("impression", "forward impression density");
  common(imp);
  imp->add_option("--x", o.x);
  auto lel = app.add_subcommand("lelek", "never-connect check, greedy climb and periodic certificate");
  common(lel);
  lel->add_option("--x0", o.x0);
  lel->add_option("--steps", o.steps);
  auto ren = app.add_subcommand("render", "SVG embedding of the collapsed fan");
  common(ren);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (imp->parsed() && imp->count("--budget") == 0) o.budget = 400;
  if (o.jobs > 0) omp_set_num_threads(o.jobs);

  try {
    if (classify_cmd->parsed()) return run_classify(o);
    if (sens->parsed()) return run_sensitivity(o);
    if (trans->parsed()) return run_transitivity(o);
    if (per->parsed()) return run_periodic(o);
    if (imp->parsed()) return run_impression(o);
    if (lel->parsed()) return run_lelek(o);
    if (ren->parsed()) return run_render(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NotNeverConnect& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
