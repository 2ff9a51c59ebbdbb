#include "fanchaos/fans.hpp"

#include "fanchaos/config.hpp"
#include "fanchaos/errors.hpp"

#include <cmath>
#include <map>

namespace fanchaos {

namespace {

const char* kDevaney4 = R"(name = devaney4
tag = devaney4
piece = [0,1]
piece = [2,3]
piece = [4,5]
piece = [6,7]
segment = f1 [0,1] power 2 0 0
segment = f1 [2,3] power 1/2 2 2
segment = f1 [4,5] power 3 4 4
segment = f1 [6,7] power 1/3 6 6
segment = f2 [0,1] shift 2
segment = f2 [2,3] shift -2
segment = f2 [4,5] shift 2
segment = f2 [6,7] shift -2
segment = f3 [0,1] power 2 0 0
segment = f3 [2,3] shift 2
segment = f3 [4,5] shift -2
segment = f3 [6,7] power 1/3 6 6
spine = 0 2 4 6
)";

const char* kRobinson = R"(name = robinson
piece = [0,1]
piece = [2,3]
segment = f1 [0,1] power 2 0 0
segment = f1 [2,3] power 1/3 2 2
segment = f2 [0,1] shift 2
segment = f2 [2,3] shift -2
spine = 0 2
)";

const char* kKnudsen = R"(name = knudsen
piece = [0,1]
piece = [2,3]
segment = f1 [0,1] power 2 0 0
segment = f1 [2,3] power 1/2 2 2
segment = f2 [0,1] shift 2
segment = f2 [2,3] shift -2
spine = 0 2
)";

}  // namespace

std::string preset_config(PresetName name, const Rational& r, const Rational& rho) {
  switch (name) {
    case PresetName::Devaney4Leg:
      return kDevaney4;
    case PresetName::Robinson:
      return kRobinson;
    case PresetName::Knudsen:
      return kKnudsen;
    case PresetName::Lelek:
      return "name = lelek(" + to_string(r) + "," + to_string(rho) + ")\n" +
             "piece = [0,1]\n"
             "segment = r [0,1] scale " + to_string(r) + "\n" +
             "segment = rho [0," + to_string(Rational(1) / rho) + "] scale " + to_string(rho) + "\n" +
             "spine = 0\n";
  }
  throw ConfigError("unknown preset");
}

Preset preset(PresetName name, const Rational& r, const Rational& rho) {
  if (name == PresetName::Lelek) {
    auto nc = nc_check(r, rho);
    if (nc.status != NcVerdict::Status::NeverConnect)
      throw NotNeverConnect("(" + to_string(r) + ", " + to_string(rho) + ") is not a never-connect pair");
  }
  auto cfg = parse_config(preset_config(name, r, rho));
  SpineSet s = SpineSet::make(*cfg.system, cfg.spine);
  return Preset{std::move(*cfg.system), std::move(s)};
}

PresetName parse_preset_name(const std::string& s) {
  if (s == "devaney4") return PresetName::Devaney4Leg;
  if (s == "robinson") return PresetName::Robinson;
  if (s == "knudsen") return PresetName::Knudsen;
  if (s == "lelek") return PresetName::Lelek;
  throw ConfigError("unknown preset '" + s + "' (devaney4, robinson, knudsen, lelek)");
}

Climb lelek_climb(const Rational& r, const Rational& rho, const Rational& x0, std::size_t steps) {
  if (!(x0 >= 0 && x0 <= 1)) throw std::invalid_argument("x0 must lie in [0,1]");
  Preset p = preset(PresetName::Lelek, r, rho);
  const auto& sys = p.sys;
  std::size_t ir = *sys.branch_index("r"), irho = *sys.branch_index("rho");
  Climb out{SeqPoint{sys.value(x0), {}, {}, std::nullopt}, {}, 0.0};
  ExactValue v = out.point.start;
  out.trajectory.reserve(steps + 1);
  out.trajectory.push_back(v.approx());
  out.max_seen = v.approx();
  out.point.fwd.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t b = in_domain(sys.branches()[irho], v) ? irho : ir;
    v = eval_branch(sys.branches()[b], v);
    out.point.fwd.push_back(b);
    out.trajectory.push_back(v.approx());
    out.max_seen = std::max(out.max_seen, v.approx());
  }
  return out;
}

nlohmann::json lelek_periodic_points(const Rational& r, const Rational& rho, long max_period) {
  auto nc = nc_check(r, rho);
  if (nc.status != NcVerdict::Status::NeverConnect)
    throw NotNeverConnect("(" + to_string(r) + ", " + to_string(rho) + ") is not a never-connect pair");
  nlohmann::json cert;
  cert["r"] = to_string(r);
  cert["rho"] = to_string(rho);
  cert["nc"] = true;
  nlohmann::json rows = nlohmann::json::array();
  bool only_zero = true;
  for (long n = 1; n <= max_period; ++n)
    for (long a = 0; a <= n; ++a) {
      Rational scale = pow(r, a) * pow(rho, n - a);
      bool one = scale == 1;
      only_zero = only_zero && !one;
      if (n <= 2) rows.push_back({{"a", a}, {"b", n - a}, {"scale", to_string(scale)}, {"equals_one", one}});
    }
  cert["small_periods"] = rows;
  cert["max_period_checked"] = max_period;
  cert["zero_sequence_fixed"] = true;
  cert["only_zero_sequence"] = only_zero;
  return cert;
}

double cantor_parameter(const std::vector<std::size_t>& symbols, std::size_t alphabet) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < alphabet) ++bits;
  double c = 0.0, w = 1.0;
  for (auto s : symbols)
    for (std::size_t b = bits; b-- > 0;) {
      w /= 3.0;
      if ((s >> b) & 1u) c += 2.0 * w;
    }
  return c;
}

SeqPoint random_point(const RelationSystem& sys, std::mt19937_64& rng, std::size_t length) {
  const auto& pieces = sys.space().pieces();
  const auto& piece = pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
  constexpr long D = 997;
  long k = std::uniform_int_distribution<long>(1, D - 1)(rng);
  Rational x = piece.lo + (piece.hi - piece.lo) * Rational(k, D);
  SeqPoint p{sys.value(x), {}, {}, std::nullopt};
  ExactValue v = p.start;
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i + 1 < length; ++i) {
    ok.clear();
    for (std::size_t b = 0; b < sys.branch_count(); ++b)
      if (in_domain(sys.branches()[b], v)) ok.push_back(b);
    std::size_t b = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
    v = eval_branch(sys.branches()[b], v);
    p.fwd.push_back(b);
  }
  return p;
}

FanEmbedding embed_fan(const RelationSystem& sys, const SpineSet& s, std::size_t depth, std::size_t samples,
                       std::uint64_t seed) {
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  FanEmbedding out;
  std::map<std::vector<std::size_t>, std::size_t> leg_of;
  bool scale = sys.family() == Family::Scale;
  std::size_t alphabet = scale ? sys.branch_count() : s.alphabet.size();

  if (scale) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < depth; ++k) total *= alphabet;
    for (std::size_t id = 0; id < total; ++id) {
      std::vector<std::size_t> sym(depth);
      for (std::size_t k = depth, rem = id; k-- > 0; rem /= alphabet) sym[k] = rem % alphabet;
      leg_of[sym] = id;
      out.legs.push_back({id, cantor_parameter(sym, alphabet), sym});
    }
  } else {
    for (const auto& path : spine_prefixes(s, depth)) {
      std::vector<std::size_t> sym;
      for (const auto& c : path) sym.push_back(*s.index_of(c));
      std::size_t id = out.legs.size();
      leg_of[sym] = id;
      out.legs.push_back({id, cantor_parameter(sym, alphabet), sym});
    }
  }

  out.points.push_back({0, 0.0, 0.0, 0.0});
  std::mt19937_64 rng(seed);
  std::size_t window = std::max<std::size_t>(depth, 12);
  double diam = sys.space().diameter_approx();
  for (std::size_t i = 0; i < samples; ++i) {
    SeqPoint p = random_point(sys, rng, window);
    if (in_spine(s, p)) continue;
    auto coords = materialize(sys, p, window);
    auto sd = spine_distance(s, coords, window, diam);
    std::vector<std::size_t> sym;
    if (scale) sym.assign(p.fwd.begin(), p.fwd.begin() + static_cast<long>(depth));
    else sym.assign(sd.nearest.begin(), sd.nearest.begin() + static_cast<long>(depth));
    auto it = leg_of.find(sym);
    if (it == leg_of.end()) continue;
    double c = out.legs[it->second].c;
    double dx = c - 0.5, dy = -1.0, norm = std::hypot(dx, dy);
    double radius = sd.bounds.lower;
    out.points.push_back({it->second, radius, radius * dx / norm, radius * dy / norm});
  }
  return out;
}

}  // namespace fanchaos
