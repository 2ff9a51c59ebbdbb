#include "fanchaos/config.hpp"

#include "fanchaos/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fanchaos {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Rational rat(const std::string& s, int line) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError("line " + std::to_string(line) + ": bad rational '" + s + "'");
  }
}

// "[lo,hi]" or "(lo,hi)"
Interval interval(const std::string& tok, int line, char open, char close) {
  if (tok.size() < 5 || tok.front() != open || tok.back() != close)
    throw ConfigError("line " + std::to_string(line) + ": expected " + open + "lo,hi" + close + ", got '" + tok + "'");
  auto comma = tok.find(',');
  if (comma == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": missing comma in '" + tok + "'");
  Interval iv{rat(tok.substr(1, comma - 1), line), rat(tok.substr(comma + 1, tok.size() - comma - 2), line)};
  if (!(iv.lo < iv.hi)) throw ConfigError("line " + std::to_string(line) + ": empty interval '" + tok + "'");
  return iv;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  std::string name = "system", tag;
  std::vector<Interval> pieces;
  std::vector<BranchMap> branches;
  std::map<std::string, std::size_t> branch_of;
  SystemConfig out;

  std::istringstream in(text);
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    auto w = words(val);

    if (key == "name") {
      name = val;
    } else if (key == "tag") {
      tag = val;
    } else if (key == "piece") {
      if (w.size() != 1) throw ConfigError("line " + std::to_string(lineno) + ": piece = [lo,hi]");
      pieces.push_back(interval(w[0], lineno, '[', ']'));
    } else if (key == "segment") {
      if (w.size() < 4) throw ConfigError("line " + std::to_string(lineno) + ": segment = <branch> [lo,hi] <rule> ...");
      Segment seg;
      seg.domain = interval(w[1], lineno, '[', ']');
      const std::string& kind = w[2];
      if (kind == "shift" && w.size() == 4) {
        seg.rule = Rule::make_shift(rat(w[3], lineno));
      } else if (kind == "scale" && w.size() == 4) {
        seg.rule = Rule::make_scale(rat(w[3], lineno));
      } else if (kind == "power" && w.size() == 6) {
        seg.rule = Rule::make_power(rat(w[3], lineno), rat(w[4], lineno), rat(w[5], lineno));
      } else {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown rule '" + val + "'");
      }
      auto [it, fresh] = branch_of.emplace(w[0], branches.size());
      if (fresh) branches.push_back(BranchMap{w[0], {}});
      branches[it->second].segments.push_back(seg);
    } else if (key == "spine") {
      for (const auto& s : w) out.spine.push_back(rat(s, lineno));
    } else if (key == "cylinder") {
      std::vector<Interval> cyl;
      for (const auto& s : w) cyl.push_back(interval(s, lineno, '(', ')'));
      out.cylinders.push_back(std::move(cyl));
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  out.system.emplace(name, Space(pieces), branches);
  out.system->set_preset_tag(tag);
  return out;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fanchaos
