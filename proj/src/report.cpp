#include "fanchaos/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fanchaos {

nlohmann::json to_json(const Verdict& v) {
  return {{"kind", v.kind}, {"status", to_string(v.status)}, {"evidence", v.evidence}};
}

nlohmann::json to_json(const ChaosReport& r) {
  nlohmann::json j;
  j["system"] = r.system;
  j["params"] = r.params;
  j["verdicts"] = {to_json(r.transitive), to_json(r.periodic), to_json(r.sdic)};
  j["base_verdicts"] = {to_json(r.base_transitive), to_json(r.base_periodic), to_json(r.base_sdic)};
  j["label"] = r.label;
  j["agreement"] = r.agreement;
  j["banks_ok"] = r.banks_ok;
  j["structure"] = r.structure;
  j["cylinders"] = r.cylinders;
  return j;
}

std::string normalize_label(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::string witness_csv(const RelationSystem& sys, const SdicWitness& w, std::size_t n) {
  auto X = materialize(sys, w.x, w.m + n), Y = materialize(sys, w.y, w.m + n);
  std::ostringstream os;
  os << "index,x,y\n";
  for (std::size_t k = 0; k < n; ++k)
    os << k + 1 << ',' << num(X[w.m + k].approx()) << ',' << num(Y[w.m + k].approx()) << '\n';
  return os.str();
}

std::string path_csv(const FinitePath& path) {
  std::ostringstream os;
  os << "index,value,exact\n";
  for (std::size_t k = 0; k < path.size(); ++k)
    os << k + 1 << ',' << num(path[k].approx()) << ",\"" << path[k].exact_string() << "\"\n";
  return os.str();
}

std::string fan_csv(const FanEmbedding& e) {
  std::ostringstream os;
  os << "kind,leg,c,radius,x,y\n";
  for (const auto& l : e.legs) {
    double dx = l.c - 0.5, dy = -1.0, norm = std::hypot(dx, dy);
    os << "leg," << l.id << ',' << num(l.c) << ",1," << num(dx / norm) << ',' << num(dy / norm) << '\n';
  }
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    const auto& p = e.points[i];
    os << (i == 0 ? "top," : "point,") << p.leg << ',' << num(i == 0 ? 0.5 : e.legs[p.leg].c) << ','
       << num(p.radius) << ',' << num(p.x) << ',' << num(p.y) << '\n';
  }
  return os.str();
}

std::string fan_svg(const FanEmbedding& e, int size) {
  double scale = size * 0.8;
  double cx = size / 2.0, cy = size * 0.1;
  auto X = [&](double x) { return cx + x * scale; };
  auto Y = [&](double y) { return cy - y * scale; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& l : e.legs) {
    double dx = l.c - 0.5, dy = -1.0, norm = std::hypot(dx, dy);
    os << "<line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(dx / norm)) << "\" y2=\""
       << num(Y(dy / norm)) << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  }
  for (std::size_t i = 1; i < e.points.size(); ++i)
    os << "<circle cx=\"" << num(X(e.points[i].x)) << "\" cy=\"" << num(Y(e.points[i].y))
       << "\" r=\"1.5\" fill=\"#1f5fa0\"/>\n";
  os << "<circle cx=\"" << num(X(0)) << "\" cy=\"" << num(Y(0)) << "\" r=\"4\" fill=\"#c0392b\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace fanchaos
