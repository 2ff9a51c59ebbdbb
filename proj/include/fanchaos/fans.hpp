#pragma once

#include "fanchaos/mahavier.hpp"
#include "fanchaos/quotient.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fanchaos {

enum class PresetName { Devaney4Leg, Robinson, Knudsen, Lelek };

struct Preset {
  RelationSystem sys;
  SpineSet spine;
};

/// Config text of a preset (the Lelek text uses r and rho).
std::string preset_config(PresetName name, const Rational& r = Rational(1, 2), const Rational& rho = Rational(3, 2));

/// Throws NotNeverConnect when a Lelek pair fails the never-connect test.
Preset preset(PresetName name, const Rational& r = Rational(1, 2), const Rational& rho = Rational(3, 2));

/// "devaney4", "robinson", "knudsen", "lelek"; throws ConfigError otherwise.
PresetName parse_preset_name(const std::string& s);

struct Climb {
  SeqPoint point;
  std::vector<double> trajectory;
  double max_seen = 0.0;
};

/// Greedy itinerary through x0: multiply by rho whenever rho x <= 1, else by r.
Climb lelek_climb(const Rational& r, const Rational& rho, const Rational& x0, std::size_t steps);

/// Exact certificate that the zero sequence is the only periodic point. Throws NotNeverConnect.
nlohmann::json lelek_periodic_points(const Rational& r, const Rational& rho, long max_period = 20);

struct FanLeg {
  std::size_t id;
  double c;  // Cantor parameter in [0, 1]
  std::vector<std::size_t> symbols;
};

struct FanPoint {
  std::size_t leg;
  double radius;
  double x;
  double y;
};

struct FanEmbedding {
  std::vector<FanLeg> legs;
  std::vector<FanPoint> points;  // points[0] is TOP
};

/// Legs from depth-long spine paths (scale systems: branch itineraries), each sampled point at its
/// distance to TOP along the direction (c - 1/2, -1).
FanEmbedding embed_fan(const RelationSystem& sys, const SpineSet& s, std::size_t depth, std::size_t samples = 200,
                       std::uint64_t seed = 1);

/// Cantor-set parameter of a symbol string: each symbol written in ceil(log2 m) bits b_j, c = sum 2 b_j / 3^j.
double cantor_parameter(const std::vector<std::size_t>& symbols, std::size_t alphabet);

/// Random point: rational start in a random piece, random applicable itinerary of given length.
SeqPoint random_point(const RelationSystem& sys, std::mt19937_64& rng, std::size_t length);

}  // namespace fanchaos
