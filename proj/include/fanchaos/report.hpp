#pragma once

#include "fanchaos/diagnostics.hpp"
#include "fanchaos/fans.hpp"

#include <json.hpp>

#include <string>

namespace fanchaos {

nlohmann::json to_json(const Verdict& v);

/// {system, params, verdicts[], label} plus base verdicts and structural checks.
nlohmann::json to_json(const ChaosReport& r);

/// Label in the --expect spelling: "robinson-not-devaney", "devaney", ...
std::string normalize_label(const std::string& s);

/// Rows index,x,y over the first n coordinates of both witness points after m shifts.
std::string witness_csv(const RelationSystem& sys, const SdicWitness& w, std::size_t n);

/// Rows index,value,exact.
std::string path_csv(const FinitePath& path);

std::string fan_csv(const FanEmbedding& e);
std::string fan_svg(const FanEmbedding& e, int size = 600);

}  // namespace fanchaos
