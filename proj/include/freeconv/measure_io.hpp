#pragma once

#include <string>

#include "freeconv/measure.hpp"

namespace freeconv {

/// Parse a measure spec document:
/// {"domain": "real"|"halfline"|"circle",
///  "atoms": [{"pos": x, "mass": m}, ...],
///  "named": {"family": "semicircle"|"arcsine"|"uniform_interval"|
///            "haar_circle"|"point", "params": [...], "weight": w,
///            "nodes": n},
///  "grid": {"nodes": [...], "weights": [...]}}
/// Exactly one of named/grid may appear; atoms may accompany either or
/// stand alone.  `weight` scales the named family's continuous part so the
/// total mass can stay 1 when atoms are present.
Measure parse_measure_json(const std::string& text);
Measure load_measure_file(const std::string& path);

std::string measure_to_json(const Measure& mu);

}  // namespace freeconv
