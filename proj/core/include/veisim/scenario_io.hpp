#pragma once

#include <iosfwd>
#include <string>

#include "veisim/scenario.hpp"

namespace veisim {

// Scenario files are a line-based "key = value" text format with [section]
// headers; full-line comments start with '#'. Schema version 1. The writer
// is deterministic (fixed section/key order, shortest round-trip number
// formatting), so identical specs serialize byte-identically.
inline constexpr int kScenarioSchema = 1;

std::string write_scenario(const ScenarioSpec& spec);
void write_scenario_file(const ScenarioSpec& spec, const std::string& path);

// Strict parser: unknown sections or keys, missing track fields, keyframe
// count mismatches and malformed numbers raise ParseError with `source` and
// the 1-based line. The parsed spec is validated before being returned.
ScenarioSpec parse_scenario(std::istream& in, const std::string& source);
ScenarioSpec load_scenario_file(const std::string& path);

}  // namespace veisim
