#pragma once

#include <array>
#include <optional>
#include <string>

#include "veisim/engine.hpp"
#include "veisim/scenario.hpp"

namespace veisim {

// The five experiment configurations, in canonical order.
enum class VariantId {
  Baseline = 0,        // scooter kinematic replay, ego constant speed
  NormalNoCap = 1,     // SFM normal rider, ego constant speed
  AggressiveNoCap = 2, // SFM aggressive rider, ego constant speed
  NormalCap = 3,       // SFM normal rider, ego CAP-controlled
  AggressiveCap = 4,   // SFM aggressive rider, ego CAP-controlled
};

inline constexpr std::array<VariantId, 5> kAllVariants{
    VariantId::Baseline, VariantId::NormalNoCap, VariantId::AggressiveNoCap,
    VariantId::NormalCap, VariantId::AggressiveCap};

// CLI-visible names: baseline, normal, aggressive, normal-cap, aggressive-cap.
const char* variant_name(VariantId id);
std::optional<VariantId> parse_variant(const std::string& name);

// Returns base with only ego_mode / scooter_mode / rider_profile set per the
// variant table; tracks, dt, duration, geometry, timing_shift, SFM and CAP
// parameters are carried through untouched.
ScenarioSpec build_variant(const ScenarioSpec& base, VariantId id);

std::array<ScenarioSpec, 5> build_matrix(const ScenarioSpec& base);

// Convenience: build the variant, run it, and stamp the trace's variant name.
SimTrace run_variant(const ScenarioSpec& base, VariantId id);

}  // namespace veisim
