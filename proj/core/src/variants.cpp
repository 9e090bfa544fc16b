#include "veisim/variants.hpp"

namespace veisim {

const char* variant_name(VariantId id) {
  switch (id) {
    case VariantId::Baseline: return "baseline";
    case VariantId::NormalNoCap: return "normal";
    case VariantId::AggressiveNoCap: return "aggressive";
    case VariantId::NormalCap: return "normal-cap";
    case VariantId::AggressiveCap: return "aggressive-cap";
  }
  return "baseline";
}

std::optional<VariantId> parse_variant(const std::string& name) {
  for (VariantId id : kAllVariants) {
    if (name == variant_name(id)) return id;
  }
  return std::nullopt;
}

ScenarioSpec build_variant(const ScenarioSpec& base, VariantId id) {
  ScenarioSpec spec = base;
  switch (id) {
    case VariantId::Baseline:
      spec.ego_mode = EgoMode::ConstantSpeedReplay;
      spec.scooter_mode = ScooterMode::KinematicReplay;
      spec.rider_profile = RiderProfile::Normal;
      break;
    case VariantId::NormalNoCap:
      spec.ego_mode = EgoMode::ConstantSpeedReplay;
      spec.scooter_mode = ScooterMode::Sfm;
      spec.rider_profile = RiderProfile::Normal;
      break;
    case VariantId::AggressiveNoCap:
      spec.ego_mode = EgoMode::ConstantSpeedReplay;
      spec.scooter_mode = ScooterMode::Sfm;
      spec.rider_profile = RiderProfile::Aggressive;
      break;
    case VariantId::NormalCap:
      spec.ego_mode = EgoMode::CapControlled;
      spec.scooter_mode = ScooterMode::Sfm;
      spec.rider_profile = RiderProfile::Normal;
      break;
    case VariantId::AggressiveCap:
      spec.ego_mode = EgoMode::CapControlled;
      spec.scooter_mode = ScooterMode::Sfm;
      spec.rider_profile = RiderProfile::Aggressive;
      break;
  }
  return spec;
}

std::array<ScenarioSpec, 5> build_matrix(const ScenarioSpec& base) {
  return {build_variant(base, VariantId::Baseline),
          build_variant(base, VariantId::NormalNoCap),
          build_variant(base, VariantId::AggressiveNoCap),
          build_variant(base, VariantId::NormalCap),
          build_variant(base, VariantId::AggressiveCap)};
}

SimTrace run_variant(const ScenarioSpec& base, VariantId id) {
  SimTrace trace = run_scenario(build_variant(base, id));
  trace.variant = variant_name(id);
  return trace;
}

}  // namespace veisim
