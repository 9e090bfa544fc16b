#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "veisim/engine.hpp"
#include "veisim/errors.hpp"
#include "veisim/ingest.hpp"
#include "veisim/log.hpp"
#include "veisim/metrics.hpp"
#include "veisim/numfmt.hpp"
#include "veisim/scenario_io.hpp"
#include "veisim/trace_io.hpp"
#include "veisim/variants.hpp"

namespace fs = std::filesystem;

namespace {

struct ReconstructArgs {
  std::string gps_path;
  std::string annotations_path;
  std::string out_path;
  std::string name;
  bool induce_overlap = true;
};

struct RunArgs {
  std::string scenario_path;
  std::string variant;
  std::string out_dir;
  std::optional<double> dt;
  std::optional<double> duration;
};

struct MatrixArgs {
  std::string scenario_path;
  std::string out_dir;
};

void print_run_line(const veisim::SimTrace& trace, const veisim::SafetyReport& report) {
  std::cout << trace.variant << ": collided=" << (report.collided ? "true" : "false")
            << " safety_index=" << veisim::format_double(report.index)
            << " frames=" << trace.frames.size() << "\n";
}

int cmd_reconstruct(const ReconstructArgs& args) {
  const auto gps = veisim::parse_gps_file(args.gps_path);
  const auto annotations = veisim::parse_annotations_file(args.annotations_path);
  const auto sync = veisim::synchronize(gps, annotations);
  auto built = veisim::build_tracks(gps, sync.frames);
  for (const auto& warning : built.warnings) {
    veisim::log(veisim::LogLevel::Warn, warning);
  }

  veisim::ScenarioSpec spec;
  spec.name = args.name.empty() ? fs::path(args.out_path).stem().string() : args.name;
  spec.tracks = std::move(built.tracks);
  spec.origin = built.origin;
  spec.duration = spec.ego_track()->t_end() - spec.ego_track()->t_begin();
  spec.bounds = veisim::compute_scenario_bounds(spec.tracks, spec.origin, 10.0);

  if (args.induce_overlap) {
    const veisim::AgentTrack* scooter = nullptr;
    for (const auto* candidate : spec.scooter_tracks()) {
      if (candidate->simulable()) {
        scooter = candidate;
        break;
      }
    }
    if (scooter != nullptr) {
      spec.timing_shift =
          veisim::induce_overlap(*spec.ego_track(), *scooter, spec.geometry);
    } else {
      veisim::log(veisim::LogLevel::Warn,
                  "no simulable scooter track; skipping overlap induction");
    }
  }

  veisim::validate_or_throw(spec);
  veisim::write_scenario_file(spec, args.out_path);

  std::cout << "gps fixes: " << gps.size() << "\n";
  std::cout << "annotations: " << annotations.size() << " (dropped " << sync.dropped << ")\n";
  for (const auto& track : spec.tracks) {
    std::cout << "track " << track.agent_id << " ("
              << (track.kind == veisim::AgentKind::Ego ? "ego" : "escooter") << "): "
              << track.keyframes.size() << " keyframes\n";
  }
  std::cout << "timing shift: " << veisim::format_double(spec.timing_shift) << " s\n";
  std::cout << "wrote " << args.out_path << "\n";
  return 0;
}

int cmd_run(const RunArgs& args) {
  veisim::ScenarioSpec spec = veisim::load_scenario_file(args.scenario_path);
  if (args.dt) spec.dt = *args.dt;
  if (args.duration) spec.duration = *args.duration;
  veisim::validate_or_throw(spec);

  const auto id = veisim::parse_variant(args.variant);
  if (!id) throw veisim::Error("unknown variant '" + args.variant + "'");

  const veisim::SimTrace trace = veisim::run_variant(spec, *id);
  const veisim::SafetyReport report = veisim::build_report(trace);

  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);
  veisim::write_text_file((out / "trace.csv").string(), veisim::trace_csv(trace));
  veisim::write_text_file((out / "report.json").string(),
                          veisim::report_json(trace, report));

  veisim::RunManifest manifest;
  manifest.command = "run";
  manifest.scenario_path = args.scenario_path;
  manifest.variant = args.variant;
  manifest.out_dir = args.out_dir;
  manifest.dt_override = args.dt;
  manifest.duration_override = args.duration;
  manifest.config_hash = veisim::config_hash(spec);
  veisim::write_text_file((out / "manifest.json").string(), veisim::manifest_json(manifest));

  print_run_line(trace, report);
  return 0;
}

int cmd_matrix(const MatrixArgs& args) {
  const veisim::ScenarioSpec spec = veisim::load_scenario_file(args.scenario_path);

  struct Slot {
    std::optional<veisim::SimTrace> trace;
    std::string error;
  };
  std::array<Slot, 5> slots;
  {
    std::array<std::future<veisim::SimTrace>, 5> futures;
    for (std::size_t i = 0; i < veisim::kAllVariants.size(); ++i) {
      futures[i] = std::async(std::launch::async, veisim::run_variant, spec,
                              veisim::kAllVariants[i]);
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      try {
        slots[i].trace = futures[i].get();
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  }

  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);

  std::vector<veisim::SimTrace> traces;
  std::vector<veisim::SafetyReport> reports;
  int failures = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const char* name = veisim::variant_name(veisim::kAllVariants[i]);
    if (!slots[i].trace) {
      ++failures;
      std::cerr << "veisim: variant " << name << " failed: " << slots[i].error << "\n";
      continue;
    }
    const veisim::SimTrace& trace = *slots[i].trace;
    const veisim::SafetyReport report = veisim::build_report(trace);
    const fs::path dir = out / name;
    fs::create_directories(dir);
    veisim::write_text_file((dir / "trace.csv").string(), veisim::trace_csv(trace));
    veisim::write_text_file((dir / "report.json").string(),
                            veisim::report_json(trace, report));
    print_run_line(trace, report);
    traces.push_back(trace);
    reports.push_back(report);
  }

  veisim::write_text_file((out / "summary.json").string(),
                          veisim::summary_json(traces, reports));

  veisim::RunManifest manifest;
  manifest.command = "matrix";
  manifest.scenario_path = args.scenario_path;
  manifest.out_dir = args.out_dir;
  manifest.config_hash = veisim::config_hash(spec);
  veisim::write_text_file((out / "manifest.json").string(), veisim::manifest_json(manifest));

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"veisim: deterministic vehicle / e-scooter interaction micro-simulator"};
  app.require_subcommand(1);

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand(
      "reconstruct", "Build a scenario file from GPS and annotation logs");
  rec->add_option("--gps", rec_args.gps_path, "GPS CSV (t,lat,lon,heading,speed)")
      ->required();
  rec->add_option("--annotations", rec_args.annotations_path,
                  "annotation CSV (t,scooter_id,rel_x,rel_y)")
      ->required();
  rec->add_option("--out", rec_args.out_path, "scenario file to write")->required();
  rec->add_option("--name", rec_args.name, "scenario name (default: output file stem)");
  rec->add_flag("--induce-overlap,!--no-induce-overlap", rec_args.induce_overlap,
                "time-shift the first scooter onto the critical overlap (default: on)");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one variant of a scenario");
  run->add_option("--scenario", run_args.scenario_path, "scenario file")->required();
  run->add_option("--variant", run_args.variant, "variant name")
      ->required()
      ->check(CLI::IsMember(
          {"baseline", "normal", "aggressive", "normal-cap", "aggressive-cap"}));
  run->add_option("--dt", run_args.dt, "timestep override, seconds");
  run->add_option("--duration", run_args.duration, "duration override, seconds");
  run->add_option("--out", run_args.out_dir, "output directory")->required();

  MatrixArgs matrix_args;
  auto* matrix =
      app.add_subcommand("matrix", "Run all five variants and write a comparison summary");
  matrix->add_option("--scenario", matrix_args.scenario_path, "scenario file")->required();
  matrix->add_option("--out", matrix_args.out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (rec->parsed()) return cmd_reconstruct(rec_args);
    if (run->parsed()) return cmd_run(run_args);
    if (matrix->parsed()) return cmd_matrix(matrix_args);
  } catch (const veisim::Error& e) {
    std::cerr << "veisim: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "veisim: unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
