// Command-line front end: run / table1 / tune / sweep-l / list.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gffpielm/app.hpp"
#include "gffpielm/error.hpp"

using namespace gffpielm;

namespace {

struct Flags {
  std::string case_name = "poisson1d_demo";
  std::string method = "GFF";
  std::string scale = "default";
  std::optional<int> neurons, interior, boundary, initial;
  std::optional<double> delta_min, delta_max, rcond;
  std::vector<double> L;
  double ridge = 0.0;
  std::uint64_t seed = 1;
  std::string grid;
  std::string out = "out";
  int max_iterations = 2;
  RefinementSettings refinement;
  bool verbose = false;
};

RunConfig to_run_config(const Flags& f) {
  RunConfig c;
  try {
    c.case_name = f.case_name;
    c.method = parse_method(f.method);
    c.scale = parse_scale(f.scale);
    c.grid = parse_grid(f.grid);
  } catch (const std::exception& e) {
    throw StageError("config", e.what());
  }
  c.neurons = f.neurons;
  c.interior = f.interior;
  c.per_boundary = f.boundary;
  c.per_initial = f.initial;
  c.delta_min = f.delta_min;
  c.delta_max = f.delta_max;
  if (f.L.size() > 1) throw StageError("config", "--L takes one value outside sweep-l");
  if (!f.L.empty()) c.L = f.L.front();
  c.rcond = f.rcond;
  c.ridge = f.ridge;
  c.seed = f.seed;
  c.output_dir = f.out;
  c.max_iterations = f.max_iterations;
  c.refinement = f.refinement;
  return c;
}

void print_reports(const CaseRun& run) {
  for (const auto& r : run.reports) {
    std::printf("%-22s %-8s %-28s mse=%.3e  l2=%.3e  rank=%d/%ld  %.2fs", r.case_name.c_str(),
                to_string(r.method), r.initialization.c_str(), r.mse, r.l2, r.effective_rank,
                static_cast<long>(r.columns), r.assemble_seconds + r.solve_seconds);
    if (r.alpha) std::printf("  alpha=%.6f", *r.alpha);
    std::printf("\n");
    for (std::size_t k = 0; k < r.trail.size(); ++k) {
      const auto& t = r.trail[k];
      std::printf("  iter %zu: [%g, %g] l2=%.3e -> [%g, %g] %s\n", k + 1, t.delta_min,
                  t.delta_max, t.l2, t.suggestion.delta_min, t.suggestion.delta_max,
                  to_string(t.suggestion.flag));
    }
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
  }
}

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--case", f.case_name, "Registry case (see `list`)");
  app.add_option("--method", f.method, "GFF, VANILLA or BOTH");
  app.add_option("--scale", f.scale, "DESK or PAPER preset (default: registry values)");
  app.add_option("--neurons", f.neurons, "Hidden-layer width M");
  app.add_option("--interior", f.interior, "Interior collocation points");
  app.add_option("--boundary", f.boundary, "Points per boundary condition");
  app.add_option("--initial", f.initial, "Points per initial condition");
  app.add_option("--delta-min", f.delta_min, "Lowest frequency coefficient");
  app.add_option("--delta-max", f.delta_max, "Highest frequency coefficient");
  app.add_option("--L", f.L, "Tanh-layer half-width (several values for sweep-l)");
  app.add_option("--rcond", f.rcond, "Singular-value cutoff relative to the largest");
  app.add_option("--ridge", f.ridge, "Tikhonov parameter (0 = plain least squares)");
  app.add_option("--seed", f.seed, "Base random seed");
  app.add_option("--grid", f.grid, "Evaluation grid, N or NxT");
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--max-iterations", f.max_iterations, "Solves made by tune");
  app.add_option("--bins", f.refinement.bins, "Spectrum bins for tune");
  app.add_option("--threshold-ratio", f.refinement.threshold_ratio, "Active-bin threshold");
  app.add_option("--margin", f.refinement.margin, "Upper-bound margin factor");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesh-free linear PDE solver with general Fourier feature layers"};
  app.set_config("--config", "", "TOML/INI file; command-line flags override it");
  app.require_subcommand(1);
  Flags f;
  add_common(app, f);

  auto* run = app.add_subcommand("run", "Solve one case")->fallthrough();
  auto* table1 = app.add_subcommand("table1", "Both methods on every case")->fallthrough();
  auto* tune = app.add_subcommand("tune", "Solve with frequency-interval refinement")->fallthrough();
  auto* sweep = app.add_subcommand("sweep-l", "Tanh baseline over several L values")->fallthrough();
  auto* list = app.add_subcommand("list", "Print the case registry");
  list->add_flag("-v,--verbose", f.verbose, "Print every registry field");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      if (f.verbose) {
        std::cout << case_manifest();
      } else {
        for (const auto& name : list_cases()) std::cout << name << "\n";
        for (const auto& name : experimental_cases()) std::cout << name << " (experimental)\n";
      }
      return 0;
    }

    if (*table1) {
      Scale scale = Scale::Desk;
      try {
        if (app.get_option("--scale")->count() > 0) scale = parse_scale(f.scale);
      } catch (const std::exception& e) {
        throw StageError("config", e.what());
      }
      const auto rows = run_table1(scale, f.out, f.seed, f.rcond);
      int failed = 0;
      for (const auto& r : rows) {
        std::printf("%-22s %-8s %-28s mse=%.3e  l2=%.3e  (reported %s / %s)  %.1fs\n",
                    r.case_name.c_str(), to_string(r.method), r.initialization.c_str(), r.mse,
                    r.l2, r.reported_mse.empty() ? "-" : r.reported_mse.c_str(),
                    r.reported_l2.empty() ? "-" : r.reported_l2.c_str(), r.seconds);
        if (!r.error.empty()) {
          ++failed;
          std::printf("  error: %s\n", r.error.c_str());
        }
      }
      std::printf("wrote %s\n", (std::filesystem::path(f.out) / "table1_summary.csv").c_str());
      return failed == 0 ? 0 : 1;
    }

    RunConfig config = to_run_config(f);

    if (*sweep) {
      const CaseSpec spec = [&] {
        try {
          return get_case(config.case_name);
        } catch (const std::exception& e) {
          throw StageError("config", e.what());
        }
      }();
      const std::vector<double> Ls = f.L.empty() ? std::vector<double>{1, 20, 40, 60} : f.L;
      config.L.reset();
      EffectiveConfig cfg;
      try {
        cfg = resolve_config(config, spec);
      } catch (const std::exception& e) {
        throw StageError("config", e.what());
      }
      CollocationSet colloc;
      LabelledData data;
      try {
        colloc = sample_collocation(spec.problem, cfg.plan);
        data = labelled_data(spec);
      } catch (const std::exception& e) {
        throw StageError("sample", e.what());
      }
      SolveSettings settings;
      settings.lstsq.rcond = cfg.rcond;
      settings.lstsq.ridge = cfg.ridge;
      settings.grid = cfg.grid;
      const SweepResult result =
          sweep_vanilla_L(spec.problem, colloc, cfg.neurons, Ls, cfg.seed, settings, &data);
      for (std::size_t k = 0; k < result.rows.size(); ++k) {
        const auto& r = result.rows[k];
        std::printf("L=%-8g mse=%.3e  l2=%.3e%s", r.L, r.mse, r.l2,
                    static_cast<int>(k) == result.best ? "  <- best" : "");
        if (!r.error.empty()) std::printf("  error: %s", r.error.c_str());
        std::printf("\n");
      }
      std::filesystem::create_directories(config.output_dir);
      const auto path = config.output_dir / "l_sweep.csv";
      std::ofstream os(path);
      if (!os) throw StageError("write", "cannot open " + path.string());
      write_sweep_csv(os, result);
      std::printf("wrote %s\n", path.c_str());
      return result.best >= 0 ? 0 : 1;
    }

    config.tune = static_cast<bool>(*tune);
    if (config.tune && config.method != Method::Gff)
      throw StageError("config", "tune refines the GFF frequency interval; use --method GFF");
    const CaseRun result = run_case(config);
    print_reports(result);
    std::printf("wrote %s\n", config.output_dir.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
