#include "gffpielm/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gffpielm/error.hpp"
#include "gffpielm/rng.hpp"

namespace gffpielm {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string coordinate_names(const Domain& domain) {
  if (domain.spatial_dim() == 1) return domain.has_time() ? "x,t" : "x";
  return domain.has_time() ? "x,y,t" : "x,y";
}

std::string grid_text(const GridSpec& g) {
  if (g.per_axis <= 0 && g.time_slices <= 0) return "default";
  std::string s = std::to_string(g.per_axis);
  if (g.time_slices > 0) s += "x" + std::to_string(g.time_slices);
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string gff_init(double lo, double hi) {
  std::ostringstream os;
  os << "delta1=" << lo << ";deltaM=" << hi;
  return os.str();
}

std::string vanilla_init(double L) {
  std::ostringstream os;
  os << "L=" << L;
  return os.str();
}

SolveSettings settings_of(const EffectiveConfig& cfg) {
  SolveSettings s;
  s.lstsq.rcond = cfg.rcond;
  s.lstsq.ridge = cfg.ridge;
  s.grid = cfg.grid;
  return s;
}

SolveReport make_report(const EffectiveConfig& cfg, Method method, const SolveOutcome& o) {
  SolveReport r;
  r.case_name = cfg.case_name;
  r.method = method;
  r.initialization =
      method == Method::Gff ? gff_init(cfg.delta_min, cfg.delta_max) : vanilla_init(cfg.L);
  r.config = cfg;
  r.rows = o.rows;
  r.columns = o.columns;
  r.effective_rank = o.solution.effective_rank;
  r.rcond_used = o.solution.rcond;
  r.mse = o.mse;
  r.l2 = o.l2;
  r.max_abs_error = o.max_abs_error;
  r.alpha = o.alpha;
  r.beta_spread = o.beta_spread;
  r.assemble_seconds = o.assemble_seconds;
  r.solve_seconds = o.solve_seconds;
  r.warnings = o.warnings;
  return r;
}

// Tracks files written by one run so they can be removed on failure.
class OutputFiles {
 public:
  explicit OutputFiles(std::filesystem::path dir) : dir_(std::move(dir)) {}

  template <class Writer>
  void write(const std::string& name, Writer&& writer) {
    std::filesystem::create_directories(dir_);
    const auto path = dir_ / name;
    written_.push_back(path);
    std::ofstream os(path);
    if (!os) throw StageError("write", "cannot open " + path.string());
    writer(os);
    if (!os) throw StageError("write", "failed writing " + path.string());
  }

  void remove_all() noexcept {
    std::error_code ec;
    for (const auto& p : written_) std::filesystem::remove(p, ec);
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace

Method parse_method(const std::string& text) {
  const std::string t = lower(text);
  if (t == "gff") return Method::Gff;
  if (t == "vanilla") return Method::Vanilla;
  if (t == "both") return Method::Both;
  throw Error("unknown method '" + text + "' (expected GFF, VANILLA or BOTH)");
}

Scale parse_scale(const std::string& text) {
  const std::string t = lower(text);
  if (t == "default" || t.empty()) return Scale::Default;
  if (t == "desk") return Scale::Desk;
  if (t == "paper") return Scale::Paper;
  throw Error("unknown scale '" + text + "' (expected DESK or PAPER)");
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  if (text.empty() || lower(text) == "default") return g;
  const auto x = text.find('x');
  try {
    std::size_t used = 0;
    g.per_axis = std::stoi(text.substr(0, x), &used);
    if (used != text.substr(0, x).size()) throw std::invalid_argument("trailing");
    if (x != std::string::npos) g.time_slices = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw Error("invalid grid '" + text + "' (expected N or NxT)");
  }
  if (g.per_axis < 1 || (x != std::string::npos && g.time_slices < 1))
    throw Error("invalid grid '" + text + "': counts must be positive");
  return g;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Gff:
      return "GFF";
    case Method::Vanilla:
      return "VANILLA";
    case Method::Both:
      return "BOTH";
  }
  return "?";
}

const char* to_string(Scale s) {
  switch (s) {
    case Scale::Default:
      return "DEFAULT";
    case Scale::Desk:
      return "DESK";
    case Scale::Paper:
      return "PAPER";
  }
  return "?";
}

void apply_scale(Scale scale, const CaseSpec& spec, int& neurons, SamplingPlan& plan) {
  neurons = spec.neurons;
  plan = spec.plan;
  if (scale == Scale::Default) return;
  const bool desk = scale == Scale::Desk;
  neurons = desk ? 1000 : 5000;
  plan.interior = desk ? 2000 : 8000;
  plan.per_boundary = desk ? 200 : 400;
  plan.per_initial = spec.problem.domain.has_time() ? (desk ? 200 : 400) : 0;
}

EffectiveConfig resolve_config(const RunConfig& config, const CaseSpec& spec) {
  EffectiveConfig e;
  e.case_name = spec.name;
  e.scale = config.scale;
  apply_scale(config.scale, spec, e.neurons, e.plan);
  if (config.neurons) e.neurons = *config.neurons;
  if (config.interior) e.plan.interior = *config.interior;
  if (config.per_boundary) e.plan.per_boundary = *config.per_boundary;
  if (config.per_initial) e.plan.per_initial = *config.per_initial;
  e.plan.seed = derive_seed(config.seed, 1);
  e.delta_min = config.delta_min.value_or(spec.delta_min);
  e.delta_max = config.delta_max.value_or(spec.delta_max);
  e.L = config.L.value_or(spec.vanilla_L);
  e.rcond = config.rcond;
  e.ridge = config.ridge;
  e.seed = config.seed;
  e.grid = config.grid;
  e.tune = config.tune;
  e.max_iterations = config.max_iterations;
  e.refinement = config.refinement;

  if (e.neurons < 1) throw Error("config: neurons must be positive");
  e.plan.validate();
  if (!(e.delta_min > 0.0) || e.delta_min > e.delta_max)
    throw Error("config: need 0 < delta-min <= delta-max");
  if (!(e.L > 0.0)) throw Error("config: L must be positive");
  if (e.max_iterations < 1) throw Error("config: max-iterations must be >= 1");
  return e;
}

CaseRun run_case(const RunConfig& config) {
  const CaseSpec spec = [&] {
    try {
      return get_case(config.case_name);
    } catch (const std::exception& e) {
      throw StageError("config", e.what());
    }
  }();
  const EffectiveConfig cfg = [&] {
    try {
      return resolve_config(config, spec);
    } catch (const std::exception& e) {
      throw StageError("config", e.what());
    }
  }();

  OutputFiles files(config.output_dir);
  CaseRun run;
  try {
    const PdeProblem& problem = spec.problem;
    const int dim = problem.domain.input_dim();
    CollocationSet colloc;
    LabelledData data;
    try {
      colloc = sample_collocation(problem, cfg.plan);
      data = labelled_data(spec);
    } catch (const std::exception& e) {
      throw StageError("sample", e.what());
    }
    const SolveSettings settings = settings_of(cfg);

    std::vector<Method> methods;
    if (config.method != Method::Vanilla) methods.push_back(Method::Gff);
    if (config.method != Method::Gff) methods.push_back(Method::Vanilla);

    for (Method method : methods) {
      if (method == Method::Gff) {
        SolveOutcome outcome;
        std::optional<FeatureLayer> layer;
        std::vector<IterationRecord> trail;
        EffectiveConfig used = cfg;
        if (cfg.tune) {
          RefinementResult refined =
              refine_and_resolve(problem, cfg.neurons, cfg.delta_min, cfg.delta_max, cfg.seed,
                                 colloc, cfg.max_iterations, settings, cfg.refinement, &data);
          trail = refined.trail;
          outcome = std::move(refined.final);
          layer = std::move(refined.final_layer);
          used.delta_min = trail.back().delta_min;
          used.delta_max = trail.back().delta_max;
        } else {
          try {
            layer = FeatureLayer::gff(cfg.neurons, dim, cfg.delta_min, cfg.delta_max, cfg.seed);
          } catch (const std::exception& e) {
            throw StageError("layer", e.what());
          }
          outcome = solve_with_layer(problem, *layer, colloc, &data, settings);
        }
        SolveReport report = make_report(used, Method::Gff, outcome);
        report.trail = std::move(trail);
        for (const auto& f : colloc.flags) report.warnings.push_back(f);
        run.spectrum = beta_spectrum(*layer, outcome.feature_weights, cfg.refinement.bins);
        run.reports.push_back(std::move(report));
        run.outcomes.push_back(std::move(outcome));
      } else {
        std::optional<FeatureLayer> layer;
        try {
          layer = FeatureLayer::vanilla(cfg.neurons, dim, cfg.L, cfg.seed);
        } catch (const std::exception& e) {
          throw StageError("layer", e.what());
        }
        SolveOutcome outcome = solve_with_layer(problem, *layer, colloc, &data, settings);
        SolveReport report = make_report(cfg, Method::Vanilla, outcome);
        for (const auto& f : colloc.flags) report.warnings.push_back(f);
        run.reports.push_back(std::move(report));
        run.outcomes.push_back(std::move(outcome));
      }
    }

    if (!config.output_dir.empty()) {
      files.write("report.csv", [&](std::ostream& os) { write_report_csv(os, run.reports); });
      for (std::size_t k = 0; k < run.reports.size(); ++k) {
        std::string name = "prediction_grid.csv";
        if (run.reports.size() > 1)
          name = std::string("prediction_grid_") + lower(to_string(run.reports[k].method)) + ".csv";
        files.write(name,
                    [&](std::ostream& os) { write_prediction_csv(os, problem.domain, run.outcomes[k]); });
      }
      if (run.spectrum)
        files.write("beta_vs_delta.csv",
                    [&](std::ostream& os) { write_spectrum_csv(os, *run.spectrum); });
      if (cfg.tune)
        files.write("tuning_trail.csv",
                    [&](std::ostream& os) { write_trail_csv(os, run.reports.front().trail); });
    }
  } catch (const StageError&) {
    files.remove_all();
    throw;
  } catch (const std::exception& e) {
    files.remove_all();
    throw StageError("run", e.what());
  }
  return run;
}

std::vector<Table1Row> run_table1(Scale scale, const std::filesystem::path& output_dir,
                                  std::uint64_t seed, std::optional<double> rcond) {
  std::vector<Table1Row> rows;
  for (const auto& name : list_cases()) {
    const CaseSpec spec = get_case(name);
    for (Method method : {Method::Gff, Method::Vanilla}) {
      Table1Row row;
      row.case_name = name;
      row.method = method;
      row.initialization = method == Method::Gff ? gff_init(spec.delta_min, spec.delta_max)
                                                 : vanilla_init(spec.vanilla_L);
      const auto& reported = method == Method::Gff ? spec.reported_gff : spec.reported_vanilla;
      if (reported) {
        row.reported_mse = reported->mse;
        row.reported_l2 = reported->l2;
      }
      RunConfig cfg;
      cfg.case_name = name;
      cfg.method = method;
      cfg.scale = scale;
      cfg.seed = seed;
      cfg.rcond = rcond;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const CaseRun run = run_case(cfg);
        const SolveReport& r = run.reports.front();
        row.mse = r.mse;
        row.l2 = r.l2;
        row.alpha = r.alpha;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.mse = row.l2 = std::nan("");
      }
      row.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rows.push_back(std::move(row));
    }
  }
  if (!output_dir.empty()) {
    std::filesystem::create_directories(output_dir);
    std::ofstream os(output_dir / "table1_summary.csv");
    if (!os) throw StageError("write", "cannot open table1_summary.csv");
    write_table1_csv(os, rows);
  }
  return rows;
}

void write_report_csv(std::ostream& os, const std::vector<SolveReport>& reports) {
  os << "case,method,initialization,scale,neurons,interior,per_boundary,per_initial,seed,"
        "rcond,ridge,grid,tune,max_iterations,bins,threshold_ratio,margin,rows,columns,"
        "effective_rank,mse,l2,max_abs_error,alpha,beta_spread,assemble_seconds,solve_seconds,"
        "warnings\n";
  for (const auto& r : reports) {
    const auto& c = r.config;
    std::string warnings;
    for (const auto& w : r.warnings) warnings += (warnings.empty() ? "" : " | ") + w;
    os << r.case_name << "," << to_string(r.method) << "," << r.initialization << ","
       << to_string(c.scale) << "," << c.neurons << "," << c.plan.interior << ","
       << c.plan.per_boundary << "," << c.plan.per_initial << "," << c.seed << ","
       << fmt(r.rcond_used) << "," << fmt(c.ridge) << "," << grid_text(c.grid) << ","
       << (c.tune ? "true" : "false") << "," << c.max_iterations << "," << c.refinement.bins
       << "," << fmt(c.refinement.threshold_ratio) << "," << fmt(c.refinement.margin) << ","
       << r.rows << "," << r.columns << "," << r.effective_rank << "," << fmt(r.mse) << ","
       << fmt(r.l2) << "," << fmt(r.max_abs_error) << ","
       << (r.alpha ? fmt(*r.alpha) : std::string()) << "," << fmt(r.beta_spread) << ","
       << fmt(r.assemble_seconds) << "," << fmt(r.solve_seconds) << "," << quoted(warnings)
       << "\n";
  }
}

void write_prediction_csv(std::ostream& os, const Domain& domain, const SolveOutcome& o) {
  os.precision(17);
  os << coordinate_names(domain) << ",exact,predicted,abs_error\n";
  for (std::size_t i = 0; i < o.grid.size(); ++i) {
    for (double c : o.grid[i]) os << c << ",";
    const double exact = o.exact.size() > 0 ? o.exact[i] : std::nan("");
    os << exact << "," << o.predicted[i] << "," << std::abs(exact - o.predicted[i]) << "\n";
  }
}

void write_trail_csv(std::ostream& os, const std::vector<IterationRecord>& trail) {
  os.precision(17);
  os << "iteration,delta_min,delta_max,mse,l2,beta_spread,suggested_delta_min,"
        "suggested_delta_max,active_fraction,flag\n";
  for (std::size_t k = 0; k < trail.size(); ++k) {
    const auto& t = trail[k];
    os << k + 1 << "," << t.delta_min << "," << t.delta_max << "," << t.mse << "," << t.l2 << ","
       << t.beta_spread << "," << t.suggestion.delta_min << "," << t.suggestion.delta_max << ","
       << t.suggestion.active_fraction << "," << to_string(t.suggestion.flag) << "\n";
  }
}

void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows) {
  os << "case,method,initialization,mse,l2,seconds,alpha,reported_mse,reported_l2,error\n";
  for (const auto& r : rows) {
    os << r.case_name << "," << to_string(r.method) << "," << r.initialization << ","
       << fmt(r.mse) << "," << fmt(r.l2) << "," << fmt(r.seconds) << ","
       << (r.alpha ? fmt(*r.alpha) : std::string()) << "," << r.reported_mse << ","
       << r.reported_l2 << "," << quoted(r.error) << "\n";
  }
}

}  // namespace gffpielm
