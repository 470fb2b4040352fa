// Acceptance suite. One PASS/FAIL line per criterion; exit status 1 when any fails.
// `--full` (or GFFPIELM_FULL_SCALE=1 in the environment) adds the full-scale run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gffpielm/app.hpp"
#include "gffpielm/error.hpp"
#include "gffpielm/lstsq.hpp"
#include "gffpielm/rng.hpp"
#include "oracles.hpp"

using namespace gffpielm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Runs a criterion body; an exception counts as a failure.
void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

RunConfig desk(const std::string& name, Method method) {
  RunConfig c;
  c.case_name = name;
  c.method = method;
  c.scale = Scale::Desk;
  return c;
}

const SolveReport& report_of(const CaseRun& run, Method m) {
  for (const auto& r : run.reports)
    if (r.method == m) return r;
  throw Error("missing report row");
}

void poisson_demo() {
  std::vector<double> l2, mse;
  double worst_time = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunConfig c;
    c.case_name = "poisson1d_demo";
    c.seed = seed;
    const auto t0 = Clock::now();
    const CaseRun run = run_case(c);
    worst_time = std::max(worst_time, seconds_since(t0));
    l2.push_back(run.reports[0].l2);
    mse.push_back(run.reports[0].mse);
    per_seed += fmt(" %.1e", run.reports[0].l2);
  }
  const double ml2 = median(l2), mmse = median(mse);
  verdict(1, ml2 <= 1e-8 && mmse <= 1e-12 && worst_time < 2.0,
          "median L2 " + fmt("%.2e", ml2) + " (seeds:" + per_seed + "), median MSE " +
              fmt("%.2e", mmse) + ", slowest seed " + fmt("%.2fs", worst_time));
}

void refinement() {
  RunConfig c;
  c.case_name = "poisson1d_demo";
  c.delta_min = 1;
  c.delta_max = 1000;
  c.tune = true;
  c.max_iterations = 2;
  const auto t0 = Clock::now();
  const CaseRun run = run_case(c);
  const double t = seconds_since(t0);
  const auto& trail = run.reports[0].trail;
  const double suggested = trail.front().suggestion.delta_max;
  const double wide = trail.front().l2;
  const double final_l2 = run.reports[0].l2;
  const bool a = suggested >= 250 && suggested <= 600;
  const bool b = final_l2 <= 1e-4 * wide;
  verdict(2, a && b && t < 5.0,
          "suggested deltaM " + fmt("%g", suggested) + " (" +
              to_string(trail.front().suggestion.flag) + "), wide L2 " + fmt("%.2e", wide) +
              ", final L2 " + fmt("%.2e", final_l2) + ", " + fmt("%.1fs", t));
}

void desk_gap() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"wave_multifreq", "klein_gordon_forward", "helmholtz_bat"}) {
    const auto t0 = Clock::now();
    const CaseRun run = run_case(desk(name, Method::Both));
    const double t = seconds_since(t0);
    const double g = report_of(run, Method::Gff).l2;
    const double v = report_of(run, Method::Vanilla).l2;
    const bool ok = g <= 1e-2 * v && t < 60.0;
    pass = pass && ok;
    detail += std::string(name) + " gff " + fmt("%.2e", g) + " vanilla " + fmt("%.2e", v) +
              fmt(" %.1fs", t) + (ok ? "; " : " (miss); ");
  }
  verdict(3, pass, detail);
}

void inverse_recovery() {
  const CaseRun run = run_case(desk("klein_gordon_inverse", Method::Both));
  const double ag = report_of(run, Method::Gff).alpha.value();
  const double av = report_of(run, Method::Vanilla).alpha.value();
  // The vanilla gap is reported, not asserted.
  verdict(4, std::abs(ag - 1.0) <= 1e-3,
          "gff alpha " + fmt("%.6f", ag) + "; vanilla alpha " + fmt("%.4f", av) +
              (std::abs(av - 1.0) >= 0.1 ? " (|a-1| >= 0.1 observed)" : " (vanilla close)"));
}

void l_sweep() {
  const CaseSpec spec = get_case("poisson1d_demo");
  RunConfig c;
  c.case_name = spec.name;
  const EffectiveConfig cfg = resolve_config(c, spec);
  const CollocationSet colloc = sample_collocation(spec.problem, cfg.plan);
  SolveSettings settings;
  settings.lstsq.rcond = cfg.rcond;
  const std::vector<double> Ls{1, 20, 40, 60};
  const auto t0 = Clock::now();
  const SweepResult sweep = sweep_vanilla_L(spec.problem, colloc, cfg.neurons, Ls, cfg.seed, settings);
  const double t = seconds_since(t0);
  if (sweep.best < 0) throw Error("every sweep row failed");
  const double best = sweep.rows[sweep.best].l2;
  const double at40 = sweep.rows[2].l2;
  std::string detail;
  for (const auto& r : sweep.rows) detail += "L=" + fmt("%g", r.L) + " " + fmt("%.2e", r.l2) + "; ";
  verdict(5, at40 <= 2.0 * best && t < 10.0, detail + "best L=" + fmt("%g", sweep.rows[sweep.best].L) + fmt(", %.1fs", t));
}

double by_hand(const FeatureLayer& layer, int m, const std::vector<double>& v) {
  double z = layer.bias(m);
  for (int i = 0; i < layer.input_dim(); ++i) z += layer.frequency(m) * layer.weights(m)[i] * v[i];
  return layer.activation() == Activation::GffCosine ? std::cos(z) : std::tanh(z);
}

void derivative_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int dim = 1 + static_cast<int>(gen() % 3);
    const FeatureLayer layer = k % 2 ? FeatureLayer::vanilla(16, dim, 2.0, 100 + k)
                                     : FeatureLayer::gff(16, dim, 0.5, 3.0, 100 + k);
    const int m = static_cast<int>(gen() % 16);
    std::vector<double> v(dim);
    for (auto& x : v) x = u(gen);
    std::vector<int> orders(dim, 0);
    const int total = static_cast<int>(gen() % 3);
    for (int j = 0; j < total; ++j) ++orders[gen() % dim];
    const oracle::Fn f = [&](const std::vector<double>& p) { return by_hand(layer, m, p); };
    const double fd = oracle::derivative(f, v, orders, 1e-3);
    const double an = layer.derivative(m, v, orders);
    if (std::abs(an) < 1e-3) {
      if (std::abs(an - fd) > 1e-8) ++bad;
    } else {
      const double e = oracle::relative_error(an, fd);
      worst = std::max(worst, e);
      if (e > 1e-5) ++bad;
    }
  }
  const double t = seconds_since(t0);
  verdict(6, bad == 0 && t < 1.0,
          fmt("%g", 100 - bad) + "/100 within tolerance, worst relative " + fmt("%.1e", worst) +
              fmt(", %.3fs", t));
}

Eigen::MatrixXd random_matrix(int r, int c, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXd A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = n(gen);
  return A;
}

void lstsq_suite() {
  const auto t0 = Clock::now();
  std::vector<std::string> misses;

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(5, 5);
  const Eigen::VectorXd y5 = Eigen::VectorXd::LinSpaced(5, 1.0, 5.0);
  if ((solve_least_squares(I, y5).beta - y5).norm() > 1e-10) misses.push_back("identity");

  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(5, 1);
  if (std::abs(solve_least_squares(ones, y5).beta[0] - 3.0) > 1e-10) misses.push_back("mean");

  Eigen::MatrixXd row(1, 2);
  row << 1.0, 1.0;
  const Eigen::VectorXd b = solve_least_squares(row, Eigen::VectorXd::Constant(1, 2.0)).beta;
  if (std::abs(b[0] - 1.0) > 1e-10 || std::abs(b[1] - 1.0) > 1e-10) misses.push_back("min-norm");

  for (unsigned s = 0; s < 5; ++s) {
    const Eigen::MatrixXd H = random_matrix(50, 20, 10 + s);
    const Eigen::VectorXd Y = random_matrix(50, 1, 20 + s);
    const Eigen::VectorXd want = oracle::normal_equations(H, Y);
    if ((solve_least_squares(H, Y).beta - want).norm() > 1e-8 * want.norm())
      misses.push_back("normal-equations");
  }

  Eigen::MatrixXd H(30, 9);
  const Eigen::MatrixXd A = random_matrix(30, 6, 31);
  H << A, A.leftCols(3) * 2.0;
  const Eigen::VectorXd Y = random_matrix(30, 1, 32);
  const auto sol = solve_least_squares(H, Y);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd Vk = svd.matrixV().leftCols(sol.effective_rank);
  const Eigen::VectorXd g = Vk.transpose() * (H.transpose() * (H * sol.beta - Y));
  if (g.norm() > 1e-8 * sol.sigma_max * Y.norm()) misses.push_back("orthogonality");

  const double t = seconds_since(t0);
  std::string detail = misses.empty() ? "all examples exact" : "misses:";
  for (const auto& m : misses) detail += " " + m;
  verdict(7, misses.empty() && t < 1.0, detail + fmt(", %.3fs", t));
}

void source_suite() {
  const auto t0 = Clock::now();
  int bad = 0, checked = 0;
  double worst = 0.0;
  for (const auto& name : list_cases()) {
    const CaseSpec spec = get_case(name);
    const PdeProblem& p = spec.problem;
    const PointSet pts = sample_interior(p.domain, 50, 321);
    const double alpha = spec.true_alpha.value_or(0.0);
    const oracle::Fn u = [&](const std::vector<double>& v) { return p.exact(v); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::vector<double> v(pts[i].begin(), pts[i].end());
      std::vector<oracle::Term> terms;
      for (const auto& term : p.op.terms()) terms.push_back({term.coefficient(pts[i]), term.orders});
      double want = p.source(pts[i]);
      if (p.is_inverse()) want += alpha * p.inverse_profile(pts[i]);
      const double e = oracle::relative_error(oracle::apply(terms, u, v, 1e-3), want, 1.0);
      worst = std::max(worst, e);
      if (e > 1e-5) ++bad;
      ++checked;
    }
  }
  const double t = seconds_since(t0);
  verdict(8, bad == 0 && checked == 550 && t < 5.0,
          fmt("%g", checked - bad) + "/" + fmt("%g", checked) + " points, worst relative " +
              fmt("%.1e", worst) + fmt(", %.2fs", t));
}

// Full-size runs compared with the reported L2 stored in the registry.
void full_scale() {
  bool pass = true;
  std::string detail;
  for (const auto& name : list_cases()) {
    const CaseSpec spec = get_case(name);
    // The Poisson demo has its own criterion at its own size.
    if (!spec.reported_gff || name == "poisson1d_demo") continue;
    RunConfig c;
    c.case_name = name;
    c.scale = Scale::Paper;
    const auto t0 = Clock::now();
    const CaseRun run = run_case(c);
    const double t = seconds_since(t0);
    const double l2 = run.reports[0].l2;
    const double reported = std::stod(spec.reported_gff->l2);
    const bool helmholtz = name.rfind("helmholtz", 0) == 0;
    const bool ok = helmholtz ? l2 <= 1e-3 : l2 <= 100.0 * reported;
    pass = pass && ok;
    std::printf("  %-22s l2 %.2e (reported %s) %.0fs %s\n", name.c_str(), l2,
                spec.reported_gff->l2.c_str(), t, ok ? "ok" : "miss");
    std::fflush(stdout);
    detail += name + (ok ? " ok; " : " miss; ");
  }
  verdict(9, pass, detail);
}

bool same(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

bool same_reports(const CaseRun& x, const CaseRun& y) {
  if (x.reports.size() != y.reports.size()) return false;
  for (std::size_t k = 0; k < x.reports.size(); ++k) {
    const auto& a = x.reports[k];
    const auto& b = y.reports[k];
    if (a.rows != b.rows || a.columns != b.columns || a.effective_rank != b.effective_rank)
      return false;
    if (!same(a.mse, b.mse) || !same(a.l2, b.l2) || !same(a.max_abs_error, b.max_abs_error) ||
        !same(a.beta_spread, b.beta_spread) || !same(a.rcond_used, b.rcond_used))
      return false;
    if (a.alpha.has_value() != b.alpha.has_value() || (a.alpha && !same(*a.alpha, *b.alpha)))
      return false;
    const auto& pa = x.outcomes[k].predicted;
    const auto& pb = y.outcomes[k].predicted;
    if (pa.size() != pb.size()) return false;
    for (Eigen::Index i = 0; i < pa.size(); ++i)
      if (!same(pa[i], pb[i])) return false;
  }
  return true;
}

void determinism() {
  std::vector<RunConfig> configs;
  RunConfig demo;
  demo.case_name = "poisson1d_demo";
  demo.seed = 3;
  configs.push_back(demo);
  RunConfig tuned = demo;
  tuned.delta_max = 1000;
  tuned.tune = true;
  configs.push_back(tuned);
  configs.push_back(desk("wave_multifreq", Method::Both));
  configs.push_back(desk("klein_gordon_inverse", Method::Both));
  bool pass = true;
  std::string detail;
  for (const auto& c : configs) {
    const bool ok = same_reports(run_case(c), run_case(c));
    pass = pass && ok;
    detail += c.case_name + (c.tune ? "(tune)" : "") + (ok ? " same; " : " differs; ");
  }
  verdict(10, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
  if (const char* env = std::getenv("GFFPIELM_FULL_SCALE")) full = std::string(env) == "1";
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--full") {
      full = true;
    } else {
      std::fprintf(stderr, "usage: %s [--full]\n", argv[0]);
      return 2;
    }
  }

  guarded(1, poisson_demo);
  guarded(2, refinement);
  guarded(3, desk_gap);
  guarded(4, inverse_recovery);
  guarded(5, l_sweep);
  guarded(6, derivative_suite);
  guarded(7, lstsq_suite);
  guarded(8, source_suite);
  if (full)
    guarded(9, full_scale);
  else
    std::printf("criterion 9: SKIP  full scale (pass --full or set GFFPIELM_FULL_SCALE=1)\n");
  guarded(10, determinism);

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
