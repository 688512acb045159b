#include "experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gspec/cut_norm.hpp"
#include "gspec/ensembles.hpp"
#include "gspec/error.hpp"
#include "gspec/free_convolution.hpp"
#include "gspec/graphon_json.hpp"
#include "gspec/moments.hpp"
#include "gspec/rng.hpp"
#include "gspec/spectral.hpp"

namespace gspec::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Named ensembles for the reference histogram runs.
json recipe(const std::string& name) {
  const json sqrt_product{{"type", "product"}, {"profile", "sqrt"}};
  if (name == "erdos_hist") return {{"model", "inhom_er"}, {"graphon", sqrt_product}, {"eps", 0.25}, {"n", 1000}};
  if (name == "gaussian1_sqrt") return {{"model", "generalized_wigner"}, {"graphon", sqrt_product}, {"n", 1000}};
  if (name == "gaussian1_mixed") {
    return {{"model", "generalized_wigner"}, {"graphon", {{"type", "kernel"}, {"name", "mixed"}}}, {"n", 1000}};
  }
  throw ValidationError("unknown recipe '" + name + "' (expected erdos_hist, gaussian1_sqrt or gaussian1_mixed)");
}

void require(const json& c, const char* key, const std::string& command) {
  if (!c.contains(key)) throw ValidationError("command '" + command + "' needs field '" + key + "'");
}

void set_default(json& c, const char* key, const json& value) {
  if (!c.contains(key)) c[key] = value;
}

std::vector<int> orders_of(const json& c) {
  auto orders = c.at("orders").get<std::vector<int>>();
  if (orders.empty()) throw ValidationError("'orders' must not be empty");
  return orders;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string default_run_id() {
  std::string id = utc_timestamp();
  std::erase(id, '-');
  std::erase(id, ':');
  return id;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& path, const json& config) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path.string() + " for writing");
  os << std::setprecision(17) << "# config: " << config.dump() << '\n';
  return os;
}

json moments_json(const std::map<int, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

// ------------------------------------------------------------ commands

json run_moments(const json& c, const fs::path& dir) {
  const Graphon w = graphon_from_json(c.at("graphon"));
  const auto orders = orders_of(c);
  const MomentReport report = moment_table(orders, w, moment_source_from_string(c.at("source").get<std::string>()));
  auto os = open_csv(dir / "moments.csv", c);
  os << "order,value\n";
  for (const auto& [k, v] : report.entries) os << k << ',' << v << '\n';
  return report.to_json();
}

json run_simulate(const json& c, const fs::path& dir) {
  const EnsembleSpec spec = ensemble_from_json(c.at("ensemble"));
  const SpectralSample s = spectral_sample(spec);
  write_eigenvalues_csv(s, dir / "eigenvalues.csv", c);

  double lo, hi;
  if (c.contains("range")) {
    const auto r = c.at("range").get<std::vector<double>>();
    if (r.size() != 2) throw ValidationError("'range' must be [lo, hi]");
    lo = r[0];
    hi = r[1];
  } else {
    hi = std::ceil(spectral_norm(s) * 10.0) / 10.0;
    if (hi == 0.0) hi = 1.0;
    lo = -hi;
  }
  const Histogram h = histogram(s.eigenvalues, c.at("bins").get<int>(), lo, hi);
  write_histogram_csv(h, dir / "histogram.csv", c);

  const std::vector<int> orders{1, 2, 3, 4};
  json results{{"n", s.n},
               {"scale", s.scale_applied},
               {"moments", moments_json(esd_moments(s, orders).entries)},
               {"standard_errors",
                {{"1", esd_moment_standard_error(s.eigenvalues, 1)}, {"3", esd_moment_standard_error(s.eigenvalues, 3)}}},
               {"histogram", {{"lo", lo}, {"hi", hi}, {"bins", h.counts.size()}}}};
  if (const auto kernel = limit_variance_kernel(spec)) {
    results["theory"]["m2_limit"] = laplacian_moment(2, *kernel);
  }
  if (const auto* er = std::get_if<InhomER>(&spec.model)) {
    // Limit as eps -> 0, the value quoted for the published histogram.
    results["theory"]["m2_sparse_limit"] = laplacian_moment(2, er->f);
  }
  return results;
}

json run_compare(const json& c, const fs::path& dir) {
  const EnsembleSpec base = ensemble_from_json(c.at("ensemble"));
  const auto orders = orders_of(c);
  const int trials = c.at("trials").get<int>();
  if (trials < 1) throw ValidationError("'trials' must be positive");

  std::vector<SpectralSample> samples;
  std::map<int, double> empirical;
  for (int t = 0; t < trials; ++t) {
    EnsembleSpec spec = base;
    spec.seed = trial_seed(base.seed, base.n, t);
    samples.push_back(spectral_sample(spec));
    for (const auto& [k, v] : esd_moments(samples.back(), orders).entries) empirical[k] += v / trials;
  }

  const auto kernel = limit_variance_kernel(base);
  std::map<int, double> theory;
  if (kernel) {
    for (int k : orders)
      if (k <= kMaxLaplacianMomentOrder) theory[k] = laplacian_moment(k, *kernel);
  }
  {
    auto os = open_csv(dir / "moments.csv", c);
    os << "order,empirical,theoretical,relative_error\n";
    for (const auto& [k, v] : empirical) {
      os << k << ',' << v << ',';
      if (theory.count(k)) {
        const double th = theory[k];
        os << th << ',' << (th != 0.0 ? std::abs(v - th) / std::abs(th) : std::abs(v - th));
      } else {
        os << ',';
      }
      os << '\n';
    }
  }

  // Constant variance c gives the law of sqrt(c) times a gamma_M variable,
  // so the ESD can be compared with the computed density. Otherwise the
  // trials are compared with each other.
  json distances = json::array();
  std::optional<double> c_var;
  if (kernel && kernel->is_constant() && (*kernel)(0.0, 0.0) > 0.0) c_var = (*kernel)(0.0, 0.0);
  auto os = open_csv(dir / "distances.csv", c);
  os << "trial,reference,ks,levy\n";
  if (c_var) {
    const double s = std::sqrt(*c_var);
    const DensityCurve d = gamma_m_density(uniform_grid(kDefaultDensityLo, kDefaultDensityHi, kDefaultDensityStep));
    std::vector<double> quantiles(base.n);
    for (std::size_t i = 0; i < base.n; ++i) quantiles[i] = s * d.quantile((i + 0.5) / base.n);
    const EmpiricalCdf ref(quantiles);
    for (int t = 0; t < trials; ++t) {
      const EmpiricalCdf f(samples[t].eigenvalues);
      const double ks = ks_distance(f, [&](double x) { return d.cdf(x / s); });
      const double levy = levy_distance(f, ref);
      os << t << ",gamma_m," << ks << ',' << levy << '\n';
      distances.push_back({{"trial", t}, {"reference", "gamma_m"}, {"ks", ks}, {"levy", levy}});
    }
  } else if (trials >= 2) {
    const EmpiricalCdf f(samples[0].eigenvalues), g(samples[1].eigenvalues);
    const double ks = ks_distance(f, g), levy = levy_distance(f, g);
    os << 0 << ",trial_1," << ks << ',' << levy << '\n';
    distances.push_back({{"trial", 0}, {"reference", "trial_1"}, {"ks", ks}, {"levy", levy}});
  }

  json results{{"empirical", moments_json(empirical)}, {"distances", distances}};
  results["theoretical"] = kernel ? moments_json(theory) : json(nullptr);
  return results;
}

json summary_json(const std::vector<NormScanSummary>& summary) {
  json out = json::array();
  for (const auto& s : summary) out.push_back({{"n", s.n}, {"median", s.median}, {"min", s.min}, {"max", s.max}});
  return out;
}

json run_norm_scan(const json& c, const fs::path& dir) {
  GeneralizedWigner model{graphon_from_json(c.at("graphon")),
                          c.at("law").get<std::string>() == "rademacher" ? EntryLaw::kRademacher : EntryLaw::kGaussian,
                          VarianceRule::kGrid, std::nullopt};
  if (c.at("law") != "gaussian" && c.at("law") != "rademacher") throw ValidationError("'law' must be gaussian or rademacher");
  const auto ns = c.at("ns").get<std::vector<std::size_t>>();
  const int trials = c.at("trials").get<int>();
  const auto seed = c.at("seed").get<std::uint64_t>();
  if (c.contains("mean")) {
    model.mean = graphon_from_json(c.at("mean"));
    const auto r = mean_norm_scan(model, ns, trials, seed);
    write_mean_norm_scan_csv(r, dir / "mean_norm_scan.csv", c);
    return {{"limit", r.limit}, {"summary", summary_json(r.summary)}};
  }
  const auto r = norm_scan(model, ns, trials, seed);
  write_norm_scan_csv(r, dir / "norm_scan.csv", c);
  return {{"bracket", {r.lower_bracket, r.upper_bracket}}, {"summary", summary_json(r.summary)}};
}

json run_constrained_fit(const json& c, const fs::path& dir) {
  const auto n = c.at("n").get<std::size_t>();
  const json& k = c.at("kstar");
  std::vector<int> kstar;
  if (k.is_string()) {
    if (k != "cube_root") throw ValidationError("unknown kstar rule " + k.dump());
    kstar = cube_root_degrees(n);
  } else {
    kstar = k.get<std::vector<int>>();
    if (kstar.size() != n) throw ValidationError("'kstar' must have n entries");
  }
  const auto start = std::chrono::steady_clock::now();
  const ConstrainedFit fit = solve_constrained(kstar, c.at("tol").get<double>(), c.at("max_iter").get<int>());
  const double solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const int samples = c.at("samples").get<int>();
  const auto seed = c.at("seed").get<std::uint64_t>();
  std::vector<double> mean_degree(n, 0.0);
  for (int s = 0; s < samples; ++s) {
    const SymMatrix a = sample_constrained(fit, trial_seed(seed, n, s));
    for (std::size_t i = 0; i < n; ++i)
      for (double v : a.row(i)) mean_degree[i] += v / samples;
  }
  std::size_t within = 0;
  auto os = open_csv(dir / "fit.csv", c);
  os << "vertex,kstar,x,expected_degree,mean_sampled_degree,sigma\n";
  for (std::size_t i = 0; i < n; ++i) {
    double expected = 0.0, var = 0.0;
    for (double p : fit.p.row(i)) {
      expected += p;
      var += p * (1.0 - p);
    }
    const double sigma = samples > 0 ? std::sqrt(var / samples) : 0.0;
    if (samples > 0 && std::abs(mean_degree[i] - kstar[i]) <= 4.0 * sigma) ++within;
    os << i << ',' << kstar[i] << ',' << fit.x[i] << ',' << expected << ',' << mean_degree[i] << ',' << sigma << '\n';
  }
  // Solve time is reported on stderr only, so report.json stays reproducible.
  std::cerr << "constrained-fit: solved in " << solve_seconds << " s\n";
  return {{"residual", fit.residual},
          {"iterations", fit.iterations},
          {"eps_n", constrained_scaling(kstar)},
          {"samples", samples},
          {"fraction_within_4sigma", samples > 0 ? static_cast<double>(within) / n : 0.0}};
}

json run_freeconv(const json& c, const fs::path& dir) {
  const auto xs = uniform_grid(c.at("lo").get<double>(), c.at("hi").get<double>(), c.at("step").get<double>());
  const double eta = c.at("eta").get<double>();
  const DensityCurve d = gamma_m_density(xs, eta, c.at("extrapolate").get<bool>());
  write_density_csv(d, dir / "density.csv", c);
  write_stieltjes_csv(gamma_m_stieltjes_grid(xs, eta), dir / "stieltjes.csv", c);

  const auto kappa = gamma_m_free_cumulants(6);
  json numeric = json::object(), combinatorial = json::object();
  for (int k : {2, 4, 6}) {
    numeric[std::to_string(k)] = d.moment(k);
    combinatorial[std::to_string(k)] = moments_from_free_cumulants(kappa, k);
  }
  return {{"mass", d.mass()}, {"numeric_moments", numeric}, {"free_cumulant_moments", combinatorial}};
}

json run_cutnorm(const json& c, const fs::path& dir) {
  (void)dir;
  const Graphon a = graphon_from_json(c.at("graphon_a"));
  const Graphon b = graphon_from_json(c.at("graphon_b"));
  const auto ka = as_block_kernel(a), kb = as_block_kernel(b);
  if (!ka || !kb) throw ValidationError("cutnorm needs constant or step graphons");
  if (ka->n != kb->n) throw ValidationError("cutnorm needs graphons with equal block counts");
  const std::string mode = c.at("mode").get<std::string>();
  CutNormMode m;
  if (mode == "exact") {
    m = CutNormMode::kExact;
  } else if (mode == "heuristic") {
    m = CutNormMode::kHeuristic;
  } else if (mode == "auto") {
    m = ka->n <= kMaxExactCutNormBlocks ? CutNormMode::kExact : CutNormMode::kHeuristic;
  } else {
    throw ValidationError("'mode' must be exact, heuristic or auto");
  }
  const std::string search = c.at("search").get<std::string>();
  PermutationSearch s;
  if (search == "auto") {
    s = PermutationSearch::kAuto;
  } else if (search == "exhaustive") {
    s = PermutationSearch::kExhaustive;
  } else if (search == "local") {
    s = PermutationSearch::kLocalSearch;
  } else {
    throw ValidationError("'search' must be auto, exhaustive or local");
  }
  const double norm = cut_norm(*ka - *kb, m, c.at("seed").get<std::uint64_t>());
  const CutDistanceResult d = cut_distance_step(a, b, s);
  return {{"cut_norm", norm},
          {"mode", m == CutNormMode::kExact ? "exact" : "heuristic"},
          {"cut_distance", d.value},
          {"permutation", d.permutation},
          {"exhaustive", d.exhaustive}};
}

}  // namespace

json resolve_config(const std::string& command, json c) {
  if (c.is_null()) c = json::object();
  if (!c.is_object()) throw ValidationError("config must be a JSON object");
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ValidationError("unknown command '" + command + "'");
  }
  if (!c.contains("seed")) throw ValidationError("a seed is required (--seed or \"seed\" in the config)");
  if (!c.at("seed").is_number_unsigned()) throw ValidationError("'seed' must be a nonnegative integer");
  const json seed = c.at("seed");

  const bool uses_ensemble = command == "simulate" || command == "compare";
  if (uses_ensemble) {
    if (c.contains("recipe")) {
      json e = recipe(c.at("recipe").get<std::string>());
      if (c.contains("ensemble")) e.merge_patch(c.at("ensemble"));
      c["ensemble"] = e;
    }
    require(c, "ensemble", command);
    if (c.contains("n")) {
      c["ensemble"]["n"] = c.at("n");
      c.erase("n");
    }
    c["ensemble"]["seed"] = seed;
  }

  if (command == "moments") {
    require(c, "graphon", command);
    set_default(c, "orders", {2, 4, 6});
    set_default(c, "source", "laplacian");
  } else if (command == "simulate") {
    set_default(c, "bins", 60);
  } else if (command == "compare") {
    set_default(c, "orders", {1, 2, 3, 4});
    set_default(c, "trials", 3);
  } else if (command == "norm-scan") {
    set_default(c, "graphon", {{"type", "constant"}, {"value", 0.5}});
    set_default(c, "law", "gaussian");
    set_default(c, "ns", kDefaultScanSizes);
    set_default(c, "trials", kDefaultScanTrials);
  } else if (command == "constrained-fit") {
    set_default(c, "n", 500);
    set_default(c, "kstar", "cube_root");
    set_default(c, "tol", 1e-10);
    set_default(c, "max_iter", 10000);
    set_default(c, "samples", 20);
  } else if (command == "freeconv") {
    set_default(c, "lo", kDefaultDensityLo);
    set_default(c, "hi", kDefaultDensityHi);
    set_default(c, "step", kDefaultDensityStep);
    set_default(c, "eta", kDefaultDensityEta);
    set_default(c, "extrapolate", true);
  } else if (command == "cutnorm") {
    require(c, "graphon_a", command);
    require(c, "graphon_b", command);
    set_default(c, "mode", "auto");
    set_default(c, "search", "auto");
  }
  return c;
}

RunResult run_experiment(const std::string& command, const json& resolved, const fs::path& out_root,
                         const std::string& run_id) {
  fs::path dir = out_root / command / run_id;
  fs::create_directories(dir);
  write_json(dir / "config.json", resolved);

  json results;
  try {
    if (command == "moments") results = run_moments(resolved, dir);
    else if (command == "simulate") results = run_simulate(resolved, dir);
    else if (command == "compare") results = run_compare(resolved, dir);
    else if (command == "norm-scan") results = run_norm_scan(resolved, dir);
    else if (command == "constrained-fit") results = run_constrained_fit(resolved, dir);
    else if (command == "freeconv") results = run_freeconv(resolved, dir);
    else if (command == "cutnorm") results = run_cutnorm(resolved, dir);
    else throw ValidationError("unknown command '" + command + "'");
  } catch (const json::exception& e) {
    write_json(dir / "error.json", {{"message", e.what()}});
    throw ValidationError(std::string("bad config field: ") + e.what());
  } catch (const Error& e) {
    write_json(dir / "error.json", {{"kind", to_string(e.kind())}, {"message", e.what()}});
    throw;
  }
  json report{{"command", command},
              {"config", resolved},
              {"results", results},
              {"metadata", {{"timestamp", utc_timestamp()}}}};
  write_json(dir / "report.json", report);
  return {dir, report};
}

namespace {

int report_error(std::ostream& err, int code, std::string_view kind, const std::string& message,
                 std::optional<double> residual = std::nullopt) {
  json e{{"kind", kind}, {"message", message}, {"exit_code", code}};
  if (residual) e["residual"] = *residual;
  err << json{{"error", e}}.dump() << '\n';
  return code;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limiting spectra of graphon-profiled random matrices and their Laplacians"};
  app.name("gspec");
  std::string command, config_path, run_id;
  std::string out_root = "out";
  std::uint64_t seed = 0;
  std::size_t n = 0;
  int trials = 0;
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (required here or in the config)");
  app.add_option("--out", out_root, "Output root directory")->capture_default_str();
  app.add_option("--run-id", run_id, "Run directory name (default: UTC timestamp)");
  auto* n_opt = app.add_option("--n", n, "Override the ensemble dimension");
  auto* trials_opt = app.add_option("--trials", trials, "Override the trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, kConfigError, "config", e.what());
  }

  try {
    json config = json::object();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      config = json::parse(is);
    }
    if (seed_opt->count()) config["seed"] = seed;
    if (n_opt->count()) config["n"] = n;
    if (trials_opt->count()) config["trials"] = trials;
    const json resolved = resolve_config(command, config);
    if (run_id.empty()) {
      run_id = default_run_id();
      for (int k = 1; fs::exists(fs::path(out_root) / command / run_id); ++k) run_id = default_run_id() + "-" + std::to_string(k);
    }
    const RunResult r = run_experiment(command, resolved, out_root, run_id);
    out << (command == "moments" ? r.report.at("results").at("moments") : r.report.at("results")).dump() << '\n';
    err << "wrote " << r.dir.string() << '\n';
    return kOk;
  } catch (const json::exception& e) {
    return report_error(err, kConfigError, "config", e.what());
  } catch (const ConvergenceError& e) {
    return report_error(err, kConvergenceError, to_string(e.kind()), e.what(), e.residual());
  } catch (const CapacityError& e) {
    return report_error(err, kCapacityError, to_string(e.kind()), e.what());
  } catch (const Error& e) {
    return report_error(err, kConfigError, to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error(err, kInternal, "internal", e.what());
  }
}

}  // namespace gspec::cli
