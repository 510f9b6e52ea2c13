#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <utility>

#include "svg_plot.hpp"
#include "wreathwalk/ball.hpp"
#include "wreathwalk/csv.hpp"
#include "wreathwalk/distribution.hpp"
#include "wreathwalk/estimators.hpp"
#include "wreathwalk/iterlog.hpp"
#include "wreathwalk/rate_fit.hpp"
#include "wreathwalk/rng.hpp"

#ifndef WREATHWALK_VERSION
#define WREATHWALK_VERSION "0.0.0"
#endif

namespace wreathwalk::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

std::uint64_t parse_u64(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw ParseError("trailing characters in \"" + text + "\"", used);
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("expected an integer, got \"" + text + "\"", 0);
  } catch (const std::out_of_range&) {
    throw ParseError("integer out of range: \"" + text + "\"", 0);
  }
}

double parse_f64(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("trailing characters in \"" + text + "\"", used);
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a number, got \"" + text + "\"", 0);
  }
}

MeasureSemantics parse_measure(const std::string& text) {
  if (text == "elements") return MeasureSemantics::Elements;
  if (text == "words") return MeasureSemantics::Words;
  throw ParseError("measure must be 'elements' or 'words', got \"" + text + "\"", 0);
}

// Manifest: flat key=value echo of the effective config plus run status.
// Always written, also on failure; wall time makes it non-reproducible by
// design, so determinism contracts exclude it.
class Manifest {
 public:
  explicit Manifest(const ExperimentConfig& config) : config_(config) {
    start_ = std::chrono::steady_clock::now();
  }

  void note(const std::string& key, const std::string& value) {
    notes_.emplace_back(key, value);
  }

  void write(const std::string& status, const std::string& category,
             const std::string& message) const {
    std::ofstream out(config_.out_dir / "manifest.txt", std::ios::binary);
    if (!out) return;  // manifest is best effort on broken output dirs
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    out << "command=" << config_.command << '\n';
    out << "status=" << status << '\n';
    out << "error_category=" << category << '\n';
    out << "error=" << message << '\n';
    out << "version=" << WREATHWALK_VERSION << '\n';
    out << "compiler=" << __VERSION__ << '\n';
    out << "wall_ms=" << wall << '\n';
    out << "spec=" << config_.spec_text << '\n';
    out << "n=";
    for (std::size_t i = 0; i < config_.n_grid.size(); ++i) {
      if (i) out << ',';
      out << config_.n_grid[i];
    }
    out << '\n';
    out << "trials=" << config_.trials << '\n';
    out << "seed=" << config_.seed << '\n';
    out << "threads=" << config_.threads << '\n';
    out << "no-plot=" << (config_.no_plot ? 1 : 0) << '\n';
    out << "radius=" << config_.radius << '\n';
    out << "triples=" << config_.triples << '\n';
    out << "n-max=" << config_.n_max << '\n';
    out << "support-cap=" << config_.support_cap << '\n';
    out << "tol=" << csv_format(config_.tol) << '\n';
    out << "f=" << config_.functional_name << '\n';
    out << "target=" << config_.scan_target << '\n';
    out << "k=" << config_.k << '\n';
    out << "alpha=" << csv_format(config_.alpha) << '\n';
    out << "lo=" << csv_format(config_.lo) << '\n';
    out << "hi=" << csv_format(config_.hi) << '\n';
    out << "nval=" << csv_format(config_.n_value) << '\n';
    out << "points=" << config_.points << '\n';
    out << "input=" << config_.input << '\n';
    out << "column=" << config_.column << '\n';
    out << "rates=" << config_.rates << '\n';
    out << "measure=" << config_.measure << '\n';
    for (const auto& [k, v] : notes_) {
      out << k << '=' << v << '\n';
    }
  }

 private:
  const ExperimentConfig& config_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

void require_grid(const ExperimentConfig& config) {
  if (config.n_grid.empty()) {
    throw ParseError("this subcommand needs --n", 0);
  }
}

void maybe_dump_positions(const ExperimentConfig& config) {
  if (!config.dump_positions || config.n_grid.empty()) return;
  const Trajectory t =
      simulate_srw(config.n_grid.front(), substream_seed(config.seed, 0));
  std::ofstream out(config.out_dir / "positions.txt", std::ios::binary);
  for (const Point& p : t.positions) {
    out << '(' << p.x << ',' << p.y << ")\n";
  }
}

void plot_series(const ExperimentConfig& config, const std::string& file,
                 const std::string& title, const std::string& y_label,
                 const std::vector<plot::Series>& series) {
  if (config.no_plot) return;
  plot::write_line_plot(config.out_dir / file, title, y_label, series);
}

// --spec text failures are config errors (exit 2), not internal ones.
GroupSpec parse_spec_checked(const std::string& text) {
  try {
    return parse_group_spec(text);
  } catch (const Error& e) {
    throw ParseError(std::string("bad --spec: ") + e.what(), 0);
  }
}

// ---------------------------------------------------------------- commands

void run_verify_group(const ExperimentConfig& config, Manifest& manifest) {
  const GroupSpec spec = parse_spec_checked(config.spec_text);
  const WreathGroup group(spec);
  const GeneratorSet gens = build_generators(spec, parse_measure(config.measure));

  struct Check {
    std::string name;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
  };
  std::vector<Check> checks;

  {
    Check axioms{"associativity_inverse_identity", config.triples, 0};
    Check canonical{"canonical_support", config.triples, 0};
    SplitMix64 rng(config.seed);
    auto random_element = [&] {
      Element e = group.identity();
      const std::uint64_t len = rng.next_below(13);
      for (std::uint64_t i = 0; i < len; ++i) {
        e = group.multiply(e, gens.elements[rng.next_below(gens.size())]);
      }
      return e;
    };
    for (std::uint64_t i = 0; i < config.triples; ++i) {
      const Element a = random_element();
      const Element b = random_element();
      const Element c = random_element();
      const Element ab_c = group.multiply(group.multiply(a, b), c);
      const Element a_bc = group.multiply(a, group.multiply(b, c));
      bool ok = ab_c == a_bc;
      ok = ok && group.multiply(a, group.invert(a)) == group.identity();
      ok = ok && group.multiply(group.identity(), a) == a;
      ok = ok && group.invert(group.invert(a)) == a;
      if (!ok) ++axioms.violations;
      if (!group.contains(ab_c)) ++canonical.violations;
    }
    checks.push_back(axioms);
    checks.push_back(canonical);
  }

  {
    BfsOptions options;
    options.max_elements = config.support_cap;
    const Ball ball = bfs_ball(spec, config.radius, options);
    Check bracket{"word_length_bracket_soundness", ball.lengths.size(), 0};
    Check symmetry{"metric_symmetry", ball.lengths.size(), 0};
    for (const auto& [enc, len] : ball.lengths) {
      const Element g = group.decode(enc);
      const LengthBracket b = group.word_length_bracket(g);
      const double exact = static_cast<double>(len);
      if (!(b.lower <= exact && exact <= b.upper)) ++bracket.violations;
      const auto inv = ball.lengths.find(group.encode(group.invert(g)));
      if (inv == ball.lengths.end() || inv->second != len) ++symmetry.violations;
    }
    Check growth{"growth_monotone_submultiplicative",
                 static_cast<std::uint64_t>(ball.counts.size()), 0};
    for (std::size_t n = 1; n < ball.counts.size(); ++n) {
      if (ball.counts[n] < ball.counts[n - 1]) ++growth.violations;
      for (std::size_t m = n; n + m < ball.counts.size(); ++m) {
        if (ball.counts[n + m] > ball.counts[n] * ball.counts[m]) {
          ++growth.violations;
        }
      }
    }
    checks.push_back(bracket);
    checks.push_back(symmetry);
    checks.push_back(growth);
  }

  CsvFile csv(config.out_dir / "verify_group.csv",
              {"check", "samples", "violations", "pass"});
  std::uint64_t total = 0;
  for (const Check& c : checks) {
    csv.typed_row(c.name, c.samples, c.violations,
                  std::uint64_t{c.violations == 0 ? 1u : 0u});
    total += c.violations;
  }
  manifest.note("violations", std::to_string(total));
  if (total > 0) {
    throw VerificationFailure("group verification found " +
                              std::to_string(total) + " violations");
  }
}

void run_growth(const ExperimentConfig& config, Manifest& manifest) {
  const GroupSpec spec = parse_spec_checked(config.spec_text);
  BfsOptions options;
  options.max_elements = config.support_cap;
  const Ball ball = bfs_ball(spec, config.radius, options);
  CsvFile csv(config.out_dir / "growth.csv", {"n", "shell", "v"});
  plot::Series series{"v(n)", {}};
  for (std::size_t n = 0; n < ball.counts.size(); ++n) {
    const std::uint64_t shell =
        n == 0 ? 1 : ball.counts[n] - ball.counts[n - 1];
    csv.typed_row(static_cast<std::uint64_t>(n), shell, ball.counts[n]);
    if (n >= 1) {
      series.points.emplace_back(static_cast<double>(n),
                                 static_cast<double>(ball.counts[n]));
    }
  }
  manifest.note("ball_size", std::to_string(ball.lengths.size()));
  plot_series(config, "growth.svg", "growth of " + config.spec_text, "v(n)",
              {series});
}

void run_drift_exact(const ExperimentConfig& config, Manifest&) {
  const GroupSpec spec = parse_spec_checked(config.spec_text);
  const GeneratorSet gens = build_generators(spec, parse_measure(config.measure));
  BfsOptions options;
  options.max_elements = config.support_cap;
  const Ball ball = bfs_ball(spec, config.n_max, options);

  CsvFile csv(config.out_dir / "drift_exact.csv", {"n", "drift", "entropy"});
  csv.typed_row(std::uint64_t{0}, 0.0, 0.0);
  plot::Series drift{"L(n)", {}};
  plot::Series entropy{"H(n)", {}};
  Distribution d = Distribution::point_mass(spec);
  for (int n = 1; n <= config.n_max; ++n) {
    d = convolve(d, gens, config.support_cap);
    const double L = drift_of(d, ball);
    const double H = entropy_of(d);
    csv.typed_row(static_cast<std::uint64_t>(n), L, H);
    drift.points.emplace_back(n, L);
    entropy.points.emplace_back(n, H);
  }
  plot_series(config, "drift_exact.svg", "exact drift of " + config.spec_text,
              "value", {drift, entropy});
}

void run_drift_mc(const ExperimentConfig& config, Manifest&) {
  require_grid(config);
  const GroupSpec spec = parse_spec_checked(config.spec_text);
  CsvFile csv(config.out_dir / "drift_mc.csv",
              {"n", "lower", "lower_se", "upper", "upper_se", "trials", "seed"});
  plot::Series lower{"lower", {}};
  plot::Series upper{"upper", {}};
  for (const std::uint64_t n : config.n_grid) {
    const DriftBracket b =
        drift_mc_bracket(spec, n, config.trials, config.seed, config.threads,
                         parse_measure(config.measure));
    csv.typed_row(n, b.lower_mean, b.lower_se, b.upper_mean, b.upper_se,
                  b.trials, b.master_seed);
    lower.points.emplace_back(static_cast<double>(n), b.lower_mean);
    upper.points.emplace_back(static_cast<double>(n), b.upper_mean);
  }
  plot_series(config, "drift_mc.svg", "drift bracket of " + config.spec_text,
              "bracket mean", {lower, upper});
}

void run_compose_drift(const ExperimentConfig& config, Manifest&) {
  require_grid(config);
  const RealFunction f = parse_functional(config.functional_name);
  CsvFile csv(config.out_dir / "compose_drift.csv",
              {"n", "trials", "mean", "stderr", "master_seed"});
  plot::Series series{config.functional_name, {}};
  for (const std::uint64_t n : config.n_grid) {
    const EstimateReport r =
        compose_drift(f, n, config.trials, config.seed, config.threads);
    csv.typed_row(r.n, r.trials, r.mean, r.std_error, r.master_seed);
    series.points.emplace_back(static_cast<double>(n), r.mean);
  }
  maybe_dump_positions(config);
  plot_series(config, "compose_drift.svg",
              "composed drift, inner = " + config.functional_name, "mean",
              {series});
}

void run_entropy_exact(const ExperimentConfig& config, Manifest&) {
  const GroupSpec spec = parse_spec_checked(config.spec_text);
  const GeneratorSet gens = build_generators(spec, parse_measure(config.measure));
  CsvFile csv(config.out_dir / "entropy_exact.csv", {"n", "entropy"});
  csv.typed_row(std::uint64_t{0}, 0.0);
  plot::Series series{"H(n)", {}};
  Distribution d = Distribution::point_mass(spec);
  for (int n = 1; n <= config.n_max; ++n) {
    d = convolve(d, gens, config.support_cap);
    const double H = entropy_of(d);
    csv.typed_row(static_cast<std::uint64_t>(n), H);
    series.points.emplace_back(n, H);
  }
  plot_series(config, "entropy_exact.svg", "entropy of " + config.spec_text,
              "H(n)", {series});
}

void run_entropy_bounds(const ExperimentConfig& config, Manifest& manifest) {
  const GroupSpec spec = parse_spec_checked(config.spec_text);
  const EntropyBoundsReport report =
      entropy_bounds_check(spec, config.n_max, config.support_cap);

  CsvFile csv(config.out_dir / "entropy_bounds.csv",
              {"n", "H", "L", "El2", "v", "lnv", "h_hat", "v_hat", "l_hat",
               "maxent_slack"});
  plot::Series h{"H(n)", {}};
  plot::Series lnv{"ln v(n)", {}};
  plot::Series drift{"L(n)", {}};
  for (const EntropyBoundsRow& row : report.rows) {
    csv.typed_row(row.n, row.entropy, row.drift, row.second_moment, row.growth,
                  row.log_growth, row.h_hat, row.v_hat, row.l_hat,
                  row.maxent_slack);
    if (row.n >= 1) {
      h.points.emplace_back(static_cast<double>(row.n), row.entropy);
      lnv.points.emplace_back(static_cast<double>(row.n), row.log_growth);
      drift.points.emplace_back(static_cast<double>(row.n), row.drift);
    }
  }

  CsvFile fits(config.out_dir / "entropy_fits.csv", {"name", "value"});
  fits.typed_row(std::string("v_hat_max"), report.v_hat_max);
  fits.typed_row(std::string("c_upper"), report.c_upper);
  fits.typed_row(std::string("c_lower_el2"), report.c_lower_el2);
  fits.typed_row(std::string("c_lower_l2"), report.c_lower_l2);
  fits.typed_row(std::string("k_sqrt"), report.k_sqrt);
  fits.typed_row(std::string("max_mass_defect"), report.max_mass_defect);
  fits.typed_row(std::string("max_symmetry_gap"), report.max_symmetry_gap);
  fits.typed_row(std::string("maxent_ok"), std::uint64_t{report.maxent_ok ? 1u : 0u});
  fits.typed_row(std::string("entropy_monotone"),
                 std::uint64_t{report.entropy_monotone ? 1u : 0u});
  fits.typed_row(std::string("drift_subadditive"),
                 std::uint64_t{report.drift_subadditive ? 1u : 0u});

  manifest.note("maxent_ok", report.maxent_ok ? "1" : "0");
  plot_series(config, "entropy_bounds.svg", "entropy bounds for " + config.spec_text,
              "value", {h, lnv, drift});
  if (!report.maxent_ok) {
    throw VerificationFailure("H(n) <= ln v(n) failed");
  }
}

void run_range_stats(const ExperimentConfig& config, Manifest&) {
  require_grid(config);
  CsvFile csv(config.out_dir / "range_stats.csv",
              {"n", "trials", "mean", "stderr", "variance", "q1", "q2",
               "master_seed"});
  plot::Series series{"E[R]", {}};
  for (const std::uint64_t n : config.n_grid) {
    const RangeStatistics r =
        range_statistics(n, config.trials, config.seed, config.threads);
    csv.typed_row(r.n, r.trials, r.mean, r.std_error, r.variance, r.q1, r.q2,
                  r.master_seed);
    series.points.emplace_back(static_cast<double>(n), r.mean);
  }
  maybe_dump_positions(config);
  plot_series(config, "range_stats.svg", "range of the 2D walk", "E[R]",
              {series});
}

void run_local_time(const ExperimentConfig& config, Manifest&) {
  require_grid(config);
  CsvFile csv(config.out_dir / "local_time.csv",
              {"n", "trials", "mean", "stderr", "master_seed", "ratio_lnn",
               "q10", "q50", "q90", "fitted_k", "pr_at_fitted_k"});
  plot::Series series{"E[b_0]", {}};
  for (const std::uint64_t n : config.n_grid) {
    const OriginLocalTimeReport r =
        origin_local_time(n, config.trials, config.seed, config.threads);
    csv.typed_row(r.estimate.n, r.estimate.trials, r.estimate.mean,
                  r.estimate.std_error, r.estimate.master_seed, r.ratio_to_log_n,
                  r.q10, r.q50, r.q90, r.fitted_k, r.pr_at_fitted_k);
    series.points.emplace_back(static_cast<double>(n), r.estimate.mean);
  }
  maybe_dump_positions(config);
  plot_series(config, "local_time.svg", "origin local time", "E[b_0]",
              {series});
}

void run_functional(const ExperimentConfig& config, Manifest&) {
  require_grid(config);
  const RealFunction f = parse_functional(config.functional_name);
  CsvFile csv(config.out_dir / "functional.csv",
              {"n", "trials", "mean", "stderr", "master_seed"});
  plot::Series series{config.functional_name, {}};
  for (const std::uint64_t n : config.n_grid) {
    const EstimateReport r =
        functional_estimate(f, n, config.trials, config.seed, config.threads);
    csv.typed_row(r.n, r.trials, r.mean, r.std_error, r.master_seed);
    series.points.emplace_back(static_cast<double>(n), r.mean);
  }
  maybe_dump_positions(config);
  plot_series(config, "functional.svg",
              "local-time functional " + config.functional_name, "mean",
              {series});
}

void write_scan_csv(const ExperimentConfig& config, const std::string& file,
                    const ScanReport& report, Manifest& manifest) {
  CsvFile csv(config.out_dir / file,
              {"x", "check", "lhs", "rhs", "slack", "pass"});
  for (const CheckRow& row : report.rows) {
    csv.typed_row(row.x_repr, row.check, row.lhs, row.rhs, row.slack,
                  std::uint64_t{row.pass ? 1u : 0u});
  }
  manifest.note("checked", std::to_string(report.checked));
  manifest.note("violations", std::to_string(report.violations));
  manifest.note("indistinguishable", std::to_string(report.indistinguishable));
  if (!report.passed()) {
    throw VerificationFailure(std::to_string(report.violations) +
                              " concavity violations");
  }
}

void run_concavity(const ExperimentConfig& config, Manifest& manifest) {
  const IterLogParams params{config.k, config.alpha};
  if (config.scan_target == "ltilde") {
    const TowerReal lo = config.lo > 0.0 ? TowerReal::from_value(config.lo)
                                         : concavity_threshold(params);
    const TowerReal hi = TowerReal::from_value(config.hi > 0.0 ? config.hi : 1e300);
    const ScanReport report = concavity_scan(
        [params](const TowerReal& x) { return ltilde(params, x); }, lo, hi,
        config.points, config.tol);
    write_scan_csv(config, "concavity.csv", report, manifest);
  } else if (config.scan_target == "extension") {
    const ConcaveExtension ext(params);
    const double knot = ext.knot().to_double();
    const double lo_value = config.lo > 0.0 ? config.lo : knot * 1e-4;
    const double hi_value = config.hi > 0.0 ? config.hi : 1e300;
    const ScanReport report = concavity_scan(
        [&ext](const TowerReal& x) { return ext(x); },
        TowerReal::from_value(lo_value), TowerReal::from_value(hi_value),
        config.points, config.tol);
    manifest.note("knot", csv_format(knot));
    manifest.note("slope", csv_format(ext.slope()));
    write_scan_csv(config, "concavity.csv", report, manifest);
  } else if (config.scan_target == "reciprocal") {
    const double threshold = concavity_threshold(params).to_double();
    const double hi_value =
        config.hi > 0.0 ? config.hi : config.n_value / threshold;
    const double lo_value = config.lo > 0.0 ? config.lo : hi_value * 1e-12;
    const ScanReport report =
        reciprocal_concavity_scan(config.k, config.alpha, config.n_value,
                                  lo_value, hi_value, config.points, config.tol);
    write_scan_csv(config, "concavity.csv", report, manifest);
  } else {
    throw ParseError("unknown concavity target \"" + config.scan_target + "\"", 0);
  }
}

void run_appendix_check(const ExperimentConfig& config, Manifest& manifest) {
  const IterLogParams params{config.k, config.alpha};
  const ScanReport report =
      concavity_inequalities_sweep(params, config.points, config.tol);
  write_scan_csv(config, "appendix_check.csv", report, manifest);
}

std::vector<std::pair<double, double>> read_series_csv(
    const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read input file " + path.string(), 0);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty input file " + path.string(), 0);
  }
  const std::vector<std::string> header = split(trim(line), ',');
  std::size_t n_col = header.size();
  std::size_t v_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "n") n_col = i;
    if (header[i] == column) v_col = i;
  }
  if (n_col == header.size() || v_col == header.size()) {
    throw ParseError("input needs columns 'n' and '" + column + "'", 0);
  }
  std::vector<std::pair<double, double>> series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const std::vector<std::string> cells = split(trimmed, ',');
    if (cells.size() != header.size()) {
      throw ParseError("ragged CSV row", line_no);
    }
    series.emplace_back(parse_f64(cells[n_col]), parse_f64(cells[v_col]));
  }
  return series;
}

void run_rate_fit(const ExperimentConfig& config, Manifest& manifest) {
  if (config.input.empty()) {
    throw ParseError("rate-fit needs --input", 0);
  }
  const auto series = read_series_csv(config.input, config.column);
  std::vector<RateCandidate> catalog;
  if (config.rates.empty()) {
    catalog = default_rate_catalog();
  } else {
    for (const std::string& name : split(config.rates, ',')) {
      catalog.push_back(parse_rate(trim(name)));
    }
  }
  std::vector<AsymptoticsReport> reports;
  try {
    reports = rate_fit(series, catalog);
  } catch (const Error& e) {
    // an unusable series is an input problem, not an internal one
    throw ParseError(e.what(), 0);
  }

  CsvFile csv(config.out_dir / "rate_fit.csv",
              {"rate_name", "band_min", "band_max", "slope"});
  std::vector<plot::Series> ratio_series;
  for (const AsymptoticsReport& r : reports) {
    csv.typed_row(r.rate, r.band_min, r.band_max, r.slope);
  }
  for (const RateCandidate& rate : catalog) {
    plot::Series s{rate.name, {}};
    bool valid = true;
    for (const auto& [n, v] : series) {
      const double denom = rate.value(n);
      if (!(denom > 0.0) || std::isnan(denom)) {
        valid = false;
        break;
      }
      s.points.emplace_back(n, v / denom);
    }
    if (valid) ratio_series.push_back(std::move(s));
  }
  manifest.note("best_rate", reports.empty() ? "" : reports.front().rate);
  plot_series(config, "rate_fit.svg", "ratio bands", "value / rate(n)",
              ratio_series);
}

void dispatch(const ExperimentConfig& config, Manifest& manifest) {
  if (config.command == "verify-group") return run_verify_group(config, manifest);
  if (config.command == "growth") return run_growth(config, manifest);
  if (config.command == "drift-exact") return run_drift_exact(config, manifest);
  if (config.command == "drift-mc") return run_drift_mc(config, manifest);
  if (config.command == "compose-drift") return run_compose_drift(config, manifest);
  if (config.command == "entropy-exact") return run_entropy_exact(config, manifest);
  if (config.command == "entropy-bounds") return run_entropy_bounds(config, manifest);
  if (config.command == "range-stats") return run_range_stats(config, manifest);
  if (config.command == "local-time") return run_local_time(config, manifest);
  if (config.command == "functional") return run_functional(config, manifest);
  if (config.command == "concavity") return run_concavity(config, manifest);
  if (config.command == "appendix-check") return run_appendix_check(config, manifest);
  if (config.command == "rate-fit") return run_rate_fit(config, manifest);
  throw ParseError("unknown subcommand \"" + config.command + "\"", 0);
}

void validate_config(const ExperimentConfig& config) {
  for (std::size_t i = 1; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i - 1] >= config.n_grid[i]) {
      throw ParseError("--n grid must be strictly increasing", i);
    }
  }
  if (config.trials < 1) throw ParseError("--trials must be >= 1", 0);
  if (config.support_cap < 1) throw ParseError("--support-cap must be positive", 0);
  if (config.radius < 0) throw ParseError("--radius must be nonnegative", 0);
  if (!(config.tol > 0.0)) throw ParseError("--tol must be positive", 0);
}

}  // namespace

std::vector<std::uint64_t> parse_n_grid(const std::string& text) {
  std::vector<std::uint64_t> grid;
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) {
      throw ParseError("grid form is start:stop:factor", 0);
    }
    const std::uint64_t start = parse_u64(trim(parts[0]));
    const std::uint64_t stop = parse_u64(trim(parts[1]));
    const std::uint64_t factor = parse_u64(trim(parts[2]));
    if (start < 1 || factor < 2) {
      throw ParseError("grid needs start >= 1 and factor >= 2", 0);
    }
    for (std::uint64_t n = start; n <= stop; n *= factor) {
      grid.push_back(n);
    }
  } else {
    for (const std::string& part : split(text, ',')) {
      grid.push_back(parse_u64(trim(part)));
    }
  }
  if (grid.empty()) {
    throw ParseError("empty n grid", 0);
  }
  return grid;
}

RealFunction parse_functional(const std::string& name) {
  if (name == "identity") {
    return [](double x) { return x; };
  }
  if (name == "indicator") {
    return [](double x) { return x > 0.0 ? 1.0 : 0.0; };
  }
  if (name == "sqrt") {
    return [](double x) { return std::sqrt(x); };
  }
  if (name.rfind("pow(", 0) == 0 && name.back() == ')') {
    const double a = parse_f64(name.substr(4, name.size() - 5));
    if (!(a > 0.0) || a > 1.0) {
      throw ParseError("pow exponent must lie in (0, 1]", 0);
    }
    return [a](double x) { return std::pow(x, a); };
  }
  if (name.rfind("L(", 0) == 0 && name.back() == ')') {
    const std::vector<std::string> parts =
        split(name.substr(2, name.size() - 3), ',');
    if (parts.size() != 2) {
      throw ParseError("concave-extension form is L(k,alpha)", 0);
    }
    const int k = static_cast<int>(parse_u64(trim(parts[0])));
    const double alpha = parse_f64(trim(parts[1]));
    const auto ext = std::make_shared<ConcaveExtension>(IterLogParams{k, alpha});
    return [ext](double x) { return (*ext)(x); };
  }
  throw ParseError("unknown functional \"" + name + "\"", 0);
}

void apply_config_file(const std::filesystem::path& path,
                       ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read config file " + path.string(), 0);
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config lines are key = value", line_no);
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "spec") config.spec_text = value;
    else if (key == "n") config.n_grid = parse_n_grid(value);
    else if (key == "trials") config.trials = parse_u64(value);
    else if (key == "seed") config.seed = parse_u64(value);
    else if (key == "out") config.out_dir = value;
    else if (key == "threads") config.threads = static_cast<unsigned>(parse_u64(value));
    else if (key == "no-plot") config.no_plot = parse_u64(value) != 0;
    else if (key == "dump-positions") config.dump_positions = parse_u64(value) != 0;
    else if (key == "radius") config.radius = static_cast<int>(parse_u64(value));
    else if (key == "triples") config.triples = parse_u64(value);
    else if (key == "n-max") config.n_max = static_cast<int>(parse_u64(value));
    else if (key == "support-cap") config.support_cap = parse_u64(value);
    else if (key == "tol") config.tol = parse_f64(value);
    else if (key == "f") config.functional_name = value;
    else if (key == "target") config.scan_target = value;
    else if (key == "k") config.k = static_cast<int>(parse_u64(value));
    else if (key == "alpha") config.alpha = parse_f64(value);
    else if (key == "lo") config.lo = parse_f64(value);
    else if (key == "hi") config.hi = parse_f64(value);
    else if (key == "nval") config.n_value = parse_f64(value);
    else if (key == "points") config.points = parse_u64(value);
    else if (key == "input") config.input = value;
    else if (key == "column") config.column = value;
    else if (key == "rates") config.rates = value;
    else if (key == "measure") config.measure = value;
    else throw ParseError("unknown config key \"" + key + "\"", line_no);
  }
}

int run_experiment(ExperimentConfig config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  Manifest manifest(config);
  try {
    validate_config(config);
    dispatch(config, manifest);
    manifest.write("ok", "", "");
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    manifest.write("error", "parse", e.what());
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    manifest.write("error", "resource", e.what());
    return 3;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    manifest.write("error", "assertion", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.write("error", "internal", e.what());
    return 1;
  }
}

}  // namespace wreathwalk::cli
