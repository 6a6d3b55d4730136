#include "dunkl_approx/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dunkl_approx/errors.hpp"
#include "dunkl_approx/functions.hpp"
#include "dunkl_approx/operator_engine.hpp"

namespace dunkl {

namespace {

double parse_double(std::string_view text, const char* what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": cannot parse '" + s + "' as a number");
  }
  return v;
}

// Runs task(i) for i in [0, count) on up to `threads` workers and rethrows the
// first exception.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1U), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard guard(failure_lock);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_double(*v);
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> json_optional(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

FamilyKind parse_family(std::string_view text) {
  if (text == "unit") return FamilyKind::unit;
  if (text == "gould-hopper") return FamilyKind::gould_hopper;
  if (text == "custom" || text == "custom-coeffs") return FamilyKind::custom;
  throw ConfigError("family: unknown value '" + std::string(text) +
                    "' (expected unit, gould-hopper or custom)");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("format: unknown value '" + std::string(text) + "' (expected csv or json)");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::eval: return "eval";
    case Mode::moments: return "moments";
    case Mode::converge: return "converge";
    case Mode::bounds: return "bounds";
  }
  return "?";
}

Grid Grid::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon - begin));
    if (colon == std::string_view::npos) break;
    begin = colon + 1;
  }
  if (parts.size() == 1) {
    const double x = parse_double(parts[0], "x-grid");
    return {x, x, 1.0};
  }
  if (parts.size() != 3) throw ConfigError("x-grid: expected start:stop:step, got '" + std::string(text) + "'");
  return {parse_double(parts[0], "x-grid start"), parse_double(parts[1], "x-grid stop"),
          parse_double(parts[2], "x-grid step")};
}

std::vector<double> Grid::points() const {
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

void RunConfig::validate() const {
  if (!std::isfinite(mu) || mu < 0.0) throw ConfigError("mu: operators require mu >= 0");
  if (!(x_grid.step > 0.0)) throw ConfigError("x-grid: step must be positive");
  if (x_grid.start > x_grid.stop) throw ConfigError("x-grid: start must not exceed stop");
  if (x_grid.start < 0.0) throw ConfigError("x-grid: points must be >= 0");
  if (n_list.empty()) throw ConfigError("n: list must not be empty");
  for (const int n : n_list) {
    if (n < 1) throw ConfigError("n: every entry must be >= 1");
  }
  if (!(tol > 0.0)) throw ConfigError("tol: must be positive");
  if (family == FamilyKind::gould_hopper) {
    if (gh_a < 0.0) throw ConfigError("gh-a: Gould-Hopper parameter must be >= 0");
    if (gh_d < 1) throw ConfigError("gh-d: Gould-Hopper order must be >= 1");
  }
  if (family == FamilyKind::custom && coeffs.empty()) {
    throw ConfigError("coeffs: custom family needs at least one coefficient");
  }
  if (!(sabotage_modulus > 0.0)) throw ConfigError("sabotage-modulus: must be positive");
  if (holder_beta && !(*holder_beta > 0.0 && *holder_beta <= 1.0)) {
    throw ConfigError("beta: Hoelder exponent must lie in (0, 1]");
  }
  if (holder_m && !(*holder_m > 0.0)) throw ConfigError("M: Hoelder constant must be positive");
  if (!(interval_end > 0.0)) throw ConfigError("interval-end: must be positive");
  (void)find_function(function);
}

AppellFamily make_family(const RunConfig& config) {
  const DunklContext ctx(config.mu);
  try {
    switch (config.family) {
      case FamilyKind::unit: return AppellFamily::from_coefficients(ctx, {1.0});
      case FamilyKind::gould_hopper:
        return AppellFamily::gould_hopper(ctx, config.gh_a, config.gh_d, config.gh_degree);
      case FamilyKind::custom: return AppellFamily::from_coefficients(ctx, config.coeffs);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }
  throw ConfigError("family: unsupported");
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DUNKL_APPROX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

Report run(Mode mode, const RunConfig& config) {
  config.validate();
  if (mode == Mode::bounds && !config.theorem) throw ConfigError("theorem: bounds mode needs --theorem");

  const AppellFamily family = make_family(config);
  const FunctionEntry& fn = find_function(config.function);
  const std::vector<double> xs = config.x_grid.points();

  std::vector<OperatorSpec> specs;
  specs.reserve(config.n_list.size());
  for (const int n : config.n_list) {
    specs.push_back({family, n, config.tol, config.cap, config.allow_unverified});
  }

  VerifyParams params;
  if (config.holder_m || config.holder_beta) {
    const HolderPair base = fn.holder.value_or(HolderPair{});
    params.holder = HolderPair{config.holder_m.value_or(base.M), config.holder_beta.value_or(base.beta)};
  }
  params.interval_end = config.interval_end;
  params.modulus_scale = config.sabotage_modulus;

  Report report;
  report.mode = mode;
  const std::size_t nx = xs.size();
  report.rows.resize(specs.size() * nx);
  std::vector<BoundReport> bound_reports(mode == Mode::bounds ? report.rows.size() : 0);

  parallel_for(report.rows.size(), resolve_threads(config.threads), [&](std::size_t task) {
    const OperatorSpec& spec = specs[task / nx];
    const double x = xs[task % nx];
    ReportRow& row = report.rows[task];
    row.x = x;
    row.n = spec.n;
    if (mode == Mode::bounds) {
      const double point[] = {x};
      BoundReport& br = bound_reports[task];
      br = verify(spec, fn, *config.theorem, point, params);
      const BoundRecord& r = br.records.front();
      row.kf = r.kf;
      row.f = r.f;
      row.abs_err = r.actual_error;
      row.omega1 = r.omega1;
      row.omega2 = r.omega2;
      row.bound = r.bound;
      row.margin = r.margin;
      row.theorem = to_string(*config.theorem);
      return;
    }
    row.kf = apply(spec, fn.evaluator, x);
    row.f = fn.evaluator(x);
    row.abs_err = std::fabs(*row.kf - *row.f);
    if (mode != Mode::eval) {
      const CentralMoments c = central_moments(spec, x);
      row.omega1 = c.omega1;
      row.omega2 = c.omega2;
    }
  });

  if (mode == Mode::converge) {
    for (std::size_t s = 0; s < specs.size(); ++s) {
      ConvergenceSummary summary{specs[s].n, 0.0};
      for (std::size_t k = 0; k < nx; ++k) {
        summary.sup_error = std::max(summary.sup_error, *report.rows[s * nx + k].abs_err);
      }
      report.convergence.push_back(summary);
    }
  }
  if (mode == Mode::bounds) {
    report.min_margin = std::numeric_limits<double>::infinity();
    for (const BoundReport& br : bound_reports) {
      report.violations += br.violations;
      report.min_margin = std::min(report.min_margin, br.min_margin);
      report.analytic_modulus = report.analytic_modulus && br.analytic_modulus;
    }
    if (bound_reports.empty()) report.min_margin = 0.0;
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return a.n != b.n ? a.n < b.n : a.x < b.x;
  });
  return report;
}

int exit_code(const Report& report) { return report.violations > 0 ? 2 : 0; }

void emit(const Report& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << kCsvHeader << '\n';
    for (const ReportRow& r : report.rows) {
      out << format_double(r.x) << ',' << r.n << ',';
      put_optional(out, r.kf);
      out << ',';
      put_optional(out, r.f);
      out << ',';
      put_optional(out, r.abs_err);
      out << ',';
      put_optional(out, r.omega1);
      out << ',';
      put_optional(out, r.omega2);
      out << ',';
      put_optional(out, r.bound);
      out << ',';
      put_optional(out, r.margin);
      out << ',' << r.theorem << '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow& r : report.rows) {
      rows.push_back({{"x", r.x},
                      {"n", r.n},
                      {"Kf", optional_json(r.kf)},
                      {"f", optional_json(r.f)},
                      {"abs_err", optional_json(r.abs_err)},
                      {"omega1", optional_json(r.omega1)},
                      {"omega2", optional_json(r.omega2)},
                      {"bound", optional_json(r.bound)},
                      {"margin", optional_json(r.margin)},
                      {"theorem", r.theorem.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.theorem)}});
    }
    nlohmann::json doc{{"mode", to_string(report.mode)}, {"rows", std::move(rows)}};
    out << doc.dump(2) << '\n';
  }
  if (!out) throw ConfigError("output: write failed");
}

std::vector<ReportRow> parse_json_rows(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<ReportRow> rows;
  for (const auto& j : doc.at("rows")) {
    ReportRow r;
    r.x = j.at("x").get<double>();
    r.n = j.at("n").get<int>();
    r.kf = json_optional(j, "Kf");
    r.f = json_optional(j, "f");
    r.abs_err = json_optional(j, "abs_err");
    r.omega1 = json_optional(j, "omega1");
    r.omega2 = json_optional(j, "omega2");
    r.bound = json_optional(j, "bound");
    r.margin = json_optional(j, "margin");
    if (!j.at("theorem").is_null()) r.theorem = j.at("theorem").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace dunkl
