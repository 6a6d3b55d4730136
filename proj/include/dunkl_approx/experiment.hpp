#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl_approx/appell_family.hpp"
#include "dunkl_approx/error_bounds.hpp"

namespace dunkl {

enum class FamilyKind { unit, gould_hopper, custom };
enum class OutputFormat { csv, json };
enum class Mode { eval, moments, converge, bounds };

[[nodiscard]] FamilyKind parse_family(std::string_view text);
[[nodiscard]] OutputFormat parse_format(std::string_view text);
[[nodiscard]] std::string to_string(Mode mode);

/// Inclusive x grid start, start + step, ..., <= stop.
struct Grid {
  double start = 1.0;
  double stop = 1.0;
  double step = 1.0;

  /// Parses "start:stop:step" or a single value "x".
  [[nodiscard]] static Grid parse(std::string_view text);
  [[nodiscard]] std::vector<double> points() const;
};

struct RunConfig {
  double mu = 0.0;
  FamilyKind family = FamilyKind::unit;
  double gh_a = 0.0;
  int gh_d = 1;
  std::size_t gh_degree = 64;
  std::vector<double> coeffs;
  bool allow_unverified = false;
  std::vector<int> n_list{10};
  Grid x_grid;
  std::string function = "id";
  double tol = 1e-13;
  std::size_t cap = 0;
  OutputFormat output = OutputFormat::csv;
  std::optional<Theorem> theorem;
  std::optional<double> holder_m;
  std::optional<double> holder_beta;
  double interval_end = 2.0;
  double sabotage_modulus = 1.0;
  unsigned threads = 0;  // 0: DUNKL_APPROX_THREADS or hardware concurrency

  /// Throws ConfigError naming the offending parameter.
  void validate() const;
};

[[nodiscard]] AppellFamily make_family(const RunConfig& config);

/// One output row. Columns a mode does not produce stay empty.
struct ReportRow {
  double x = 0.0;
  int n = 1;
  std::optional<double> kf;
  std::optional<double> f;
  std::optional<double> abs_err;
  std::optional<double> omega1;
  std::optional<double> omega2;
  std::optional<double> bound;
  std::optional<double> margin;
  std::string theorem;
};

struct ConvergenceSummary {
  int n = 1;
  double sup_error = 0.0;
};

struct Report {
  Mode mode = Mode::eval;
  std::vector<ReportRow> rows;  // sorted by (n, x)
  std::vector<ConvergenceSummary> convergence;
  std::size_t violations = 0;
  double min_margin = 0.0;
  bool analytic_modulus = true;
};

inline constexpr std::string_view kCsvHeader =
    "x,n,Kf,f,abs_err,omega1,omega2,bound,margin,theorem";

/// Runs one mode over n_list x x_grid. Grid points are evaluated in
/// parallel; rows come back in (n, x) order regardless.
[[nodiscard]] Report run(Mode mode, const RunConfig& config);

/// 0 on success, 2 when a bounds run has violations.
[[nodiscard]] int exit_code(const Report& report);

/// CSV with kCsvHeader and 17 significant digits, or a JSON object
/// {"mode": ..., "rows": [{x, n, Kf, ...}]} with null for empty columns.
void emit(const Report& report, OutputFormat format, std::ostream& out);

/// Inverse of the JSON emission (rows only).
[[nodiscard]] std::vector<ReportRow> parse_json_rows(std::string_view text);

/// Worker count: explicit value, else DUNKL_APPROX_THREADS, else hardware.
[[nodiscard]] unsigned resolve_threads(unsigned requested);

struct SelftestResult {
  std::size_t checks = 0;
  std::size_t failures = 0;
};

/// Randomized series-calculus suites (product rule, generating-function
/// round trip, reflection, partition of unity) seeded by `seed`. Failures
/// are described on `log`.
[[nodiscard]] SelftestResult run_selftest(std::uint64_t seed, std::ostream& log);

}  // namespace dunkl
