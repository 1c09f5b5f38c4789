#pragma once

// Command-line surface: spectra, eigenvectors, error-table reproduction,
// the invariant verification sweep and plot data.
//
// Every command produces a RowSet that is serialized as CSV (header row,
// ',' delimiter, LF line endings) or as one JSON object with "config" and
// "rows". Multiple-precision values are written as decimal strings so that
// no digits are lost to a binary double.

#include "cyclap/spectrum.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclap::cli {

enum class Exit : int {
  ok = 0,
  verify_failure = 1,
  bad_config = 2,
  solver_refusal = 3,
  table_mismatch = 4,
};

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  std::string alpha = "1/3";
  int n = 10;
  std::optional<int> j;
  std::string method = "newton";
  int precision_bits = 3322;
  std::optional<std::string> tol;
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty: standard output
  bool compare = false;
  std::uint64_t seed = 1;
  std::optional<int> max_n;
  std::string table;   // table subcommand
  std::string figure;  // plotdata subcommand
  std::string inject_fault;
};

/// A rectangular result. Cells are JSON values: integers and booleans stay
/// native, multiple-precision numbers are strings, null is an empty cell.
struct RowSet {
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

void write_csv(const RowSet& rs, std::ostream& os);
void write_json(const RowSet& rs, std::ostream& os);

/// Parses argv, runs the command and writes its output. Diagnostics go to
/// `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Error tables ---------------------------------------------------------------

enum class TableId { asympt_T1, newton2_T2, smallj_T3 };
const char* table_name(TableId id);
/// Accepts the full names and the short forms T1, T2, T3.
TableId parse_table(std::string_view text);
/// Relative tolerance of compare mode.
double table_tolerance(TableId id);

struct TableCell {
  std::string alpha;
  int n = 0;
  int j = 0;         // smallj_T3 only
  Real max_error;    // the unscaled error
  Real scaled;       // n^3, n^7 or n^4/j^4 times max_error
  std::optional<double> published_error;
  std::optional<double> published_scaled;
};

/// Default rows: alpha in {1/3, 4/5} (1/3 only for smallj_T3), n = 256..8192.
std::vector<std::string> table_alphas(TableId id);
std::vector<int> table_sizes();
std::vector<TableCell> compute_table(TableId id, const std::vector<std::string>& alphas,
                                     const std::vector<int>& sizes, const PrecisionContext& ctx);

// Verification sweep ---------------------------------------------------------

struct VerifyConfig {
  int precision_bits = 350;
  std::uint64_t seed = 1;
  int max_n = 64;
  /// "eta_sign" flips the sign of one eta closed form.
  std::string inject_fault;
};

struct CheckResult {
  std::string name;
  long cases = 0;
  std::string max_error;  // three significant digits
  std::string threshold;
  bool passed = true;
};

/// Residual threshold 10^-(floor(0.301 bits) - 15).
double verify_log10_threshold(int precision_bits);
/// All rationals p/q in (0, 1) with q <= max_den in lowest terms, ascending.
std::vector<std::string> rational_alphas(int max_den);
std::vector<CheckResult> run_verify(const VerifyConfig& cfg);

// Plot data ------------------------------------------------------------------

enum class Figure { main_eq, eta_lines, theta_lambda, alpha_sweep };
/// Throws DomainError on an unknown name.
Figure parse_figure(std::string_view text);
/// Long format: columns series, j, x, y.
RowSet plot_data(Figure fig, const AlphaParam& a, int n, std::optional<int> j,
                 const PrecisionContext& ctx);

}  // namespace cyclap::cli
