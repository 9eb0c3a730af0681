#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "air/catalog.hpp"
#include "air/field.hpp"
#include "air/rickart.hpp"

namespace air {

/// Process exit codes; a total function of the outcome.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUndecided = 2,
  kExitMismatch = 3,
  kExitDivergence = 4,
};

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::vector<std::string> inputs;
  std::optional<FieldDesc> field;
  Method method = Method::Auto;
  std::vector<std::uint64_t> primes{5, 7};
  OutputFormat format = OutputFormat::Text;
  AirOptions options;
  /// Instantiations of the generic A3_2 row for `tables`.
  std::vector<mpq_class> alphas{2};
  std::size_t count = 100;
  std::uint64_t seed = 1;
};

struct GenParams {
  std::string generator;  // matrix-unit, unital-null, matrix, remark, table, random-nilpotent, random-codim1
  char kind = 'a';
  std::size_t k = 1;
  std::size_t n = 2;
  std::string name;
  std::string field = "Q";
  std::uint64_t seed = 1;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;  // report on stdout
  std::string error;   // diagnostics on stderr
};

/// Maximum number of (x, e) witness pairs rendered in a report.
inline constexpr std::size_t kWitnessCap = 1000;

CommandResult cmd_check(const RunConfig& cfg);
/// Same as cmd_check on in-memory DSL text; `origin` prefixes error locations.
CommandResult check_text(const std::string& text, const std::string& origin, const RunConfig& cfg);
CommandResult cmd_tables(const RunConfig& cfg);
CommandResult cmd_oracle_compare(const RunConfig& cfg);
CommandResult cmd_gen(const GenParams& params);

/// Reads AIR_BUDGET; nullopt when unset. std::invalid_argument when malformed.
std::optional<std::size_t> budget_from_env();

/// "+" / "-" / "undecided".
std::string verdict_sign(const std::optional<bool>& air);

}  // namespace air
