#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnoise/filter.hpp"
#include "fnoise/fock.hpp"
#include "fnoise/moments.hpp"

namespace fnoise {

/// Malformed input from the command line or a config file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kConfigEnv = "FILTERED_NOISE_CONFIG";

struct RunConfig {
  Truncation truncation{2, Rational(1, 2), 2, 5};
  double tolerance = 1e-9;
  EnumerationGuard enumeration;
  std::uint64_t max_terms = 10'000'000;
  std::uint64_t seed = 1729;

  WorkGuard work() const { return {enumeration, max_terms}; }
  /// Throws UsageError unless guards are positive and tolerance lies in (0, 1e-3).
  void validate() const;
};

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
std::map<std::string, std::string> read_key_values(const std::string& path);

/// Keys: d, delta, M, n_max, basis_cap, tolerance, max_n, max_terms, seed.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Defaults, then the file named by `path` or by the environment variable.
RunConfig load_config(const std::optional<std::string>& path);

std::vector<int> parse_int_list(const std::string& text);
/// Comma-separated filter literals; commas inside braces belong to the literal.
std::vector<Filter> parse_filter_list(const std::string& text);
ColorFilterTuple parse_cf(const std::string& colors, const std::string& filters);
/// "c=v" items, separated by commas or given as several arguments.
std::map<int, Rational> parse_rates(const std::vector<std::string>& items);
/// `rademacher`, `gaussian`, or explicit "m0,m1,m2,..." with m0 = 1.
MomentSequence parse_sequence(const std::string& text, int max_order);
/// "label=m0,m1,...;label=..." or the same with one entry per line.
MomentModel parse_model(const std::string& text);
MomentModel read_model_file(const std::string& path);

}  // namespace fnoise
