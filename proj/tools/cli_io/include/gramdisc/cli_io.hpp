#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gramdisc/section_engine.hpp"

namespace gramdisc::cli {

enum class Command {
  gram,
  classify,
  scan,
  blocks,
  repulsion,
  discriminant,
  gradient,
  hessian,
  trace,
  table,
  suggest_shift,
};

enum class Format { csv, json };

std::string_view to_string(Command command) noexcept;

struct RunConfig {
  Command command = Command::gram;
  std::optional<long> n;
  std::optional<std::pair<long, long>> range;
  int grid = 64;
  /// Unset means the command's natural format (csv for row data).
  std::optional<Format> format;
  /// Empty means standard output.
  std::string out;
  unsigned threads = 0;
  int correction_order = 2;
  /// Parameter vector, see parse_parameter_spec.
  std::string at = "ones";
  std::optional<std::size_t> k_max;
  std::size_t count = 5;
  std::string curve = "linear";
  std::vector<std::size_t> shift;
  std::string waypoints;
  std::optional<std::size_t> k1;
  std::optional<std::size_t> k2;
  /// trace: also write the JSON metadata object here.
  std::string meta;
  long search_limit = 1000;

  Format effective_format() const;
};

/// Parses argv. Returns the exit code when the program should stop right
/// away (0 after --help, 2 on a usage error), or nullopt to continue.
std::optional<int> parse(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                         std::ostream& err);

/// Executes a validated config. The artifact goes to `out` (or config.out);
/// computation errors are reported as a JSON object on `out` with exit 1.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/*!
  Parameter vector from a short spec with `size` coefficients:

      ones | zeros | r=0.3 | unit:K[=V] | sparse:FILL|k=v,k=v | dense:v1,v2,...

  A dense spec shorter than `size` is zero-padded. Throws MalformedSpec.
*/
ParameterVector parse_parameter_spec(const std::string& spec, std::size_t size);

/// "0,0;1,0.41;1,1" -> {(0,0), (1,0.41), (1,1)}.
std::vector<std::pair<double, double>> parse_waypoints(const std::string& text);

/// %.15g, the fixed precision used for every emitted number.
std::string format_number(double x);

}  // namespace gramdisc::cli
