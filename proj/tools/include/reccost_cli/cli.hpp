#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reccost/errors.hpp"
#include "reccost/function_handle.hpp"

namespace reccost::cli {

enum class Status { ok, verification_failed, input_error };

std::string_view to_string(Status status) noexcept;
int exit_code(Status status) noexcept;

/// Malformed sample file; `line()` is the 1-based line of the first violation.
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads a CSV sample file with header exactly "t,H" (log line) or "x,F"
/// (positive ratios), one "abscissa,ordinate" pair per line.
///
/// `expected`, when set, must match the header. `mirror` extends a table
/// given on t >= 0 (x >= 1) to an even one (a reciprocal one).
FunctionHandle load_samples(const std::filesystem::path& path,
                            std::optional<Domain> expected = std::nullopt,
                            bool mirror = false);

struct RunResult {
  int exit_code = 0;
  /// Keys exactly {command, inputs, results, diagnostics, status}.
  nlohmann::json report;
};

/// Executes one subcommand. `args` excludes the program name. Text goes to
/// `out`, usage and errors to `err`; `--json PATH` also writes the report.
RunResult run(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);

/// Rebuilds an argument list from a report's command and echoed inputs.
std::vector<std::string> replay_arguments(const nlohmann::json& report);

}  // namespace reccost::cli
