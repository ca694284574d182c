#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "reccost_cli/cli.hpp"

namespace reccost::cli {

InputError::InputError(const std::string& what, std::size_t line)
    : Error(what), line_(line) {}

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& why) {
  std::ostringstream os;
  os << path.string() << ":" << line << ": " << why;
  throw InputError(os.str(), line);
}

bool parse_number(std::string_view text, double& value) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

FunctionHandle load_samples(const std::filesystem::path& path,
                            std::optional<Domain> expected, bool mirror) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sample file " + path.string(), 0);

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++line_no;
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  Domain domain;
  if (line == "t,H") {
    domain = Domain::log_line;
  } else if (line == "x,F") {
    domain = Domain::positive_ratios;
  } else {
    fail(path, 1, "header must be exactly 't,H' or 'x,F'");
  }
  if (expected && *expected != domain) {
    fail(path, 1, "header does not match --domain " + std::string(to_string(*expected)));
  }

  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      fail(path, line_no, "expected exactly two comma-separated fields");
    }
    double a = 0.0, b = 0.0;
    if (!parse_number(std::string_view(line).substr(0, comma), a) ||
        !parse_number(std::string_view(line).substr(comma + 1), b)) {
      fail(path, line_no, "unparsable number");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) fail(path, line_no, "non-finite value");
    if (domain == Domain::positive_ratios && a <= 0.0) {
      fail(path, line_no, "ratio abscissa must be positive");
    }
    if (!xs.empty() && !(a > xs.back())) {
      fail(path, line_no, "abscissas must be strictly increasing");
    }
    xs.push_back(a);
    ys.push_back(b);
  }
  if (xs.size() < 2) fail(path, line_no, "need at least two samples");

  if (mirror) {
    const double pivot = domain == Domain::log_line ? 0.0 : 1.0;
    if (xs.front() != pivot) {
      fail(path, 2, "--mirror needs the first abscissa at " +
                        std::string(domain == Domain::log_line ? "t = 0" : "x = 1"));
    }
    std::vector<double> mx, my;
    for (std::size_t i = xs.size(); i-- > 1;) {
      mx.push_back(domain == Domain::log_line ? -xs[i] : 1.0 / xs[i]);
      my.push_back(ys[i]);
    }
    mx.insert(mx.end(), xs.begin(), xs.end());
    my.insert(my.end(), ys.begin(), ys.end());
    xs = std::move(mx);
    ys = std::move(my);
  }

  return FunctionHandle::table(domain, std::move(xs), std::move(ys),
                               path.filename().string());
}

}  // namespace reccost::cli
