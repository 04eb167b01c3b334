#include "repadvice/cli/settings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace repadvice::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw UsageError("--" + key + ": " + what);
}

}  // namespace

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    fail(key, "expected a number, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    // Accept integral scientific notation such as 1e6.
    const double d = parse_number(key, text);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) fail(key, "expected a non-negative integer");
    return static_cast<std::uint64_t>(d);
  }
  return value;
}

std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  if (trim(text).empty()) fail(key, "empty grid");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) fail(key, "range must be lo:hi:n, got '" + text + "'");
    const double lo = parse_number(key, parts[0]);
    const double hi = parse_number(key, parts[1]);
    const std::uint64_t n = parse_count(key, parts[2]);
    if (n == 0) fail(key, "range needs at least one point");
    if (n > 10'000'000) fail(key, "range has too many points");
    if (n == 1) return {lo};
    if (hi < lo) fail(key, "range upper end below lower end");
    std::vector<double> grid(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      grid[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return grid;
  }
  std::vector<double> grid;
  for (const auto& part : split(text, ',')) grid.push_back(parse_number(key, part));
  return grid;
}

Settings parse_config_text(const std::string& text, const std::string& source) {
  Settings settings;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(number);
    if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (std::find(kSettingKeys.begin(), kSettingKeys.end(), key) == kSettingKeys.end()) {
      throw UsageError(where + ": unknown key '" + key + "'");
    }
    settings[key] = trim(line.substr(eq + 1));
  }
  return settings;
}

Settings load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

ReputationFunction make_psi(const std::string& text, double wage, double threshold) {
  const std::string s = trim(text);
  if (wage < 0.0) fail("wage", "must be non-negative");
  if (s == "step") return ReputationFunction::step(wage, threshold);
  if (s == "linear") {
    return wage == 0.0 ? ReputationFunction::constant(0.0) : ReputationFunction::linear(wage);
  }
  if (s == "sqrt") return ReputationFunction::sqrt(wage);
  if (s.rfind("power:", 0) == 0) {
    const double exponent = parse_number("psi", s.substr(6));
    if (!(exponent > 0.0)) fail("psi", "power exponent must be positive");
    return ReputationFunction::power(exponent, wage);
  }
  fail("psi", "expected linear, sqrt, power:<exponent> or step, got '" + text + "'");
}

sim::RulePolicy parse_policy(const std::string& text) {
  const std::string t = trim(text);
  if (t == "complex") return sim::FixedRule{Rule::kComplex};
  if (t == "simple") return sim::FixedRule{Rule::kSimple};
  if (t == "optimal") return sim::OptimalRule{};
  if (t.rfind("mixed:", 0) == 0) {
    const auto parts = split(t.substr(6), ',');
    if (parts.size() != 2) fail("policy", "mixed policy must be mixed:p0,p1");
    const double p0 = parse_number("policy", parts[0]);
    const double p1 = parse_number("policy", parts[1]);
    if (p0 < 0 || p0 > 1 || p1 < 0 || p1 > 1) fail("policy", "mixing probabilities must lie in [0, 1]");
    return known::StrategyPair(p0, p1);
  }
  fail("policy", "expected complex, simple, optimal or mixed:p0,p1, got '" + text + "'");
}

}  // namespace repadvice::cli
