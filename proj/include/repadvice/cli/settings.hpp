#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "repadvice/reputation.hpp"
#include "repadvice/sim_oracle.hpp"

namespace repadvice::cli {

// Bad flag, config entry or grid; the message names the offending field.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Setting keys shared by flags ("--key") and config files ("key = value").
inline const std::vector<std::string> kSettingKeys = {
    "sigma", "prior",  "wage",  "threshold", "epsilon", "base-rate", "prevalence", "p-other",
    "psi",   "policy", "seed",  "draws",     "workers", "format",    "out"};

using Settings = std::map<std::string, std::string>;

// "v1,v2,..." or "lo:hi:n" (n evenly spaced points including both ends).
std::vector<double> parse_grid(const std::string& key, const std::string& text);
double parse_number(const std::string& key, const std::string& text);
std::uint64_t parse_count(const std::string& key, const std::string& text);

// Flat "key = value" lines; '#' starts a comment. Unknown keys are rejected.
Settings parse_config_text(const std::string& text, const std::string& source);
Settings load_config_file(const std::string& path);

// Reputation payoff built from a name and a wage scale:
//   linear            w * pi
//   sqrt, power:g     w * pi^g
//   step              w * 1{pi >= threshold}
ReputationFunction make_psi(const std::string& text, double wage, double threshold);

// complex | simple | optimal | mixed:p0,p1
sim::RulePolicy parse_policy(const std::string& text);

}  // namespace repadvice::cli
