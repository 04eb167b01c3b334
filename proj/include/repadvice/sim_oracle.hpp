#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "repadvice/extensions.hpp"
#include "repadvice/joint_law.hpp"
#include "repadvice/known_type.hpp"
#include "repadvice/model_params.hpp"
#include "repadvice/reputation.hpp"

// Seeded Monte-Carlo model of the advice game, used as an independent oracle
// for the closed forms.
//
// Draw d of a run uses Philox4x64-10 at counter (d, 0, 0, 0) and key
// (seed, stream), so every draw is a pure function of (seed, d). Draws are
// grouped in blocks of kBlockSize; per-block sufficient statistics are summed
// in block order, which makes results independent of the worker count.
namespace repadvice::sim {

inline constexpr std::uint64_t kDefaultSeed = 20240607;
inline constexpr std::uint64_t kBlockSize = 65536;

struct SimConfig {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t n_draws = 1'000'000;
  unsigned workers = 1;

  void validate() const;
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;

  // |mean - target| <= k * std_error
  bool agrees_with(double target, double k = 4.0) const;
};

// Estimates keyed by statistic name. Names:
//   p_success|S, p_success|C, p_success|<r>,theta=<t>   Pr(Y=1 | r[, theta])
//   posterior|<r>, posterior                             E[posterior belief]
//   reputation|<r>, reputation                           E[psi(posterior)]
//   payoff|<r>, payoff                                   E[Y + psi(posterior)]
//   theta_freq|C,Y=<y>                                   Pr(theta=1 | r=C, Y=y)
//   cov_AX|theta=1                                       E[(A - a)(X - x) | theta=1]
//   share_complex                                        Pr(r = C)
using SimReport = std::map<std::string, SimEstimate>;

struct FixedRule {
  Rule rule = Rule::kComplex;
};
// The rule that maximizes expected payoff given the parameters.
struct OptimalRule {};
// Type-dependent mixing: type theta plays Complex with probability p_theta,
// and the advisee's conjecture is the same pair.
using RulePolicy = std::variant<FixedRule, OptimalRule, known::StrategyPair>;

SimReport simulate_game(const ModelParams& params, const ReputationFunction& psi,
                        const RulePolicy& policy, const std::optional<ext::NoisyObservation>& noise,
                        const SimConfig& config);

// Closed-form value of every statistic simulate_game reports for the same
// inputs (keys whose conditioning event has probability zero are omitted).
std::map<std::string, double> expected_statistics(
    const ModelParams& params, const ReputationFunction& psi, const RulePolicy& policy,
    const std::optional<ext::NoisyObservation>& noise);

// Paired estimate of the complex rule's payoff gain (common theta, A, X per draw).
SimEstimate mc_delta_phi(const ModelParams& params, const ReputationFunction& psi,
                         const SimConfig& config);

// Type-theta expert's expected payoff in the known-type wage game (threshold
// pinned to the prior), playing according to `conjecture`.
SimEstimate mc_known_type_payoff(int theta, double sigma, double prior,
                                 const known::StrategyPair& conjecture, double wage,
                                 const SimConfig& config);

}  // namespace repadvice::sim
