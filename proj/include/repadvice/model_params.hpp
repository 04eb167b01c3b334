#pragma once

#include <string_view>

namespace repadvice {

enum class Rule { kSimple, kComplex };

std::string_view to_string(Rule rule);

// Primitive parameters of the advice game.
//
//   sigma       Cov(A, X_1), in (0, 0.25]
//   prior       Pr(theta = 1), in (0, 1)
//   prevalence  Pr(X_theta = 1), in (0, 1)
//   base_rate   Pr(A = 1), in (0, 1)
//
// Construction also rejects parameter sets whose joint law of (A, X_1) has a
// cell outside [0, 1] (InfeasibleError).
class ModelParams {
 public:
  static constexpr double kDefaultPrevalence = 0.5;
  static constexpr double kDefaultBaseRate = 0.5;

  ModelParams(double sigma, double prior, double prevalence = kDefaultPrevalence,
              double base_rate = kDefaultBaseRate);

  double sigma() const { return sigma_; }
  double prior() const { return prior_; }
  double prevalence() const { return prevalence_; }
  double base_rate() const { return base_rate_; }

  bool has_even_base_rate() const { return base_rate_ == 0.5; }

  ModelParams with_sigma(double sigma) const;
  ModelParams with_prior(double prior) const;

 private:
  double sigma_;
  double prior_;
  double prevalence_;
  double base_rate_;
};

// Expected payoff split into its accuracy and reputation parts.
struct PayoffBreakdown {
  double accuracy = 0.0;
  double reputation = 0.0;
  double total = 0.0;

  static PayoffBreakdown of(double accuracy, double reputation) {
    return {accuracy, reputation, accuracy + reputation};
  }
};

}  // namespace repadvice
