#pragma once

#include <optional>
#include <string_view>

#include "repadvice/model_params.hpp"
#include "repadvice/reputation.hpp"

// Replaceable-expert regime: the expert earns `wage` iff the posterior about
// his competence is at least the replacement threshold.
namespace repadvice::wage {

class StepReputation {
 public:
  StepReputation(double wage, double threshold);

  double wage() const { return wage_; }
  double threshold() const { return threshold_; }
  double operator()(double belief) const { return belief >= threshold_ ? wage_ : 0.0; }
  ReputationFunction as_function() const;

 private:
  double wage_;
  double threshold_;
};

struct Thresholds {
  double lower = 0.0;  // below: complex rule never earns the wage
  double upper = 0.0;  // at or above: complex rule always earns the wage
  bool upper_at_least_one = false;
};

enum class RegimeCase { kComplexAlways, kCrossAtThresholdAndDiscontinuity, kInteriorIntersection };

std::string_view to_string(RegimeCase c);

// Half-open [lo, hi).
struct PriorInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double prior) const { return prior >= lo && prior < hi; }
};

struct WageRegimeReport {
  Thresholds thresholds;
  double pi_dagger = 0.0;
  RegimeCase case_label = RegimeCase::kComplexAlways;
  std::optional<PriorInterval> simple_interval;

  Rule rule_at(double prior) const {
    return simple_interval && simple_interval->contains(prior) ? Rule::kSimple : Rule::kComplex;
  }
};

Thresholds thresholds(double sigma, const StepReputation& rep);

// Piecewise closed form of the expected payoff under the step reputation.
// Requires base_rate == 0.5.
PayoffBreakdown expected_payoff_wage(Rule rule, const ModelParams& params,
                                     const StepReputation& rep);

// Prior at which the complex and simple payoffs coincide on the middle branch.
double pi_dagger(double sigma, double wage);

WageRegimeReport classify_regime(double sigma, const StepReputation& rep);

// With the threshold pinned to the prior, the complex rule is chosen iff the
// wage is at most 4 sigma pi0 / (1 - 4 sigma pi0); returns that bound.
double complex_iff_wage(const ModelParams& params);

}  // namespace repadvice::wage
