#include "repadvice/wage_model.hpp"

#include <algorithm>

#include "repadvice/errors.hpp"

namespace repadvice::wage {

std::string_view to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::kComplexAlways:
      return "complex_always";
    case RegimeCase::kCrossAtThresholdAndDiscontinuity:
      return "cross_at_threshold_and_discontinuity";
    case RegimeCase::kInteriorIntersection:
      return "interior_intersection";
  }
  return "complex_always";
}

StepReputation::StepReputation(double wage, double threshold) : wage_(wage), threshold_(threshold) {
  if (!(wage >= 0.0)) throw DomainError("wage must be >= 0");
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("threshold must lie in (0, 1)");
}

ReputationFunction StepReputation::as_function() const {
  return ReputationFunction::step(wage_, threshold_);
}

namespace {

void require_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma <= 0.25)) throw DomainError("sigma must lie in (0, 0.25]");
}

}  // namespace

Thresholds thresholds(double sigma, const StepReputation& rep) {
  require_sigma(sigma);
  const double t = rep.threshold();
  const double spread = 4.0 * sigma * (1.0 - t);
  Thresholds out;
  out.lower = t / (1.0 + spread);
  out.upper = t / (1.0 - spread);
  out.upper_at_least_one = out.upper >= 1.0;
  return out;
}

PayoffBreakdown expected_payoff_wage(Rule rule, const ModelParams& params,
                                     const StepReputation& rep) {
  if (!params.has_even_base_rate()) throw DomainError("wage regime assumes Pr(A=1) = 0.5");
  const double prior = params.prior();
  const double w = rep.wage();
  if (rule == Rule::kSimple) return PayoffBreakdown::of(0.5, prior >= rep.threshold() ? w : 0.0);

  const double accuracy = 0.5 + 2.0 * params.sigma() * prior;
  const Thresholds th = thresholds(params.sigma(), rep);
  if (prior < th.lower) return PayoffBreakdown::of(accuracy, 0.0);
  if (prior < th.upper) return PayoffBreakdown::of(accuracy, w * accuracy);
  return PayoffBreakdown::of(accuracy, w);
}

double pi_dagger(double sigma, double wage) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(wage >= 0.0)) throw DomainError("wage must be >= 0");
  return wage / (4.0 * sigma * (1.0 + wage));
}

WageRegimeReport classify_regime(double sigma, const StepReputation& rep) {
  WageRegimeReport report;
  report.thresholds = thresholds(sigma, rep);
  report.pi_dagger = pi_dagger(sigma, rep.wage());
  if (report.pi_dagger <= rep.threshold()) {
    report.case_label = RegimeCase::kComplexAlways;
    return report;
  }
  const double upper = report.thresholds.upper;
  report.case_label = upper <= report.pi_dagger ? RegimeCase::kCrossAtThresholdAndDiscontinuity
                                                : RegimeCase::kInteriorIntersection;
  const double hi = std::min({report.pi_dagger, upper, 1.0});
  report.simple_interval = PriorInterval{rep.threshold(), hi};
  return report;
}

double complex_iff_wage(const ModelParams& params) {
  const double load = 4.0 * params.sigma() * params.prior();
  if (!(load < 1.0)) throw DomainError("4 sigma pi0 must be below 1");
  return load / (1.0 - load);
}

}  // namespace repadvice::wage
