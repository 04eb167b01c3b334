#include "repadvice/reputation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "repadvice/errors.hpp"

namespace repadvice {

std::string_view to_string(ShapeTag tag) {
  switch (tag) {
    case ShapeTag::kLinear:
      return "linear";
    case ShapeTag::kConvex:
      return "convex";
    case ShapeTag::kConcave:
      return "concave";
    case ShapeTag::kStep:
      return "step";
    case ShapeTag::kGeneral:
      return "general";
  }
  return "general";
}

namespace {

double probe(int i, int points) { return static_cast<double>(i) / (points - 1); }

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

bool is_nondecreasing_on_grid(const ReputationFunction::Map& f, int points) {
  double previous = f(0.0);
  for (int i = 1; i < points; ++i) {
    const double current = f(probe(i, points));
    if (!(current >= previous)) return false;
    previous = current;
  }
  return true;
}

bool is_convex_on_grid(const ReputationFunction& psi, int points, double tolerance) {
  for (int i = 1; i + 1 < points; ++i) {
    const double mid = psi(probe(i, points));
    const double chord = 0.5 * (psi(probe(i - 1, points)) + psi(probe(i + 1, points)));
    if (mid > chord + tolerance) return false;
  }
  return true;
}

bool is_concave_on_grid(const ReputationFunction& psi, int points, double tolerance) {
  for (int i = 1; i + 1 < points; ++i) {
    const double mid = psi(probe(i, points));
    const double chord = 0.5 * (psi(probe(i - 1, points)) + psi(probe(i + 1, points)));
    if (mid < chord - tolerance) return false;
  }
  return true;
}

ReputationFunction ReputationFunction::build(Map evaluate, std::optional<Map> derivative,
                                             ShapeTag tag, std::string description,
                                             bool allow_degenerate) {
  if (!evaluate) throw DomainError("reputation function needs an evaluate map");
  if (!is_nondecreasing_on_grid(evaluate, kProbePoints)) {
    throw DomainError("reputation function '" + description +
                      "' is not non-decreasing on the probe grid");
  }
  const bool degenerate = !(evaluate(0.0) < evaluate(1.0));
  if (degenerate && !allow_degenerate) {
    throw DomainError("reputation function '" + description + "' must satisfy psi(0) < psi(1)");
  }
  auto state = std::make_shared<State>();
  state->evaluate = std::move(evaluate);
  state->derivative = std::move(derivative);
  state->tag = tag;
  state->degenerate = degenerate;
  state->description = std::move(description);
  return ReputationFunction(std::move(state));
}

ReputationFunction ReputationFunction::create(Map evaluate, std::optional<Map> derivative,
                                              ShapeTag tag, std::string description) {
  return build(std::move(evaluate), std::move(derivative), tag, std::move(description), false);
}

ReputationFunction ReputationFunction::linear(double slope, double intercept) {
  if (!(slope > 0.0)) throw DomainError("linear reputation needs a positive slope");
  return build([=](double p) { return intercept + slope * p; },
               Map([=](double) { return slope; }), ShapeTag::kLinear,
               "linear(" + format_number(slope) + ")", false);
}

ReputationFunction ReputationFunction::power(double exponent, double scale) {
  if (!(exponent > 0.0)) throw DomainError("power reputation needs a positive exponent");
  if (!(scale >= 0.0)) throw DomainError("power reputation needs a non-negative scale");
  if (scale == 0.0) return constant(0.0);
  ShapeTag tag = ShapeTag::kConcave;
  if (exponent == 1.0) {
    tag = ShapeTag::kLinear;
  } else if (exponent > 1.0) {
    tag = ShapeTag::kConvex;
  }
  Map derivative = [=](double p) {
    if (exponent == 1.0) return scale;
    if (p <= 0.0) return exponent < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return scale * exponent * std::pow(p, exponent - 1.0);
  };
  Map value = [=](double p) {
    if (exponent == 0.5) return scale * std::sqrt(p);
    return scale * std::pow(p, exponent);
  };
  return build(std::move(value), std::move(derivative), tag,
               format_number(scale) + "*pi^" + format_number(exponent), false);
}

ReputationFunction ReputationFunction::step(double wage, double threshold) {
  if (!(wage >= 0.0)) throw DomainError("step reputation needs wage >= 0");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw DomainError("step reputation needs threshold in (0, 1)");
  }
  return build([=](double p) { return p >= threshold ? wage : 0.0; },
               Map([](double) { return 0.0; }), ShapeTag::kStep,
               "step(" + format_number(wage) + "," + format_number(threshold) + ")", true);
}

ReputationFunction ReputationFunction::tabulated(std::vector<double> knots,
                                                 std::vector<double> values, ShapeTag tag,
                                                 std::string description) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw DomainError("tabulated reputation needs matching knots/values, at least two");
  }
  if (knots.front() != 0.0 || knots.back() != 1.0) {
    throw DomainError("tabulated reputation knots must span [0, 1]");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) throw DomainError("tabulated knots must increase strictly");
  }
  // Index of the segment [knots[i], knots[i+1]] holding p (last segment at p == 1).
  auto segment = [knots](double p) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), p);
    const auto idx = static_cast<std::size_t>(std::distance(knots.begin(), it));
    return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, knots.size() - 2);
  };
  Map value = [knots, values, segment](double p) {
    const std::size_t i = segment(std::clamp(p, 0.0, 1.0));
    const double t = (p - knots[i]) / (knots[i + 1] - knots[i]);
    return values[i] + t * (values[i + 1] - values[i]);
  };
  Map slope = [knots, values, segment](double p) {
    const std::size_t i = segment(std::clamp(p, 0.0, 1.0));
    return (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
  };
  return build(std::move(value), std::move(slope), tag, std::move(description), false);
}

ReputationFunction ReputationFunction::constant(double value) {
  return build([=](double) { return value; }, Map([](double) { return 0.0; }), ShapeTag::kLinear,
               "constant(" + format_number(value) + ")", true);
}

double ReputationFunction::evaluate(double belief) const { return state_->evaluate(belief); }

double ReputationFunction::finite_difference_derivative(double belief) const {
  const double h = kDerivativeStep;
  const double lo = std::max(0.0, belief - h);
  const double hi = std::min(1.0, belief + h);
  return (evaluate(hi) - evaluate(lo)) / (hi - lo);
}

double ReputationFunction::derivative(double belief) const {
  if (state_->derivative) return (*state_->derivative)(belief);
  return finite_difference_derivative(belief);
}

ReputationFunction ReputationFunction::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("reputation scale factor must be >= 0");
  if (factor == 0.0) return constant(0.0);
  auto base = state_;
  std::optional<Map> derivative;
  if (base->derivative) {
    derivative = [base, factor](double p) { return factor * (*base->derivative)(p); };
  }
  return build([base, factor](double p) { return factor * base->evaluate(p); },
               std::move(derivative), base->tag,
               format_number(factor) + "*" + base->description, base->degenerate);
}

}  // namespace repadvice
