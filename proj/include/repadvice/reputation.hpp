#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace repadvice {

enum class ShapeTag { kLinear, kConvex, kConcave, kStep, kGeneral };

std::string_view to_string(ShapeTag tag);

// A non-decreasing reputation payoff psi : [0, 1] -> R.
//
// The shape tag is declared by whoever builds the function; it is never
// inferred. Monotonicity is checked on a probe grid of 1001 equally spaced
// points at construction. Instances are immutable and cheap to copy.
class ReputationFunction {
 public:
  using Map = std::function<double(double)>;

  static constexpr int kProbePoints = 1001;
  // Central-difference step used when no closed-form derivative is supplied.
  static constexpr double kDerivativeStep = 1e-6;

  // General factory: requires non-decreasing and psi(0) < psi(1).
  static ReputationFunction create(Map evaluate, std::optional<Map> derivative,
                                   ShapeTag tag, std::string description = "general");

  // psi(pi) = intercept + slope * pi, slope > 0.
  static ReputationFunction linear(double slope = 1.0, double intercept = 0.0);
  // psi(pi) = scale * pi^exponent. Convex for exponent >= 1, concave for
  // exponent in (0, 1]. scale == 0 yields the degenerate zero function.
  static ReputationFunction power(double exponent, double scale = 1.0);
  static ReputationFunction sqrt(double scale = 1.0) { return power(0.5, scale); }
  // psi(pi) = wage if pi >= threshold else 0. wage == 0 is degenerate.
  static ReputationFunction step(double wage, double threshold);
  // Piecewise-linear interpolation through (knots[i], values[i]); knots must
  // start at 0, end at 1 and increase strictly.
  static ReputationFunction tabulated(std::vector<double> knots, std::vector<double> values,
                                      ShapeTag tag, std::string description = "tabulated");
  // psi == value. Violates psi(0) < psi(1); flagged as degenerate.
  static ReputationFunction constant(double value);

  double operator()(double belief) const { return evaluate(belief); }
  double evaluate(double belief) const;

  // Closed-form derivative when supplied, otherwise a central difference with
  // step kDerivativeStep clipped to [0, 1] (one-sided at the endpoints).
  double derivative(double belief) const;
  bool has_closed_form_derivative() const { return state_->derivative.has_value(); }
  double finite_difference_derivative(double belief) const;

  ShapeTag shape() const { return state_->tag; }
  bool is_linear_or_convex() const {
    return state_->tag == ShapeTag::kLinear || state_->tag == ShapeTag::kConvex;
  }
  // True when psi(0) == psi(1), i.e. no reputation motive at all.
  bool is_degenerate() const { return state_->degenerate; }
  const std::string& description() const { return state_->description; }

  // Returns psi scaled by `factor` >= 0 (factor 0 gives the degenerate zero function).
  ReputationFunction scaled(double factor) const;

 private:
  struct State {
    Map evaluate;
    std::optional<Map> derivative;
    ShapeTag tag = ShapeTag::kGeneral;
    bool degenerate = false;
    std::string description;
  };

  explicit ReputationFunction(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  static ReputationFunction build(Map evaluate, std::optional<Map> derivative, ShapeTag tag,
                                  std::string description, bool allow_degenerate);

  std::shared_ptr<const State> state_;
};

// Probe-grid checks used by construction and by property tests that audit
// declared shape tags.
bool is_nondecreasing_on_grid(const ReputationFunction::Map& f, int points);
bool is_convex_on_grid(const ReputationFunction& psi, int points, double tolerance = 1e-12);
bool is_concave_on_grid(const ReputationFunction& psi, int points, double tolerance = 1e-12);

}  // namespace repadvice
