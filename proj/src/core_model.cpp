#include "repadvice/core_model.hpp"

#include <limits>

#include "repadvice/errors.hpp"

namespace repadvice::core {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void require_even_base_rate(const ModelParams& params) {
  if (!params.has_even_base_rate()) {
    throw DomainError("closed forms assume Pr(A=1) = 0.5; use the general base-rate extension");
  }
}

// psi'(pi) * d pi / d prior, with 0 * inf taken as 0 (psi' may blow up at a
// posterior of 0 exactly where that posterior stops moving with the prior).
double chain(double dpsi, double dbelief) { return dbelief == 0.0 ? 0.0 : dpsi * dbelief; }

// 2 sigma [R(pi1(1)) - R(pi1(0))] + E[R'(pi1(Y)) d pi1(Y)/d prior] - R'(prior)
double prior_slope_bracket(const ModelParams& params, const ReputationFunction& shape) {
  const PosteriorPair post = posterior(params);
  const PosteriorPartials d = posterior_partials(params);
  const double spread = shape(post.on_success) - shape(post.on_failure);
  const double moved = post.p_success * chain(shape.derivative(post.on_success), d.success_d_prior) +
                       (1.0 - post.p_success) * chain(shape.derivative(post.on_failure), d.failure_d_prior);
  return 2.0 * params.sigma() * spread + moved - shape.derivative(params.prior());
}

}  // namespace

double prob_correct_given_type(Rule rule, int theta, const ModelParams& params) {
  require_even_base_rate(params);
  if (theta != 0 && theta != 1) throw DomainError("theta must be 0 or 1");
  if (rule == Rule::kSimple) return 0.5;
  return 0.5 + 2.0 * theta * params.sigma();
}

double prob_correct_marginal(Rule rule, const ModelParams& params) {
  require_even_base_rate(params);
  if (rule == Rule::kSimple) return 0.5;
  return 0.5 + 2.0 * params.sigma() * params.prior();
}

PosteriorPair posterior_from(double sigma, double prior) {
  const double s4 = 4.0 * sigma;
  PosteriorPair out;
  out.p_success = 0.5 + 2.0 * sigma * prior;
  out.on_success = (1.0 + s4) * prior / (1.0 + s4 * prior);
  out.on_failure = (1.0 - s4) * prior / (1.0 - s4 * prior);
  return out;
}

PosteriorPair posterior(const ModelParams& params) {
  return posterior_from(params.sigma(), params.prior());
}

double expected_reputation_complex(const ModelParams& params, const ReputationFunction& psi) {
  const PosteriorPair post = posterior(params);
  return post.p_success * psi(post.on_success) + (1.0 - post.p_success) * psi(post.on_failure);
}

PayoffBreakdown expected_payoff(Rule rule, const ModelParams& params,
                                const ReputationFunction& psi) {
  if (rule == Rule::kSimple) return PayoffBreakdown::of(0.5, psi(params.prior()));
  return PayoffBreakdown::of(0.5 + 2.0 * params.sigma() * params.prior(),
                             expected_reputation_complex(params, psi));
}

double delta_phi(const ModelParams& params, const ReputationFunction& psi) {
  return 2.0 * params.sigma() * params.prior() + expected_reputation_complex(params, psi) -
         psi(params.prior());
}

Rule choose_rule(const ModelParams& params, const ReputationFunction& psi) {
  return delta_phi(params, psi) >= 0.0 ? Rule::kComplex : Rule::kSimple;
}

double wage_bound_concave(const ModelParams& params, const ReputationFunction& reputation_shape) {
  // Jensen: linear or convex shapes never lose reputation in expectation.
  if (reputation_shape.is_linear_or_convex()) return kInfinity;
  const double loss =
      reputation_shape(params.prior()) - expected_reputation_complex(params, reputation_shape);
  if (!(loss > 0.0)) return kInfinity;
  return 2.0 * params.sigma() * params.prior() / loss;
}

PosteriorPartials posterior_partials(const ModelParams& params) {
  const double s = params.sigma();
  const double p = params.prior();
  const double up = 1.0 + 4.0 * s * p;
  const double down = 1.0 - 4.0 * s * p;
  PosteriorPartials d;
  d.success_d_sigma = 4.0 * p * (1.0 - p) / (up * up);
  d.success_d_prior = (1.0 + 4.0 * s) / (up * up);
  d.failure_d_sigma = -4.0 * p * (1.0 - p) / (down * down);
  d.failure_d_prior = (1.0 - 4.0 * s) / (down * down);
  return d;
}

double delta_phi_prior_derivative(const ModelParams& params, const ReputationFunction& psi) {
  return 2.0 * params.sigma() + prior_slope_bracket(params, psi);
}

double w_star(const ModelParams& params, const ReputationFunction& reputation_shape) {
  // For linear R the bracket vanishes identically (martingale property).
  if (reputation_shape.shape() == ShapeTag::kLinear) return kInfinity;
  const double denominator = -prior_slope_bracket(params, reputation_shape);
  if (!(denominator > 0.0)) return kInfinity;
  return 2.0 * params.sigma() / denominator;
}

}  // namespace repadvice::core
