#pragma once

#include "repadvice/model_params.hpp"
#include "repadvice/reputation.hpp"

// Belief updating, expected payoffs and rule choice when neither party knows
// the expert's competence.
namespace repadvice::core {

// Posterior Pr(theta = 1 | r = C, Y) and the success probability Pr(Y = 1 | r = C).
struct PosteriorPair {
  double on_success = 0.0;
  double on_failure = 0.0;
  double p_success = 0.0;

  double mean() const { return p_success * on_success + (1.0 - p_success) * on_failure; }
};

// Partial derivatives of the complex-rule posteriors.
struct PosteriorPartials {
  double success_d_sigma = 0.0;
  double success_d_prior = 0.0;
  double failure_d_sigma = 0.0;
  double failure_d_prior = 0.0;
};

// Pr(Y = 1 | r, theta). Requires base_rate == 0.5 (DomainError otherwise).
double prob_correct_given_type(Rule rule, int theta, const ModelParams& params);

// Pr(Y = 1 | r). Requires base_rate == 0.5.
double prob_correct_marginal(Rule rule, const ModelParams& params);

PosteriorPair posterior(const ModelParams& params);

// Bayes map for an arbitrary covariance in [0, 0.25] and prior in [0, 1].
// sigma == 0 returns the prior on both outcomes.
PosteriorPair posterior_from(double sigma, double prior);

// E[psi(pi_1(Y))].
double expected_reputation_complex(const ModelParams& params, const ReputationFunction& psi);

PayoffBreakdown expected_payoff(Rule rule, const ModelParams& params,
                                const ReputationFunction& psi);

// Gain of the complex rule over the simple rule: 2 sigma pi0 + Psi - psi(pi0).
double delta_phi(const ModelParams& params, const ReputationFunction& psi);

// Complex iff delta_phi >= 0; exact comparison, ties go to Complex.
Rule choose_rule(const ModelParams& params, const ReputationFunction& psi);

// Largest w for which psi = w R still yields the complex rule, for concave
// non-decreasing R. +inf when R(pi0) - E[R(pi_1(Y))] <= 0.
double wage_bound_concave(const ModelParams& params, const ReputationFunction& reputation_shape);

PosteriorPartials posterior_partials(const ModelParams& params);

// d delta_phi / d prior via the chain rule. psi' comes from psi.derivative().
double delta_phi_prior_derivative(const ModelParams& params, const ReputationFunction& psi);

// Wage above which delta_phi stops increasing in the prior when psi = w R.
// +inf when the denominator is not positive (delta_phi increasing for all w).
double w_star(const ModelParams& params, const ReputationFunction& reputation_shape);

}  // namespace repadvice::core
