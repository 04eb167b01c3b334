#pragma once

#include "repadvice/core_model.hpp"
#include "repadvice/model_params.hpp"
#include "repadvice/reputation.hpp"

// General base rate Pr(A=1) = a and measurement errors in the observed condition.
namespace repadvice::ext {

// Pr(X_hat != X) = epsilon, epsilon in [0, 0.5].
class NoisyObservation {
 public:
  explicit NoisyObservation(double epsilon);
  double epsilon() const { return epsilon_; }
  // Covariance of A with the observed condition: (1 - 2 eps) sigma.
  double effective_sigma(double sigma) const { return (1.0 - 2.0 * epsilon_) * sigma; }

 private:
  double epsilon_;
};

// Advisee's attention problem: benefit b from a correct action and cost
// c (0.5 - eps)^2 from observing the condition with error eps. Construction
// enforces 0 < c < 2 b sigma pi0.
class AttentionProblem {
 public:
  AttentionProblem(double benefit, double cost_coeff, double sigma, double prior);

  double benefit() const { return benefit_; }
  double cost_coeff() const { return cost_coeff_; }
  double sigma() const { return sigma_; }
  double prior() const { return prior_; }
  // b (0.5 + 2 sigma (1 - 2 eps) pi0) - c (0.5 - eps)^2
  double objective(double epsilon) const;

 private:
  double benefit_;
  double cost_coeff_;
  double sigma_;
  double prior_;
};

struct AttentionChoice {
  double epsilon_star = 0.0;
  double unclamped = 0.0;  // 0.5 - 2 b sigma pi0 / c
  bool clamped = false;
  double accuracy_competent = 0.0;
  double accuracy_incompetent = 0.0;
};

// Pr(A = X_theta) = a x + (1 - a)(1 - x) + 2 theta sigma.
double prob_match_general(int theta, const ModelParams& params);

// Bayes posterior under the complex rule with the general success probabilities.
core::PosteriorPair posterior_general(const ModelParams& params);

// 2 sigma pi0 - (2a - 1)(1 - x): accuracy gain of the complex rule.
double accuracy_gain_general(const ModelParams& params);

// Gain of the complex rule under a general base rate.
double delta_phi_general(const ModelParams& params, const ReputationFunction& psi);

// Complex iff accuracy_gain_general >= psi(pi0) - Psi_general; ties to Complex.
Rule rule_choice_general(const ModelParams& params, const ReputationFunction& psi);

// sigma = rho sqrt(a (1 - a) x (1 - x)).
double sigma_from_correlation(double rho, double base_rate, double prevalence);

// True iff the accuracy gain is increasing in the base rate when sigma is
// tied to a fixed correlation rho.
bool lhs_increasing_in_a(double rho, double base_rate, double prevalence, double prior);

// Pr(A = X_hat_theta) = 0.5 + 2 theta (1 - 2 eps) sigma. Requires base_rate 0.5.
double noisy_accuracy(int theta, const ModelParams& params, const NoisyObservation& noise);
double noisy_accuracy(int theta, double sigma, const NoisyObservation& noise);

// Complex-rule posterior when the advisee knows the error rate.
core::PosteriorPair noisy_posterior(const ModelParams& params, const NoisyObservation& noise);

// Gain of the complex rule when the advisee observes the condition with noise.
double delta_phi_noisy(const ModelParams& params, const ReputationFunction& psi,
                       const NoisyObservation& noise);
Rule choose_rule_noisy(const ModelParams& params, const ReputationFunction& psi,
                       const NoisyObservation& noise);

// Clamped maximizer eps* of the attention objective for any c > 0.
AttentionChoice optimal_error_rate(double benefit, double cost_coeff, double sigma, double prior);

AttentionChoice optimal_attention(const AttentionProblem& problem);

}  // namespace repadvice::ext
