#include "repadvice/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "repadvice/errors.hpp"
#include "repadvice/joint_law.hpp"

namespace repadvice::ext {

NoisyObservation::NoisyObservation(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw DomainError("measurement error epsilon must lie in [0, 0.5], got " +
                      std::to_string(epsilon));
  }
}

AttentionProblem::AttentionProblem(double benefit, double cost_coeff, double sigma, double prior)
    : benefit_(benefit), cost_coeff_(cost_coeff), sigma_(sigma), prior_(prior) {
  if (!(benefit > 0.0)) throw DomainError("attention benefit b must be positive");
  if (!(sigma > 0.0 && sigma <= 0.25)) throw DomainError("sigma must lie in (0, 0.25]");
  if (!(prior > 0.0 && prior < 1.0)) throw DomainError("prior must lie in (0, 1)");
  const double bound = 2.0 * benefit * sigma * prior;
  if (!(cost_coeff > 0.0 && cost_coeff < bound)) {
    throw DomainError("attention cost c must lie in (0, 2 b sigma pi0) = (0, " +
                      std::to_string(bound) + "), got " + std::to_string(cost_coeff));
  }
}

double AttentionProblem::objective(double epsilon) const {
  const double gap = 0.5 - epsilon;
  return benefit_ * (0.5 + 2.0 * sigma_ * (1.0 - 2.0 * epsilon) * prior_) - cost_coeff_ * gap * gap;
}

double prob_match_general(int theta, const ModelParams& params) {
  if (theta != 0 && theta != 1) throw DomainError("theta must be 0 or 1");
  // Validates the type's joint law (ModelParams already checked theta = 1).
  const JointDistribution joint = build_joint(theta, params);
  (void)joint;
  const double a = params.base_rate();
  const double x = params.prevalence();
  return a * x + (1.0 - a) * (1.0 - x) + 2.0 * theta * params.sigma();
}

core::PosteriorPair posterior_general(const ModelParams& params) {
  const double m1 = prob_match_general(1, params);
  const double m0 = prob_match_general(0, params);
  const double prior = params.prior();
  core::PosteriorPair out;
  out.p_success = prior * m1 + (1.0 - prior) * m0;
  out.on_success = m1 * prior / out.p_success;
  out.on_failure = (1.0 - m1) * prior / (1.0 - out.p_success);
  return out;
}

double accuracy_gain_general(const ModelParams& params) {
  return 2.0 * params.sigma() * params.prior() -
         (2.0 * params.base_rate() - 1.0) * (1.0 - params.prevalence());
}

double delta_phi_general(const ModelParams& params, const ReputationFunction& psi) {
  const core::PosteriorPair post = posterior_general(params);
  const double expected_rep =
      post.p_success * psi(post.on_success) + (1.0 - post.p_success) * psi(post.on_failure);
  return accuracy_gain_general(params) + expected_rep - psi(params.prior());
}

Rule rule_choice_general(const ModelParams& params, const ReputationFunction& psi) {
  return delta_phi_general(params, psi) >= 0.0 ? Rule::kComplex : Rule::kSimple;
}

double sigma_from_correlation(double rho, double base_rate, double prevalence) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("correlation must lie in [-1, 1]");
  return rho * std::sqrt(base_rate * (1.0 - base_rate) * prevalence * (1.0 - prevalence));
}

bool lhs_increasing_in_a(double rho, double base_rate, double prevalence, double prior) {
  const double a = base_rate;
  const double x = prevalence;
  if (!(a > 0.0 && a < 1.0) || !(x > 0.0 && x < 1.0)) {
    throw DomainError("base rate and prevalence must lie in (0, 1)");
  }
  return rho * prior * (1.0 - 2.0 * a) > 2.0 * (1.0 - x) * std::sqrt(a * (1.0 - a) / (x * (1.0 - x)));
}

double noisy_accuracy(int theta, double sigma, const NoisyObservation& noise) {
  if (theta != 0 && theta != 1) throw DomainError("theta must be 0 or 1");
  return 0.5 + 2.0 * theta * noise.effective_sigma(sigma);
}

double noisy_accuracy(int theta, const ModelParams& params, const NoisyObservation& noise) {
  if (!params.has_even_base_rate()) {
    throw DomainError("noisy accuracy closed form assumes Pr(A=1) = 0.5");
  }
  return noisy_accuracy(theta, params.sigma(), noise);
}

core::PosteriorPair noisy_posterior(const ModelParams& params, const NoisyObservation& noise) {
  return core::posterior_from(noise.effective_sigma(params.sigma()), params.prior());
}

double delta_phi_noisy(const ModelParams& params, const ReputationFunction& psi,
                       const NoisyObservation& noise) {
  if (!params.has_even_base_rate()) {
    throw DomainError("noisy rule choice assumes Pr(A=1) = 0.5");
  }
  const core::PosteriorPair post = noisy_posterior(params, noise);
  const double expected_rep =
      post.p_success * psi(post.on_success) + (1.0 - post.p_success) * psi(post.on_failure);
  return 2.0 * noise.effective_sigma(params.sigma()) * params.prior() + expected_rep -
         psi(params.prior());
}

Rule choose_rule_noisy(const ModelParams& params, const ReputationFunction& psi,
                       const NoisyObservation& noise) {
  return delta_phi_noisy(params, psi, noise) >= 0.0 ? Rule::kComplex : Rule::kSimple;
}

AttentionChoice optimal_error_rate(double benefit, double cost_coeff, double sigma, double prior) {
  if (!(benefit > 0.0) || !(cost_coeff > 0.0)) {
    throw DomainError("attention benefit and cost must be positive");
  }
  AttentionChoice out;
  out.unclamped = 0.5 - 2.0 * benefit * sigma * prior / cost_coeff;
  out.epsilon_star = std::clamp(out.unclamped, 0.0, 0.5);
  out.clamped = out.epsilon_star != out.unclamped;
  out.accuracy_competent = 0.5 + 2.0 * (1.0 - 2.0 * out.epsilon_star) * sigma;
  out.accuracy_incompetent = 0.5;
  return out;
}

AttentionChoice optimal_attention(const AttentionProblem& problem) {
  return optimal_error_rate(problem.benefit(), problem.cost_coeff(), problem.sigma(),
                            problem.prior());
}

}  // namespace repadvice::ext
