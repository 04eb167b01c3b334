#pragma once

namespace repadvice {

class ModelParams;

// Law of (A, X) on {0,1}^2; cell pAX.
struct JointDistribution {
  double p11 = 0.0;
  double p10 = 0.0;
  double p01 = 0.0;
  double p00 = 0.0;

  double base_rate() const { return p11 + p10; }
  double prevalence() const { return p11 + p01; }
  double covariance() const { return p11 - base_rate() * prevalence(); }
  double prob_match() const { return p11 + p00; }
};

// Cells below -1e-12 or above 1 + 1e-12 are infeasible; cells within the
// tolerance band are clamped onto [0, 1].
inline constexpr double kJointTolerance = 1e-12;

// Law with marginals Pr(A=1)=base_rate, Pr(X=1)=prevalence and covariance
// `covariance`. Throws InfeasibleError naming the offending cell.
JointDistribution build_joint_law(double covariance, double base_rate, double prevalence);

// Law of (A, X_theta) for the given type: covariance theta * sigma.
JointDistribution build_joint(int theta, const ModelParams& params);

}  // namespace repadvice
