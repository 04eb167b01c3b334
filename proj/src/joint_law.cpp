#include "repadvice/joint_law.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "repadvice/errors.hpp"
#include "repadvice/model_params.hpp"

namespace repadvice {

JointDistribution build_joint_law(double covariance, double base_rate, double prevalence) {
  const double a = base_rate;
  const double x = prevalence;
  std::array<double, 4> cells = {
      a * x + covariance,
      a * (1.0 - x) - covariance,
      (1.0 - a) * x - covariance,
      (1.0 - a) * (1.0 - x) + covariance,
  };
  static constexpr std::array<const char*, 4> kNames = {"p11", "p10", "p01", "p00"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < -kJointTolerance || cells[i] > 1.0 + kJointTolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "infeasible joint law of (A, X): cell " << kNames[i] << " = " << cells[i]
          << " (covariance " << covariance << ", base_rate " << a << ", prevalence " << x
          << ")";
      throw InfeasibleError(msg.str());
    }
    cells[i] = std::clamp(cells[i], 0.0, 1.0);
  }
  return {cells[0], cells[1], cells[2], cells[3]};
}

JointDistribution build_joint(int theta, const ModelParams& params) {
  if (theta != 0 && theta != 1) throw DomainError("theta must be 0 or 1");
  return build_joint_law(theta * params.sigma(), params.base_rate(), params.prevalence());
}

}  // namespace repadvice
