#include "repadvice/model_params.hpp"

#include <cmath>
#include <string>

#include "repadvice/errors.hpp"
#include "repadvice/joint_law.hpp"

namespace repadvice {

std::string_view to_string(Rule rule) { return rule == Rule::kSimple ? "simple" : "complex"; }

namespace {

void require_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(value));
  }
}

}  // namespace

ModelParams::ModelParams(double sigma, double prior, double prevalence, double base_rate)
    : sigma_(sigma), prior_(prior), prevalence_(prevalence), base_rate_(base_rate) {
  if (!(sigma > 0.0 && sigma <= 0.25)) {
    throw DomainError("sigma must lie in (0, 0.25], got " + std::to_string(sigma));
  }
  require_open_unit(prior, "prior");
  require_open_unit(prevalence, "prevalence");
  require_open_unit(base_rate, "base_rate");
  // Throws InfeasibleError when the competent type's law is not a distribution.
  build_joint_law(sigma, base_rate, prevalence);
}

ModelParams ModelParams::with_sigma(double sigma) const {
  return ModelParams(sigma, prior_, prevalence_, base_rate_);
}

ModelParams ModelParams::with_prior(double prior) const {
  return ModelParams(sigma_, prior, prevalence_, base_rate_);
}

}  // namespace repadvice
