#include "repadvice/sim_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "repadvice/core_model.hpp"
#include "repadvice/errors.hpp"
#include "repadvice/parallel.hpp"
#include "repadvice/philox.hpp"

namespace repadvice::sim {

void SimConfig::validate() const {
  if (n_draws < 1) throw DomainError("simulation needs at least one draw");
  if (workers < 1) throw DomainError("simulation needs at least one worker");
}

bool SimEstimate::agrees_with(double target, double k) const {
  return std::abs(mean - target) <= k * std_error;
}

namespace {

enum Stream : std::uint64_t { kGameStream = 0, kDeltaPhiStream = 1, kKnownTypeStream = 2 };

// Running count, mean and sum of squared deviations (Welford; Chan et al. merge).
struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double delta = o.mean - mean;
    n += o.n;
    mean += delta * nb / static_cast<double>(n);
    m2 += o.m2 + delta * delta * na * nb / static_cast<double>(n);
  }
  SimEstimate estimate() const {
    SimEstimate e;
    e.n = n;
    e.mean = mean;
    if (n > 1) {
      const double dn = static_cast<double>(n);
      e.std_error = std::sqrt(std::max(0.0, m2 / (dn - 1.0)) / dn);
    }
    return e;
  }
};

// One draw's uniforms.
struct Uniforms {
  double type;
  double cell;
  double flip;
  double mix;
};

Uniforms draw_uniforms(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const auto bits = Philox4x64::generate({index, 0, 0, 0}, {seed, stream});
  return {Philox4x64::to_unit(bits[0]), Philox4x64::to_unit(bits[1]),
          Philox4x64::to_unit(bits[2]), Philox4x64::to_unit(bits[3])};
}

// Samples (A, X) from the cell law using one uniform.
std::pair<int, int> sample_cell(const JointDistribution& law, double u) {
  if (u < law.p11) return {1, 1};
  if (u < law.p11 + law.p10) return {1, 0};
  if (u < law.p11 + law.p10 + law.p01) return {0, 1};
  return {0, 0};
}

// Runs `per_draw(index, acc)` over all draws, block by block, and merges the
// block accumulators in block order.
template <typename Acc, typename PerDraw>
Acc run_blocks(const SimConfig& config, PerDraw per_draw) {
  config.validate();
  const std::uint64_t blocks = (config.n_draws + kBlockSize - 1) / kBlockSize;
  std::vector<Acc> partial(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), config.workers, [&](std::size_t b) {
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min(config.n_draws, begin + kBlockSize);
    Acc& acc = partial[b];
    for (std::uint64_t d = begin; d < end; ++d) per_draw(d, acc);
  });
  Acc total;
  for (const Acc& acc : partial) total.merge(acc);
  return total;
}

enum Slot : std::size_t {
  kSuccessS,
  kSuccessC,
  kSuccessS0,
  kSuccessS1,
  kSuccessC0,
  kSuccessC1,
  kPosteriorS,
  kPosteriorC,
  kPosterior,
  kReputationS,
  kReputationC,
  kReputation,
  kPayoffS,
  kPayoffC,
  kPayoff,
  kThetaGivenC0,
  kThetaGivenC1,
  kCovCompetent,
  kShareComplex,
  kSlotCount
};

constexpr std::array<const char*, kSlotCount> kSlotNames = {
    "p_success|S",       "p_success|C",       "p_success|S,theta=0", "p_success|S,theta=1",
    "p_success|C,theta=0", "p_success|C,theta=1", "posterior|S",       "posterior|C",
    "posterior",         "reputation|S",      "reputation|C",       "reputation",
    "payoff|S",          "payoff|C",          "payoff",             "theta_freq|C,Y=0",
    "theta_freq|C,Y=1",  "cov_AX|theta=1",    "share_complex"};

struct GameAcc {
  std::array<Moments, kSlotCount> slots;
  void merge(const GameAcc& o) {
    for (std::size_t i = 0; i < kSlotCount; ++i) slots[i].merge(o.slots[i]);
  }
};

// Pr(Y = 1 | C, theta) including measurement error.
double complex_success(const JointDistribution& law, double epsilon) {
  const double match = law.prob_match();
  return (1.0 - epsilon) * match + epsilon * (1.0 - match);
}

// Bayes update of `belief` on the complex-rule outcome.
double bayes_complex(double belief, double success1, double success0, int y) {
  const double l1 = y == 1 ? success1 : 1.0 - success1;
  const double l0 = y == 1 ? success0 : 1.0 - success0;
  const double num = l1 * belief;
  const double den = num + l0 * (1.0 - belief);
  return den > 0.0 ? num / den : belief;
}

}  // namespace

namespace {

// Complex-rule probability per type and the advisee's beliefs after each rule.
struct PlayPlan {
  std::array<double, 2> p_complex{};
  double belief_simple = 0.0;
  double belief_complex = 0.0;
};

PlayPlan resolve_policy(const ModelParams& params, const ReputationFunction& psi,
                        const RulePolicy& policy,
                        const std::optional<ext::NoisyObservation>& noise) {
  const double prior = params.prior();
  PlayPlan plan{{}, prior, prior};
  if (const auto* fixed = std::get_if<FixedRule>(&policy)) {
    const double p = fixed->rule == Rule::kComplex ? 1.0 : 0.0;
    plan.p_complex = {p, p};
  } else if (std::holds_alternative<OptimalRule>(policy)) {
    Rule best;
    if (noise) {
      best = ext::choose_rule_noisy(params, psi, *noise);
    } else if (params.has_even_base_rate()) {
      best = core::choose_rule(params, psi);
    } else {
      best = ext::rule_choice_general(params, psi);
    }
    const double p = best == Rule::kComplex ? 1.0 : 0.0;
    plan.p_complex = {p, p};
  } else {
    const auto& pair = std::get<known::StrategyPair>(policy);
    plan.p_complex = {pair.p0(), pair.p1()};
    plan.belief_simple = known::intermediate_belief(Rule::kSimple, prior, pair).value;
    plan.belief_complex = known::intermediate_belief(Rule::kComplex, prior, pair).value;
  }
  return plan;
}

void require_noise_support(const ModelParams& params,
                           const std::optional<ext::NoisyObservation>& noise) {
  if (noise && !params.has_even_base_rate()) {
    throw DomainError("measurement errors are only modelled for Pr(A=1) = 0.5");
  }
}

}  // namespace

SimReport simulate_game(const ModelParams& params, const ReputationFunction& psi,
                        const RulePolicy& policy, const std::optional<ext::NoisyObservation>& noise,
                        const SimConfig& config) {
  require_noise_support(params, noise);
  const double epsilon = noise ? noise->epsilon() : 0.0;
  const std::array<JointDistribution, 2> law = {build_joint(0, params), build_joint(1, params)};
  const double success0 = complex_success(law[0], epsilon);
  const double success1 = complex_success(law[1], epsilon);
  const double prior = params.prior();
  const PlayPlan plan = resolve_policy(params, psi, policy, noise);
  const auto& p_complex = plan.p_complex;
  const double belief_simple = plan.belief_simple;
  const double belief_complex = plan.belief_complex;

  // Posterior and reputation take only three values: simple, complex-fail, complex-success.
  const std::array<double, 2> post_complex = {
      bayes_complex(belief_complex, success1, success0, 0),
      bayes_complex(belief_complex, success1, success0, 1)};
  const std::array<double, 2> rep_complex = {psi(post_complex[0]), psi(post_complex[1])};
  const double rep_simple = psi(belief_simple);
  const double a = params.base_rate();
  const double x = params.prevalence();

  const GameAcc total = run_blocks<GameAcc>(config, [&](std::uint64_t d, GameAcc& acc) {
    const Uniforms u = draw_uniforms(config.seed, kGameStream, d);
    const int theta = u.type < prior ? 1 : 0;
    const auto [action_good, condition] = sample_cell(law[static_cast<std::size_t>(theta)], u.cell);
    const int observed = u.flip < epsilon ? 1 - condition : condition;
    const bool complex = u.mix < p_complex[static_cast<std::size_t>(theta)];
    auto& s = acc.slots;
    if (theta == 1) s[kCovCompetent].add((action_good - a) * (condition - x));
    s[kShareComplex].add(complex ? 1.0 : 0.0);
    if (complex) {
      const int y = action_good == observed ? 1 : 0;
      const double belief = post_complex[static_cast<std::size_t>(y)];
      const double rep = rep_complex[static_cast<std::size_t>(y)];
      s[kSuccessC].add(y);
      s[theta == 1 ? kSuccessC1 : kSuccessC0].add(y);
      s[kPosteriorC].add(belief);
      s[kPosterior].add(belief);
      s[kReputationC].add(rep);
      s[kReputation].add(rep);
      s[kPayoffC].add(y + rep);
      s[kPayoff].add(y + rep);
      s[y == 1 ? kThetaGivenC1 : kThetaGivenC0].add(theta);
    } else {
      const int y = action_good;
      s[kSuccessS].add(y);
      s[theta == 1 ? kSuccessS1 : kSuccessS0].add(y);
      s[kPosteriorS].add(belief_simple);
      s[kPosterior].add(belief_simple);
      s[kReputationS].add(rep_simple);
      s[kReputation].add(rep_simple);
      s[kPayoffS].add(y + rep_simple);
      s[kPayoff].add(y + rep_simple);
    }
  });

  SimReport report;
  for (std::size_t i = 0; i < kSlotCount; ++i) {
    if (total.slots[i].n > 0) report.emplace(kSlotNames[i], total.slots[i].estimate());
  }
  return report;
}

std::map<std::string, double> expected_statistics(
    const ModelParams& params, const ReputationFunction& psi, const RulePolicy& policy,
    const std::optional<ext::NoisyObservation>& noise) {
  require_noise_support(params, noise);
  const double epsilon = noise ? noise->epsilon() : 0.0;
  const std::array<double, 2> m = {complex_success(build_joint(0, params), epsilon),
                                   complex_success(build_joint(1, params), epsilon)};
  const double prior = params.prior();
  const double a = params.base_rate();
  const PlayPlan plan = resolve_policy(params, psi, policy, noise);
  const double share = prior * plan.p_complex[1] + (1.0 - prior) * plan.p_complex[0];

  std::map<std::string, double> out;
  out["share_complex"] = share;
  out["posterior"] = prior;
  out["cov_AX|theta=1"] = params.sigma();
  double rep_c = 0.0, pay_c = 0.0, rep_s = 0.0, pay_s = 0.0;
  if (share > 0.0) {
    const double pc = plan.belief_complex;
    const double success = pc * m[1] + (1.0 - pc) * m[0];
    const double post1 = bayes_complex(pc, m[1], m[0], 1);
    const double post0 = bayes_complex(pc, m[1], m[0], 0);
    rep_c = success * psi(post1) + (1.0 - success) * psi(post0);
    pay_c = success + rep_c;
    out["p_success|C"] = success;
    if (plan.p_complex[0] > 0.0) out["p_success|C,theta=0"] = m[0];
    if (plan.p_complex[1] > 0.0) out["p_success|C,theta=1"] = m[1];
    out["posterior|C"] = pc;
    out["reputation|C"] = rep_c;
    out["payoff|C"] = pay_c;
    if (success > 0.0) out["theta_freq|C,Y=1"] = post1;
    if (success < 1.0) out["theta_freq|C,Y=0"] = post0;
  }
  if (share < 1.0) {
    rep_s = psi(plan.belief_simple);
    pay_s = a + rep_s;
    out["p_success|S"] = a;
    if (plan.p_complex[0] < 1.0) out["p_success|S,theta=0"] = a;
    if (plan.p_complex[1] < 1.0) out["p_success|S,theta=1"] = a;
    out["posterior|S"] = plan.belief_simple;
    out["reputation|S"] = rep_s;
    out["payoff|S"] = pay_s;
  }
  out["reputation"] = share * rep_c + (1.0 - share) * rep_s;
  out["payoff"] = share * pay_c + (1.0 - share) * pay_s;
  return out;
}

namespace {

struct ScalarAcc {
  Moments m;
  void merge(const ScalarAcc& o) { m.merge(o.m); }
};

}  // namespace

SimEstimate mc_delta_phi(const ModelParams& params, const ReputationFunction& psi,
                         const SimConfig& config) {
  const std::array<JointDistribution, 2> law = {build_joint(0, params), build_joint(1, params)};
  const double success0 = law[0].prob_match();
  const double success1 = law[1].prob_match();
  const double prior = params.prior();
  const std::array<double, 2> rep_complex = {
      psi(bayes_complex(prior, success1, success0, 0)),
      psi(bayes_complex(prior, success1, success0, 1))};
  const double rep_simple = psi(prior);

  const ScalarAcc total = run_blocks<ScalarAcc>(config, [&](std::uint64_t d, ScalarAcc& acc) {
    const Uniforms u = draw_uniforms(config.seed, kDeltaPhiStream, d);
    const int theta = u.type < prior ? 1 : 0;
    const auto [action_good, condition] = sample_cell(law[static_cast<std::size_t>(theta)], u.cell);
    const int y_complex = action_good == condition ? 1 : 0;
    const double complex_payoff = y_complex + rep_complex[static_cast<std::size_t>(y_complex)];
    const double simple_payoff = action_good + rep_simple;
    acc.m.add(complex_payoff - simple_payoff);
  });
  return total.m.estimate();
}

SimEstimate mc_known_type_payoff(int theta, double sigma, double prior,
                                 const known::StrategyPair& conjecture, double wage,
                                 const SimConfig& config) {
  if (theta != 0 && theta != 1) throw DomainError("theta must be 0 or 1");
  const ModelParams params(sigma, prior);
  const JointDistribution law = build_joint(theta, params);
  const ReputationFunction psi = ReputationFunction::step(wage, prior);
  const double p = conjecture.of(theta);
  const double rep_simple =
      psi(known::posterior_known_type(Rule::kSimple, 0, sigma, prior, conjecture).value);
  const std::array<double, 2> rep_complex = {
      psi(known::posterior_known_type(Rule::kComplex, 0, sigma, prior, conjecture).value),
      psi(known::posterior_known_type(Rule::kComplex, 1, sigma, prior, conjecture).value)};

  const ScalarAcc total = run_blocks<ScalarAcc>(config, [&](std::uint64_t d, ScalarAcc& acc) {
    const Uniforms u = draw_uniforms(config.seed, kKnownTypeStream, d);
    const auto [action_good, condition] = sample_cell(law, u.cell);
    if (u.mix < p) {
      const int y = action_good == condition ? 1 : 0;
      acc.m.add(y + rep_complex[static_cast<std::size_t>(y)]);
    } else {
      acc.m.add(action_good + rep_simple);
    }
  });
  return total.m.estimate();
}

}  // namespace repadvice::sim
