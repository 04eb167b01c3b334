#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repadvice/model_params.hpp"
#include "repadvice/reputation.hpp"

// Signaling game in which the expert knows his type. A StrategyPair (p0, p1)
// gives the probability that each type chooses the complex rule; the same
// pair serves as the advisee's conjecture.
namespace repadvice::known {

// Boundary comparisons in the closed forms (branch keys, knife edge).
inline constexpr double kBoundaryTolerance = 1e-9;
// The CLI warns when the wage is within this relative distance of the knife edge.
inline constexpr double kKnifeEdgeWarnBand = 1e-3;

class StrategyPair {
 public:
  StrategyPair(double p0, double p1);
  double p0() const { return p0_; }
  double p1() const { return p1_; }
  double of(int theta) const { return theta == 1 ? p1_ : p0_; }
  bool is_pooling() const { return p0_ == p1_; }

 private:
  double p0_;
  double p1_;
};

struct Belief {
  double value = 0.0;
  bool off_path = false;  // Bayes undefined; passive belief returned
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double p, double tolerance = 0.0) const;
};

// Set-valued argmax: a union of isolated points and intervals in [0, 1].
class BestResponseSet {
 public:
  static BestResponseSet point(double p);
  BestResponseSet& add_point(double p);
  BestResponseSet& add_interval(Interval interval);

  const std::vector<double>& points() const { return points_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(double p, double tolerance = kBoundaryTolerance) const;
  bool is_singleton() const { return intervals_.empty() && points_.size() == 1; }
  // e.g. "{0} U [0.571428571429,0.8] U {1}"
  std::string to_string() const;

 private:
  std::vector<double> points_;
  std::vector<Interval> intervals_;
};

enum class EquilibriumClass { kNoEquilibrium, kUniquePoolingOnComplex, kKnifeEdgeContinuum };

std::string_view to_string(EquilibriumClass c);

struct EquilibriumReport {
  EquilibriumClass classification = EquilibriumClass::kUniquePoolingOnComplex;
  // Pooling probabilities p0 = p1 = p in the continuum; set iff knife edge.
  std::optional<Interval> continuum;
  // Wage 4 sigma / (1 - 4 sigma) at which the continuum appears (+inf at sigma = 0.25).
  double knife_edge_wage = 0.0;
  // Wage within kKnifeEdgeWarnBand of the knife edge: classification is tolerance-sensitive.
  bool near_knife_edge = false;

  std::vector<StrategyPair> sample_equilibria(int count) const;
};

// Belief after observing the rule, before the outcome. Returns the prior
// exactly when both types play the rule with the same probability.
Belief intermediate_belief(Rule rule, double prior, const StrategyPair& conjecture);

// Posterior after the rule and its outcome y. The simple rule reveals nothing
// beyond the intermediate belief.
Belief posterior_known_type(Rule rule, int outcome, double sigma, double prior,
                            const StrategyPair& conjecture);

// Expected payoff of a type-theta expert who plays `rule` for sure.
double expected_payoff_known(int theta, Rule rule, double sigma, double prior,
                             const StrategyPair& conjecture, const ReputationFunction& psi);

// p_theta-mixture of the two pure-rule payoffs under the pair `strategies`.
double mixed_payoff_known(int theta, double sigma, double prior, const StrategyPair& strategies,
                          const ReputationFunction& psi);

// Closed-form pure-rule payoffs with psi a step at pi* = pi0 paying `wage`.
double wage_payoff_known(int theta, Rule rule, double sigma, double wage,
                         const StrategyPair& conjecture);
double mixed_wage_payoff_known(int theta, double sigma, double wage, const StrategyPair& strategies);

double knife_edge_wage(double sigma);

BestResponseSet best_response_incompetent(double sigma, double wage, double p1);
BestResponseSet best_response_competent(double sigma, double wage, double p0);

EquilibriumReport classify_equilibria(double sigma, double wage);

// Checks that neither fully separating profile survives a deviation by the
// incompetent type. Throws DomainError for psi with psi(0) == psi(1).
bool verify_no_pure_separating(double sigma, double prior, const ReputationFunction& psi);

// Brute force over the grid {0, 1/(n-1), ..., 1}: grid indices p of the
// type-theta player with payoff within tie_tolerance of the grid maximum,
// the other type playing `other`.
std::vector<int> grid_best_response(int theta, double sigma, double prior, double other,
                                    const ReputationFunction& psi, int grid_points,
                                    double tie_tolerance = kBoundaryTolerance);

struct ScanResult {
  int grid_points = 0;
  std::vector<StrategyPair> equilibria;  // mutual grid best responses, row-major order
};

// Scans the grid x grid strategy space for mutual best responses of the
// general game. Rows are evaluated in parallel; the result does not depend on
// `workers`.
ScanResult scan_equilibria(double sigma, double prior, const ReputationFunction& psi,
                           int grid_points, double tie_tolerance = kBoundaryTolerance,
                           unsigned workers = 1);

}  // namespace repadvice::known
