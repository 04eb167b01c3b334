#include "repadvice/known_type.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "repadvice/errors.hpp"
#include "repadvice/parallel.hpp"

namespace repadvice::known {

namespace {

constexpr double kTol = kBoundaryTolerance;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + fmt(p));
  }
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma <= 0.25)) throw DomainError("sigma must lie in (0, 0.25]");
}

void require_prior(double prior) {
  if (!(prior > 0.0 && prior < 1.0)) throw DomainError("prior must lie in (0, 1)");
}

void require_theta(int theta) {
  if (theta != 0 && theta != 1) throw DomainError("theta must be 0 or 1");
}

// a < b with a margin: false when a and b agree to within the tolerance.
bool clearly_less(double a, double b) { return a < b - kTol; }

bool at_most(double a, double b) { return a <= b + kTol; }

bool near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

}  // namespace

StrategyPair::StrategyPair(double p0, double p1) : p0_(p0), p1_(p1) {
  require_probability(p0, "p0");
  require_probability(p1, "p1");
}

bool Interval::contains(double p, double tolerance) const {
  const bool above = lo_closed ? p >= lo - tolerance : p > lo + tolerance;
  const bool below = hi_closed ? p <= hi + tolerance : p < hi - tolerance;
  return above && below;
}

BestResponseSet BestResponseSet::point(double p) {
  BestResponseSet out;
  out.add_point(p);
  return out;
}

BestResponseSet& BestResponseSet::add_point(double p) {
  require_probability(p, "best response");
  points_.push_back(p);
  return *this;
}

BestResponseSet& BestResponseSet::add_interval(Interval interval) {
  require_probability(interval.lo, "interval end");
  require_probability(interval.hi, "interval end");
  if (interval.lo > interval.hi) throw DomainError("interval ends out of order");
  if (interval.lo == interval.hi) return add_point(interval.lo);
  intervals_.push_back(interval);
  return *this;
}

bool BestResponseSet::contains(double p, double tolerance) const {
  for (double q : points_) {
    if (std::abs(p - q) <= tolerance) return true;
  }
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.contains(p, tolerance); });
}

std::string BestResponseSet::to_string() const {
  struct Piece {
    double key;
    std::string text;
  };
  std::vector<Piece> pieces;
  for (double q : points_) pieces.push_back({q, "{" + fmt(q) + "}"});
  for (const auto& iv : intervals_) {
    pieces.push_back({iv.lo, std::string(iv.lo_closed ? "[" : "(") + fmt(iv.lo) + "," +
                                 fmt(iv.hi) + (iv.hi_closed ? "]" : ")")});
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return a.key < b.key; });
  std::string out;
  for (const auto& piece : pieces) {
    if (!out.empty()) out += " U ";
    out += piece.text;
  }
  return out.empty() ? "{}" : out;
}

std::string_view to_string(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::kNoEquilibrium:
      return "no_equilibrium";
    case EquilibriumClass::kUniquePoolingOnComplex:
      return "unique_pooling_on_complex";
    case EquilibriumClass::kKnifeEdgeContinuum:
      return "knife_edge_continuum";
  }
  return "no_equilibrium";
}

std::vector<StrategyPair> EquilibriumReport::sample_equilibria(int count) const {
  std::vector<StrategyPair> out;
  if (classification == EquilibriumClass::kUniquePoolingOnComplex) {
    out.emplace_back(1.0, 1.0);
  } else if (continuum && count > 0) {
    // Evenly spaced points in (lo, hi], excluding the open end.
    for (int k = 1; k <= count; ++k) {
      const double p = continuum->lo + (continuum->hi - continuum->lo) * k / count;
      out.emplace_back(p, p);
    }
  }
  return out;
}

Belief intermediate_belief(Rule rule, double prior, const StrategyPair& conjecture) {
  require_prior(prior);
  const double q0 = conjecture.p0();
  const double q1 = conjecture.p1();
  if (q0 == q1) {
    // Uninformative rule; off path when neither type ever plays it.
    const bool never = rule == Rule::kComplex ? q1 == 0.0 : q1 == 1.0;
    return {prior, never};
  }
  const double w1 = rule == Rule::kComplex ? q1 : 1.0 - q1;
  const double w0 = rule == Rule::kComplex ? q0 : 1.0 - q0;
  const double num = w1 * prior;
  return {num / (num + w0 * (1.0 - prior)), false};
}

Belief posterior_known_type(Rule rule, int outcome, double sigma, double prior,
                            const StrategyPair& conjecture) {
  require_sigma(sigma);
  if (outcome != 0 && outcome != 1) throw DomainError("outcome must be 0 or 1");
  const Belief mid = intermediate_belief(rule, prior, conjecture);
  if (rule == Rule::kSimple) return mid;
  const double pc = mid.value;
  const double s4 = 4.0 * sigma;
  const double num = (outcome == 1 ? 1.0 + s4 : 1.0 - s4) * pc;
  const double den = outcome == 1 ? 1.0 + s4 * pc : 1.0 - s4 * pc;
  if (den == 0.0) return {pc, true};  // failure after a sure-competent signal at sigma = 0.25
  return {num / den, mid.off_path};
}

double expected_payoff_known(int theta, Rule rule, double sigma, double prior,
                             const StrategyPair& conjecture, const ReputationFunction& psi) {
  require_theta(theta);
  if (rule == Rule::kSimple) {
    return 0.5 + psi(posterior_known_type(Rule::kSimple, 0, sigma, prior, conjecture).value);
  }
  const double accuracy = 0.5 + 2.0 * sigma * theta;
  const double on_success = posterior_known_type(Rule::kComplex, 1, sigma, prior, conjecture).value;
  const double on_failure = posterior_known_type(Rule::kComplex, 0, sigma, prior, conjecture).value;
  return accuracy + accuracy * psi(on_success) + (1.0 - accuracy) * psi(on_failure);
}

double mixed_payoff_known(int theta, double sigma, double prior, const StrategyPair& strategies,
                          const ReputationFunction& psi) {
  const double p = strategies.of(theta);
  double total = 0.0;
  if (p > 0.0) total += p * expected_payoff_known(theta, Rule::kComplex, sigma, prior, strategies, psi);
  if (p < 1.0) {
    total += (1.0 - p) * expected_payoff_known(theta, Rule::kSimple, sigma, prior, strategies, psi);
  }
  return total;
}

double wage_payoff_known(int theta, Rule rule, double sigma, double wage,
                         const StrategyPair& conjecture) {
  require_theta(theta);
  require_sigma(sigma);
  if (!(wage >= 0.0)) throw DomainError("wage must be >= 0");
  const double p0 = conjecture.p0();
  const double p1 = conjecture.p1();
  if (rule == Rule::kSimple) return at_most(p1, p0) ? 0.5 + wage : 0.5;
  const double accuracy = 0.5 + 2.0 * sigma * theta;
  if (clearly_less(p1 * (1.0 + 4.0 * sigma), p0)) return accuracy;
  if (at_most(p0, p1 * (1.0 - 4.0 * sigma))) return accuracy + wage;
  return accuracy + accuracy * wage;
}

double mixed_wage_payoff_known(int theta, double sigma, double wage,
                               const StrategyPair& strategies) {
  const double p = strategies.of(theta);
  return p * wage_payoff_known(theta, Rule::kComplex, sigma, wage, strategies) +
         (1.0 - p) * wage_payoff_known(theta, Rule::kSimple, sigma, wage, strategies);
}

double knife_edge_wage(double sigma) {
  require_sigma(sigma);
  const double s4 = 4.0 * sigma;
  if (!clearly_less(s4, 1.0)) return std::numeric_limits<double>::infinity();
  return s4 / (1.0 - s4);
}

BestResponseSet best_response_incompetent(double sigma, double wage, double p1) {
  require_sigma(sigma);
  if (!(wage >= 0.0)) throw DomainError("wage must be >= 0");
  return BestResponseSet::point(p1);
}

namespace {

enum class CompetentCase { kAlwaysComplex, kAlwaysSimple, kKnifeEdge };

// Shared case analysis of the competent type's best response; `mimic_possible`
// is 1 - p0 < 4 sigma.
CompetentCase competent_case(double sigma, double wage, bool mimic_possible) {
  const double s4 = 4.0 * sigma;
  if (!clearly_less(s4, 1.0) || !mimic_possible) return CompetentCase::kAlwaysComplex;
  const double edge = s4 / (1.0 - s4);
  if (!clearly_less(2.0 * sigma, wage)) return CompetentCase::kAlwaysComplex;
  if (near(wage, edge, kTol)) return CompetentCase::kKnifeEdge;
  if (wage > edge) return CompetentCase::kAlwaysSimple;
  return CompetentCase::kAlwaysComplex;
}

}  // namespace

BestResponseSet best_response_competent(double sigma, double wage, double p0) {
  require_sigma(sigma);
  require_probability(p0, "p0");
  if (!(wage >= 0.0)) throw DomainError("wage must be >= 0");
  const bool mimic = clearly_less(1.0 - p0, 4.0 * sigma);
  switch (competent_case(sigma, wage, mimic)) {
    case CompetentCase::kAlwaysSimple:
      return BestResponseSet::point(0.0);
    case CompetentCase::kKnifeEdge: {
      BestResponseSet out = BestResponseSet::point(0.0);
      out.add_interval({p0 / (1.0 + 4.0 * sigma), p0, true, true});
      if (p0 < 1.0) out.add_point(1.0);
      return out;
    }
    case CompetentCase::kAlwaysComplex:
      break;
  }
  return BestResponseSet::point(1.0);
}

EquilibriumReport classify_equilibria(double sigma, double wage) {
  require_sigma(sigma);
  if (!(wage >= 0.0)) throw DomainError("wage must be >= 0");
  EquilibriumReport report;
  report.knife_edge_wage = knife_edge_wage(sigma);
  report.near_knife_edge = std::isfinite(report.knife_edge_wage) &&
                           near(wage, report.knife_edge_wage, kKnifeEdgeWarnBand);
  // Cases (i) and (ii) need some p0 with 1 - p0 < 4 sigma, which p0 = 1 provides.
  switch (competent_case(sigma, wage, true)) {
    case CompetentCase::kAlwaysSimple:
      report.classification = EquilibriumClass::kNoEquilibrium;
      break;
    case CompetentCase::kKnifeEdge:
      report.classification = EquilibriumClass::kKnifeEdgeContinuum;
      report.continuum = Interval{1.0 - 4.0 * sigma, 1.0, false, true};
      break;
    case CompetentCase::kAlwaysComplex:
      report.classification = EquilibriumClass::kUniquePoolingOnComplex;
      break;
  }
  return report;
}

bool verify_no_pure_separating(double sigma, double prior, const ReputationFunction& psi) {
  if (psi.is_degenerate()) throw DomainError("psi must satisfy psi(0) < psi(1)");
  const StrategyPair competent_complex(0.0, 1.0);
  const StrategyPair competent_simple(1.0, 0.0);
  const bool deviate_to_complex =
      expected_payoff_known(0, Rule::kComplex, sigma, prior, competent_complex, psi) >
      expected_payoff_known(0, Rule::kSimple, sigma, prior, competent_complex, psi);
  const bool deviate_to_simple =
      expected_payoff_known(0, Rule::kSimple, sigma, prior, competent_simple, psi) >
      expected_payoff_known(0, Rule::kComplex, sigma, prior, competent_simple, psi);
  return deviate_to_complex && deviate_to_simple;
}

std::vector<int> grid_best_response(int theta, double sigma, double prior, double other,
                                    const ReputationFunction& psi, int grid_points,
                                    double tie_tolerance) {
  require_theta(theta);
  if (grid_points < 2) throw DomainError("grid needs at least two points");
  std::vector<double> values(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double p = static_cast<double>(i) / (grid_points - 1);
    const StrategyPair pair = theta == 1 ? StrategyPair(other, p) : StrategyPair(p, other);
    values[static_cast<std::size_t>(i)] = mixed_payoff_known(theta, sigma, prior, pair, psi);
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<int> out;
  for (int i = 0; i < grid_points; ++i) {
    if (values[static_cast<std::size_t>(i)] >= best - tie_tolerance) out.push_back(i);
  }
  return out;
}

ScanResult scan_equilibria(double sigma, double prior, const ReputationFunction& psi,
                           int grid_points, double tie_tolerance, unsigned workers) {
  const auto n = static_cast<std::size_t>(grid_points);
  // responds[theta][other * n + own] == 1 iff `own` is a grid best response
  // of type theta to the other type playing `other`.
  std::vector<std::uint8_t> responds0(n * n, 0);
  std::vector<std::uint8_t> responds1(n * n, 0);
  parallel_for(2 * n, workers, [&](std::size_t task) {
    const int theta = task < n ? 0 : 1;
    const std::size_t other = task % n;
    const double p_other = static_cast<double>(other) / (grid_points - 1);
    auto& table = theta == 0 ? responds0 : responds1;
    for (int own : grid_best_response(theta, sigma, prior, p_other, psi, grid_points, tie_tolerance)) {
      table[other * n + static_cast<std::size_t>(own)] = 1;
    }
  });
  ScanResult result;
  result.grid_points = grid_points;
  for (std::size_t i = 0; i < n; ++i) {    // p0 index
    for (std::size_t j = 0; j < n; ++j) {  // p1 index
      if (responds0[j * n + i] && responds1[i * n + j]) {
        result.equilibria.emplace_back(static_cast<double>(i) / (grid_points - 1),
                                       static_cast<double>(j) / (grid_points - 1));
      }
    }
  }
  return result;
}

}  // namespace repadvice::known
