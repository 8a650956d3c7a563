#pragma once

// Generalized three-distance configurations.
//
// For sequences i = 1..d with maps f_i(x) = (p_i/q) * {x}_lambda + k_i, the
// values f_i(m*alpha), n_i < m <= N_i, are reduced mod P and arranged on the
// circle [0, P). The successive gaps take at most 3c distinct values, where
// l = lcm|p_i|, c_i = l/p_i and c = sum |c_i|.
//
// Points are ordered by value, ties broken by (sequence, multiplier). The
// classifier reproduces the rigid-interval argument: a gap interval whose
// translate by (l/q)*alpha is again a gap interval is non-rigid, and every
// rigid one is witnessed by a start point (case i) or finish point (case ii).

#include "threegap/exact.hpp"
#include "threegap/lambda_frac.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace threegap {

struct SequenceSpec {
  std::int64_t p = 1;  // slope numerator, nonzero
  AlphaLinear k;       // shift
  std::int64_t n = 0;  // multipliers run over n < m <= N
  std::int64_t N = 1;

  std::int64_t count() const { return N - n; }
};

struct GapConfig {
  AlphaOracle alpha;
  std::int64_t q = 1;
  std::vector<SequenceSpec> sequences{};
  Rational P = 1;
  /// lambda = t * P * q; nullopt selects lambda = infinity.
  std::optional<std::int64_t> lambda_multiplier = 1;
  FracVariant variant = FracVariant::DoublePrime;

  LambdaSpec lambda() const;
  std::int64_t total_points() const;

  /// Throws ValidationError naming the violated hypothesis.
  void validate() const;
};

struct LabeledPoint {
  AlphaLinear gamma;
  int seq = 1;  // 1-based
  std::int64_t m = 1;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

struct BoundData {
  std::int64_t ell = 1;
  Rational ell0;
  std::vector<std::int64_t> c_list;  // signed, c_i * p_i = ell
  std::int64_t c = 0;
  std::int64_t bound = 0;  // 3c
};

struct GapSet {
  /// gaps[0] is the wraparound P + b_1 - b_N, then b_m - b_{m-1}.
  std::vector<AlphaLinear> gaps;
  /// Distinct gap values in increasing order.
  std::vector<AlphaLinear> distinct;
};

struct GapReport {
  Rational P;
  std::vector<LabeledPoint> sorted_points;
  std::vector<AlphaLinear> gaps;
  std::vector<AlphaLinear> distinct_gaps;
  BoundData bound_data;
  bool bound_satisfied = false;

  std::size_t total_points() const { return sorted_points.size(); }
  /// Length of the gap interval starting at sorted position j.
  const AlphaLinear& interval_length(std::size_t j) const;
};

/// The 3c bound was exceeded. Carries the offending report.
class BoundViolation : public InvariantViolation {
 public:
  BoundViolation(const std::string& what, GapReport report)
      : InvariantViolation(what), report_(std::make_shared<GapReport>(std::move(report))) {}
  const GapReport& report() const { return *report_; }

 private:
  std::shared_ptr<const GapReport> report_;
};

class ClassificationInconsistency : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

BoundData bound_3c(const GapConfig& config);

/// gamma_{i,m} = (p_i/q) * {m alpha}_lambda + k_i reduced mod P.
AlphaLinear point_value(const GapConfig& config, const SequenceSpec& seq, std::int64_t m);

/// All points, grouped by sequence, multipliers ascending.
std::vector<LabeledPoint> generate_points(const GapConfig& config);

/// Strictly increasing order by value, then sequence, then multiplier.
std::vector<LabeledPoint> sort_points(std::vector<LabeledPoint> points, const AlphaOracle& alpha);

/// Gaps on the circle of circumference P. `sorted` must be non-empty.
GapSet compute_gaps(const std::vector<LabeledPoint>& sorted, const Rational& P, const AlphaOracle& alpha);

/// generate -> sort -> gaps, then checks sum(gaps) = P and the 3c bound.
/// Throws BoundViolation if the bound fails.
GapReport verify_bound(const GapConfig& config);

/// gamma_{i,m} + (l/q) alpha == gamma_{i,m+c_i} (mod P) wherever both exist.
bool translation_check(const GapConfig& config);

enum class IntervalKind { NonRigid, RigidCaseI, RigidCaseII };

enum class WitnessSet { None, S, T, SPrime, TPrime };

const char* to_string(IntervalKind kind);
const char* to_string(WitnessSet set);

struct IntervalInfo {
  std::size_t left = 0;   // sorted position of the left endpoint
  std::size_t right = 0;  // (left + 1) mod N
  AlphaLinear length;
  IntervalKind kind = IntervalKind::NonRigid;
  std::optional<LabeledPoint> witness;
  WitnessSet witness_set = WitnessSet::None;
  /// For non-rigid intervals: the interval (by left position) it translates onto.
  std::optional<std::size_t> translate;
};

struct IntervalClassification {
  std::vector<IntervalInfo> intervals;
  std::size_t rigid_count = 0;
  std::vector<LabeledPoint> start_points;   // union of S_i, T_i
  std::vector<LabeledPoint> finish_points;  // union of S'_i, T'_i
  std::vector<AlphaLinear> rigid_lengths;   // distinct, increasing
  bool rigid_within_bound = false;
  bool lengths_match = false;   // distinct gap lengths == rigid lengths
  bool orbits_acyclic = false;  // translation never revisits an interval
  std::size_t longest_orbit = 0;
};

/// Throws ClassificationInconsistency if a rigid interval lacks a witness or
/// any of the counting checks fails.
IntervalClassification classify_intervals(const GapConfig& config, const GapReport& report);
IntervalClassification classify_intervals(const GapConfig& config);

}  // namespace threegap
