#pragma once

// Instances of the gap engine: the classical three-gap setting, distances
// to the nearest integer, and continuous piecewise-linear maps with rational
// slopes.

#include "threegap/gap_engine.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace threegap {

/// ||x|| = min({|x|}, 1 - {|x|}), in [0, 1/2].
AlphaLinear nearest_int(const AlphaLinear& x, const AlphaOracle& alpha);

struct NearestValue {
  AlphaLinear value;
  std::int64_t m = 0;

  friend bool operator==(const NearestValue&, const NearestValue&) = default;
};

/// ||m alpha|| for 1 <= m <= M, arranged in [0, 1/2].
struct NearestIntReport {
  std::int64_t M = 0;
  std::vector<NearestValue> values;   // increasing
  std::vector<AlphaLinear> gaps;      // successive differences, no wraparound
  std::vector<AlphaLinear> distinct;  // increasing
  /// 1/2 + min - max: the extra gap when [0, 1/2] is closed into a circle.
  AlphaLinear wrap_gap;
  std::size_t distinct_with_wrap = 0;
};

/// d = 1, p = q = 1, k = 0, P = lambda = 1, double-prime variant, 0 < m <= N.
GapConfig classical_config(const AlphaOracle& alpha, std::int64_t N);

/// d = 2, p = (1, -1), k = (0, 1), N_1 = N_2 = M, P = lambda = 1.
GapConfig nearest_int_config(const AlphaOracle& alpha, std::int64_t M);

GapReport classical_three_gap(const AlphaOracle& alpha, std::int64_t N);

NearestIntReport nearest_int_gaps_direct(const AlphaOracle& alpha, std::int64_t M);

/// Through nearest_int_config: keeps the points of the circle that lie below
/// 1/2, after checking all points are distinct and the rest lie in (1/2, 1).
NearestIntReport nearest_int_gaps_circle(const AlphaOracle& alpha, std::int64_t M);

/// Runs both routes and throws InvariantViolation unless they agree exactly.
NearestIntReport nearest_int_gaps(const AlphaOracle& alpha, std::int64_t M);

/// Adds ||M alpha|| for M = 1, 2, ... one at a time, maintaining the gap
/// multiset, so scans over M cost O(log M) per step.
class NearestIntScanner {
 public:
  explicit NearestIntScanner(AlphaOracle alpha);
  NearestIntScanner(const NearestIntScanner&) = delete;
  NearestIntScanner& operator=(const NearestIntScanner&) = delete;

  void extend();
  std::int64_t M() const { return M_; }

  std::size_t distinct_count() const { return gap_counts_.size(); }
  std::size_t distinct_count_with_wrap() const;

  /// Increasing.
  std::vector<AlphaLinear> distinct_gaps() const;
  std::vector<AlphaLinear> distinct_gaps_with_wrap() const;
  AlphaLinear wrap_gap() const;

 private:
  void add_gap(const AlphaLinear& g);
  void remove_gap(const AlphaLinear& g);

  AlphaOracle alpha_;
  std::int64_t M_ = 0;
  std::set<AlphaLinear, ValueLess> values_;
  std::map<AlphaLinear, std::size_t, StructuralLess> gap_counts_;
};

struct FourGapMatch {
  std::int64_t M = 0;
  std::string convention;  // "interval" or "wrap"
  std::vector<AlphaLinear> gaps;
  std::vector<std::string> rounded;
};

struct FourGapSearch {
  std::int64_t Mmax = 0;
  std::vector<std::string> targets;
  std::vector<FourGapMatch> interval_matches;
  std::vector<FourGapMatch> wrap_matches;
  std::size_t max_distinct_interval = 0;
  std::size_t max_distinct_wrap = 0;
};

/// Four gap sizes, 9 decimals, expected for alpha = 15^(1/3).
const std::vector<std::string>& four_gap_targets();

/// Scans M = 2..Mmax for four distinct gaps whose 9-decimal roundings
/// (half away from zero) equal `targets`, under both conventions.
FourGapSearch search_four_gaps(std::int64_t Mmax, const AlphaOracle& alpha = AlphaOracle::cube_root_of_15(),
                           const std::vector<std::string>& targets = four_gap_targets());

struct PwlPiece {
  std::int64_t p = 1;  // slope p/q
  AlphaLinear k;       // intercept

  friend bool operator==(const PwlPiece&, const PwlPiece&) = default;
};

/// Continuous piecewise-linear map. Piece j applies on
/// (breakpoint[j-1], breakpoint[j]) with open ends at -inf and +inf.
class PwlFunction {
 public:
  PwlFunction(std::int64_t q, std::vector<Rational> breakpoints, std::vector<PwlPiece> pieces);

  std::int64_t q() const { return q_; }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<PwlPiece>& pieces() const { return pieces_; }
  bool has_zero_slope() const;

  /// Index of the piece containing x (the left one at a breakpoint).
  std::size_t piece_index(const AlphaLinear& x, const AlphaOracle& alpha) const;
  AlphaLinear evaluate(const AlphaLinear& x, const AlphaOracle& alpha) const;

  static PwlFunction identity() { return PwlFunction(1, {}, {{1, {}}}); }

 private:
  std::int64_t q_;
  std::vector<Rational> breakpoints_;
  std::vector<PwlPiece> pieces_;
};

struct PwlDecomposition {
  std::int64_t q = 1;
  std::vector<SequenceSpec> sequences;  // one per part of [0, M alpha]
  std::vector<std::size_t> piece_of;    // piece index for each sequence
};

/// Splits [0, M alpha] at the breakpoints inside it; part i holds exactly
/// the multiples m alpha with n_i < m <= N_i.
PwlDecomposition pwl_decompose(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M);

/// Gap configuration for f with lambda = infinity and the prime variant.
GapConfig pwl_config(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M, const Rational& P);

/// 3 * sum_j |l / p_j| over every piece, l = lcm |p_j|. Independent of M.
std::int64_t pwl_bound(const PwlFunction& f);

struct PwlReport {
  GapReport report;
  std::int64_t k_f = 0;
  std::int64_t active_bound = 0;  // 3c for the pieces met by [0, M alpha]
  PwlDecomposition decomposition;
};

/// Throws ZeroSlopePiece if any piece of f is constant, BoundViolation
/// if the gap count exceeds min(3c, k_f).
PwlReport pwl_gaps(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M, const Rational& P);

struct EmpiricalGaps {
  std::vector<LabeledPoint> sorted_points;  // seq = piece index + 1
  GapSet gaps;
};

/// Evaluates f(m alpha) mod P directly; accepts constant pieces and makes no
/// bound claim.
EmpiricalGaps pwl_gaps_empirical(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M, const Rational& P);

}  // namespace threegap
