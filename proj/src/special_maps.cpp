#include "threegap/special_maps.hpp"

#include "threegap/decimal.hpp"

#include <algorithm>
#include <numeric>

namespace threegap {

namespace {

const Rational kHalf(1, 2);

void require_positive_alpha(const AlphaOracle& alpha) {
  if (sign(AlphaLinear::alpha_multiple(1), alpha) <= 0) throw InputError("alpha must be positive");
}

void require_at_least_two(std::int64_t M) {
  if (M < 2) throw InputError("M must be an integer > 1, got " + std::to_string(M));
}

NearestIntReport finish_nearest_report(std::int64_t M, std::vector<NearestValue> values, const AlphaOracle& alpha) {
  NearestIntReport report;
  report.M = M;
  report.values = std::move(values);
  std::set<AlphaLinear, StructuralLess> distinct;
  for (std::size_t j = 1; j < report.values.size(); ++j) {
    report.gaps.push_back(report.values[j].value - report.values[j - 1].value);
    distinct.insert(report.gaps.back());
  }
  report.distinct.assign(distinct.begin(), distinct.end());
  std::sort(report.distinct.begin(), report.distinct.end(), ValueLess(alpha));
  report.wrap_gap = AlphaLinear::rational(kHalf) + report.values.front().value - report.values.back().value;
  report.distinct_with_wrap = report.distinct.size() + (distinct.count(report.wrap_gap) ? 0 : 1);
  return report;
}

// Number of m >= 1 with m*alpha < bound, for rational bound > 0.
std::int64_t multiples_below(const Rational& bound, const AlphaOracle& alpha) {
  const AlphaLinear b = AlphaLinear::rational(bound);
  auto cmp = [&](std::int64_t m) {
    const auto order = compare(AlphaLinear::alpha_multiple(Rational(static_cast<long>(m))), b, alpha);
    if (order == std::strong_ordering::equal) throw BreakpointHit("a multiple of alpha hits a breakpoint");
    return order;
  };
  std::int64_t k = to_int64(floor_of(bound / alpha.base_enclosure().hi));
  k = std::max<std::int64_t>(k, 0);
  while (cmp(k + 1) == std::strong_ordering::less) ++k;
  while (k > 0 && cmp(k) == std::strong_ordering::greater) --k;
  return k;
}

}  // namespace

AlphaLinear nearest_int(const AlphaLinear& x, const AlphaOracle& alpha) {
  const AlphaLinear magnitude = sign(x, alpha) < 0 ? -x : x;
  const AlphaLinear frac = frac_part(magnitude, LambdaSpec::finite(1), FracVariant::DoublePrime, alpha);
  const AlphaLinear complement = AlphaLinear::rational(1) - frac;
  return compare(frac, complement, alpha) == std::strong_ordering::greater ? complement : frac;
}

GapConfig classical_config(const AlphaOracle& alpha, std::int64_t N) {
  GapConfig config{alpha};
  config.q = 1;
  config.P = 1;
  config.lambda_multiplier = 1;
  config.variant = FracVariant::DoublePrime;
  config.sequences = {{1, {}, 0, N}};
  return config;
}

GapConfig nearest_int_config(const AlphaOracle& alpha, std::int64_t M) {
  GapConfig config{alpha};
  config.q = 1;
  config.P = 1;
  config.lambda_multiplier = 1;
  config.variant = FracVariant::DoublePrime;
  config.sequences = {{1, AlphaLinear::rational(0), 0, M}, {-1, AlphaLinear::rational(1), 0, M}};
  return config;
}

GapReport classical_three_gap(const AlphaOracle& alpha, std::int64_t N) {
  if (N < 1) throw InputError("N must be positive");
  return verify_bound(classical_config(alpha, N));
}

NearestIntReport nearest_int_gaps_direct(const AlphaOracle& alpha, std::int64_t M) {
  require_at_least_two(M);
  require_positive_alpha(alpha);
  std::vector<NearestValue> values;
  values.reserve(static_cast<std::size_t>(M));
  for (std::int64_t m = 1; m <= M; ++m) {
    values.push_back({nearest_int(AlphaLinear::alpha_multiple(Rational(static_cast<long>(m))), alpha), m});
  }
  const ValueLess less(alpha);
  std::sort(values.begin(), values.end(),
            [&](const NearestValue& a, const NearestValue& b) { return less(a.value, b.value); });
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j].value == values[j - 1].value) {
      throw InvariantViolation("||m alpha|| repeats; alpha cannot be irrational");
    }
  }
  return finish_nearest_report(M, std::move(values), alpha);
}

NearestIntReport nearest_int_gaps_circle(const AlphaOracle& alpha, std::int64_t M) {
  require_at_least_two(M);
  const GapReport report = verify_bound(nearest_int_config(alpha, M));
  for (const auto& g : report.gaps) {
    if (g == AlphaLinear{}) throw InvariantViolation("points of the circle coincide for irrational alpha");
  }
  const AlphaLinear half = AlphaLinear::rational(kHalf);
  const AlphaLinear one = AlphaLinear::rational(1);
  std::vector<NearestValue> values;
  std::vector<char> seen(static_cast<std::size_t>(M) + 1, 0);
  bool past_half = false;
  for (const auto& pt : report.sorted_points) {
    const auto order = compare(pt.gamma, half, alpha);
    if (order == std::strong_ordering::equal) throw InvariantViolation("a point sits exactly at 1/2");
    if (order == std::strong_ordering::less) {
      // Points below 1/2 must form a prefix of the circle order.
      if (past_half) throw InvariantViolation("points below 1/2 are not consecutive on the circle");
      if (seen[static_cast<std::size_t>(pt.m)]++) throw InvariantViolation("||m alpha|| appears twice");
      values.push_back({pt.gamma, pt.m});
    } else {
      if (compare(pt.gamma, one, alpha) != std::strong_ordering::less) {
        throw InvariantViolation("point outside [0, 1)");
      }
      past_half = true;
    }
  }
  if (values.size() != static_cast<std::size_t>(M)) {
    throw InvariantViolation("expected " + std::to_string(M) + " points below 1/2, found " +
                             std::to_string(values.size()));
  }
  return finish_nearest_report(M, std::move(values), alpha);
}

NearestIntReport nearest_int_gaps(const AlphaOracle& alpha, std::int64_t M) {
  NearestIntReport direct = nearest_int_gaps_direct(alpha, M);
  const NearestIntReport via_circle = nearest_int_gaps_circle(alpha, M);
  if (!(direct.values == via_circle.values) || !(direct.gaps == via_circle.gaps)) {
    throw InvariantViolation("nearest-integer gaps differ between the direct and circle routes at M = " +
                             std::to_string(M));
  }
  return direct;
}

NearestIntScanner::NearestIntScanner(AlphaOracle alpha) : alpha_(std::move(alpha)), values_(ValueLess(alpha_)) {
  require_positive_alpha(alpha_);
}

void NearestIntScanner::add_gap(const AlphaLinear& g) { ++gap_counts_[g]; }

void NearestIntScanner::remove_gap(const AlphaLinear& g) {
  auto it = gap_counts_.find(g);
  if (it == gap_counts_.end()) throw InvariantViolation("scanner lost track of a gap");
  if (--it->second == 0) gap_counts_.erase(it);
}

void NearestIntScanner::extend() {
  ++M_;
  const AlphaLinear v = nearest_int(AlphaLinear::alpha_multiple(Rational(static_cast<long>(M_))), alpha_);
  auto [it, inserted] = values_.insert(v);
  if (!inserted) throw InvariantViolation("||m alpha|| repeats; alpha cannot be irrational");
  const bool has_prev = it != values_.begin();
  const bool has_next = std::next(it) != values_.end();
  if (has_prev && has_next) remove_gap(*std::next(it) - *std::prev(it));
  if (has_prev) add_gap(v - *std::prev(it));
  if (has_next) add_gap(*std::next(it) - v);
}

AlphaLinear NearestIntScanner::wrap_gap() const {
  return AlphaLinear::rational(kHalf) + *values_.begin() - *values_.rbegin();
}

std::size_t NearestIntScanner::distinct_count_with_wrap() const {
  if (values_.empty()) return 0;
  return gap_counts_.size() + (gap_counts_.count(wrap_gap()) ? 0 : 1);
}

std::vector<AlphaLinear> NearestIntScanner::distinct_gaps() const {
  std::vector<AlphaLinear> out;
  for (const auto& [g, count] : gap_counts_) out.push_back(g);
  std::sort(out.begin(), out.end(), ValueLess(alpha_));
  return out;
}

std::vector<AlphaLinear> NearestIntScanner::distinct_gaps_with_wrap() const {
  std::vector<AlphaLinear> out = distinct_gaps();
  if (!values_.empty() && !gap_counts_.count(wrap_gap())) {
    out.push_back(wrap_gap());
    std::sort(out.begin(), out.end(), ValueLess(alpha_));
  }
  return out;
}

const std::vector<std::string>& four_gap_targets() {
  static const std::vector<std::string> targets{"0.000612999", "0.006205886", "0.006818885", "0.007125385"};
  return targets;
}

FourGapSearch search_four_gaps(std::int64_t Mmax, const AlphaOracle& alpha, const std::vector<std::string>& targets) {
  if (Mmax < 2) throw InputError("Mmax must be at least 2");
  FourGapSearch out;
  out.Mmax = Mmax;
  out.targets = targets;

  auto try_match = [&](const std::vector<AlphaLinear>& gaps, const char* convention, std::int64_t M) {
    if (gaps.size() != targets.size()) return;
    std::vector<std::string> rounded;
    for (const auto& g : gaps) rounded.push_back(format_fixed(g, alpha, 9));
    if (rounded != targets) return;
    auto& bucket = std::string(convention) == "interval" ? out.interval_matches : out.wrap_matches;
    bucket.push_back({M, convention, gaps, std::move(rounded)});
  };

  NearestIntScanner scanner(alpha);
  scanner.extend();
  while (scanner.M() < Mmax) {
    scanner.extend();
    out.max_distinct_interval = std::max(out.max_distinct_interval, scanner.distinct_count());
    out.max_distinct_wrap = std::max(out.max_distinct_wrap, scanner.distinct_count_with_wrap());
    if (scanner.distinct_count() == targets.size()) try_match(scanner.distinct_gaps(), "interval", scanner.M());
    if (scanner.distinct_count_with_wrap() == targets.size()) {
      try_match(scanner.distinct_gaps_with_wrap(), "wrap", scanner.M());
    }
  }
  return out;
}

PwlFunction::PwlFunction(std::int64_t q, std::vector<Rational> breakpoints, std::vector<PwlPiece> pieces)
    : q_(q), breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (q_ < 1) throw ValidationError("bad_q", "piecewise-linear q must be a positive integer");
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw ValidationError("bad_pieces", "a piecewise-linear map needs exactly one more piece than breakpoints");
  }
  const Rational qr(static_cast<long>(q_));
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    if (j > 0 && !(breakpoints_[j - 1] < breakpoints_[j])) {
      throw ValidationError("bad_breakpoints", "breakpoints must be strictly increasing");
    }
    const auto& left = pieces_[j];
    const auto& right = pieces_[j + 1];
    if (left.p == right.p) {
      throw ValidationError("not_a_kink", "breakpoint " + format_rational(breakpoints_[j]) +
                                              " joins two pieces of equal slope");
    }
    const Rational& b = breakpoints_[j];
    const AlphaLinear at_left = AlphaLinear::rational(Rational(static_cast<long>(left.p)) / qr * b) + left.k;
    const AlphaLinear at_right = AlphaLinear::rational(Rational(static_cast<long>(right.p)) / qr * b) + right.k;
    if (!(at_left == at_right)) {
      throw ValidationError("discontinuous", "pieces disagree at breakpoint " + format_rational(b));
    }
  }
}

bool PwlFunction::has_zero_slope() const {
  return std::any_of(pieces_.begin(), pieces_.end(), [](const PwlPiece& p) { return p.p == 0; });
}

std::size_t PwlFunction::piece_index(const AlphaLinear& x, const AlphaOracle& alpha) const {
  std::size_t j = 0;
  while (j < breakpoints_.size() &&
         compare(AlphaLinear::rational(breakpoints_[j]), x, alpha) == std::strong_ordering::less) {
    ++j;
  }
  return j;
}

AlphaLinear PwlFunction::evaluate(const AlphaLinear& x, const AlphaOracle& alpha) const {
  const PwlPiece& piece = pieces_[piece_index(x, alpha)];
  return make_rational(piece.p, q_) * x + piece.k;
}

PwlDecomposition pwl_decompose(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M) {
  if (M < 1) throw InputError("M must be positive");
  require_positive_alpha(alpha);
  const AlphaLinear span = AlphaLinear::alpha_multiple(Rational(static_cast<long>(M)));
  const auto& bps = f.breakpoints();
  PwlDecomposition out;
  out.q = f.q();
  std::int64_t covered = 0;
  for (std::size_t j = 0; j < f.pieces().size(); ++j) {
    const Rational* lower = j > 0 ? &bps[j - 1] : nullptr;
    const Rational* upper = j < bps.size() ? &bps[j] : nullptr;
    // Skip pieces that miss [0, M alpha].
    if (upper && sgn(*upper) <= 0) continue;
    if (lower && compare(AlphaLinear::rational(*lower), span, alpha) != std::strong_ordering::less) continue;

    const std::int64_t n = (lower && sgn(*lower) > 0) ? std::min(M, multiples_below(*lower, alpha)) : 0;
    const std::int64_t N = upper ? std::min(M, multiples_below(*upper, alpha)) : M;
    const PwlPiece& piece = f.pieces()[j];
    if (piece.p == 0) {
      if (N > n) {
        throw ZeroSlopePiece("piece " + std::to_string(j) + " is constant on a part containing multiples of alpha");
      }
      continue;  // empty constant part: contributes no points
    }
    out.sequences.push_back({piece.p, piece.k, n, N});
    out.piece_of.push_back(j);
    covered += N - n;
  }
  if (covered != M) {
    throw InvariantViolation("pwl parts hold " + std::to_string(covered) + " multiples instead of " +
                             std::to_string(M));
  }
  return out;
}

GapConfig pwl_config(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M, const Rational& P) {
  PwlDecomposition parts = pwl_decompose(f, alpha, M);
  GapConfig config{alpha};
  config.q = parts.q;
  config.sequences = std::move(parts.sequences);
  config.P = P;
  config.lambda_multiplier.reset();
  config.variant = FracVariant::Prime;
  return config;
}

std::int64_t pwl_bound(const PwlFunction& f) {
  if (f.has_zero_slope()) throw ZeroSlopePiece("k_f is undefined for maps with a constant piece");
  Integer ell = 1;
  for (const auto& piece : f.pieces()) {
    const Integer p = abs(Integer(static_cast<long>(piece.p)));
    mpz_lcm(ell.get_mpz_t(), ell.get_mpz_t(), p.get_mpz_t());
  }
  Integer c = 0;
  for (const auto& piece : f.pieces()) c += ell / abs(Integer(static_cast<long>(piece.p)));
  return to_int64(3 * c);
}

PwlReport pwl_gaps(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M, const Rational& P) {
  require_at_least_two(M);
  PwlReport out;
  out.k_f = pwl_bound(f);
  out.decomposition = pwl_decompose(f, alpha, M);
  GapConfig config{alpha};
  config.q = out.decomposition.q;
  config.sequences = out.decomposition.sequences;
  config.P = P;
  config.lambda_multiplier.reset();
  config.variant = FracVariant::Prime;
  out.report = verify_bound(config);
  out.active_bound = out.report.bound_data.bound;
  if (out.report.distinct_gaps.size() > static_cast<std::size_t>(out.k_f)) {
    throw BoundViolation(std::to_string(out.report.distinct_gaps.size()) + " distinct gaps exceed k_f = " +
                             std::to_string(out.k_f),
                         out.report);
  }
  return out;
}

EmpiricalGaps pwl_gaps_empirical(const PwlFunction& f, const AlphaOracle& alpha, std::int64_t M, const Rational& P) {
  require_at_least_two(M);
  require_positive_alpha(alpha);
  if (sgn(P) <= 0) throw InputError("P must be positive");
  std::vector<LabeledPoint> points;
  for (std::int64_t m = 1; m <= M; ++m) {
    const AlphaLinear x = AlphaLinear::alpha_multiple(Rational(static_cast<long>(m)));
    const std::size_t j = f.piece_index(x, alpha);
    points.push_back({reduce_mod(f.evaluate(x, alpha), P, alpha), static_cast<int>(j + 1), m});
  }
  EmpiricalGaps out;
  out.sorted_points = sort_points(std::move(points), alpha);
  out.gaps = compute_gaps(out.sorted_points, P, alpha);
  return out;
}

}  // namespace threegap
