#include "threegap/gap_engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace threegap {

namespace {

std::string seq_label(std::size_t i) { return "sequence " + std::to_string(i + 1); }

// Maps (sequence, multiplier) to a dense index, sequence-major.
class PointIndex {
 public:
  explicit PointIndex(const GapConfig& config) : config_(&config) {
    offsets_.reserve(config.sequences.size() + 1);
    std::int64_t total = 0;
    for (const auto& s : config.sequences) {
      offsets_.push_back(total);
      total += s.count();
    }
    offsets_.push_back(total);
  }

  bool contains(int seq, std::int64_t m) const {
    const auto& s = config_->sequences[static_cast<std::size_t>(seq - 1)];
    return m > s.n && m <= s.N;
  }

  std::size_t dense(int seq, std::int64_t m) const {
    const auto& s = config_->sequences[static_cast<std::size_t>(seq - 1)];
    return static_cast<std::size_t>(offsets_[static_cast<std::size_t>(seq - 1)] + (m - s.n - 1));
  }

  std::size_t size() const { return static_cast<std::size_t>(offsets_.back()); }

 private:
  const GapConfig* config_;
  std::vector<std::int64_t> offsets_;
};

AlphaLinear value_with(const GapConfig& config, const LambdaSpec& lambda, const SequenceSpec& seq,
                       std::int64_t m) {
  const AlphaLinear x = AlphaLinear::alpha_multiple(Rational(static_cast<long>(m)));
  const AlphaLinear fractional = frac_part(x, lambda, config.variant, config.alpha);
  const Rational slope = make_rational(seq.p, config.q);
  return reduce_mod(slope * fractional + seq.k, config.P, config.alpha);
}

// Numeric order, then sequence, then multiplier.
bool precedes(const LabeledPoint& a, const LabeledPoint& b, const AlphaOracle& alpha) {
  const auto order = compare(a.gamma, b.gamma, alpha);
  if (order != std::strong_ordering::equal) return order == std::strong_ordering::less;
  if (a.seq != b.seq) return a.seq < b.seq;
  return a.m < b.m;
}

}  // namespace

LambdaSpec GapConfig::lambda() const {
  if (!lambda_multiplier) return LambdaSpec::infinite();
  return LambdaSpec::finite(Rational(static_cast<long>(*lambda_multiplier)) * P * Rational(static_cast<long>(q)));
}

std::int64_t GapConfig::total_points() const {
  std::int64_t total = 0;
  for (const auto& s : sequences) total += s.count();
  return total;
}

void GapConfig::validate() const {
  if (q < 1) throw ValidationError("bad_q", "q must be a positive integer, got " + std::to_string(q));
  if (sequences.empty()) throw ValidationError("no_sequences", "at least one sequence is required");
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const auto& s = sequences[i];
    if (s.p == 0) throw ValidationError("zero_slope", seq_label(i) + ": zero slope (p_i must be nonzero)");
    if (s.n < 0) throw ValidationError("bad_range", seq_label(i) + ": n_i must be non-negative");
    if (s.n > s.N) {
      throw ValidationError("bad_range", seq_label(i) + ": n_i > N_i (" + std::to_string(s.n) + " > " +
                                             std::to_string(s.N) + ")");
    }
  }
  if (sgn(P) <= 0) throw ValidationError("bad_P", "P must be a positive rational");
  if (lambda_multiplier && *lambda_multiplier < 1) {
    throw ValidationError("bad_lambda", "λ must be a positive integer multiple of Pq (lambda_multiplier >= 1)");
  }
  if (!lambda_multiplier && variant != FracVariant::Prime) {
    throw ValidationError("bad_variant", "infinite λ requires the prime fractional part");
  }
  if (total_points() < 1) throw ValidationError("empty", "the configuration has no points (sum of N_i - n_i is 0)");
  if (sign(AlphaLinear::alpha_multiple(1), alpha) <= 0) {
    throw ValidationError("alpha_not_positive", "alpha must be positive");
  }
}

const AlphaLinear& GapReport::interval_length(std::size_t j) const {
  return j + 1 == gaps.size() ? gaps.front() : gaps[j + 1];
}

BoundData bound_3c(const GapConfig& config) {
  config.validate();
  Integer ell = 1;
  for (const auto& s : config.sequences) {
    const Integer p = abs(Integer(static_cast<long>(s.p)));
    mpz_lcm(ell.get_mpz_t(), ell.get_mpz_t(), p.get_mpz_t());
  }
  BoundData data;
  data.ell = to_int64(ell);
  data.ell0 = Rational(ell) / Rational(static_cast<long>(config.q));
  data.ell0.canonicalize();
  Integer c = 0;
  for (const auto& s : config.sequences) {
    const std::int64_t ci = data.ell / s.p;
    data.c_list.push_back(ci);
    c += abs(Integer(static_cast<long>(ci)));
  }
  data.c = to_int64(c);
  data.bound = to_int64(3 * c);
  return data;
}

AlphaLinear point_value(const GapConfig& config, const SequenceSpec& seq, std::int64_t m) {
  return value_with(config, config.lambda(), seq, m);
}

std::vector<LabeledPoint> generate_points(const GapConfig& config) {
  config.validate();
  const LambdaSpec lambda = config.lambda();
  std::vector<LabeledPoint> points;
  points.reserve(static_cast<std::size_t>(config.total_points()));
  for (std::size_t i = 0; i < config.sequences.size(); ++i) {
    const auto& s = config.sequences[i];
    for (std::int64_t m = s.n + 1; m <= s.N; ++m) {
      points.push_back({value_with(config, lambda, s, m), static_cast<int>(i + 1), m});
    }
  }
  return points;
}

std::vector<LabeledPoint> sort_points(std::vector<LabeledPoint> points, const AlphaOracle& alpha) {
  // Fixed-point bounds on each value settle almost every comparison without
  // rational arithmetic; overlapping bounds fall back to the exact compare.
  const unsigned shift = alpha.base_bits() + 16;
  struct Keyed {
    Integer lo;
    Integer hi;
    std::size_t index;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Interval e = enclose(points[j].gamma, alpha, alpha.base_bits());
    keyed.push_back({floor_scaled(e.lo, shift), ceil_scaled(e.hi, shift), j});
  }
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.hi < b.lo) return true;
    if (b.hi < a.lo) return false;
    return precedes(points[a.index], points[b.index], alpha);
  });
  std::vector<LabeledPoint> sorted;
  sorted.reserve(points.size());
  for (const auto& k : keyed) sorted.push_back(std::move(points[k.index]));
  return sorted;
}

GapSet compute_gaps(const std::vector<LabeledPoint>& sorted, const Rational& P, const AlphaOracle& alpha) {
  if (sorted.empty()) throw InputError("compute_gaps needs at least one point");
  GapSet out;
  out.gaps.reserve(sorted.size());
  out.gaps.push_back(AlphaLinear::rational(P) + sorted.front().gamma - sorted.back().gamma);
  for (std::size_t m = 1; m < sorted.size(); ++m) out.gaps.push_back(sorted[m].gamma - sorted[m - 1].gamma);

  std::set<AlphaLinear, StructuralLess> distinct(out.gaps.begin(), out.gaps.end());
  out.distinct.assign(distinct.begin(), distinct.end());
  std::sort(out.distinct.begin(), out.distinct.end(), ValueLess(alpha));
  return out;
}

GapReport verify_bound(const GapConfig& config) {
  GapReport report;
  report.P = config.P;
  report.bound_data = bound_3c(config);
  report.sorted_points = sort_points(generate_points(config), config.alpha);
  GapSet gaps = compute_gaps(report.sorted_points, config.P, config.alpha);
  report.gaps = std::move(gaps.gaps);
  report.distinct_gaps = std::move(gaps.distinct);

  AlphaLinear total;
  for (const auto& g : report.gaps) total += g;
  if (!(total == AlphaLinear::rational(config.P))) {
    throw InvariantViolation("gaps sum to " + format_rational(total.u) + " + " + format_rational(total.v) +
                             "*alpha instead of P");
  }

  report.bound_satisfied = report.distinct_gaps.size() <= static_cast<std::size_t>(report.bound_data.bound);
  if (!report.bound_satisfied) {
    const std::string what = std::to_string(report.distinct_gaps.size()) + " distinct gaps exceed the bound 3c = " +
                             std::to_string(report.bound_data.bound);
    throw BoundViolation(what, std::move(report));
  }
  return report;
}

bool translation_check(const GapConfig& config) {
  const BoundData bound = bound_3c(config);
  const std::vector<LabeledPoint> points = generate_points(config);
  const PointIndex index(config);
  const AlphaLinear shift = AlphaLinear::alpha_multiple(bound.ell0);
  for (const auto& pt : points) {
    const std::int64_t target = pt.m + bound.c_list[static_cast<std::size_t>(pt.seq - 1)];
    if (!index.contains(pt.seq, target)) continue;
    const AlphaLinear moved = reduce_mod(pt.gamma + shift, config.P, config.alpha);
    if (!(moved == points[index.dense(pt.seq, target)].gamma)) return false;
  }
  return true;
}

const char* to_string(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::NonRigid:
      return "non_rigid";
    case IntervalKind::RigidCaseI:
      return "rigid_case_i";
    case IntervalKind::RigidCaseII:
      return "rigid_case_ii";
  }
  return "?";
}

const char* to_string(WitnessSet set) {
  switch (set) {
    case WitnessSet::None:
      return "none";
    case WitnessSet::S:
      return "S";
    case WitnessSet::T:
      return "T";
    case WitnessSet::SPrime:
      return "S'";
    case WitnessSet::TPrime:
      return "T'";
  }
  return "?";
}

IntervalClassification classify_intervals(const GapConfig& config) {
  return classify_intervals(config, verify_bound(config));
}

IntervalClassification classify_intervals(const GapConfig& config, const GapReport& report) {
  const BoundData& bound = report.bound_data;
  const PointIndex index(config);
  const auto& sorted = report.sorted_points;
  const std::size_t count = sorted.size();
  const AlphaLinear shift = AlphaLinear::alpha_multiple(bound.ell0);

  std::vector<std::size_t> position(index.size());
  for (std::size_t j = 0; j < count; ++j) position[index.dense(sorted[j].seq, sorted[j].m)] = j;

  auto c_of = [&](int seq) { return bound.c_list[static_cast<std::size_t>(seq - 1)]; };
  auto seq_of = [&](int seq) -> const SequenceSpec& { return config.sequences[static_cast<std::size_t>(seq - 1)]; };

  // Start points S_i (c_i > 0) and T_i (c_i < 0); finish points T'_i and S'_i.
  auto in_start_set = [&](const LabeledPoint& pt) {
    const auto& s = seq_of(pt.seq);
    const std::int64_t c = c_of(pt.seq);
    return c > 0 ? (pt.m >= s.N - c + 1 && pt.m <= s.N) : (pt.m >= 1 + s.n && pt.m <= -c + s.n);
  };
  auto in_finish_set = [&](const LabeledPoint& pt) {
    const auto& s = seq_of(pt.seq);
    const std::int64_t c = c_of(pt.seq);
    return c > 0 ? (pt.m >= 1 + s.n && pt.m <= c + s.n) : (pt.m >= s.N + c + 1 && pt.m <= s.N);
  };

  IntervalClassification out;
  for (const auto& pt : sorted) {
    if (in_start_set(pt)) out.start_points.push_back(pt);
    if (in_finish_set(pt)) out.finish_points.push_back(pt);
  }

  out.intervals.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    IntervalInfo info;
    info.left = j;
    info.right = (j + 1) % count;
    info.length = report.interval_length(j);
    const LabeledPoint& a = sorted[info.left];
    const LabeledPoint& b = sorted[info.right];
    const std::int64_t a_target = a.m + c_of(a.seq);
    const std::int64_t b_target = b.m + c_of(b.seq);

    if (!index.contains(a.seq, a_target) || !index.contains(b.seq, b_target)) {
      const LabeledPoint& end = !index.contains(a.seq, a_target) ? a : b;
      info.kind = IntervalKind::RigidCaseI;
      info.witness = end;
      info.witness_set = c_of(end.seq) > 0 ? WitnessSet::S : WitnessSet::T;
      if (!in_start_set(end)) {
        throw ClassificationInconsistency("endpoint (" + std::to_string(end.seq) + "," + std::to_string(end.m) +
                                          ") leaves the configuration but is not a start point");
      }
    } else {
      const std::size_t a_pos = position[index.dense(a.seq, a_target)];
      const std::size_t b_pos = position[index.dense(b.seq, b_target)];
      if ((a_pos + 1) % count == b_pos) {
        info.kind = IntervalKind::NonRigid;
        info.translate = a_pos;
        if (!(reduce_mod(a.gamma + shift, config.P, config.alpha) == sorted[a_pos].gamma) ||
            !(reduce_mod(b.gamma + shift, config.P, config.alpha) == sorted[b_pos].gamma)) {
          throw ClassificationInconsistency("translated endpoints of interval " + std::to_string(j) +
                                            " do not match numerically");
        }
        if (!(report.interval_length(a_pos) == info.length)) {
          throw ClassificationInconsistency("translate of interval " + std::to_string(j) + " changes its length");
        }
      } else {
        const LabeledPoint& inner = sorted[(a_pos + 1) % count];
        info.kind = IntervalKind::RigidCaseII;
        info.witness = inner;
        info.witness_set = c_of(inner.seq) > 0 ? WitnessSet::TPrime : WitnessSet::SPrime;
        if (index.contains(inner.seq, inner.m - c_of(inner.seq)) || !in_finish_set(inner)) {
          throw ClassificationInconsistency("interior point (" + std::to_string(inner.seq) + "," +
                                            std::to_string(inner.m) + ") of a translated gap is not a finish point");
        }
      }
    }
    if (info.kind != IntervalKind::NonRigid) ++out.rigid_count;
    out.intervals.push_back(std::move(info));
  }

  std::set<AlphaLinear, StructuralLess> rigid;
  for (const auto& info : out.intervals) {
    if (info.kind != IntervalKind::NonRigid) rigid.insert(info.length);
  }
  out.rigid_lengths.assign(rigid.begin(), rigid.end());
  std::sort(out.rigid_lengths.begin(), out.rigid_lengths.end(), ValueLess(config.alpha));

  out.rigid_within_bound = out.rigid_count <= static_cast<std::size_t>(bound.bound);
  out.lengths_match = out.rigid_lengths == report.distinct_gaps;

  // Translation orbits: follow non-rigid successors; depth[j] is the number
  // of steps from j to a rigid interval.
  enum : char { kUnseen, kActive, kDone };
  std::vector<char> state(count, kUnseen);
  std::vector<std::size_t> depth(count, 0);
  out.orbits_acyclic = true;
  for (std::size_t start = 0; start < count && out.orbits_acyclic; ++start) {
    std::vector<std::size_t> path;
    std::size_t j = start;
    bool reached_rigid = false;
    while (state[j] != kDone) {
      if (state[j] == kActive) {
        out.orbits_acyclic = false;
        break;
      }
      state[j] = kActive;
      path.push_back(j);
      if (!out.intervals[j].translate) {
        reached_rigid = true;
        break;
      }
      j = *out.intervals[j].translate;
    }
    if (!out.orbits_acyclic) break;
    std::size_t d = reached_rigid ? 0 : depth[j] + 1;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it] = d++;
      state[*it] = kDone;
    }
  }
  for (std::size_t d : depth) out.longest_orbit = std::max(out.longest_orbit, d);

  if (!out.rigid_within_bound || !out.lengths_match || !out.orbits_acyclic) {
    throw ClassificationInconsistency("rigid-interval accounting failed: rigid=" + std::to_string(out.rigid_count) +
                                      " bound=" + std::to_string(bound.bound) +
                                      " lengths_match=" + std::to_string(out.lengths_match) +
                                      " acyclic=" + std::to_string(out.orbits_acyclic));
  }
  return out;
}

}  // namespace threegap
