#include "threegap/float_oracle.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <variant>

namespace threegap {

namespace {

// Minimal RAII handle over mpfr_t at a fixed precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

 private:
  mpfr_t x_;
};

Real from_rational(const Rational& r, mpfr_prec_t prec) {
  Real out(prec);
  mpfr_set_q(out.get(), r.get_mpq_t(), MPFR_RNDN);
  return out;
}

Real operator+(const Real& a, const Real& b) {
  Real out(a.prec());
  mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator-(const Real& a, const Real& b) {
  Real out(a.prec());
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator*(const Real& a, const Real& b) {
  Real out(a.prec());
  mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real operator/(const Real& a, const Real& b) {
  Real out(a.prec());
  mpfr_div(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}
Real floor_of(const Real& a) {
  Real out(a.prec());
  mpfr_floor(out.get(), a.get());
  return out;
}
Real ceil_of(const Real& a) {
  Real out(a.prec());
  mpfr_ceil(out.get(), a.get());
  return out;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }

Real abs_diff(const Real& a, const Real& b) {
  Real out = a - b;
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real pow10(long e, mpfr_prec_t prec) {
  Real out(prec);
  mpfr_set_si(out.get(), 10, MPFR_RNDN);
  mpfr_pow_si(out.get(), out.get(), e, MPFR_RNDN);
  return out;
}

mpfr_prec_t precision_for(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}

Real alpha_value(const AlphaOracle& alpha, mpfr_prec_t prec) {
  return std::visit(
      [prec](const auto& k) -> Real {
        using T = std::decay_t<decltype(k)>;
        Real out(prec);
        if constexpr (std::is_same_v<T, AlphaOracle::Quadratic>) {
          Real root(prec);
          mpfr_set_z(root.get(), k.discriminant.get_mpz_t(), MPFR_RNDN);
          mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
          out = from_rational(k.a, prec) + from_rational(k.b, prec) * root;
        } else if constexpr (std::is_same_v<T, AlphaOracle::NthRoot>) {
          Real r = from_rational(k.radicand, prec);
          mpfr_rootn_ui(out.get(), r.get(), k.degree, MPFR_RNDN);
        } else {
          mpfr_set_str(out.get(), k.digits.c_str(), 10, MPFR_RNDN);
        }
        return out;
      },
      alpha.kind());
}

std::string to_scientific(const Real& x, unsigned digits) {
  if (mpfr_zero_p(x.get())) return "0";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, digits, x.get(), MPFR_RNDN);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  return out + "e" + std::to_string(static_cast<long>(exponent) - 1);
}

struct OraclePoint {
  Real value;
  int seq;
  std::int64_t m;
};

}  // namespace

OracleResult float_oracle_gaps(const GapConfig& config, unsigned digits) {
  if (digits < 30) throw ValidationError("bad_digits", "float oracle needs at least 30 digits");
  config.validate();
  const mpfr_prec_t prec = precision_for(digits);
  const Real alpha = alpha_value(config.alpha, prec);
  const Real P = from_rational(config.P, prec);
  const Real q = from_rational(Rational(static_cast<long>(config.q)), prec);
  const bool infinite = !config.lambda_multiplier.has_value();
  const Real lambda = infinite ? Real(prec)
                               : from_rational(Rational(static_cast<long>(*config.lambda_multiplier)) * config.P *
                                                   Rational(static_cast<long>(config.q)),
                                               prec);
  Real zero(prec);

  std::vector<OraclePoint> points;
  for (std::size_t i = 0; i < config.sequences.size(); ++i) {
    const auto& s = config.sequences[i];
    const Real slope = from_rational(Rational(static_cast<long>(s.p)), prec) / q;
    const Real shift = from_rational(s.k.u, prec) + from_rational(s.k.v, prec) * alpha;
    for (std::int64_t m = s.n + 1; m <= s.N; ++m) {
      Real x(prec);
      mpfr_mul_si(x.get(), alpha.get(), static_cast<long>(m), MPFR_RNDN);
      Real frac = x;
      if (!infinite) {
        const bool use_roof = config.variant == FracVariant::Prime && x < zero;
        frac = x - (use_roof ? ceil_of(x / lambda) : floor_of(x / lambda)) * lambda;
      }
      const Real y = slope * frac + shift;
      Real gamma = y - floor_of(y / P) * P;
      if (gamma < zero) gamma = gamma + P;
      if (!(gamma < P)) gamma = gamma - P;
      points.push_back({gamma, static_cast<int>(i + 1), m});
    }
  }

  std::sort(points.begin(), points.end(), [](const OraclePoint& a, const OraclePoint& b) {
    if (a.value < b.value) return true;
    if (b.value < a.value) return false;
    return a.seq != b.seq ? a.seq < b.seq : a.m < b.m;
  });
  const Real tie = pow10(-static_cast<long>(digits) + 5, prec);
  const Real risk = pow10(-static_cast<long>(digits) + 10, prec);

  OracleResult out;
  out.digits = digits;
  // Runs of values within the tie tolerance are ordered by (i, m).
  std::size_t run_start = 0;
  for (std::size_t j = 1; j <= points.size(); ++j) {
    if (j < points.size()) {
      const Real d = abs_diff(points[j].value, points[j - 1].value);
      if (!(tie < d)) continue;
      if (d < risk) {
        out.warnings.push_back("points (" + std::to_string(points[j - 1].seq) + "," + std::to_string(points[j - 1].m) +
                               ") and (" + std::to_string(points[j].seq) + "," + std::to_string(points[j].m) +
                               ") are closer than the oracle can reliably resolve");
      }
    }
    std::stable_sort(points.begin() + static_cast<long>(run_start), points.begin() + static_cast<long>(j),
                     [](const OraclePoint& a, const OraclePoint& b) {
                       return a.seq != b.seq ? a.seq < b.seq : a.m < b.m;
                     });
    run_start = j;
  }

  std::vector<Real> gaps;
  gaps.push_back(P + points.front().value - points.back().value);
  for (std::size_t j = 1; j < points.size(); ++j) gaps.push_back(abs_diff(points[j].value, points[j - 1].value));
  std::sort(gaps.begin(), gaps.end());
  for (const auto& g : gaps) out.gaps_decimal.push_back(to_scientific(g, digits));
  return out;
}

OracleComparison compare_with_oracle(const GapReport& exact, const AlphaOracle& alpha, const OracleResult& oracle,
                                     unsigned agree_digits) {
  const mpfr_prec_t prec = precision_for(oracle.digits);
  OracleComparison out;
  out.exact_count = exact.gaps.size();
  out.oracle_count = oracle.gaps_decimal.size();
  out.exact_distinct = exact.distinct_gaps.size();

  std::vector<AlphaLinear> exact_sorted = exact.gaps;
  std::sort(exact_sorted.begin(), exact_sorted.end(), ValueLess(alpha));

  std::vector<Real> oracle_values;
  for (const auto& s : oracle.gaps_decimal) {
    Real v(prec);
    if (mpfr_set_str(v.get(), s.c_str(), 10, MPFR_RNDN) != 0) {
      throw InputError("unparseable oracle value \"" + s + "\"");
    }
    oracle_values.push_back(v);
  }
  std::sort(oracle_values.begin(), oracle_values.end());

  const Real tolerance = pow10(-static_cast<long>(agree_digits), prec);
  Real worst(prec);
  out.gaps_agree = out.exact_count == out.oracle_count;
  const unsigned bits = std::min(static_cast<unsigned>(prec), alpha.max_bits());
  for (std::size_t j = 0; out.gaps_agree && j < exact_sorted.size(); ++j) {
    const Real e = from_rational(enclose(exact_sorted[j], alpha, bits).lo, prec);
    const Real d = abs_diff(e, oracle_values[j]);
    if (worst < d) worst = d;
    if (tolerance < d) out.gaps_agree = false;
  }
  out.max_abs_difference = to_scientific(worst, 6);

  if (!oracle_values.empty()) out.oracle_distinct = 1;
  for (std::size_t j = 1; j < oracle_values.size(); ++j) {
    if (tolerance < abs_diff(oracle_values[j], oracle_values[j - 1])) ++out.oracle_distinct;
  }
  out.distinct_agree = out.oracle_distinct == out.exact_distinct;
  return out;
}

}  // namespace threegap
