#include "bincs/rip_theory.h"

#include <cmath>

#include "bincs/error.h"

namespace bincs {
namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

RicCondition condition(std::string description, bool satisfied) {
  return RicCondition{std::move(description), satisfied};
}

}  // namespace

std::optional<std::int64_t> coherence_k_bound(const Rational& mu) {
  if (mu < 0 || mu > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "coherence " + to_string(mu) + " outside [0, 1]");
  }
  if (mu == 0) return std::nullopt;
  // (1 + 1/mu) / 2 = (p + q) / (2p) for mu = p / q; the answer is the largest
  // integer strictly below it, i.e. ceil(x) - 1.
  const BigInt p = boost::multiprecision::numerator(mu);
  const BigInt q = boost::multiprecision::denominator(mu);
  const BigInt num = p + q;
  const BigInt den = 2 * p;
  const BigInt ceil = (num + den - 1) / den;
  return static_cast<std::int64_t>(ceil - 1);
}

Rational overlap_probability(int num_rows, int num_cols, int degree) {
  if (num_rows < 1 || num_cols < 2 || degree < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "overlap_probability needs M >= 1, N >= 2, d >= 1");
  }
  const BigInt m = num_rows, n = num_cols, d = degree;
  const Rational rho(n * d * d - m * d, (n - 1) * m);
  if (rho < 0 || rho > 1) {
    throw Error(ErrorCode::kInfeasibleParameters,
                "rho = " + to_string(rho) + " is not a probability; (M, N, d) = (" +
                    std::to_string(num_rows) + ", " + std::to_string(num_cols) +
                    ", " + std::to_string(degree) + ") admits no girth > 4 matrix");
  }
  return rho;
}

Rational random_overlap_pmf(int num_rows, int degree, int overlap) {
  if (degree < 0 || degree > num_rows || overlap < 0 || overlap > degree) {
    throw Error(ErrorCode::kInvalidArgument,
                "random_overlap_pmf needs 0 <= s <= d <= M");
  }
  const int m = num_rows, d = degree, s = overlap;
  if (m - 2 * d + s < 0) return Rational(0);
  const BigInt num = factorial(d) * factorial(d) * factorial(m - d) * factorial(m - d);
  const BigInt den = factorial(d - s) * factorial(d - s) * factorial(s) *
                     factorial(m - 2 * d + s) * factorial(m);
  return Rational(num, den);
}

std::string to_string(RicFormula f) {
  switch (f) {
    case RicFormula::kGirthAbove4: return "girth_above_4";
    case RicFormula::kLargeK: return "large_k";
    case RicFormula::kGirth4Low: return "girth_4_low";
    case RicFormula::kGirth4High: return "girth_4_high";
  }
  return "unknown";
}

RicFormulaResult ric_girth_above4(int k, int degree) {
  if (k < 1 || degree < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ric_girth_above4 needs k >= 1 and d >= 2");
  }
  RicFormulaResult r;
  r.formula = RicFormula::kGirthAbove4;
  r.k = k;
  r.degree = degree;
  r.exact = make_rational(3LL * k - 2, 4LL * degree + k - 2);
  r.delta_k = to_double(*r.exact);
  r.validity.push_back(condition("k >= 1", true));
  r.validity.push_back(condition("d >= 2", true));
  r.validity.push_back(condition("k >= 2 (k = 1 is a formula artifact)", k >= 2));
  return r;
}

RicFormulaResult ric_large_k(int k, int degree, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ric_large_k needs 0 < rho < 1");
  }
  if (k < 1 || degree < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ric_large_k needs k >= 1 and d >= 1");
  }
  const double kk = k;
  if (kk * (kk - 1.0) * rho < 2.0) {
    throw Error(ErrorCode::kSideConditionViolated,
                "k (k - 1) rho = " + std::to_string(kk * (kk - 1.0) * rho) + " < 2");
  }
  const double krho = kk * rho;
  const double spread = 2.0 * std::sqrt(krho * (1.0 - rho));
  const double den = krho - spread + 2.0 * degree + 1.0;
  if (!(den > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ric_large_k denominator is not positive");
  }

  RicFormulaResult r;
  r.formula = RicFormula::kLargeK;
  r.k = k;
  r.degree = degree;
  r.rho = rho;
  r.delta_k = (krho + spread + 1.0) / den;
  r.validity.push_back(condition("k (k - 1) rho >= 2", true));
  r.validity.push_back(condition("0 < rho < 1", true));
  r.validity.push_back(condition("denominator > 0", true));
  // Approximation only holds as k grows without bound; never claimed here.
  r.validity.push_back(condition("asymptotic regime k -> infinity", false));
  return r;
}

RicFormulaResult ric_girth4(int k, int degree, int overlap, int num_rows) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "ric_girth4 needs k >= 1");
  const long long kk = k, d = degree, s = overlap, m = num_rows;

  const bool low = d >= 3 && 2 * d <= m && s >= 2 && s <= d - 1;
  const bool high = 2 * d > m && d <= m - 2 && s >= std::max(2LL, 2 * d - m) &&
                    s <= d - 1;
  if (!low && !high) {
    throw Error(ErrorCode::kParameterOutOfBranch,
                "(d, s, M) = (" + std::to_string(d) + ", " + std::to_string(s) +
                    ", " + std::to_string(m) + ") fits neither girth-4 branch");
  }

  RicFormulaResult r;
  r.k = k;
  r.degree = degree;
  r.overlap = overlap;
  r.num_rows = num_rows;
  if (low) {
    r.formula = RicFormula::kGirth4Low;
    r.exact = Rational(BigInt((3 * kk - 2) * s), BigInt((kk - 2) * s + 4 * d));
    r.validity.push_back(condition("3 <= d <= M/2", true));
    r.validity.push_back(condition("2 <= s <= d - 1", true));
  } else {
    r.formula = RicFormula::kGirth4High;
    const long long num = (3 * kk - 2) * s + (kk - 2) * (m - 2 * d);
    const long long den = (kk - 2) * s - (m - 2 * d) * kk + 2 * m;
    r.exact = Rational(BigInt(num), BigInt(den));
    r.validity.push_back(condition("M/2 < d <= M - 2", true));
    r.validity.push_back(condition("max(2, 2d - M) <= s <= d - 1", true));
  }
  r.delta_k = to_double(*r.exact);
  return r;
}

DominanceResult near_optimal_dominates(int d_max, int degree, int overlap,
                                   int num_rows, int k) {
  if (degree > num_rows - 2) {
    throw Error(ErrorCode::kInvalidRange,
                "d = " + std::to_string(degree) + " exceeds M - 2");
  }
  if (d_max < 1 || degree < 1) {
    throw Error(ErrorCode::kInvalidArgument, "degrees must be positive");
  }
  DominanceResult r;
  r.lhs = Rational(d_max);
  if (degree <= d_max) {
    r.condition = DominanceCondition::kDegreeAtMostDmax;
    r.threshold = Rational(degree);
    r.verdict = DominanceVerdict::kNearOptimalBetter;
    return r;
  }
  if (overlap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "s must be >= 1 when d > d_max");
  }
  const long long d = degree, s = overlap, m = num_rows, kk = k;
  if (2 * d <= m) {
    r.condition = DominanceCondition::kLowDegree;
    r.threshold = make_rational(d, s);
  } else {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
    r.condition = DominanceCondition::kHighDegree;
    r.threshold = make_rational((kk + 1) * (2 * d - m), 6 * s + 2 * (2 * d - m));
  }
  r.verdict = r.lhs >= r.threshold ? DominanceVerdict::kNearOptimalBetter
                                   : DominanceVerdict::kConditionFails;
  return r;
}

}  // namespace bincs
