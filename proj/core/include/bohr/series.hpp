#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr {

/// Value of a (possibly truncated) series together with a bound on the
/// discarded tail. When `rigorous` is set the exact sum lies in
/// [value - tail_bound, value + tail_bound]; closed-form evaluations carry
/// tail_bound = 0.
struct SumResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
  bool rigorous = true;
};

enum class WeightKind {
  kMonomial,          // phi_k(r) = r^k
  kUnitThenMonomial,  // phi_1 = 1, phi_k(r) = r^k for k >= 2
  kShifted,           // phi_k(r) = (k+1) r^k
  kPowerWeighted,     // phi_k(r) = k^alpha r^k, alpha in {1,2,3}
  kLacunary,          // phi_k(r) = r^(q k), q a positive integer
  kRefinedWeight,     // phi_k(r) = 1/(1+a) + r/(1-r), constant in k
  kLinearK,           // phi_k(r) = c k
  kZero,              // phi_k(r) = 0
  kCustomTable,       // phi_k(r) = t_k r^k over a finite table
};

/// An evaluable sequence {phi_k(r)} of non-negative functions on [0,1).
/// Built-in kinds are deterministic and finite on the whole of [0,1).
struct WeightSeq {
  WeightKind kind = WeightKind::kZero;
  int start_index = 0;
  double a = 0.0;  // kRefinedWeight
  int alpha = 1;   // kPowerWeighted
  int q = 1;       // kLacunary
  double c = 1.0;  // kLinearK

  // kCustomTable: values t_{start_index}, t_{start_index + 1}, ...
  // Beyond the table, t_k = t_last * tail_ratio^(k - last) when
  // tail_ratio >= 0 (0 means finite support). A negative tail_ratio marks
  // the tail unknown: evaluation treats it as zero and sums are flagged
  // non-rigorous.
  std::vector<double> table;
  double tail_ratio = 0.0;

  static WeightSeq Monomial(int start = 0);
  static WeightSeq UnitThenMonomial();
  static WeightSeq Shifted(int start = 2);
  static WeightSeq PowerWeighted(int alpha, int start = 2);
  static WeightSeq Lacunary(int q, int start = 0);
  static WeightSeq RefinedWeight(double a);
  static WeightSeq LinearK(double c);
  static WeightSeq Zero();
  static WeightSeq CustomTable(std::vector<double> values, int start = 0,
                               double tail_ratio = 0.0);
};

/// phi_k(r). Throws domain_error for r outside [0,1) or k below start_index,
/// config_error for an unknown kind.
double eval_weight(const WeightSeq& seq, int k, double r);

/// sum_{k >= from} phi_k(r). Closed form where the kind admits one
/// (tail_bound = 0); otherwise adaptive summation until a geometric-ratio
/// certificate brings the tail under abs_tol. Throws non_convergent_error
/// when the terms do not decay.
SumResult sum_weights(const WeightSeq& seq, double r, int from, double abs_tol);

/// sum_{k >= from} phi_k(r)^2, same contract as sum_weights.
SumResult sum_weights_squared(const WeightSeq& seq, double r, int from,
                              double abs_tol);

/// sum_{k >= from} k phi_k(r)^2, same contract as sum_weights.
SumResult sum_k_weights_squared(const WeightSeq& seq, double r, int from,
                                double abs_tol);

/// True value of sum_{n>=2} n^alpha r^n for alpha in {1,2,3}:
///   alpha = 1: (2-r) r^2 / (1-r)^2
///   alpha = 2: (4-3r+r^2) r^2 / (1-r)^3
///   alpha = 3: (8-5r+4r^2-r^3) r^2 / (1-r)^4
/// Throws domain_error outside [0,1), config_error for other alpha.
double closed_sum_power(int alpha, double r);

/// The same sums exactly as printed in the published source of the reference
/// table. The alpha = 1 formula there reads (2-r) r / (1-r)^2 - one factor of
/// r short of the true sum - and is kept verbatim because the reference
/// table's second row is numerically consistent with it. alpha in {2,3}
/// agree with closed_sum_power.
double printed_sum_power(int alpha, double r);

/// Modulus sequence {c_k} of a concrete function sample: Taylor-coefficient
/// moduli |a_k| for analytic samples, combined moduli |a_n| + |b_n| for
/// harmonic ones. All values are non-negative.
class CoeffSeq {
 public:
  enum class Kind {
    kBlaschkePoint,     // c_0 = a, c_k = (1-a^2) a^(k-1)
    kHarmonicExtremal,  // c_0 = 0, c_1 = 1, c_n = 2(1-beta) for n >= 2
    kFiniteTable,       // explicit moduli, zero beyond the table
    kBlaschkeProduct,   // expanded finite product, unit-disk bound beyond
  };

  static CoeffSeq BlaschkePoint(double a);
  static CoeffSeq HarmonicExtremal(double beta);
  static CoeffSeq FiniteTable(std::vector<double> moduli);
  /// Finite product of disk automorphism factors (z - z_j)/(1 - z_j z) with
  /// real zeros |z_j| < 1, expanded to a fixed horizon.
  static CoeffSeq BlaschkeProduct(const std::vector<double>& zeros);

  Kind kind() const { return kind_; }
  double at(int k) const;  // c_k
  /// Upper bound for c_j over all j >= k (used for tail certificates).
  double sup_from(int k) const;
  /// Number of explicitly stored coefficients (0 for closed-form kinds).
  int stored() const { return static_cast<int>(values_.size()); }
  /// True when coefficients beyond the stored horizon exist but are bounded
  /// by 1 (class-B samples truncated at the expansion horizon).
  bool bounded_tail() const { return bounded_tail_; }

  double param_a() const { return a_; }
  double param_beta() const { return beta_; }
  const std::vector<double>& values() const { return values_; }

 private:
  CoeffSeq() = default;
  Kind kind_ = Kind::kFiniteTable;
  double a_ = 0.0;
  double beta_ = 0.0;
  std::vector<double> values_;
  std::vector<double> suffix_max_;  // suffix maxima of values_
  bool bounded_tail_ = false;
};

/// Signed Taylor coefficients of the finite product of factors
/// (z - z_j)/(1 - z_j z) with real zeros, by per-factor series convolution.
std::vector<double> blaschke_series(const std::vector<double>& zeros,
                                    int count);

/// Number of coefficients BlaschkeProduct stores.
inline constexpr int kBlaschkeHorizon = 2048;

/// Compensated (Kahan) accumulator for long partial sums.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

namespace detail {

/// sum_{k >= from} k^m x^k for m in {0,1,2,3}, |x| < 1, from >= 0.
double power_sum_from(int m, double x, int from);

void require_radius(double r);  // r in [0,1) or domain_error

/// Adaptive summation certified by a measured geometric term ratio. Valid
/// for series with eventually non-increasing ratios (every built-in kind).
/// Throws non_convergent_error on divergence or an exhausted term budget.
SumResult sum_ratio_certified(int from,
                              const std::function<double(int)>& term,
                              double abs_tol,
                              std::int64_t max_terms = 4'000'000);

}  // namespace detail

}  // namespace bohr
