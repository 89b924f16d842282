#include "bohr/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace bohr {

namespace detail {

void require_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw domain_error("radius must lie in [0, 1)");
  }
}

double power_sum_from(int m, double x, int from) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw domain_error("power_sum_from requires x in [0, 1)");
  }
  if (m < 0 || m > 3) {
    throw config_error("power_sum_from supports exponents 0..3");
  }
  const double omx = 1.0 - x;
  // T_i = sum_{j>=0} j^i x^j
  const double t0 = 1.0 / omx;
  const double t1 = x / (omx * omx);
  const double t2 = x * (1.0 + x) / (omx * omx * omx);
  const double t3 = x * (1.0 + 4.0 * x + x * x) / (omx * omx * omx * omx);
  if (from <= 0) {
    switch (m) {
      case 0:
        return t0;
      case 1:
        return t1;
      case 2:
        return t2;
      default:
        return t3;
    }
  }
  // Shift k = j + from: sum_{k>=from} k^m x^k expands binomially into
  // all-positive terms, so tails keep full relative accuracy (no
  // cancellation against the large full sum near x = 1).
  const double shift = static_cast<double>(from);
  const double head = std::pow(x, from);
  switch (m) {
    case 0:
      return head * t0;
    case 1:
      return head * (t1 + shift * t0);
    case 2:
      return head * (t2 + 2.0 * shift * t1 + shift * shift * t0);
    default:
      return head * (t3 + 3.0 * shift * t2 + 3.0 * shift * shift * t1 +
                     shift * shift * shift * t0);
  }
}

SumResult sum_ratio_certified(int from,
                              const std::function<double(int)>& term,
                              double abs_tol, std::int64_t max_terms) {
  KahanSum acc;
  std::int64_t used = 0;
  double prev = 0.0;
  double ratio_window[4] = {2.0, 2.0, 2.0, 2.0};
  int wi = 0;
  int zero_run = 0;
  int diverge_run = 0;
  for (int k = from;; ++k) {
    const double t = term(k);
    acc.add(t);
    ++used;
    if (t == 0.0) {
      if (++zero_run >= 8) {
        return {acc.value(), 0.0, used, true};  // finite support exhausted
      }
    } else {
      zero_run = 0;
      if (used > 1 && prev != 0.0) {
        const double ratio = std::abs(t) / std::abs(prev);
        ratio_window[wi++ & 3] = ratio;
        if (ratio >= 1.0) {
          if (++diverge_run >= 16 && std::abs(t) > abs_tol) {
            throw non_convergent_error(
                "series diverges: term ratio stayed >= 1");
          }
        } else {
          diverge_run = 0;
        }
      }
    }
    if (used >= 5) {
      const double rho =
          std::max(std::max(ratio_window[0], ratio_window[1]),
                   std::max(ratio_window[2], ratio_window[3]));
      if (rho < 1.0) {
        const double tail = std::abs(t) * rho / (1.0 - rho);
        if (tail <= abs_tol) {
          return {acc.value(), tail, used, true};
        }
      }
    }
    prev = t;
    if (used >= max_terms) {
      throw non_convergent_error(
          "series tail could not be certified within the term budget");
    }
  }
}

}  // namespace detail

namespace {

using detail::power_sum_from;
using detail::sum_ratio_certified;

void validate_custom_table(const std::vector<double>& values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw config_error("custom-table weights must be finite and >= 0");
    }
  }
}

// Finite part sum_{k=from}^{last} t_k g(k) plus the geometric continuation,
// where g(k) = r^(s*k) and the table continues as t_last * ratio^(k-last).
// `square` squares the table entries (for phi^2 sums); `times_k` multiplies
// by k (for k phi^2 sums).
SumResult sum_custom(const WeightSeq& seq, double r, int from, bool square,
                     bool times_k) {
  const int s = square ? 2 : 1;
  const double x = std::pow(r, s);
  const int last = seq.start_index + static_cast<int>(seq.table.size()) - 1;
  KahanSum acc;
  std::int64_t used = 0;
  double xk = std::pow(x, from);
  for (int k = from; k <= last; ++k) {
    double t = seq.table[static_cast<size_t>(k - seq.start_index)];
    if (square) t *= t;
    if (times_k) t *= k;
    acc.add(t * xk);
    xk *= x;
    ++used;
  }
  if (seq.table.empty() || seq.tail_ratio == 0.0) {
    return {acc.value(), 0.0, used, true};
  }
  if (seq.tail_ratio < 0.0) {
    return {acc.value(), 0.0, used, false};  // unknown tail
  }
  // Geometric continuation t_k = t_last * ratio^(k - last) for k > last.
  double rho = seq.tail_ratio;
  if (square) rho *= seq.tail_ratio;
  const double cr = rho * x;
  if (cr >= 1.0) {
    throw non_convergent_error("custom-table geometric tail does not decay");
  }
  double t_last = seq.table.back();
  if (square) t_last *= t_last;
  const int gfrom = std::max(from, last + 1);
  // term_k = t_last x^last (rho x)^(k - last) for k > last
  const double scale = t_last * std::pow(x, last);
  if (!times_k) {
    acc.add(scale * std::pow(cr, gfrom - last) / (1.0 - cr));
  } else {
    // sum_{k >= gfrom} k term_k with k = (k - last) + last
    const double head = power_sum_from(1, cr, gfrom - last) +
                        static_cast<double>(last) *
                            power_sum_from(0, cr, gfrom - last);
    acc.add(scale * head);
  }
  return {acc.value(), 0.0, used, true};
}

}  // namespace

WeightSeq WeightSeq::Monomial(int start) {
  if (start < 0) throw config_error("monomial start index must be >= 0");
  WeightSeq w;
  w.kind = WeightKind::kMonomial;
  w.start_index = start;
  return w;
}

WeightSeq WeightSeq::UnitThenMonomial() {
  WeightSeq w;
  w.kind = WeightKind::kUnitThenMonomial;
  w.start_index = 1;
  return w;
}

WeightSeq WeightSeq::Shifted(int start) {
  if (start < 0) throw config_error("shifted start index must be >= 0");
  WeightSeq w;
  w.kind = WeightKind::kShifted;
  w.start_index = start;
  return w;
}

WeightSeq WeightSeq::PowerWeighted(int alpha, int start) {
  if (alpha < 1 || alpha > 3) {
    throw config_error("power-weighted exponent must be 1, 2 or 3");
  }
  if (start < 0) throw config_error("power-weighted start index must be >= 0");
  WeightSeq w;
  w.kind = WeightKind::kPowerWeighted;
  w.alpha = alpha;
  w.start_index = start;
  return w;
}

WeightSeq WeightSeq::Lacunary(int q, int start) {
  if (q < 1) throw config_error("lacunary index q must be a positive integer");
  if (start < 0) throw config_error("lacunary start index must be >= 0");
  WeightSeq w;
  w.kind = WeightKind::kLacunary;
  w.q = q;
  w.start_index = start;
  return w;
}

WeightSeq WeightSeq::RefinedWeight(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw config_error("refined-weight parameter a must lie in [0, 1)");
  }
  WeightSeq w;
  w.kind = WeightKind::kRefinedWeight;
  w.a = a;
  w.start_index = 1;
  return w;
}

WeightSeq WeightSeq::LinearK(double c) {
  if (!(c >= 0.0)) {
    throw config_error("linear-k coefficient must be >= 0");
  }
  WeightSeq w;
  w.kind = WeightKind::kLinearK;
  w.c = c;
  w.start_index = 1;
  return w;
}

WeightSeq WeightSeq::Zero() {
  WeightSeq w;
  w.kind = WeightKind::kZero;
  w.start_index = 1;
  return w;
}

WeightSeq WeightSeq::CustomTable(std::vector<double> values, int start,
                                 double tail_ratio) {
  if (start < 0) throw config_error("custom-table start index must be >= 0");
  validate_custom_table(values);
  if (tail_ratio >= 1.0) {
    throw config_error("custom-table tail ratio must be < 1");
  }
  WeightSeq w;
  w.kind = WeightKind::kCustomTable;
  w.start_index = start;
  w.table = std::move(values);
  w.tail_ratio = tail_ratio;
  return w;
}

double eval_weight(const WeightSeq& seq, int k, double r) {
  detail::require_radius(r);
  if (k < seq.start_index) {
    throw domain_error("weight index below the sequence start");
  }
  switch (seq.kind) {
    case WeightKind::kMonomial:
      return std::pow(r, k);
    case WeightKind::kUnitThenMonomial:
      return k == 1 ? 1.0 : std::pow(r, k);
    case WeightKind::kShifted:
      return (k + 1.0) * std::pow(r, k);
    case WeightKind::kPowerWeighted:
      return std::pow(static_cast<double>(k), seq.alpha) * std::pow(r, k);
    case WeightKind::kLacunary:
      return std::pow(r, static_cast<double>(seq.q) * k);
    case WeightKind::kRefinedWeight:
      return 1.0 / (1.0 + seq.a) + r / (1.0 - r);
    case WeightKind::kLinearK:
      return seq.c * k;
    case WeightKind::kZero:
      return 0.0;
    case WeightKind::kCustomTable: {
      const int idx = k - seq.start_index;
      const int n = static_cast<int>(seq.table.size());
      if (idx < n) return seq.table[static_cast<size_t>(idx)] * std::pow(r, k);
      if (seq.tail_ratio > 0.0 && n > 0) {
        return seq.table.back() * std::pow(seq.tail_ratio, idx - (n - 1)) *
               std::pow(r, k);
      }
      return 0.0;
    }
  }
  throw config_error("unknown weight kind");
}

SumResult sum_weights(const WeightSeq& seq, double r, int from,
                      double abs_tol) {
  detail::require_radius(r);
  if (!(abs_tol > 0.0)) throw domain_error("abs_tol must be > 0");
  const int efrom = std::max(from, seq.start_index);
  switch (seq.kind) {
    case WeightKind::kZero:
      return {0.0, 0.0, 0, true};
    case WeightKind::kMonomial:
      return {power_sum_from(0, r, efrom), 0.0, 0, true};
    case WeightKind::kUnitThenMonomial: {
      double v = power_sum_from(0, r, std::max(efrom, 2));
      if (efrom <= 1) v += 1.0;
      return {v, 0.0, 0, true};
    }
    case WeightKind::kShifted:
      return {power_sum_from(1, r, efrom) + power_sum_from(0, r, efrom), 0.0,
              0, true};
    case WeightKind::kPowerWeighted:
      return {power_sum_from(seq.alpha, r, efrom), 0.0, 0, true};
    case WeightKind::kLacunary:
      return {power_sum_from(0, std::pow(r, seq.q), efrom), 0.0, 0, true};
    case WeightKind::kRefinedWeight:
      throw non_convergent_error(
          "refined-weight terms are constant in k; the series diverges");
    case WeightKind::kLinearK:
      if (seq.c == 0.0) return {0.0, 0.0, 0, true};
      throw non_convergent_error(
          "linear-k terms grow with k; the series diverges");
    case WeightKind::kCustomTable:
      return sum_custom(seq, r, efrom, /*square=*/false,
                        /*times_k=*/false);
  }
  throw config_error("unknown weight kind");
}

SumResult sum_weights_squared(const WeightSeq& seq, double r, int from,
                              double abs_tol) {
  detail::require_radius(r);
  if (!(abs_tol > 0.0)) throw domain_error("abs_tol must be > 0");
  const int efrom = std::max(from, seq.start_index);
  const double x = r * r;
  switch (seq.kind) {
    case WeightKind::kZero:
      return {0.0, 0.0, 0, true};
    case WeightKind::kMonomial:
      return {power_sum_from(0, x, efrom), 0.0, 0, true};
    case WeightKind::kUnitThenMonomial: {
      double v = power_sum_from(0, x, std::max(efrom, 2));
      if (efrom <= 1) v += 1.0;
      return {v, 0.0, 0, true};
    }
    case WeightKind::kShifted:
      // (k+1)^2 x^k = (k^2 + 2k + 1) x^k
      return {power_sum_from(2, x, efrom) + 2.0 * power_sum_from(1, x, efrom) +
                  power_sum_from(0, x, efrom),
              0.0, 0, true};
    case WeightKind::kPowerWeighted:
      if (seq.alpha == 1) {
        return {power_sum_from(2, x, efrom), 0.0, 0, true};
      }
      return sum_ratio_certified(
          efrom,
          [&](int k) {
            const double w = eval_weight(seq, k, r);
            return w * w;
          },
          abs_tol);
    case WeightKind::kLacunary:
      return {power_sum_from(0, std::pow(r, 2.0 * seq.q), efrom), 0.0, 0,
              true};
    case WeightKind::kRefinedWeight:
      throw non_convergent_error(
          "refined-weight terms are constant in k; the series diverges");
    case WeightKind::kLinearK:
      if (seq.c == 0.0) return {0.0, 0.0, 0, true};
      throw non_convergent_error(
          "linear-k terms grow with k; the series diverges");
    case WeightKind::kCustomTable:
      return sum_custom(seq, r, efrom, /*square=*/true,
                        /*times_k=*/false);
  }
  throw config_error("unknown weight kind");
}

SumResult sum_k_weights_squared(const WeightSeq& seq, double r, int from,
                                double abs_tol) {
  detail::require_radius(r);
  if (!(abs_tol > 0.0)) throw domain_error("abs_tol must be > 0");
  const int efrom = std::max(from, seq.start_index);
  const double x = r * r;
  switch (seq.kind) {
    case WeightKind::kZero:
      return {0.0, 0.0, 0, true};
    case WeightKind::kMonomial:
      return {power_sum_from(1, x, efrom), 0.0, 0, true};
    case WeightKind::kUnitThenMonomial: {
      double v = power_sum_from(1, x, std::max(efrom, 2));
      if (efrom <= 1) v += 1.0;  // k = 1 term: 1 * 1^2
      return {v, 0.0, 0, true};
    }
    case WeightKind::kShifted:
      // k (k+1)^2 x^k = (k^3 + 2k^2 + k) x^k
      return {power_sum_from(3, x, efrom) + 2.0 * power_sum_from(2, x, efrom) +
                  power_sum_from(1, x, efrom),
              0.0, 0, true};
    case WeightKind::kPowerWeighted:
      if (seq.alpha == 1) {
        return {power_sum_from(3, x, efrom), 0.0, 0, true};
      }
      return sum_ratio_certified(
          efrom,
          [&](int k) {
            const double w = eval_weight(seq, k, r);
            return k * w * w;
          },
          abs_tol);
    case WeightKind::kLacunary:
      return {power_sum_from(1, std::pow(r, 2.0 * seq.q), efrom), 0.0, 0,
              true};
    case WeightKind::kRefinedWeight:
      throw non_convergent_error(
          "refined-weight terms are constant in k; the series diverges");
    case WeightKind::kLinearK:
      if (seq.c == 0.0) return {0.0, 0.0, 0, true};
      throw non_convergent_error(
          "linear-k terms grow with k; the series diverges");
    case WeightKind::kCustomTable:
      return sum_custom(seq, r, efrom, /*square=*/true,
                        /*times_k=*/true);
  }
  throw config_error("unknown weight kind");
}

double closed_sum_power(int alpha, double r) {
  detail::require_radius(r);
  const double omr = 1.0 - r;
  const double r2 = r * r;
  switch (alpha) {
    case 1:
      return (2.0 - r) * r2 / (omr * omr);
    case 2:
      return (4.0 - 3.0 * r + r2) * r2 / (omr * omr * omr);
    case 3:
      return (8.0 - 5.0 * r + 4.0 * r2 - r2 * r) * r2 / (omr * omr * omr * omr);
    default:
      throw config_error("closed_sum_power supports alpha in {1, 2, 3}");
  }
}

double printed_sum_power(int alpha, double r) {
  detail::require_radius(r);
  const double omr = 1.0 - r;
  switch (alpha) {
    case 1:
      return (2.0 - r) * r / (omr * omr);
    case 2:
    case 3:
      return closed_sum_power(alpha, r);
    default:
      throw config_error("printed_sum_power supports alpha in {1, 2, 3}");
  }
}

std::vector<double> blaschke_series(const std::vector<double>& zeros,
                                    int count) {
  if (count <= 0) throw config_error("coefficient count must be positive");
  for (double z : zeros) {
    if (!(std::abs(z) < 1.0)) {
      throw domain_error("product zeros must lie inside the unit disk");
    }
  }
  // Per factor: multiply by (z - a), then divide by (1 - a z) via the
  // recursion v[k] = u[k] + a v[k-1].
  std::vector<double> c(static_cast<size_t>(count), 0.0);
  c[0] = 1.0;
  std::vector<double> u(static_cast<size_t>(count), 0.0);
  for (double a : zeros) {
    u[0] = -a * c[0];
    for (int k = 1; k < count; ++k) {
      u[static_cast<size_t>(k)] =
          c[static_cast<size_t>(k - 1)] - a * c[static_cast<size_t>(k)];
    }
    c[0] = u[0];
    for (int k = 1; k < count; ++k) {
      c[static_cast<size_t>(k)] =
          u[static_cast<size_t>(k)] + a * c[static_cast<size_t>(k - 1)];
    }
  }
  return c;
}

CoeffSeq CoeffSeq::BlaschkePoint(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw domain_error("point parameter a must lie in [0, 1)");
  }
  CoeffSeq s;
  s.kind_ = Kind::kBlaschkePoint;
  s.a_ = a;
  return s;
}

CoeffSeq CoeffSeq::HarmonicExtremal(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw domain_error("beta must lie in [0, 1)");
  }
  CoeffSeq s;
  s.kind_ = Kind::kHarmonicExtremal;
  s.beta_ = beta;
  return s;
}

CoeffSeq CoeffSeq::FiniteTable(std::vector<double> moduli) {
  for (double v : moduli) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw config_error("coefficient moduli must be finite and >= 0");
    }
  }
  CoeffSeq s;
  s.kind_ = Kind::kFiniteTable;
  s.values_ = std::move(moduli);
  s.suffix_max_.assign(s.values_.size(), 0.0);
  double m = 0.0;
  for (int k = static_cast<int>(s.values_.size()) - 1; k >= 0; --k) {
    m = std::max(m, s.values_[static_cast<size_t>(k)]);
    s.suffix_max_[static_cast<size_t>(k)] = m;
  }
  return s;
}

CoeffSeq CoeffSeq::BlaschkeProduct(const std::vector<double>& zeros) {
  if (zeros.empty()) {
    throw config_error("product needs at least one zero");
  }
  CoeffSeq s;
  s.kind_ = Kind::kBlaschkeProduct;
  s.values_ = blaschke_series(zeros, kBlaschkeHorizon);
  for (double& v : s.values_) v = std::abs(v);
  s.bounded_tail_ = true;
  s.suffix_max_.assign(s.values_.size(), 0.0);
  double m = 0.0;
  for (int k = static_cast<int>(s.values_.size()) - 1; k >= 0; --k) {
    m = std::max(m, s.values_[static_cast<size_t>(k)]);
    s.suffix_max_[static_cast<size_t>(k)] = m;
  }
  return s;
}

double CoeffSeq::at(int k) const {
  if (k < 0) throw domain_error("coefficient index must be >= 0");
  switch (kind_) {
    case Kind::kBlaschkePoint:
      if (k == 0) return a_;
      return (1.0 - a_ * a_) * std::pow(a_, k - 1);
    case Kind::kHarmonicExtremal:
      if (k == 0) return 0.0;
      if (k == 1) return 1.0;
      return 2.0 * (1.0 - beta_);
    case Kind::kFiniteTable:
    case Kind::kBlaschkeProduct:
      if (k < static_cast<int>(values_.size())) {
        return values_[static_cast<size_t>(k)];
      }
      return 0.0;
  }
  throw config_error("unknown coefficient kind");
}

double CoeffSeq::sup_from(int k) const {
  if (k < 0) k = 0;
  switch (kind_) {
    case Kind::kBlaschkePoint: {
      const double geo = (1.0 - a_ * a_) * std::pow(a_, std::max(k, 1) - 1);
      return k == 0 ? std::max(a_, geo) : geo;
    }
    case Kind::kHarmonicExtremal: {
      const double body = 2.0 * (1.0 - beta_);
      return k <= 1 ? std::max(1.0, body) : body;
    }
    case Kind::kFiniteTable:
      if (k < static_cast<int>(suffix_max_.size())) {
        return suffix_max_[static_cast<size_t>(k)];
      }
      return 0.0;
    case Kind::kBlaschkeProduct:
      if (k < static_cast<int>(suffix_max_.size())) {
        // Stored coefficients may understate the tail; the class bound 1
        // still applies beyond the horizon.
        return std::max(suffix_max_[static_cast<size_t>(k)], 0.0);
      }
      return bounded_tail_ ? 1.0 : 0.0;
  }
  throw config_error("unknown coefficient kind");
}

}  // namespace bohr
