#include "bohr/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bohr {

namespace {

constexpr std::int64_t kMaxTerms = 8'000'000;
constexpr double kClassSlack = 1e-9;

double int_power(double base, int m) {
  double v = 1.0;
  for (int i = 0; i < m; ++i) v *= base;
  return v;
}

// sum_{k >= from} c_k phi_k(r), stopped once sup_{j>k} c_j times the closed
// weight tail certifies abs_tol. `class_bound` additionally enforces
// c_k <= 1 (the analytic class).
double sum_coeff_weights(const CoeffSeq& coeffs, const WeightSeq& phi,
                         double r, int from, double abs_tol,
                         bool class_bound) {
  const int start = std::max(from, phi.start_index);
  KahanSum acc;
  std::int64_t used = 0;
  for (int k = start;; ++k) {
    const double ck = coeffs.at(k);
    if (class_bound && ck > 1.0 + kClassSlack) {
      throw domain_error("coefficient modulus exceeds the class bound 1");
    }
    acc.add(ck * eval_weight(phi, k, r));
    ++used;
    const double sup = coeffs.sup_from(k + 1);
    if (sup == 0.0) break;
    const double tail = sup * sum_weights(phi, r, k + 1, abs_tol).value;
    if (tail <= abs_tol) break;
    if (used >= kMaxTerms) {
      throw non_convergent_error(
          "coefficient series tail could not be certified");
    }
  }
  return acc.value();
}

// sum_{k >= from} Phi_k(r) c_k^2 phi_k(r)^2 with the same certification
// strategy; falls back to a measured-ratio certificate when the pair has no
// closed tail.
double sum_correction(const CoeffSeq& coeffs, const WeightSeq& phi,
                      const WeightSeq& Phi, double r, int from,
                      double abs_tol) {
  if (Phi.kind == WeightKind::kZero) return 0.0;
  const int start = std::max({from, phi.start_index, Phi.start_index});

  const bool refined = Phi.kind == WeightKind::kRefinedWeight;
  const bool linear = Phi.kind == WeightKind::kLinearK;
  const bool phi_sq_closed =
      phi.kind == WeightKind::kMonomial ||
      phi.kind == WeightKind::kUnitThenMonomial ||
      phi.kind == WeightKind::kShifted ||
      phi.kind == WeightKind::kLacunary || phi.kind == WeightKind::kZero ||
      (phi.kind == WeightKind::kPowerWeighted && phi.alpha == 1) ||
      (phi.kind == WeightKind::kCustomTable && phi.tail_ratio >= 0.0);

  KahanSum acc;
  std::int64_t used = 0;
  double prev = 0.0;
  double rho_window[4] = {2.0, 2.0, 2.0, 2.0};
  int wi = 0;
  for (int k = start;; ++k) {
    const double ck = coeffs.at(k);
    const double pk = eval_weight(phi, k, r);
    const double t = eval_weight(Phi, k, r) * ck * ck * pk * pk;
    acc.add(t);
    ++used;

    const double sup = coeffs.sup_from(k + 1);
    if (sup == 0.0) break;
    if ((refined || linear) && phi_sq_closed) {
      double wtail;
      if (refined) {
        wtail = eval_weight(Phi, std::max(1, Phi.start_index), r) *
                sum_weights_squared(phi, r, k + 1, abs_tol).value;
      } else {
        wtail = Phi.c * sum_k_weights_squared(phi, r, k + 1, abs_tol).value;
      }
      if (sup * sup * wtail <= abs_tol) break;
    } else {
      if (used > 1 && prev != 0.0 && t != 0.0) {
        rho_window[wi++ & 3] = std::abs(t) / std::abs(prev);
      }
      if (t == 0.0 && prev == 0.0 && used >= 8) break;
      if (used >= 5) {
        const double rho =
            std::max(std::max(rho_window[0], rho_window[1]),
                     std::max(rho_window[2], rho_window[3]));
        if (rho < 1.0 && std::abs(t) * rho / (1.0 - rho) <= abs_tol) break;
      }
    }
    prev = t;
    if (used >= kMaxTerms) {
      throw non_convergent_error(
          "correction series tail could not be certified");
    }
  }
  return acc.value();
}

// sum_{n >= from} c_n r^n with a geometric tail certificate.
double sum_coeff_powers(const CoeffSeq& coeffs, double r, int from,
                        double abs_tol) {
  if (r == 0.0) return from == 0 ? coeffs.at(0) : 0.0;
  KahanSum acc;
  double rn = std::pow(r, from);
  std::int64_t used = 0;
  for (int n = from;; ++n) {
    acc.add(coeffs.at(n) * rn);
    ++used;
    const double sup = coeffs.sup_from(n + 1);
    if (sup == 0.0) break;
    if (sup * rn * r / (1.0 - r) <= abs_tol) break;
    rn *= r;
    if (used >= kMaxTerms) {
      throw non_convergent_error("sample series tail could not be certified");
    }
  }
  return acc.value();
}

// sum_{n >= from} c_n^2 r^(2n).
double sum_coeff_sq_powers(const CoeffSeq& coeffs, double r, int from,
                           double abs_tol) {
  const double x = r * r;
  if (x == 0.0) return from == 0 ? coeffs.at(0) * coeffs.at(0) : 0.0;
  KahanSum acc;
  double xn = std::pow(x, from);
  std::int64_t used = 0;
  for (int n = from;; ++n) {
    const double cn = coeffs.at(n);
    acc.add(cn * cn * xn);
    ++used;
    const double sup = coeffs.sup_from(n + 1);
    if (sup == 0.0) break;
    if (sup * sup * xn * x / (1.0 - x) <= abs_tol) break;
    xn *= x;
    if (used >= kMaxTerms) {
      throw non_convergent_error("sample series tail could not be certified");
    }
  }
  return acc.value();
}

}  // namespace

AnalyticInstance::AnalyticInstance(double p_, WeightSeq phi_, WeightSeq Phi_)
    : p(p_), phi(std::move(phi_)), Phi(std::move(Phi_)) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw domain_error("exponent p must lie in (0, 2]");
  }
  if (phi.start_index != 0) {
    throw config_error("phi must be defined from index 0");
  }
  if (Phi.start_index < 1) {
    throw config_error("Phi must be defined from index 1");
  }
}

HarmonicInstance::HarmonicInstance(double beta_, int m_, int N_, double mu_,
                                   double lambda_, bool allow_extended_beta)
    : beta(beta_),
      m(m_),
      N(N_),
      mu(mu_),
      lambda(lambda_),
      t((N_ - 1) / 2),
      extended_beta(allow_extended_beta) {
  if (m < 1) throw config_error("power m must be a positive integer");
  if (N < 1) throw config_error("series start N must be a positive integer");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw domain_error("beta must lie in (0, 1)");
  }
}

double eval_Cf(const CoeffSeq& coeffs, const AnalyticInstance& inst, double r,
               double abs_tol) {
  detail::require_radius(r);
  if (!(abs_tol > 0.0)) throw domain_error("abs_tol must be > 0");
  const double c0 = coeffs.at(0);
  if (c0 > 1.0 + kClassSlack) {
    throw domain_error("coefficient modulus exceeds the class bound 1");
  }
  const double head = std::pow(c0, inst.p) * eval_weight(inst.phi, 0, r);
  const double linear_part = sum_coeff_weights(coeffs, inst.phi, r, 1,
                                               abs_tol / 2.0,
                                               /*class_bound=*/true);
  const double correction =
      sum_correction(coeffs, inst.phi, inst.Phi, r, 1, abs_tol / 2.0);
  return head + linear_part + correction;
}

double eval_weighted_majorant(const CoeffSeq& coeffs,
                              const AnalyticInstance& inst, double r,
                              double abs_tol) {
  detail::require_radius(r);
  const double c0 = coeffs.at(0);
  const double head = std::pow(c0, inst.p) * eval_weight(inst.phi, 0, r);
  return head + sum_coeff_weights(coeffs, inst.phi, r, 1, abs_tol,
                                  /*class_bound=*/true);
}

double eval_area_ratio(const CoeffSeq& coeffs, double r, double abs_tol) {
  detail::require_radius(r);
  const double x = r * r;
  if (x == 0.0) return 0.0;
  KahanSum acc;
  double xn = x;
  std::int64_t used = 0;
  for (int n = 1;; ++n) {
    const double cn = coeffs.at(n);
    acc.add(n * cn * cn * xn);
    ++used;
    const double sup = coeffs.sup_from(n + 1);
    if (sup == 0.0) break;
    // sum_{j > n} j x^j = closed geometric-derivative tail
    const double tail = sup * sup * detail::power_sum_from(1, x, n + 1);
    if (tail <= abs_tol) break;
    xn *= x;
    if (used >= kMaxTerms) {
      throw non_convergent_error("area series tail could not be certified");
    }
  }
  return acc.value();
}

double area_upper_bound(double a0, double r) {
  if (!(a0 >= 0.0 && a0 <= 1.0)) {
    throw domain_error("a0 must lie in [0, 1]");
  }
  detail::require_radius(r);
  const double s = 1.0 - a0 * a0;
  const double d = 1.0 - a0 * a0 * r * r;
  return r * r * s * s / (d * d);
}

double eval_harmonic_S(const CoeffSeq& coeffs, const HarmonicInstance& inst,
                       double r, ModulusMode mode, double abs_tol) {
  detail::require_radius(r);
  if (!(abs_tol > 0.0)) throw domain_error("abs_tol must be > 0");
  const int t = inst.t;

  double modulus;
  if (mode == ModulusMode::kWorstCase) {
    modulus = inst.beta * r +
              (1.0 - inst.beta) * r * (1.0 + r) / (1.0 - r);
  } else {
    modulus = sum_coeff_powers(coeffs, r, 1, abs_tol / 4.0);
  }
  const double head = int_power(modulus, inst.m);

  const double body = sum_coeff_powers(coeffs, r, inst.N, abs_tol / 4.0);

  double mid = 0.0;
  if (t >= 1) {
    double sq = 0.0;
    for (int n = 1; n <= t; ++n) {
      const double cn = coeffs.at(n);
      sq += cn * cn;
    }
    mid = inst.mu * sq * std::pow(r, inst.N) / (1.0 - r);
  }

  const double sq_tail = sum_coeff_sq_powers(coeffs, r, t + 1, abs_tol / 4.0);
  const double weighted_tail = inst.lambda * (1.0 / (1.0 - r)) * sq_tail;

  return head + body + mid + weighted_tail;
}

GrowthBounds growth_bounds_harmonic(double beta, double r) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw domain_error("beta must lie in [0, 1)");
  }
  if (!(r >= 0.0 && r <= 1.0)) {
    throw domain_error("growth bounds are defined for r in [0, 1]");
  }
  if (r == 1.0) {
    return {beta, std::numeric_limits<double>::infinity()};
  }
  const double lower = beta * r + (1.0 - beta) * r * (1.0 - r) / (1.0 + r);
  const double upper = beta * r + (1.0 - beta) * r * (1.0 + r) / (1.0 - r);
  return {lower, upper};
}

double eval_fbeta_lhs(const CoeffSeq& coeffs, const WeightSeq& phi, double r,
                      double abs_tol) {
  detail::require_radius(r);
  const double phi1 =
      phi.start_index <= 1 ? eval_weight(phi, 1, r) : 1.0;
  const double tail = sum_coeff_weights(coeffs, phi, r, 2, abs_tol,
                                        /*class_bound=*/false);
  return r * phi1 + tail;
}

}  // namespace bohr
