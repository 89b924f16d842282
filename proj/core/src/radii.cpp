#include "bohr/radii.hpp"

#include <algorithm>
#include <cmath>

namespace bohr {

namespace {

double int_power(double base, int m) {
  double v = 1.0;
  for (int i = 0; i < m; ++i) v *= base;
  return v;
}

// sum_{k >= 1} Phi_k(r) phi_k(r)^2 on weights alone.
double sum_correction_weights(const WeightSeq& phi, const WeightSeq& Phi,
                              double r, double abs_tol) {
  switch (Phi.kind) {
    case WeightKind::kZero:
      return 0.0;
    case WeightKind::kRefinedWeight:
      return eval_weight(Phi, 1, r) *
             sum_weights_squared(phi, r, 1, abs_tol).value;
    case WeightKind::kLinearK:
      return Phi.c * sum_k_weights_squared(phi, r, 1, abs_tol).value;
    default:
      break;
  }
  const int from = std::max({1, phi.start_index, Phi.start_index});
  return detail::sum_ratio_certified(
             from,
             [&](int k) {
               const double pk = eval_weight(phi, k, r);
               return eval_weight(Phi, k, r) * pk * pk;
             },
             abs_tol)
      .value;
}

}  // namespace

std::string to_string(SumMode mode) {
  return mode == SumMode::kPaperPrinted ? "paper-printed" : "verified-series";
}

SumMode sum_mode_from_string(const std::string& s) {
  if (s == "paper-printed") return SumMode::kPaperPrinted;
  if (s == "verified-series") return SumMode::kVerifiedSeries;
  throw config_error("unknown mode '" + s +
                     "' (expected paper-printed or verified-series)");
}

double residual_generalized(const AnalyticInstance& inst, double r,
                            double abs_tol) {
  detail::require_radius(r);
  const double linear = sum_weights(inst.phi, r, 1, abs_tol).value;
  const double corr = sum_correction_weights(inst.phi, inst.Phi, r, abs_tol);
  return (2.0 / inst.p) * (linear + corr) - eval_weight(inst.phi, 0, r);
}

double residual_harmonic(const HarmonicInstance& inst, double r) {
  detail::require_radius(r);
  if (inst.beta >= 0.5 && !inst.extended_beta) {
    throw domain_error(
        "the harmonic radius equation is stated for beta in (0, 1/2); "
        "construct the instance with allow_extended_beta to widen to (0, 1)");
  }
  const double beta = inst.beta;
  const double omb = 1.0 - beta;
  const double base = beta * r + omb * r * (1.0 + r) / (1.0 - r);
  const double rN = std::pow(r, inst.N);
  double value = int_power(base, inst.m) + 2.0 * omb * rN / (1.0 - r);
  if (inst.t >= 1) {
    value += 4.0 * inst.mu * omb * omb * rN * inst.t / (1.0 - r);
  }
  // (1 + r/(1-r)) = 1/(1-r)
  value += (1.0 / (1.0 - r)) * 4.0 * inst.lambda * omb * omb *
           std::pow(r, 2 * inst.t + 2) / (1.0 - r * r);
  return value - beta;
}

double residual_fbeta(double beta, const WeightSeq& phi, double r,
                      SumMode mode, double abs_tol) {
  if (beta == 0.0) {
    throw degenerate_error("the radius degenerates to 0 at beta = 0");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw domain_error("beta must lie in (0, 1)");
  }
  detail::require_radius(r);

  double at_zero;
  try {
    at_zero = sum_weights(phi, 0.0, 2, 1e-12).value;
  } catch (const non_convergent_error&) {
    throw precondition_error(
        "tail condition sum_{n>=2} phi_n(0) < beta/(2(1-beta)) violated: "
        "the weight series diverges at r = 0");
  }
  if (!(at_zero < beta / (2.0 * (1.0 - beta)))) {
    throw precondition_error(
        "tail condition sum_{n>=2} phi_n(0) < beta/(2(1-beta)) violated");
  }

  const double phi1 = phi.start_index <= 1 ? eval_weight(phi, 1, r) : 1.0;
  const int from = std::max(2, phi.start_index);
  double tail;
  if (mode == SumMode::kPaperPrinted &&
      phi.kind == WeightKind::kPowerWeighted && phi.alpha == 1 && from == 2) {
    tail = printed_sum_power(1, r);
  } else {
    tail = sum_weights(phi, r, from, abs_tol).value;
  }
  return r * phi1 + 2.0 * (1.0 - beta) * tail - beta;
}

ResidualSpec make_generalized_residual(AnalyticInstance inst) {
  ResidualSpec spec;
  spec.name = "generalized";
  spec.mode = SumMode::kVerifiedSeries;
  spec.residual = [inst = std::move(inst)](double r) {
    return residual_generalized(inst, r);
  };
  return spec;
}

ResidualSpec make_harmonic_residual(HarmonicInstance inst) {
  ResidualSpec spec;
  spec.name = inst.extended_beta ? "harmonic (extended-beta)" : "harmonic";
  spec.mode = SumMode::kVerifiedSeries;
  spec.residual = [inst](double r) { return residual_harmonic(inst, r); };
  return spec;
}

ResidualSpec make_fbeta_residual(double beta, WeightSeq phi, SumMode mode) {
  // Fail fast on the tail condition instead of mid-scan.
  residual_fbeta(beta, phi, 0.0, mode);
  ResidualSpec spec;
  spec.name = "fbeta";
  spec.mode = mode;
  spec.residual = [beta, phi = std::move(phi), mode](double r) {
    return residual_fbeta(beta, phi, r, mode);
  };
  return spec;
}

std::optional<RadiusResult> solve_min_root(const ResidualSpec& spec,
                                           const SolveOptions& opts) {
  const double r_max = 1.0 - opts.eta;
  double lo = 0.0;
  double f_lo = spec.residual(0.0);
  if (f_lo > 0.0) {
    throw precondition_error(
        "residual must be non-positive at r = 0 for a minimal-root search");
  }

  double hi = 0.0;
  bool bracketed = false;
  for (int k = 1;; ++k) {
    const double r = std::min(k * opts.grid_step, r_max);
    const double f = spec.residual(r);
    if (!std::isfinite(f)) {
      throw non_convergent_error("residual evaluated to a non-finite value");
    }
    if (f >= 0.0) {
      hi = r;
      bracketed = true;
      break;
    }
    lo = r;
    if (r >= r_max) break;
  }
  if (!bracketed) return std::nullopt;

  int iterations = 0;
  while (hi - lo > opts.root_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double f = spec.residual(mid);
    ++iterations;
    if (f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  RadiusResult result;
  result.value = 0.5 * (lo + hi);
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.residual_at_root = spec.residual(result.value);
  result.iterations = iterations;
  result.mode = spec.mode;
  return result;
}

double prior_radius(const std::string& name, const PriorParams& params) {
  const double a = params.a;
  const double beta = params.beta;
  auto require_a = [&](double lo, double hi) {
    if (!(a >= lo && a <= hi)) {
      throw domain_error("parameter a out of domain for radius '" + name +
                         "'");
    }
  };

  if (name == "R_N" || name == "Rp_N") {
    if (params.N < 1) throw domain_error("N must be a positive integer");
    const double scale = name == "R_N" ? 2.0 : 1.0;
    ResidualSpec spec;
    spec.name = name;
    spec.residual = [scale, N = params.N](double r) {
      const double omr = 1.0 - r;
      return scale * (1.0 + r) * std::pow(r, N) - omr * omr;
    };
    auto res = solve_min_root(spec);
    if (!res) throw non_convergent_error("no root found for '" + name + "'");
    return res->value;
  }
  if (name == "r_a0") {
    require_a(0.0, 1.0);
    return 2.0 / (3.0 + a + std::sqrt(5.0) * (1.0 + a));
  }
  if (name == "rp_a0") {
    require_a(0.0, 1.0);
    ResidualSpec spec;
    spec.name = name;
    // Sign-normalized: the printed cubic is positive below its first root.
    spec.residual = [a](double r) {
      return -((1.0 - a * a * a) * r * r * r - (1.0 + 2.0 * a) * r * r -
               2.0 * r + 1.0);
    };
    auto res = solve_min_root(spec);
    if (!res) throw non_convergent_error("no root found for '" + name + "'");
    return res->value;
  }
  if (name == "r_f") {
    if (!(beta > 0.0 && beta < 0.5)) {
      throw domain_error("r_f requires beta in (0, 1/2)");
    }
    const double disc = (1.0 + beta) * (1.0 + beta) +
                        4.0 * beta * (1.0 - 2.0 * beta);
    return (-(1.0 + beta) + std::sqrt(disc)) / (2.0 * (1.0 - 2.0 * beta));
  }
  if (name == "classical") {
    if (!(params.p > 0.0 && params.p <= 2.0)) {
      throw domain_error("classical radius requires p in (0, 2]");
    }
    return params.p / (params.p + 2.0);
  }
  if (name == "bohr") return 1.0 / 3.0;
  if (name == "refined_p1") {
    require_a(0.0, 1.0);
    return 1.0 / (2.0 + a);
  }
  if (name == "refined_p2") return 0.5;
  if (name == "refined_skip0") return 0.6;
  if (name == "refined_with_a0") return (5.0 - std::sqrt(17.0)) / 2.0;
  if (name == "lacunary_p1") {
    require_a(0.0, 1.0);
    if (params.q < 1) throw domain_error("q must be a positive integer");
    return std::pow(2.0 + a, -1.0 / params.q);
  }
  if (name == "lacunary_p2") {
    if (params.q < 1) throw domain_error("q must be a positive integer");
    return std::pow(2.0, -1.0 / params.q);
  }
  if (name == "improved_area_p1") return 1.0 / 3.0;
  if (name == "improved_area_p2") return 0.5;
  if (name == "improved_half") return 1.0 / 3.0;
  if (name == "improved_combo_p1") return 1.0 / 3.0;
  if (name == "improved_combo_p2") {
    require_a(0.0, 1.0);
    return 1.0 / (3.0 - a);
  }
  throw config_error("unknown prior radius '" + name + "'");
}

const std::array<std::array<double, 9>, 4> kTable1Reference{{
    {0.070, 0.119, 0.161, 0.202, 0.242, 0.287, 0.338, 0.402, 0.5},
    {0.021, 0.045, 0.072, 0.104, 0.142, 0.188, 0.245, 0.324, 0.447},
    {0.064, 0.106, 0.141, 0.174, 0.207, 0.242, 0.282, 0.333, 0.412},
    {0.052, 0.083, 0.108, 0.131, 0.155, 0.181, 0.211, 0.249, 0.312},
}};

const char* const kTable1ReferenceVersion = "table1-reference-v1";

double Table1Result::max_abs_deviation() const {
  double m = 0.0;
  for (const auto& row : deviation) {
    for (double d : row) m = std::max(m, std::abs(d));
  }
  return m;
}

double Table1Result::row_max_abs_deviation(int row) const {
  double m = 0.0;
  for (double d : deviation[static_cast<size_t>(row)]) {
    m = std::max(m, std::abs(d));
  }
  return m;
}

WeightSeq table1_row_weights(int row) {
  switch (row) {
    case 1:
      return WeightSeq::Shifted(2);
    case 2:
      return WeightSeq::PowerWeighted(1, 2);
    case 3:
      return WeightSeq::PowerWeighted(2, 2);
    case 4:
      return WeightSeq::PowerWeighted(3, 2);
    default:
      throw config_error("reference table rows are 1..4");
  }
}

Table1Result table1(SumMode mode) {
  Table1Result out;
  out.mode = mode;
  for (int row = 1; row <= 4; ++row) {
    const WeightSeq phi = table1_row_weights(row);
    for (size_t j = 0; j < kTable1Betas.size(); ++j) {
      const auto spec = make_fbeta_residual(kTable1Betas[j], phi, mode);
      const auto res = solve_min_root(spec);
      if (!res) {
        throw non_convergent_error("reference-table cell has no root");
      }
      out.computed[static_cast<size_t>(row - 1)][j] = res->value;
      out.deviation[static_cast<size_t>(row - 1)][j] =
          res->value - kTable1Reference[static_cast<size_t>(row - 1)][j];
    }
  }
  return out;
}

std::vector<std::pair<std::string, AnalyticInstance>>
shipped_generalized_instances() {
  std::vector<std::pair<std::string, AnalyticInstance>> out;
  out.emplace_back("classical-p0.5",
                   AnalyticInstance(0.5, WeightSeq::Monomial(),
                                    WeightSeq::Zero()));
  out.emplace_back("classical-p1", AnalyticInstance(1.0, WeightSeq::Monomial(),
                                                    WeightSeq::Zero()));
  out.emplace_back("classical-p2", AnalyticInstance(2.0, WeightSeq::Monomial(),
                                                    WeightSeq::Zero()));
  out.emplace_back("lacunary-q2-p1",
                   AnalyticInstance(1.0, WeightSeq::Lacunary(2),
                                    WeightSeq::Zero()));
  out.emplace_back("lacunary-q3-p1",
                   AnalyticInstance(1.0, WeightSeq::Lacunary(3),
                                    WeightSeq::Zero()));
  return out;
}

}  // namespace bohr
