#include "bohr/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohr/functionals.hpp"
#include "bohr/radii.hpp"

namespace bohr {

namespace {

// sum_{k >= from} c_k r^k with a certified geometric tail.
double table_power_sum(const CoeffSeq& coeffs, double r, int from) {
  if (r == 0.0) return from == 0 ? coeffs.at(0) : 0.0;
  KahanSum acc;
  double rk = std::pow(r, from);
  for (int k = from; k < 2'000'000; ++k) {
    acc.add(coeffs.at(k) * rk);
    const double sup = coeffs.sup_from(k + 1);
    if (sup == 0.0 || sup * rk * r / (1.0 - r) < 1e-18) return acc.value();
    rk *= r;
  }
  throw non_convergent_error("coefficient series did not decay");
}

// sum_{k >= from} c_k^2 r^(2k).
double table_sq_power_sum(const CoeffSeq& coeffs, double r, int from) {
  const double x = r * r;
  if (x == 0.0) return from == 0 ? coeffs.at(0) * coeffs.at(0) : 0.0;
  KahanSum acc;
  double xk = std::pow(x, from);
  for (int k = from; k < 2'000'000; ++k) {
    const double c = coeffs.at(k);
    acc.add(c * c * xk);
    const double sup = coeffs.sup_from(k + 1);
    if (sup == 0.0 || sup * sup * xk * x / (1.0 - x) < 1e-18) {
      return acc.value();
    }
    xk *= x;
  }
  throw non_convergent_error("coefficient series did not decay");
}

}  // namespace

double fa_modulus(double a, int k) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw domain_error("family parameter a must lie in [0, 1)");
  }
  if (k < 0) throw domain_error("coefficient index must be >= 0");
  if (k == 0) return a;
  return (1.0 - a * a) * std::pow(a, k - 1);
}

double refined_functional_closed(double a, double r) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw domain_error("family parameter a must lie in [0, 1)");
  }
  detail::require_radius(r);
  const double s = 1.0 - a * a;
  const double weight = 1.0 / (1.0 + a) + r / (1.0 - r);
  return a + s * r / (1.0 - a * r) +
         weight * s * s * r * r / (1.0 - a * a * r * r);
}

double harmonic_distance(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw domain_error("beta must lie in [0, 1)");
  }
  return beta;
}

std::string to_string(SharpnessVerdict v) {
  switch (v) {
    case SharpnessVerdict::kSharpConfirmed:
      return "sharp-confirmed";
    case SharpnessVerdict::kInconclusive:
      return "inconclusive";
    case SharpnessVerdict::kViolated:
      return "violated";
  }
  return "inconclusive";
}

ProbeInstance classical_probe() {
  ProbeInstance p;
  p.name = "classical";
  p.value = [](double a, double r) {
    const AnalyticInstance inst(1.0, WeightSeq::Monomial(), WeightSeq::Zero());
    return eval_Cf(CoeffSeq::BlaschkePoint(a), inst, r);
  };
  p.bound = [](double) { return 1.0; };
  p.default_grid = {0.9, 0.99, 0.999};
  p.default_radius = 1.0 / 3.0;
  return p;
}

ProbeInstance refined_probe(double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw domain_error("family parameter a must lie in [0, 1)");
  }
  ProbeInstance p;
  p.name = "refined-I(i)(a)";
  p.value = [](double param, double r) {
    const AnalyticInstance inst(1.0, WeightSeq::Monomial(),
                                WeightSeq::RefinedWeight(param));
    return eval_Cf(CoeffSeq::BlaschkePoint(param), inst, r);
  };
  p.bound = [](double) { return 1.0; };
  p.default_grid = {a};
  p.default_radius = 1.0 / (2.0 + a);
  p.tied_param = a;
  return p;
}

ProbeInstance improved_area_probe() {
  ProbeInstance p;
  p.name = "improved-II(i)(a)";
  p.value = [](double a, double r) {
    const AnalyticInstance inst(1.0, WeightSeq::Monomial(),
                                WeightSeq::LinearK(16.0 / 9.0));
    return eval_Cf(CoeffSeq::BlaschkePoint(a), inst, r);
  };
  p.bound = [](double) { return 1.0; };
  p.default_grid = {0.9, 0.99, 0.999};
  p.default_radius = 1.0 / 3.0;
  return p;
}

ProbeInstance harmonic_table_probe(int row, double beta) {
  const WeightSeq phi = table1_row_weights(row);
  const auto spec = make_fbeta_residual(beta, phi, SumMode::kVerifiedSeries);
  const auto root = solve_min_root(spec);
  if (!root) {
    throw non_convergent_error("harmonic row residual has no root");
  }
  ProbeInstance p;
  p.name = "harmonic-R" + std::to_string(row);
  p.value = [phi](double param, double r) {
    return eval_fbeta_lhs(CoeffSeq::HarmonicExtremal(param), phi, r);
  };
  p.bound = [beta](double) { return harmonic_distance(beta); };
  p.default_grid = {beta};
  p.default_radius = root->value;
  p.tied_param = beta;
  return p;
}

ProbeInstance harmonic_bohr_probe(double beta) {
  PriorParams params;
  params.beta = beta;
  const double radius = prior_radius("r_f", params);
  ProbeInstance p;
  p.name = "harmonic-bohr";
  p.value = [](double param, double r) {
    return eval_fbeta_lhs(CoeffSeq::HarmonicExtremal(param),
                          WeightSeq::UnitThenMonomial(), r);
  };
  p.bound = [beta](double) { return harmonic_distance(beta); };
  p.default_grid = {beta};
  p.default_radius = radius;
  p.tied_param = beta;
  return p;
}

ProbeInstance coeff_table_probe(const std::string& which,
                                std::optional<CoeffSeq> coeffs) {
  ProbeInstance p;
  if (which == "refined_skip0") {
    p.default_radius = prior_radius("refined_skip0");
  } else if (which == "refined_with_a0") {
    p.default_radius = prior_radius("refined_with_a0");
  } else {
    throw config_error("unknown coefficient-table probe '" + which + "'");
  }
  p.name = which;
  p.bound = [](double) { return 1.0; };
  p.default_grid = {0.0};
  if (!coeffs) {
    p.evaluable = false;
    p.note =
        "no extremal family is published for this radius; supply a "
        "coefficient table to probe it";
    return p;
  }
  const CoeffSeq table = *coeffs;
  const bool with_a0 = which == "refined_with_a0";
  p.value = [table, with_a0](double, double r) {
    if (r <= 0.0) {
      throw domain_error("this functional needs r > 0");
    }
    const double majorant = table_power_sum(table, r, 1);
    const double c1 = table.at(1);
    if (with_a0) {
      const double w = (1.0 / r) / (1.0 + c1) + 1.0 / (1.0 - r);
      return majorant + w * table_sq_power_sum(table, r, 0) / r;
    }
    const double w = 1.0 / (1.0 + c1) + r / (1.0 - r);
    return majorant + w * table_sq_power_sum(table, r, 1) / r;
  };
  return p;
}

SharpnessReport sharpness_probe(const ProbeInstance& inst, double radius,
                                double epsilon,
                                const std::vector<double>& grid, double tol) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw domain_error("radius must lie in (0, 1)");
  }
  if (!(epsilon > 0.0) || radius + epsilon >= 1.0) {
    throw domain_error("epsilon must be positive with radius + epsilon < 1");
  }
  SharpnessReport report;
  report.instance = inst.name;
  report.radius = radius;
  report.epsilon = epsilon;
  report.param_grid = grid;
  if (!inst.evaluable) {
    report.verdict = SharpnessVerdict::kInconclusive;
    report.note = inst.note;
    return report;
  }
  if (inst.tied_param) {
    for (double g : grid) {
      if (g != *inst.tied_param) {
        throw config_error("family/instance mismatch: probe '" + inst.name +
                           "' fixes its family parameter");
      }
    }
  }
  if (grid.empty()) {
    report.verdict = SharpnessVerdict::kInconclusive;
    report.note = "empty parameter grid";
    return report;
  }

  const double r_below = radius - epsilon;
  const double r_above = radius + epsilon;
  report.bound_below = inst.bound(r_below);
  report.bound_above = inst.bound(r_above);
  double below = -std::numeric_limits<double>::infinity();
  double above = -std::numeric_limits<double>::infinity();
  for (double param : grid) {
    ProbeRow row;
    row.param = param;
    row.value_below = r_below >= 0.0 ? inst.value(param, r_below)
                                     : inst.value(param, 0.0);
    row.value_above = inst.value(param, r_above);
    below = std::max(below, row.value_below);
    above = std::max(above, row.value_above);
    report.rows.push_back(row);
  }
  report.below = below;
  report.above = above;
  if (below > report.bound_below + tol) {
    report.verdict = SharpnessVerdict::kViolated;
    report.note = "bound fails below the radius";
  } else if (above > report.bound_above) {
    report.verdict = SharpnessVerdict::kSharpConfirmed;
  } else {
    report.verdict = SharpnessVerdict::kInconclusive;
    report.note = "no violation detected just above the radius on this grid";
  }
  return report;
}

}  // namespace bohr
