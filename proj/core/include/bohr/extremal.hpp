#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bohr/series.hpp"

namespace bohr {

/// Coefficient moduli of the disk automorphism with zero a:
/// k = 0 -> a, k >= 1 -> (1-a^2) a^(k-1).
double fa_modulus(double a, int k);

/// Closed form of the refined functional on that family:
/// a + (1-a^2) r/(1-ar) + (1/(1+a) + r/(1-r)) (1-a^2)^2 r^2/(1-a^2 r^2).
/// Equals 1 exactly at r = 1/(2+a).
double refined_functional_closed(double a, double r);

/// d(f_beta(0), boundary of f_beta(D)) = beta, the right-hand bound of the
/// harmonic inequalities.
double harmonic_distance(double beta);

enum class SharpnessVerdict { kSharpConfirmed, kInconclusive, kViolated };

std::string to_string(SharpnessVerdict v);

struct ProbeRow {
  double param;
  double value_below;  // functional at radius - epsilon
  double value_above;  // functional at radius + epsilon
};

/// Per-instance certificate that the bound holds just below the radius and
/// fails just above it for some member of the extremal family.
struct SharpnessReport {
  std::string instance;
  double radius = 0.0;
  double epsilon = 0.0;
  std::vector<double> param_grid;
  std::vector<ProbeRow> rows;
  double below = 0.0;        // max functional value at radius - epsilon
  double above = 0.0;        // max functional value at radius + epsilon
  double bound_below = 0.0;  // bound at radius - epsilon
  double bound_above = 0.0;  // bound at radius + epsilon
  SharpnessVerdict verdict = SharpnessVerdict::kInconclusive;
  std::string note;
};

/// A probe-ready functional: value on the extremal family as a function of
/// the family parameter and r, the right-hand bound as a function of r, and
/// defaults for the radius and parameter grid.
struct ProbeInstance {
  std::string name;
  std::function<double(double param, double r)> value;
  std::function<double(double r)> bound;
  std::vector<double> default_grid;
  std::optional<double> default_radius;
  /// Set when the family parameter is fixed by the instance itself (a or
  /// beta); probing a different grid is a family/instance mismatch.
  std::optional<double> tied_param;
  bool evaluable = true;
  std::string note;
};

/// Plain majorant bound (value 1) on the automorphism family; radius 1/3.
ProbeInstance classical_probe();

/// Refined functional with the correction weight tied to the family
/// parameter; radius 1/(2+a).
ProbeInstance refined_probe(double a);

/// Majorant plus (16/9) times the normalized area; radius 1/3.
ProbeInstance improved_area_probe();

/// Harmonic weighted-majorant rows of the reference table (row 1..4);
/// radius solved from the row residual.
ProbeInstance harmonic_table_probe(int row, double beta);

/// Harmonic plain-majorant instance; radius r_f(beta) from the printed
/// quadratic.
ProbeInstance harmonic_bohr_probe(double beta);

/// The two published radii without a named extremal family (3/5 and
/// (5-sqrt(17))/2). Evaluable only with a user-supplied coefficient table;
/// shipped inconclusive by default. `which` is "refined_skip0" or
/// "refined_with_a0".
ProbeInstance coeff_table_probe(const std::string& which,
                                std::optional<CoeffSeq> coeffs);

/// Evaluates the instance's functional over the parameter grid at
/// radius -+ epsilon and fills the report. Verdict:
///   violated         the bound already fails below the radius
///   sharp-confirmed  the bound holds below and fails above for some
///                    grid parameter
///   inconclusive     otherwise (or the instance is not evaluable)
SharpnessReport sharpness_probe(const ProbeInstance& inst, double radius,
                                double epsilon,
                                const std::vector<double>& grid,
                                double tol = 1e-9);

}  // namespace bohr
