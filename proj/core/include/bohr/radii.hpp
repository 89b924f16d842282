#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohr/functionals.hpp"
#include "bohr/series.hpp"

namespace bohr {

/// Which alpha = 1 sum the reproduction paths use: the true series value or
/// the formula exactly as printed in the reference table's source.
enum class SumMode { kVerifiedSeries, kPaperPrinted };

std::string to_string(SumMode mode);
SumMode sum_mode_from_string(const std::string& s);

/// A named residual function of r. Convention: negative below the radius,
/// positive above it.
struct ResidualSpec {
  std::string name;
  SumMode mode = SumMode::kVerifiedSeries;
  std::function<double(double)> residual;
};

struct RadiusResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual_at_root = 0.0;
  int iterations = 0;
  SumMode mode = SumMode::kVerifiedSeries;
};

struct SolveOptions {
  double grid_step = 1e-3;  // scan step for the first sign change
  double eta = 1e-6;        // evaluation guard below r = 1
  double root_tol = 1e-13;  // final bracket width
};

/// (2/p) sum_{k>=1} (phi_k(r) + Phi_k(r) phi_k(r)^2) - phi_0(r).
double residual_generalized(const AnalyticInstance& inst, double r,
                            double abs_tol = 1e-14);

/// (beta r + (1-beta) r (1+r)/(1-r))^m + 2(1-beta) r^N/(1-r)
///   + 4 mu sgn(t) (1-beta)^2 r^N t/(1-r)
///   + (1 + r/(1-r)) 4 lambda (1-beta)^2 r^(2t+2)/(1-r^2) - beta.
double residual_harmonic(const HarmonicInstance& inst, double r);

/// r phi_1(r) + 2(1-beta) sum_{n>=2} phi_n(r) - beta. Requires
/// sum_{n>=2} phi_n(0) < beta/(2(1-beta)) (precondition_error otherwise)
/// and beta in (0, 1); beta = 0 degenerates (the root is 0).
double residual_fbeta(double beta, const WeightSeq& phi, double r,
                      SumMode mode = SumMode::kVerifiedSeries,
                      double abs_tol = 1e-14);

ResidualSpec make_generalized_residual(AnalyticInstance inst);
ResidualSpec make_harmonic_residual(HarmonicInstance inst);
ResidualSpec make_fbeta_residual(double beta, WeightSeq phi,
                                 SumMode mode = SumMode::kVerifiedSeries);

/// Scans [grid_step, 1 - eta] for the first sign change, then bisects to
/// root_tol. Returns nullopt when no sign change exists on the scan grid
/// (a well-posed no-root outcome, distinct from evaluation failures, which
/// throw).
std::optional<RadiusResult> solve_min_root(const ResidualSpec& spec,
                                           const SolveOptions& opts = {});

struct PriorParams {
  int N = 1;
  double a = 0.0;
  double beta = 0.0;
  int q = 1;
  double p = 1.0;
};

/// Registry of published radii: closed forms and the low-degree polynomial
/// roots, keyed by name.
///   R_N        root of 2(1+r) r^N - (1-r)^2 = 0          (R_1 = sqrt(5)-2)
///   Rp_N       root of (1+r) r^N - (1-r)^2 = 0           (Rp_1 = 1/3)
///   r_a0       2/(3 + a + sqrt(5)(1 + a))
///   rp_a0      root of (1-a^3) r^3 - (1+2a) r^2 - 2r + 1 = 0
///   r_f        root of (1-2 beta) r^2 + (1+beta) r - beta = 0
///   classical  p/(p+2)
///   bohr       1/3
///   refined_p1 1/(2+a)        refined_p2 1/2
///   refined_skip0 3/5         refined_with_a0 (5-sqrt(17))/2
///   lacunary_p1 (2+a)^(-1/q)  lacunary_p2 2^(-1/q)
///   improved_area_p1 1/3      improved_area_p2 1/2
///   improved_half 1/3
///   improved_combo_p1 1/3     improved_combo_p2 1/(3-a)
double prior_radius(const std::string& name, const PriorParams& params = {});

inline constexpr std::array<double, 9> kTable1Betas{0.1, 0.2, 0.3, 0.4, 0.5,
                                                    0.6, 0.7, 0.8, 0.9};
inline constexpr std::array<const char*, 4> kTable1RowLabels{"R1", "R2", "R3",
                                                             "R4"};

/// Published reference values for the four radius rows over the beta grid,
/// shipped as a versioned resource for explicit regression comparison.
extern const std::array<std::array<double, 9>, 4> kTable1Reference;
extern const char* const kTable1ReferenceVersion;

struct Table1Result {
  SumMode mode = SumMode::kPaperPrinted;
  std::array<std::array<double, 9>, 4> computed{};
  std::array<std::array<double, 9>, 4> deviation{};  // computed - reference
  /// Largest |deviation| across the 36 cells.
  double max_abs_deviation() const;
  /// Largest |deviation| within one row.
  double row_max_abs_deviation(int row) const;
};

/// Solves the four row residuals over the beta grid. The second row's
/// series follows `mode`; the other rows are mode-independent.
Table1Result table1(SumMode mode);

/// The weight sequence behind each reference-table row (1-based row index).
WeightSeq table1_row_weights(int row);

/// The generalized instances shipped for whole-class validity sweeps:
/// classical p in {0.5, 1, 2} and lacunary q in {2, 3} with p = 1.
std::vector<std::pair<std::string, AnalyticInstance>>
shipped_generalized_instances();

}  // namespace bohr
