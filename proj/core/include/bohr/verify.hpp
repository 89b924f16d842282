#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bohr/series.hpp"

namespace bohr {

struct Sample {
  std::string label;
  CoeffSeq coeffs;
  bool analytic = true;
  /// False for user-supplied harmonic tables whose class membership cannot
  /// be decided from finitely many coefficients.
  bool membership_verified = true;
};

/// Deterministic seeded families: the automorphism grid, finite products
/// with up to 8 zeros, convex combinations, and the harmonic extremal grid.
/// Every analytic sample is bounded by 1 by construction.
struct SampleSet {
  std::uint64_t seed = 0;
  std::vector<Sample> samples;

  static SampleSet Generate(std::uint64_t seed, int count);
  int analytic_count() const;
};

struct CheckReport {
  std::string name;
  int checked = 0;     // assertions evaluated (sample x grid point)
  int violations = 0;
  /// min over assertions of (bound - value); negative beyond the check's
  /// tolerance counts as a violation.
  double worst_margin = std::numeric_limits<double>::infinity();
  /// min |bound - value| over the designated equality cases, when the check
  /// has any (proves the bound is attained, not vacuous).
  std::optional<double> equality_gap;
  std::vector<std::string> failures;  // capped descriptions
  std::string note;

  bool pass() const { return violations == 0; }
};

/// c_k <= 1 - c_0^2 for k = 1..40 on every analytic sample. Equality case:
/// the automorphism family at k = 1.
CheckReport check_schwarz_pick(const SampleSet& set, double tol = 1e-12);

/// (1 - x^p)/(1 - x^2) >= p/2 on the grid, with the limit value p/2 at
/// x = 1. Requires p in (0, 2].
CheckReport check_p_inequality(double p, const std::vector<double>& xs,
                               double tol = 1e-12);

/// sum_{n>=N} c_n r^n + sgn(t) sum_{n=1}^t c_n^2 r^N/(1-r)
///   + (1/(1+c_0) + r/(1-r)) sum_{n>=t+1} c_n^2 r^(2n)
///   <= (1 - c_0^2) r^N/(1-r),  t = floor((N-1)/2).
/// r_grid must lie in [0, 0.95]. Equality case: the identity map at N = 1.
CheckReport check_refined_lemma(const SampleSet& set, int N,
                                const std::vector<double>& r_grid,
                                double tol = 1e-10);

/// Normalized area vs its sharp bound on (0, 1/sqrt(2)]. Equality case:
/// the automorphism family.
CheckReport check_area_bound(const SampleSet& set,
                             const std::vector<double>& r_grid,
                             double tol = 1e-10);

/// L(r) <= |f_beta(r)| <= R(r) with equality on the upper side (within tol);
/// the lower bound must be strict for r > 0.
CheckReport check_growth_bounds(const std::vector<double>& betas,
                                const std::vector<double>& rs,
                                double tol = 1e-12);

/// Series-engine cross-checks: closed power sums vs compensated 1e5-term
/// partial sums, the printed alpha=1 formula's positive deviation, and
/// product-expansion coefficients vs the multiplication oracle.
CheckReport check_series_oracles(std::uint64_t seed = 42);

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CheckReport> checks;
  bool all_pass = true;
  std::vector<std::string> warnings;
};

/// All checks above on a seeded sample set plus the series oracles; empty
/// sample sets pass vacuously with a warning.
SuiteReport run_suite(std::uint64_t seed, int sample_count = 100);

/// Signed product coefficients by direct truncated power-series
/// multiplication of the per-factor geometric expansions. Independent of
/// blaschke_series (which divides factor by factor).
std::vector<double> blaschke_series_oracle(const std::vector<double>& zeros,
                                           int count);

}  // namespace bohr
