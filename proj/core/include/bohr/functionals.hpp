#pragma once

#include "bohr/series.hpp"

namespace bohr {

/// Weighted-majorant problem instance for the bounded analytic class:
/// exponent p on |a_0|, weight sequence phi (from index 0) and correction
/// weight sequence Phi (from index 1, zero kind allowed).
struct AnalyticInstance {
  double p;
  WeightSeq phi;
  WeightSeq Phi;

  AnalyticInstance(double p_, WeightSeq phi_, WeightSeq Phi_);
};

/// Instance of the harmonic functional S: power m on |f(z)|, series start N,
/// correction weights mu and lambda. t = floor((N-1)/2) is derived and
/// stored; sgn(t) = 0 exactly when N is 1 or 2.
struct HarmonicInstance {
  double beta;
  int m;
  int N;
  double mu;
  double lambda;
  int t;
  bool extended_beta;  // beta in [1/2, 1) explicitly allowed by the caller

  HarmonicInstance(double beta_, int m_, int N_, double mu_, double lambda_,
                   bool allow_extended_beta = false);
};

/// Source of the |f(z)|^m term in the harmonic functional: the class growth
/// bound (beta r + (1-beta) r (1+r)/(1-r))^m, or the modulus of the concrete
/// sample on the positive real axis.
enum class ModulusMode { kWorstCase, kSample };

/// c_0^p phi_0(r) + sum_{k>=1} c_k phi_k(r)
///                + sum_{k>=1} Phi_k(r) c_k^2 phi_k(r)^2,
/// truncation certified below abs_tol. Coefficients must respect the class
/// bound c_k <= 1.
double eval_Cf(const CoeffSeq& coeffs, const AnalyticInstance& inst, double r,
               double abs_tol = 1e-14);

/// The two-term functional c_0^p phi_0(r) + sum_{k>=1} c_k phi_k(r)
/// (the Phi-free specialization, kept as its own route).
double eval_weighted_majorant(const CoeffSeq& coeffs,
                              const AnalyticInstance& inst, double r,
                              double abs_tol = 1e-14);

/// Normalized area sum_{n>=1} n c_n^2 r^(2n), summed term by term with a
/// certified tail (deliberately not the closed form, so equality cases test
/// something).
double eval_area_ratio(const CoeffSeq& coeffs, double r,
                       double abs_tol = 1e-14);

/// r^2 (1-a0^2)^2 / (1-a0^2 r^2)^2: the sharp area bound. Asserted by the
/// checks only for r <= 1/sqrt(2); evaluation itself is allowed on [0, 1).
double area_upper_bound(double a0, double r);

/// |f(z)|^m-term + sum_{n>=N} c_n r^n
///   + mu sgn(t) (sum_{n=1}^{t} c_n^2) r^N/(1-r)
///   + lambda (1 + r/(1-r)) sum_{n>=t+1} c_n^2 r^(2n).
double eval_harmonic_S(const CoeffSeq& coeffs, const HarmonicInstance& inst,
                       double r, ModulusMode mode, double abs_tol = 1e-14);

struct GrowthBounds {
  double lower;
  double upper;
};

/// lower = beta r + (1-beta) r (1-r)/(1+r),
/// upper = beta r + (1-beta) r (1+r)/(1-r); upper is +inf at r = 1.
GrowthBounds growth_bounds_harmonic(double beta, double r);

/// r phi_1(r) + sum_{n>=2} c_n phi_n(r). When the weight sequence starts at
/// index 2, phi_1 is taken as the constant 1 (the convention every shipped
/// instance uses).
double eval_fbeta_lhs(const CoeffSeq& coeffs, const WeightSeq& phi, double r,
                      double abs_tol = 1e-14);

}  // namespace bohr
