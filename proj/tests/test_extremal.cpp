#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bohr/extremal.hpp"
#include "bohr/functionals.hpp"
#include "bohr/radii.hpp"

using namespace bohr;

namespace {

// Partial-sum oracle for the refined functional on the automorphism family.
double refined_series_oracle(double a, double r, int terms) {
  const double s = 1.0 - a * a;
  const double w = 1.0 / (1.0 + a) + r / (1.0 - r);
  KahanSum linear;
  KahanSum squares;
  for (int k = 1; k <= terms; ++k) {
    const double ck = s * std::pow(a, k - 1);
    linear.add(ck * std::pow(r, k));
    squares.add(ck * ck * std::pow(r, 2 * k));
  }
  return a + linear.value() + w * squares.value();
}

}  // namespace

TEST_CASE("family coefficient moduli") {
  CHECK(fa_modulus(0.0, 1) == 1.0);
  CHECK(fa_modulus(0.5, 2) == doctest::Approx(0.375));
  for (double a : {0.0, 0.3, 0.9}) CHECK(fa_modulus(a, 0) == a);
  CHECK_THROWS_AS(fa_modulus(1.0, 0), domain_error);
}

TEST_CASE("refined closed form against partial sums") {
  CHECK(refined_functional_closed(0.0, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(refined_functional_closed(0.5, 0.4) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(refined_functional_closed(0.5, 0.4) ==
        doctest::Approx(refined_series_oracle(0.5, 0.4, 10000))
            .epsilon(1e-12));
  for (double a : {0.0, 0.4, 0.8}) {
    CHECK(refined_functional_closed(a, 0.0) == doctest::Approx(a));
  }
}

TEST_CASE("sharpness identity at 1/(2+a), closed form vs series engine") {
  for (int i = 0; i <= 9; ++i) {
    const double a = i / 10.0;
    const double r = 1.0 / (2.0 + a);
    const double closed = refined_functional_closed(a, r);
    CHECK(std::abs(closed - 1.0) <= 1e-10);
    const AnalyticInstance inst(1.0, WeightSeq::Monomial(),
                                WeightSeq::RefinedWeight(a));
    const double series = eval_Cf(CoeffSeq::BlaschkePoint(a), inst, r);
    CHECK(std::abs(closed - series) <= 1e-10);
  }
}

TEST_CASE("refined functional is strictly increasing in r") {
  for (double a : {0.0, 0.5, 0.9}) {
    double prev = -1.0;
    for (int i = 1; i <= 18; ++i) {
      const double v = refined_functional_closed(a, i * 0.05);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("classical functional approaches the bound as a -> 1") {
  const double caps[3] = {0.05, 0.005, 0.0005};
  const double as[3] = {0.9, 0.99, 0.999};
  for (double p : {0.5, 1.0, 2.0}) {
    const double r = p / (p + 2.0);
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double a = as[i];
      const double value =
          std::pow(a, p) + (1 - a * a) * r / (1 - a * r);
      CHECK(value > prev);          // increasing toward the bound
      CHECK(1.0 - value >= 0.0);    // never exceeds it at the radius
      CHECK(1.0 - value <= caps[i]);
      prev = value;
    }
  }
}

TEST_CASE("harmonic distance") {
  CHECK(harmonic_distance(0.5) == 0.5);
  CHECK(harmonic_distance(0.0) == 0.0);
  CHECK(harmonic_distance(0.9) == 0.9);
  // the lower growth bound approaches it as r -> 1
  CHECK(std::abs(growth_bounds_harmonic(0.9, 0.9999).lower - 0.9) < 1e-3);
  CHECK_THROWS_AS(harmonic_distance(1.0), domain_error);
}

TEST_CASE("classical probe confirms 1/3") {
  const auto probe = classical_probe();
  const auto report =
      sharpness_probe(probe, 1.0 / 3.0, 1e-3, probe.default_grid);
  CHECK(report.verdict == SharpnessVerdict::kSharpConfirmed);
  CHECK(report.below <= 1.0 + 1e-9);
  CHECK(report.above > 1.0);
  // only the parameter closest to 1 exceeds the bound this close to 1/3
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[2].value_above > 1.0);
  CHECK(report.rows[0].value_above < 1.0);
}

TEST_CASE("refined probe confirms 1/(2+a)") {
  const auto probe = refined_probe(0.5);
  const auto report = sharpness_probe(probe, 0.4, 1e-3, probe.default_grid);
  CHECK(report.verdict == SharpnessVerdict::kSharpConfirmed);
  CHECK(report.below <= 1.0 + 1e-9);
  CHECK(report.above > 1.0);
}

TEST_CASE("improved-area probe confirms 1/3") {
  const auto probe = improved_area_probe();
  REQUIRE(probe.default_radius.has_value());
  const auto report =
      sharpness_probe(probe, *probe.default_radius, 1e-3, probe.default_grid);
  CHECK(report.verdict == SharpnessVerdict::kSharpConfirmed);
}

TEST_CASE("harmonic probes confirm the solved roots") {
  for (int row = 1; row <= 4; ++row) {
    const auto probe = harmonic_table_probe(row, 0.5);
    REQUIRE(probe.default_radius.has_value());
    const auto report = sharpness_probe(probe, *probe.default_radius, 1e-3,
                                        probe.default_grid);
    CHECK(report.verdict == SharpnessVerdict::kSharpConfirmed);
    CHECK(report.above > 0.5);
  }
  const auto bohr_probe = harmonic_bohr_probe(0.3);
  const auto report = sharpness_probe(bohr_probe, *bohr_probe.default_radius,
                                      1e-3, bohr_probe.default_grid);
  CHECK(report.verdict == SharpnessVerdict::kSharpConfirmed);
}

TEST_CASE("first-row probe radius matches the published 0.242") {
  const auto probe = harmonic_table_probe(1, 0.5);
  CHECK(std::abs(*probe.default_radius - 0.242) <= 5e-4);
}

TEST_CASE("table-backed probes are inconclusive without data") {
  for (const char* which : {"refined_skip0", "refined_with_a0"}) {
    const auto probe = coeff_table_probe(which, std::nullopt);
    const auto report = sharpness_probe(probe, *probe.default_radius, 1e-3,
                                        probe.default_grid);
    CHECK(report.verdict == SharpnessVerdict::kInconclusive);
    CHECK_FALSE(report.note.empty());
  }
  CHECK_THROWS_AS(coeff_table_probe("nope", std::nullopt), config_error);
}

TEST_CASE("table-backed probe evaluates a supplied sample") {
  const auto probe = coeff_table_probe(
      "refined_skip0", CoeffSeq::FiniteTable({0.0, 0.5, 0.25}));
  const auto report =
      sharpness_probe(probe, *probe.default_radius, 1e-3, probe.default_grid);
  // a small sample cannot certify sharpness, but the probe must run
  CHECK(report.rows.size() == 1);
  CHECK(report.verdict != SharpnessVerdict::kViolated);
}

TEST_CASE("every shipped probe functional increases in r") {
  std::vector<ProbeInstance> probes;
  probes.push_back(classical_probe());
  probes.push_back(refined_probe(0.5));
  probes.push_back(improved_area_probe());
  for (int row = 1; row <= 4; ++row) {
    probes.push_back(harmonic_table_probe(row, 0.4));
  }
  probes.push_back(harmonic_bohr_probe(0.3));
  for (const auto& probe : probes) {
    for (double param : probe.default_grid) {
      double prev = -1.0;
      for (int i = 1; i <= 18; ++i) {
        const double v = probe.value(param, i * 0.05);
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("probe guards") {
  const auto tied = refined_probe(0.5);
  CHECK_THROWS_AS(sharpness_probe(tied, 0.4, 1e-3, {0.3}), config_error);
  const auto probe = classical_probe();
  CHECK_THROWS_AS(sharpness_probe(probe, 1.2, 1e-3, probe.default_grid),
                  domain_error);
  CHECK_THROWS_AS(sharpness_probe(probe, 0.9995, 1e-3, probe.default_grid),
                  domain_error);
  const auto empty = sharpness_probe(probe, 0.3, 1e-3, {});
  CHECK(empty.verdict == SharpnessVerdict::kInconclusive);
}

TEST_CASE("a wrong radius is reported as violated") {
  const auto probe = classical_probe();
  const auto report = sharpness_probe(probe, 0.5, 1e-3, probe.default_grid);
  CHECK(report.verdict == SharpnessVerdict::kViolated);
}

TEST_CASE("report fields satisfy the verdict contract") {
  const auto probe = classical_probe();
  for (double radius : {0.25, 1.0 / 3.0, 0.5}) {
    const auto rep = sharpness_probe(probe, radius, 1e-3, probe.default_grid);
    CHECK(rep.below ==
          doctest::Approx(std::max({rep.rows[0].value_below,
                                    rep.rows[1].value_below,
                                    rep.rows[2].value_below})));
    CHECK(rep.above ==
          doctest::Approx(std::max({rep.rows[0].value_above,
                                    rep.rows[1].value_above,
                                    rep.rows[2].value_above})));
    if (rep.verdict == SharpnessVerdict::kSharpConfirmed) {
      CHECK(rep.below <= rep.bound_below + 1e-9);
      CHECK(rep.above > rep.bound_above);
    } else if (rep.verdict == SharpnessVerdict::kViolated) {
      CHECK(rep.below > rep.bound_below + 1e-9);
    }
  }
}
