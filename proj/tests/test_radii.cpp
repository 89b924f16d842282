#include <doctest.h>

#include <array>
#include <cmath>
#include <thread>
#include <vector>

#include "bohr/radii.hpp"

using namespace bohr;

namespace {

AnalyticInstance classical_instance(double p) {
  return {p, WeightSeq::Monomial(), WeightSeq::Zero()};
}

}  // namespace

TEST_CASE("generalized residual") {
  SUBCASE("vanishes at the classical radius") {
    CHECK(std::abs(residual_generalized(classical_instance(1.0), 1.0 / 3)) <
          1e-14);
  }
  SUBCASE("equals -phi_0 at the origin") {
    CHECK(residual_generalized(classical_instance(2.0), 0.0) ==
          doctest::Approx(-1.0));
  }
  SUBCASE("refined correction pushes the root below 1/3") {
    const AnalyticInstance inst(1.0, WeightSeq::Monomial(),
                                WeightSeq::RefinedWeight(1.0 - 1e-12));
    // arithmetic oracle: 2 [r/(1-r) + w(r) r^2/(1-r^2)] - 1 at r = 0.3
    const double r = 0.3;
    const double w = 0.5 + r / (1.0 - r);
    const double oracle =
        2.0 * (r / (1.0 - r) + w * r * r / (1.0 - r * r)) - 1.0;
    const double value = residual_generalized(inst, r);
    CHECK(value > 0.0);
    CHECK(value == doctest::Approx(oracle).epsilon(1e-9));
  }
  SUBCASE("linear-k correction uses the closed derivative sum") {
    const AnalyticInstance inst(1.0, WeightSeq::Monomial(),
                                WeightSeq::LinearK(16.0 / 9.0));
    const double r = 0.25;
    const double x = r * r;
    const double oracle =
        2.0 * (r / (1.0 - r) +
               (16.0 / 9.0) * x / ((1.0 - x) * (1.0 - x))) -
        1.0;
    CHECK(residual_generalized(inst, r) ==
          doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("harmonic residual") {
  SUBCASE("equals -beta at the origin") {
    for (double beta : {0.1, 0.3, 0.49}) {
      const HarmonicInstance inst(beta, 1, 1, 1.0, 1.0);
      CHECK(residual_harmonic(inst, 0.0) == doctest::Approx(-beta));
    }
  }
  SUBCASE("term-by-term oracle at beta=0.3, m=1, N=1, mu=lambda=1, r=0.05") {
    const HarmonicInstance inst(0.3, 1, 1, 1.0, 1.0);
    const double r = 0.05;
    const double omb = 0.7;
    const double growth = 0.3 * r + omb * r * (1 + r) / (1 - r);
    const double body = 2 * omb * r / (1 - r);
    // t = 0: no mid term
    const double tail = (1 / (1 - r)) * 4 * omb * omb * r * r / (1 - r * r);
    CHECK(residual_harmonic(inst, r) ==
          doctest::Approx(growth + body + tail - 0.3).epsilon(1e-14));
  }
  SUBCASE("blows up toward r = 1") {
    const HarmonicInstance inst(0.3, 1, 1, 1.0, 1.0);
    CHECK(residual_harmonic(inst, 0.999) > 1e3);
  }
  SUBCASE("beta beyond 1/2 needs the explicit override") {
    CHECK_THROWS_AS(
        residual_harmonic(HarmonicInstance(0.7, 1, 1, 1.0, 1.0), 0.1),
        domain_error);
    const HarmonicInstance wide(0.7, 1, 1, 1.0, 1.0, true);
    CHECK(residual_harmonic(wide, 0.0) == doctest::Approx(-0.7));
    const auto res = solve_min_root(make_harmonic_residual(wide));
    REQUIRE(res.has_value());
    CHECK(res->value > 0.0);
  }
}

TEST_CASE("fbeta residual") {
  SUBCASE("reference root of the first row") {
    CHECK(std::abs(residual_fbeta(0.5, WeightSeq::Shifted(2), 0.242)) < 2e-3);
  }
  SUBCASE("equals -beta at r = 0 for vanishing weights") {
    for (double beta : {0.2, 0.7}) {
      CHECK(residual_fbeta(beta, WeightSeq::Shifted(2), 0.0) ==
            doctest::Approx(-beta));
    }
  }
  SUBCASE("printed mode matches the published second-row root") {
    CHECK(std::abs(residual_fbeta(0.9, WeightSeq::PowerWeighted(1, 2), 0.447,
                                  SumMode::kPaperPrinted)) < 2e-3);
  }
  SUBCASE("degenerate and domain errors") {
    CHECK_THROWS_AS(residual_fbeta(0.0, WeightSeq::Shifted(2), 0.1),
                    degenerate_error);
    CHECK_THROWS_AS(residual_fbeta(1.2, WeightSeq::Shifted(2), 0.1),
                    domain_error);
  }
  SUBCASE("tail condition is named when violated") {
    // constant-in-k weights diverge at r = 0, so the condition cannot hold
    CHECK_THROWS_AS(residual_fbeta(0.4, WeightSeq::RefinedWeight(0.2), 0.1),
                    precondition_error);
    CHECK_THROWS_WITH_AS(
        residual_fbeta(0.4, WeightSeq::RefinedWeight(0.2), 0.1),
        doctest::Contains("phi_n(0) < beta/(2(1-beta))"),
        precondition_error);
  }
}

TEST_CASE("solve_min_root reproduces p/(p+2)") {
  for (double p : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto spec = make_generalized_residual(classical_instance(p));
    const auto res = solve_min_root(spec);
    REQUIRE(res.has_value());
    CHECK(std::abs(res->value - p / (p + 2.0)) <= 1e-10);
    CHECK(res->bracket_hi - res->bracket_lo <= 1e-13 + 1e-16);
    CHECK(res->iterations > 0);
  }
}

TEST_CASE("solve_min_root bracket invariant") {
  const double delta = 1e-12;  // 10 x root_tol
  const auto check_bracket = [&](const ResidualSpec& spec) {
    const auto res = solve_min_root(spec);
    REQUIRE(res.has_value());
    CHECK(spec.residual(res->value - delta) < 0.0);
    CHECK(spec.residual(res->value + delta) > 0.0);
  };
  check_bracket(make_generalized_residual(classical_instance(1.0)));
  check_bracket(make_fbeta_residual(0.5, WeightSeq::Shifted(2)));
  check_bracket(make_harmonic_residual(HarmonicInstance(0.3, 1, 2, 1, 1)));
}

TEST_CASE("solve_min_root outcomes") {
  SUBCASE("no sign change is a no-root outcome, not an error") {
    // residual = 2 * 0.001 * r - 1 stays negative on (0, 1)
    const AnalyticInstance inst(
        1.0, WeightSeq::CustomTable({1.0, 0.001}, 0), WeightSeq::Zero());
    const auto res = solve_min_root(make_generalized_residual(inst));
    CHECK_FALSE(res.has_value());
  }
  SUBCASE("positive residual at zero violates the search precondition") {
    ResidualSpec spec;
    spec.name = "decreasing";
    spec.residual = [](double r) { return 0.5 - r; };
    CHECK_THROWS_AS(solve_min_root(spec), precondition_error);
  }
  SUBCASE("vanishing beta sends the harmonic root to zero") {
    const auto spec =
        make_harmonic_residual(HarmonicInstance(1e-6, 1, 1, 1, 1));
    const auto res = solve_min_root(spec);
    REQUIRE(res.has_value());
    CHECK(res->value < 1e-5);
  }
}

TEST_CASE("prior radii") {
  PriorParams params;
  SUBCASE("golden constants from the printed equations") {
    params.N = 1;
    CHECK(std::abs(prior_radius("R_N", params) - (std::sqrt(5.0) - 2.0)) <=
          1e-12);
    CHECK(std::abs(prior_radius("Rp_N", params) - 1.0 / 3.0) <= 1e-12);
  }
  SUBCASE("quadratic root matches its closed form") {
    for (int i = 1; i <= 9; ++i) {
      params.beta = 0.05 * i;
      const double closed = prior_radius("r_f", params);
      ResidualSpec spec;
      spec.name = "r_f-equation";
      const double beta = params.beta;
      spec.residual = [beta](double r) {
        return (1 - 2 * beta) * r * r + (1 + beta) * r - beta;
      };
      const auto numeric = solve_min_root(spec);
      REQUIRE(numeric.has_value());
      CHECK(std::abs(numeric->value - closed) <= 1e-12);
    }
    params.beta = 0.25;
    CHECK(prior_radius("r_f", params) ==
          doctest::Approx(0.186141).epsilon(1e-5));
  }
  SUBCASE("cubic root sits between 1/3 and 1/(2+a)") {
    for (double a : {0.0, 0.25, 0.5, 0.75, 0.95}) {
      params.a = a;
      const double root = prior_radius("rp_a0", params);
      const double cubic = (1 - a * a * a) * root * root * root -
                           (1 + 2 * a) * root * root - 2 * root + 1;
      CHECK(std::abs(cubic) < 1e-10);
      CHECK(root > 1.0 / 3.0 - 1e-12);
      CHECK(root < 1.0 / (2.0 + a) + 1e-12);
    }
  }
  SUBCASE("improved radius beats the plain one") {
    for (double a : {0.0, 0.3, 0.7, 0.95}) {
      params.a = a;
      CHECK(prior_radius("r_a0", params) > std::sqrt(5.0) - 2.0 - 1e-12);
    }
  }
  SUBCASE("closed-form registry") {
    params = {};
    params.a = 0.5;
    CHECK(prior_radius("refined_p1", params) == doctest::Approx(0.4));
    CHECK(prior_radius("refined_p2") == 0.5);
    CHECK(prior_radius("refined_skip0") == doctest::Approx(0.6));
    CHECK(prior_radius("refined_with_a0") ==
          doctest::Approx((5.0 - std::sqrt(17.0)) / 2.0));
    params.q = 2;
    CHECK(prior_radius("lacunary_p1", params) ==
          doctest::Approx(std::pow(2.5, -0.5)));
    CHECK(prior_radius("lacunary_p2", params) ==
          doctest::Approx(std::pow(2.0, -0.5)));
    CHECK(prior_radius("improved_area_p1") == doctest::Approx(1.0 / 3.0));
    CHECK(prior_radius("improved_area_p2") == 0.5);
    CHECK(prior_radius("improved_combo_p2", params) ==
          doctest::Approx(0.4));
    params.p = 1.0;
    CHECK(prior_radius("classical", params) == doctest::Approx(1.0 / 3.0));
    CHECK(prior_radius("bohr") == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(prior_radius("no-such-radius"), config_error);
    params = {};
    params.beta = 0.6;
    CHECK_THROWS_AS(prior_radius("r_f", params), domain_error);
    params = {};
    params.a = 1.5;
    CHECK_THROWS_AS(prior_radius("refined_p1", params), domain_error);
  }
}

TEST_CASE("reference table reproduction") {
  const auto printed = table1(SumMode::kPaperPrinted);
  const auto verified = table1(SumMode::kVerifiedSeries);

  SUBCASE("printed mode: 32 of 36 cells within 5e-4") {
    int outside = 0;
    for (int row = 0; row < 4; ++row) {
      for (int j = 0; j < 9; ++j) {
        if (std::abs(printed.deviation[row][j]) > 5e-4) ++outside;
      }
    }
    // The four published cells whose printed values sit farther than 5e-4
    // from their own equations' roots (truncated rather than rounded).
    CHECK(outside == 4);
    CHECK(std::abs(printed.deviation[1][2]) ==
          doctest::Approx(5.17e-4).epsilon(0.02));  // R2, beta=0.3
    CHECK(std::abs(printed.deviation[1][6]) ==
          doctest::Approx(6.37e-4).epsilon(0.02));  // R2, beta=0.7
    CHECK(std::abs(printed.deviation[2][0]) ==
          doctest::Approx(7.97e-4).epsilon(0.02));  // R3, beta=0.1
    CHECK(std::abs(printed.deviation[3][7]) ==
          doctest::Approx(7.71e-4).epsilon(0.02));  // R4, beta=0.8
    CHECK(printed.max_abs_deviation() < 1e-3);
  }

  SUBCASE("verified mode: the second row deviates, strictly larger") {
    for (int j = 0; j < 9; ++j) {
      CHECK(verified.computed[1][j] > kTable1Reference[1][j] + 5e-2);
    }
    CHECK(verified.row_max_abs_deviation(1) > 5e-2);
    // rows 1, 3, 4 are mode-independent
    for (int row : {0, 2, 3}) {
      for (int j = 0; j < 9; ++j) {
        CHECK(verified.computed[row][j] ==
              doctest::Approx(printed.computed[row][j]).epsilon(1e-12));
      }
    }
  }

  SUBCASE("rows increase strictly in beta (both modes)") {
    for (const auto& result : {printed, verified}) {
      for (int row = 0; row < 4; ++row) {
        for (int j = 1; j < 9; ++j) {
          CHECK(result.computed[row][j] > result.computed[row][j - 1]);
        }
      }
    }
  }

  SUBCASE("first-row reference roots within table rounding") {
    CHECK(std::abs(printed.computed[0][4] - 0.242) <= 5e-4);
    CHECK(std::abs(printed.computed[0][8] - 0.5) <= 5e-4);
    CHECK(std::abs(printed.computed[1][4] - 0.142) <= 5e-4);
  }
}

TEST_CASE("at beta = 1/2 the worst-case functional equals residual + beta") {
  // Every coefficient of the extremal sample is 1 there, so the majorized
  // squares in the residual coincide with the evaluated ones.
  for (int N : {1, 2, 3, 5}) {
    for (int m : {1, 2}) {
      const HarmonicInstance inst(0.5, m, N, 1.25, 0.75, true);
      const auto coeffs = CoeffSeq::HarmonicExtremal(0.5);
      for (double r : {0.1, 0.3, 0.6, 0.9}) {
        const double via_functional =
            eval_harmonic_S(coeffs, inst, r, ModulusMode::kWorstCase);
        const double via_residual = residual_harmonic(inst, r) + 0.5;
        CHECK(via_functional ==
              doctest::Approx(via_residual).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("concurrent solves are bitwise reproducible") {
  const auto printed = table1(SumMode::kPaperPrinted);
  std::array<Table1Result, 4> results;
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i) {
    workers.emplace_back([&results, i] {
      results[static_cast<size_t>(i)] = table1(SumMode::kPaperPrinted);
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& result : results) {
    for (int row = 0; row < 4; ++row) {
      for (int j = 0; j < 9; ++j) {
        CHECK(result.computed[row][j] == printed.computed[row][j]);
      }
    }
  }
}

TEST_CASE("solver bracket carries the sign change") {
  const auto spec = make_generalized_residual(classical_instance(1.0));
  const auto res = solve_min_root(spec);
  REQUIRE(res.has_value());
  CHECK(spec.residual(res->bracket_lo) < 0.0);
  CHECK(spec.residual(res->bracket_hi) >= 0.0);
  CHECK(res->bracket_lo <= res->value);
  CHECK(res->value <= res->bracket_hi);
}

TEST_CASE("mode tags propagate") {
  const auto spec =
      make_fbeta_residual(0.5, WeightSeq::PowerWeighted(1, 2),
                          SumMode::kPaperPrinted);
  const auto res = solve_min_root(spec);
  REQUIRE(res.has_value());
  CHECK(res->mode == SumMode::kPaperPrinted);
  CHECK(to_string(res->mode) == "paper-printed");
  CHECK(sum_mode_from_string("verified-series") == SumMode::kVerifiedSeries);
  CHECK_THROWS_AS(sum_mode_from_string("nope"), config_error);
}

TEST_CASE("shipped generalized instances") {
  const auto instances = shipped_generalized_instances();
  REQUIRE(instances.size() == 5);
  // classical roots p/(p+2); lacunary roots (1/3)^(1/q)
  const double expected[5] = {0.5 / 2.5, 1.0 / 3.0, 0.5,
                              std::pow(1.0 / 3.0, 0.5),
                              std::pow(1.0 / 3.0, 1.0 / 3.0)};
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto res =
        solve_min_root(make_generalized_residual(instances[i].second));
    REQUIRE(res.has_value());
    CHECK(std::abs(res->value - expected[i]) <= 1e-10);
  }
}
