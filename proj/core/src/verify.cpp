#include "bohr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bohr/functionals.hpp"

namespace bohr {

namespace {

constexpr int kCoeffHorizon = 40;  // indices checked per sample
constexpr size_t kMaxFailures = 8;

class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53 random mantissa bits; identical across platforms.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

void add_failure(CheckReport& report, const std::string& what) {
  ++report.violations;
  if (report.failures.size() < kMaxFailures) {
    report.failures.push_back(what);
  }
}

void track_margin(CheckReport& report, double margin) {
  report.worst_margin = std::min(report.worst_margin, margin);
}

void track_equality(CheckReport& report, double gap) {
  if (!report.equality_gap || gap < *report.equality_gap) {
    report.equality_gap = gap;
  }
}

// sum_{n >= from} c_n r^n, looped until the geometric tail is negligible
// next to the check tolerances.
double coeff_power_sum(const CoeffSeq& coeffs, double r, int from) {
  if (r == 0.0) return from == 0 ? coeffs.at(0) : 0.0;
  KahanSum acc;
  double rn = std::pow(r, from);
  for (int n = from; n < 2'000'000; ++n) {
    acc.add(coeffs.at(n) * rn);
    const double sup = coeffs.sup_from(n + 1);
    if (sup == 0.0 || sup * rn * r / (1.0 - r) < 1e-18) return acc.value();
    rn *= r;
  }
  throw non_convergent_error("sample coefficients did not decay");
}

// sum_{n >= from} c_n^2 r^(2n).
double coeff_sq_power_sum(const CoeffSeq& coeffs, double r, int from) {
  const double x = r * r;
  if (x == 0.0) return from == 0 ? coeffs.at(0) * coeffs.at(0) : 0.0;
  KahanSum acc;
  double xn = std::pow(x, from);
  for (int n = from; n < 2'000'000; ++n) {
    const double c = coeffs.at(n);
    acc.add(c * c * xn);
    const double sup = coeffs.sup_from(n + 1);
    if (sup == 0.0 || sup * sup * xn * x / (1.0 - x) < 1e-18) {
      return acc.value();
    }
    xn *= x;
  }
  throw non_convergent_error("sample coefficients did not decay");
}

std::vector<double> random_zeros(PortableRng& rng, int degree) {
  std::vector<double> zeros(static_cast<size_t>(degree));
  for (double& z : zeros) z = rng.uniform(-0.95, 0.95);
  return zeros;
}

// |lambda c + (1 - lambda) B(z)| stays below 1 for |c| < 1, so convex
// combinations remain class members; combine signed series, then take
// moduli.
CoeffSeq convex_combination(double lambda, double constant,
                            const std::vector<double>& series) {
  std::vector<double> combined(series.size());
  for (size_t k = 0; k < series.size(); ++k) {
    double v = (1.0 - lambda) * series[k];
    if (k == 0) v += lambda * constant;
    combined[k] = std::abs(v);
  }
  return CoeffSeq::FiniteTable(std::move(combined));
}

}  // namespace

SampleSet SampleSet::Generate(std::uint64_t seed, int count) {
  SampleSet set;
  set.seed = seed;
  if (count <= 0) return set;
  PortableRng rng(seed);

  std::vector<Sample> fixed;
  fixed.push_back({"identity", CoeffSeq::FiniteTable({0.0, 1.0}), true, true});
  fixed.push_back({"constant(0.3)", CoeffSeq::FiniteTable({0.3}), true, true});
  for (int i = 0; i <= 9; ++i) {
    const double a = i / 10.0;
    std::ostringstream label;
    label << "fa(a=" << a << ")";
    fixed.push_back({label.str(), CoeffSeq::BlaschkePoint(a), true, true});
  }
  fixed.push_back({"fa(a=0.99)", CoeffSeq::BlaschkePoint(0.99), true, true});
  for (int i = 1; i <= 9; ++i) {
    const double beta = i / 10.0;
    std::ostringstream label;
    label << "fbeta(beta=" << beta << ")";
    fixed.push_back(
        {label.str(), CoeffSeq::HarmonicExtremal(beta), false, true});
  }

  for (auto& s : fixed) {
    if (static_cast<int>(set.samples.size()) >= count) break;
    set.samples.push_back(std::move(s));
  }

  const int kExpand = 512;  // plenty for 40-coefficient checks at r <= 0.95
  int i = 0;
  while (static_cast<int>(set.samples.size()) < count) {
    const int variant = i % 3;
    std::ostringstream label;
    if (variant == 0) {
      const int degree = rng.uniform_int(1, 8);
      const auto zeros = random_zeros(rng, degree);
      label << "product#" << i << "(deg=" << degree << ")";
      set.samples.push_back(
          {label.str(), CoeffSeq::BlaschkeProduct(zeros), true, true});
    } else if (variant == 1) {
      const int d1 = rng.uniform_int(1, 4);
      const int d2 = rng.uniform_int(1, 4);
      const double lambda = rng.uniform(0.05, 0.95);
      const auto s1 = blaschke_series(random_zeros(rng, d1), kExpand);
      const auto s2 = blaschke_series(random_zeros(rng, d2), kExpand);
      std::vector<double> mix(s1.size());
      for (size_t k = 0; k < s1.size(); ++k) {
        mix[k] = std::abs(lambda * s1[k] + (1.0 - lambda) * s2[k]);
      }
      label << "mix#" << i << "(lambda=" << lambda << ")";
      set.samples.push_back(
          {label.str(), CoeffSeq::FiniteTable(std::move(mix)), true, true});
    } else {
      const int degree = rng.uniform_int(1, 8);
      const double lambda = rng.uniform(0.05, 0.95);
      const double constant = rng.uniform(-0.9, 0.9);
      const auto series = blaschke_series(random_zeros(rng, degree), kExpand);
      label << "const-mix#" << i;
      set.samples.push_back({label.str(),
                             convex_combination(lambda, constant, series),
                             true, true});
    }
    ++i;
  }
  return set;
}

int SampleSet::analytic_count() const {
  int n = 0;
  for (const auto& s : samples) n += s.analytic ? 1 : 0;
  return n;
}

CheckReport check_schwarz_pick(const SampleSet& set, double tol) {
  CheckReport report;
  report.name = "schwarz-pick";
  for (const auto& sample : set.samples) {
    if (!sample.analytic) continue;
    const double c0 = sample.coeffs.at(0);
    const double bound = 1.0 - c0 * c0;
    for (int k = 1; k <= kCoeffHorizon; ++k) {
      const double ck = sample.coeffs.at(k);
      const double margin = bound - ck;
      ++report.checked;
      track_margin(report, margin);
      if (margin < -tol) {
        std::ostringstream msg;
        msg << sample.label << ": c_" << k << " = " << ck << " > " << bound;
        add_failure(report, msg.str());
      }
    }
    if (sample.coeffs.kind() == CoeffSeq::Kind::kBlaschkePoint) {
      track_equality(report, std::abs(bound - sample.coeffs.at(1)));
    }
  }
  return report;
}

CheckReport check_p_inequality(double p, const std::vector<double>& xs,
                               double tol) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw domain_error("exponent p must lie in (0, 2]");
  }
  CheckReport report;
  std::ostringstream name;
  name << "p-inequality(p=" << p << ")";
  report.name = name.str();
  for (double x : xs) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw domain_error("grid values must lie in [0, 1]");
    }
    const double value =
        x == 1.0 ? p / 2.0 : (1.0 - std::pow(x, p)) / (1.0 - x * x);
    const double margin = value - p / 2.0;
    ++report.checked;
    track_margin(report, margin);
    if (margin < -tol) {
      std::ostringstream msg;
      msg << "x = " << x << ": value " << value << " < " << p / 2.0;
      add_failure(report, msg.str());
    }
  }
  return report;
}

CheckReport check_refined_lemma(const SampleSet& set, int N,
                                const std::vector<double>& r_grid,
                                double tol) {
  if (N < 1) throw domain_error("N must be a positive integer");
  CheckReport report;
  report.name = "refined-lemma(N=" + std::to_string(N) + ")";
  const int t = (N - 1) / 2;
  for (double r : r_grid) {
    if (!(r >= 0.0 && r <= 0.95)) {
      throw domain_error("lemma grid must lie in [0, 0.95]");
    }
  }
  for (const auto& sample : set.samples) {
    if (!sample.analytic) continue;
    const double c0 = sample.coeffs.at(0);
    for (double r : r_grid) {
      if (r == 0.0) continue;
      const double rN = std::pow(r, N);
      double lhs = coeff_power_sum(sample.coeffs, r, N);
      if (t >= 1) {
        double sq = 0.0;
        for (int n = 1; n <= t; ++n) {
          const double c = sample.coeffs.at(n);
          sq += c * c;
        }
        lhs += sq * rN / (1.0 - r);
      }
      lhs += (1.0 / (1.0 + c0) + r / (1.0 - r)) *
             coeff_sq_power_sum(sample.coeffs, r, t + 1);
      const double rhs = (1.0 - c0 * c0) * rN / (1.0 - r);
      const double margin = rhs - lhs;
      ++report.checked;
      track_margin(report, margin);
      if (margin < -tol) {
        std::ostringstream msg;
        msg << sample.label << " at r = " << r << ": lhs " << lhs << " > rhs "
            << rhs;
        add_failure(report, msg.str());
      }
      if (N == 1 && sample.label == "identity") {
        track_equality(report, std::abs(margin));
      }
    }
  }
  return report;
}

CheckReport check_area_bound(const SampleSet& set,
                             const std::vector<double>& r_grid, double tol) {
  CheckReport report;
  report.name = "area-bound";
  const double limit = 1.0 / std::sqrt(2.0) + 1e-12;
  for (double r : r_grid) {
    if (!(r > 0.0 && r <= limit)) {
      throw domain_error("area grid must lie in (0, 1/sqrt(2)]");
    }
  }
  for (const auto& sample : set.samples) {
    if (!sample.analytic) continue;
    const double c0 = sample.coeffs.at(0);
    for (double r : r_grid) {
      const double value = eval_area_ratio(sample.coeffs, r);
      const double bound = area_upper_bound(c0, r);
      const double margin = bound - value;
      ++report.checked;
      track_margin(report, margin);
      if (margin < -tol) {
        std::ostringstream msg;
        msg << sample.label << " at r = " << r << ": area " << value << " > "
            << bound;
        add_failure(report, msg.str());
      }
      if (sample.coeffs.kind() == CoeffSeq::Kind::kBlaschkePoint) {
        track_equality(report, std::abs(margin));
      }
    }
  }
  return report;
}

CheckReport check_growth_bounds(const std::vector<double>& betas,
                                const std::vector<double>& rs, double tol) {
  CheckReport report;
  report.name = "growth-bounds";
  for (double beta : betas) {
    for (double r : rs) {
      detail::require_radius(r);
      const auto gb = growth_bounds_harmonic(beta, r);
      // |f_beta(r)| on the positive axis
      const double value =
          r + 2.0 * (1.0 - beta) * r * r / (1.0 - r);
      const double low_margin = value - gb.lower;
      const double up_gap = std::abs(gb.upper - value);
      report.checked += 2;
      track_margin(report, low_margin);
      if (up_gap > tol) {
        std::ostringstream msg;
        msg << "beta = " << beta << ", r = " << r
            << ": upper bound not attained, gap " << up_gap;
        add_failure(report, msg.str());
      }
      if (low_margin < -tol || (r > 0.0 && !(low_margin > 0.0))) {
        std::ostringstream msg;
        msg << "beta = " << beta << ", r = " << r << ": lower bound "
            << gb.lower << " vs value " << value;
        add_failure(report, msg.str());
      }
      track_equality(report, up_gap);
    }
  }
  return report;
}

std::vector<double> blaschke_series_oracle(const std::vector<double>& zeros,
                                           int count) {
  if (count <= 0) throw config_error("coefficient count must be positive");
  std::vector<double> acc(static_cast<size_t>(count), 0.0);
  acc[0] = 1.0;
  std::vector<double> factor(static_cast<size_t>(count), 0.0);
  std::vector<double> next(static_cast<size_t>(count), 0.0);
  for (double a : zeros) {
    if (!(std::abs(a) < 1.0)) {
      throw domain_error("product zeros must lie inside the unit disk");
    }
    // (z - a)/(1 - a z) = -a + (1 - a^2) sum_{i>=1} a^(i-1) z^i
    factor[0] = -a;
    double geo = 1.0 - a * a;
    for (int i = 1; i < count; ++i) {
      factor[static_cast<size_t>(i)] = geo;
      geo *= a;
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < count; ++i) {
      const double ai = acc[static_cast<size_t>(i)];
      if (ai == 0.0) continue;
      for (int j = 0; i + j < count; ++j) {
        next[static_cast<size_t>(i + j)] +=
            ai * factor[static_cast<size_t>(j)];
      }
    }
    acc.swap(next);
  }
  return acc;
}

CheckReport check_series_oracles(std::uint64_t seed) {
  CheckReport report;
  report.name = "series-oracles";
  // Closed power sums vs 1e5-term compensated partial sums.
  for (int alpha = 1; alpha <= 3; ++alpha) {
    for (int i = 1; i <= 9; ++i) {
      const double r = i / 10.0;
      KahanSum partial;
      double rn = r * r;
      for (int n = 2; n < 100'000 + 2; ++n) {
        partial.add(std::pow(static_cast<double>(n), alpha) * rn);
        rn *= r;
      }
      const double closed = closed_sum_power(alpha, r);
      const double diff = std::abs(closed - partial.value());
      const double margin = 1e-10 - diff;
      ++report.checked;
      track_margin(report, margin);
      if (margin < 0.0) {
        std::ostringstream msg;
        msg << "alpha = " << alpha << ", r = " << r << ": closed " << closed
            << " vs partial " << partial.value();
        add_failure(report, msg.str());
      }
    }
  }
  // The printed alpha = 1 formula deviates upward everywhere except r = 0.
  for (int i = 1; i <= 9; ++i) {
    const double r = i / 10.0;
    const double gap = printed_sum_power(1, r) - closed_sum_power(1, r);
    ++report.checked;
    track_margin(report, gap);
    if (!(gap > 0.0)) {
      std::ostringstream msg;
      msg << "printed sum did not exceed the true sum at r = " << r;
      add_failure(report, msg.str());
    }
  }
  {
    const double gap = printed_sum_power(1, 0.5) - closed_sum_power(1, 0.5);
    ++report.checked;
    if (!(gap > 0.1)) {
      add_failure(report, "printed-vs-true gap at r = 0.5 not above 0.1");
    }
  }
  ++report.checked;
  if (printed_sum_power(1, 0.0) != 0.0 || closed_sum_power(1, 0.0) != 0.0) {
    add_failure(report, "sums must vanish at r = 0");
  }
  // Product expansion vs the multiplication oracle.
  PortableRng rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    const int degree = rng.uniform_int(1, 8);
    std::vector<double> zeros(static_cast<size_t>(degree));
    for (double& z : zeros) z = rng.uniform(-0.95, 0.95);
    const auto primary = blaschke_series(zeros, kCoeffHorizon);
    const auto oracle = blaschke_series_oracle(zeros, kCoeffHorizon);
    double worst = 0.0;
    for (int k = 0; k < kCoeffHorizon; ++k) {
      worst = std::max(worst, std::abs(primary[static_cast<size_t>(k)] -
                                       oracle[static_cast<size_t>(k)]));
    }
    ++report.checked;
    track_margin(report, 1e-12 - worst);
    if (worst > 1e-12) {
      std::ostringstream msg;
      msg << "product expansion mismatch " << worst << " (degree " << degree
          << ")";
      add_failure(report, msg.str());
    }
  }
  return report;
}

SuiteReport run_suite(std::uint64_t seed, int sample_count) {
  SuiteReport suite;
  suite.seed = seed;
  const SampleSet set = SampleSet::Generate(seed, sample_count);
  if (set.samples.empty()) {
    suite.warnings.push_back("empty sample set: checks pass vacuously");
  }

  std::vector<double> xs;
  for (int i = 0; i <= 20; ++i) xs.push_back(i / 20.0);
  std::vector<double> r_mid;
  for (int i = 1; i <= 9; ++i) r_mid.push_back(i / 10.0);
  std::vector<double> r_area;
  for (int i = 1; i <= 7; ++i) r_area.push_back(i / 10.0);
  r_area.push_back(1.0 / std::sqrt(2.0));
  std::vector<double> r_growth{0.0};
  for (int i = 1; i <= 9; ++i) r_growth.push_back(i / 10.0);
  r_growth.push_back(0.99);

  suite.checks.push_back(check_schwarz_pick(set));
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    suite.checks.push_back(check_p_inequality(p, xs));
  }
  for (int N = 1; N <= 5; ++N) {
    suite.checks.push_back(check_refined_lemma(set, N, r_mid));
  }
  suite.checks.push_back(check_area_bound(set, r_area));
  suite.checks.push_back(check_growth_bounds(r_mid, r_growth));
  suite.checks.push_back(check_series_oracles(seed));

  for (const auto& c : suite.checks) {
    if (!c.pass()) suite.all_pass = false;
  }
  for (const auto& s : set.samples) {
    if (!s.membership_verified) {
      suite.warnings.push_back(s.label + ": class membership unverified");
    }
  }
  return suite;
}

}  // namespace bohr
