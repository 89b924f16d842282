#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohr/extremal.hpp"
#include "bohr/functionals.hpp"
#include "bohr/json_io.hpp"
#include "bohr/radii.hpp"
#include "bohr/series.hpp"
#include "bohr/verify.hpp"

namespace {

using bohr::json;

enum class Format { kJson, kCsv, kMd };

struct GlobalOpts {
  Format format = Format::kJson;
  double tol = 1e-13;
  std::uint64_t seed = 42;
  std::optional<bohr::SumMode> mode;
  std::string out_path;
};

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoResult = 2;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (!g.out_path.empty()) {
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) {
      throw bohr::config_error("cannot open output file '" + g.out_path + "'");
    }
    f << text;
  } else {
    std::cout << text;
  }
}

json load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw bohr::config_error("cannot read config file '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw bohr::config_error(std::string("config is not valid JSON: ") +
                             e.what());
  }
  if (!j.is_object()) throw bohr::config_error("config must be a JSON object");
  return j;
}

void reject_unknown_keys(const json& j,
                         const std::set<std::string>& allowed,
                         const std::string& what) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw bohr::config_error(what + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& require_key(const json& j, const char* key,
                        const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw bohr::config_error(what + ": missing required key '" + key + "'");
  }
  return *it;
}

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw bohr::config_error(what + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) {
    throw bohr::config_error(what + " must be an integer");
  }
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw bohr::config_error(what + " must be a string");
  return j.get<std::string>();
}

double number_or(const json& j, const char* key, double fallback,
                 const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return as_number(*it, what + "." + key);
}

int int_or(const json& j, const char* key, int fallback,
           const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return as_int(*it, what + "." + key);
}

// Merges cfg["params"] (when present) with inline top-level parameters.
json effective_params(const json& cfg,
                      const std::set<std::string>& top_level_reserved) {
  json params = json::object();
  if (auto it = cfg.find("params"); it != cfg.end()) {
    if (!it->is_object()) {
      throw bohr::config_error("'params' must be an object");
    }
    params = *it;
  }
  for (const auto& item : cfg.items()) {
    if (top_level_reserved.count(item.key())) continue;
    params[item.key()] = item.value();
  }
  return params;
}

bohr::SumMode pick_mode(const GlobalOpts& g, const json& cfg,
                        bohr::SumMode fallback) {
  if (auto it = cfg.find("mode"); it != cfg.end()) {
    return bohr::sum_mode_from_string(as_string(*it, "mode"));
  }
  if (g.mode) return *g.mode;
  return fallback;
}

// ---------------------------------------------------------------- radius --

void validate_radius_config(const json& cfg) {
  reject_unknown_keys(cfg,
                      {"theorem", "mode", "params", "p", "phi", "Phi", "beta",
                       "m", "N", "mu", "lambda", "allow_extended_beta", "name",
                       "a", "q", "tol"},
                      "radius config");
  const std::string theorem =
      as_string(require_key(cfg, "theorem", "radius config"), "theorem");
  static const std::set<std::string> kTheorems{"generalized", "harmonic",
                                               "fbeta", "prior"};
  if (!kTheorems.count(theorem)) {
    throw bohr::config_error("radius config: unknown theorem '" + theorem +
                             "'");
  }
  const json params = effective_params(cfg, {"theorem", "mode", "params"});
  if (theorem == "generalized") {
    reject_unknown_keys(params, {"p", "phi", "Phi", "tol"},
                        "generalized params");
    require_key(params, "p", "generalized params");
    require_key(params, "phi", "generalized params");
  } else if (theorem == "harmonic") {
    reject_unknown_keys(
        params, {"beta", "m", "N", "mu", "lambda", "allow_extended_beta",
                 "tol"},
        "harmonic params");
    require_key(params, "beta", "harmonic params");
  } else if (theorem == "fbeta") {
    reject_unknown_keys(params, {"beta", "phi", "tol"}, "fbeta params");
    require_key(params, "beta", "fbeta params");
    require_key(params, "phi", "fbeta params");
  } else {
    reject_unknown_keys(params, {"name", "N", "a", "beta", "q", "p", "tol"},
                        "prior params");
    require_key(params, "name", "prior params");
  }
}

std::string format_radius(const GlobalOpts& g, const std::string& theorem,
                          const bohr::RadiusResult& res) {
  switch (g.format) {
    case Format::kJson: {
      json j = bohr::to_json(res);
      j["theorem"] = theorem;
      return j.dump(2) + "\n";
    }
    case Format::kCsv: {
      std::ostringstream out;
      out << "theorem,value,bracket_lo,bracket_hi,residual,iterations,mode\n";
      out << theorem << ',' << num(res.value) << ',' << num(res.bracket_lo)
          << ',' << num(res.bracket_hi) << ',' << num(res.residual_at_root)
          << ',' << res.iterations << ',' << bohr::to_string(res.mode) << "\n";
      return out.str();
    }
    case Format::kMd: {
      std::ostringstream out;
      out << "| theorem | value | bracket | residual | iterations | mode |\n";
      out << "|---|---|---|---|---|---|\n";
      out << "| " << theorem << " | " << num(res.value) << " | ["
          << num(res.bracket_lo) << ", " << num(res.bracket_hi) << "] | "
          << num(res.residual_at_root) << " | " << res.iterations << " | "
          << bohr::to_string(res.mode) << " |\n";
      return out.str();
    }
  }
  return {};
}

int cmd_radius(const GlobalOpts& g, const json& cfg) {
  validate_radius_config(cfg);
  const std::string theorem = cfg.at("theorem").get<std::string>();
  const json params = effective_params(cfg, {"theorem", "mode", "params"});
  bohr::SolveOptions opts;
  opts.root_tol = number_or(params, "tol", g.tol, "params");

  if (theorem == "prior") {
    bohr::PriorParams pp;
    pp.N = int_or(params, "N", 1, "prior");
    pp.a = number_or(params, "a", 0.0, "prior");
    pp.beta = number_or(params, "beta", 0.0, "prior");
    pp.q = int_or(params, "q", 1, "prior");
    pp.p = number_or(params, "p", 1.0, "prior");
    const std::string name = as_string(params.at("name"), "prior name");
    const double value = bohr::prior_radius(name, pp);
    if (g.format == Format::kJson) {
      json j{{"theorem", "prior"}, {"name", name}, {"value", value}};
      emit(g, j.dump(2) + "\n");
    } else if (g.format == Format::kCsv) {
      emit(g, "theorem,name,value\nprior," + name + "," + num(value) + "\n");
    } else {
      emit(g, "| theorem | name | value |\n|---|---|---|\n| prior | " + name +
                  " | " + num(value) + " |\n");
    }
    return kExitOk;
  }

  bohr::ResidualSpec spec;
  if (theorem == "generalized") {
    bohr::AnalyticInstance inst(
        as_number(params.at("p"), "p"),
        bohr::weight_from_json(params.at("phi")),
        params.contains("Phi") ? bohr::weight_from_json(params.at("Phi"))
                               : bohr::WeightSeq::Zero());
    spec = bohr::make_generalized_residual(std::move(inst));
  } else if (theorem == "harmonic") {
    const bool extended =
        params.contains("allow_extended_beta") &&
        params.at("allow_extended_beta").is_boolean() &&
        params.at("allow_extended_beta").get<bool>();
    bohr::HarmonicInstance inst(as_number(params.at("beta"), "beta"),
                                int_or(params, "m", 1, "harmonic"),
                                int_or(params, "N", 1, "harmonic"),
                                number_or(params, "mu", 1.0, "harmonic"),
                                number_or(params, "lambda", 1.0, "harmonic"),
                                extended);
    if (extended && inst.beta >= 0.5) {
      std::cerr << "warning: beta outside (0, 1/2); the theorem's stated "
                   "domain is widened on request\n";
    }
    spec = bohr::make_harmonic_residual(inst);
  } else {  // fbeta
    spec = bohr::make_fbeta_residual(
        as_number(params.at("beta"), "beta"),
        bohr::weight_from_json(params.at("phi")),
        pick_mode(g, cfg, bohr::SumMode::kVerifiedSeries));
  }

  const auto res = bohr::solve_min_root(spec, opts);
  if (!res) {
    std::cerr << "no root: the residual has no sign change on (0, 1)\n";
    return kExitNoResult;
  }
  emit(g, format_radius(g, theorem, *res));
  return kExitOk;
}

// ---------------------------------------------------------------- table1 --

int cmd_table1(const GlobalOpts& g, const json& cfg) {
  reject_unknown_keys(cfg, {"mode"}, "table1 config");
  const bohr::SumMode mode = pick_mode(g, cfg, bohr::SumMode::kPaperPrinted);
  const auto result = bohr::table1(mode);

  constexpr double kCellTol = 5e-4;
  const bool all_within = result.max_abs_deviation() <= kCellTol;
  const bool r2_discrepancy = result.row_max_abs_deviation(1) > kCellTol;

  std::ostringstream out;
  if (g.format == Format::kJson) {
    json j = bohr::to_json(result);
    j["all_within_5e-4"] = all_within;
    j["r2_discrepancy"] = r2_discrepancy;
    out << j.dump(2) << "\n";
  } else if (g.format == Format::kCsv) {
    out << "row,beta,computed,paper,delta,mode\n";
    for (int row = 0; row < 4; ++row) {
      for (size_t i = 0; i < bohr::kTable1Betas.size(); ++i) {
        out << bohr::kTable1RowLabels[static_cast<size_t>(row)] << ','
            << num(bohr::kTable1Betas[i]) << ','
            << num(result.computed[static_cast<size_t>(row)][i]) << ','
            << num(bohr::kTable1Reference[static_cast<size_t>(row)][i]) << ','
            << num(result.deviation[static_cast<size_t>(row)][i]) << ','
            << bohr::to_string(mode) << "\n";
      }
    }
  } else {
    out << "| row | quantity |";
    for (double b : bohr::kTable1Betas) out << ' ' << num(b) << " |";
    out << "\n|---|---|";
    for (size_t i = 0; i < bohr::kTable1Betas.size(); ++i) out << "---|";
    out << "\n";
    for (int row = 0; row < 4; ++row) {
      const char* label = bohr::kTable1RowLabels[static_cast<size_t>(row)];
      out << "| " << label << " | computed |";
      for (size_t i = 0; i < bohr::kTable1Betas.size(); ++i) {
        out << ' ' << num(result.computed[static_cast<size_t>(row)][i])
            << " |";
      }
      out << "\n| " << label << " | paper |";
      for (size_t i = 0; i < bohr::kTable1Betas.size(); ++i) {
        out << ' ' << num(bohr::kTable1Reference[static_cast<size_t>(row)][i])
            << " |";
      }
      out << "\n| " << label << " | delta |";
      for (size_t i = 0; i < bohr::kTable1Betas.size(); ++i) {
        out << ' ' << num(result.deviation[static_cast<size_t>(row)][i])
            << " |";
      }
      out << "\n";
    }
    out << "\nmode: " << bohr::to_string(mode)
        << ", max |delta|: " << num(result.max_abs_deviation()) << "\n";
  }
  emit(g, out.str());

  if (mode == bohr::SumMode::kPaperPrinted) {
    if (!all_within) {
      std::cerr << "deviation above 5e-4 in " << bohr::to_string(mode)
                << " mode (max " << num(result.max_abs_deviation()) << ")\n";
      return kExitError;
    }
    return kExitOk;
  }
  if (r2_discrepancy) {
    std::cerr << "note: R2 row deviates from the published values in "
                 "verified-series mode (printed-sum discrepancy)\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- sharpness --

void validate_sharpness_config(const json& cfg) {
  reject_unknown_keys(
      cfg, {"instance", "a", "beta", "radius", "epsilon", "grid", "f", "tol"},
      "sharpness config");
  const std::string name =
      as_string(require_key(cfg, "instance", "sharpness config"), "instance");
  static const std::set<std::string> kInstances{
      "classical",    "refined-I(i)(a)", "improved-II(i)(a)",
      "harmonic-R1",  "harmonic-R2",     "harmonic-R3",
      "harmonic-R4",  "harmonic-bohr",   "refined_skip0",
      "refined_with_a0"};
  if (!kInstances.count(name)) {
    throw bohr::config_error("sharpness config: unknown instance '" + name +
                             "'");
  }
  if (name.rfind("harmonic-", 0) == 0) {
    require_key(cfg, "beta", "sharpness config (harmonic instance)");
  }
}

int cmd_sharpness(const GlobalOpts& g, const json& cfg) {
  validate_sharpness_config(cfg);
  const std::string name = cfg.at("instance").get<std::string>();

  bohr::ProbeInstance probe;
  if (name == "classical") {
    probe = bohr::classical_probe();
  } else if (name == "refined-I(i)(a)") {
    probe = bohr::refined_probe(number_or(cfg, "a", 0.5, "sharpness"));
  } else if (name == "improved-II(i)(a)") {
    probe = bohr::improved_area_probe();
  } else if (name == "harmonic-bohr") {
    probe = bohr::harmonic_bohr_probe(as_number(cfg.at("beta"), "beta"));
  } else if (name.rfind("harmonic-R", 0) == 0) {
    const int row = name[10] - '0';
    probe = bohr::harmonic_table_probe(row, as_number(cfg.at("beta"), "beta"));
  } else {
    std::optional<bohr::CoeffSeq> table;
    if (auto it = cfg.find("f"); it != cfg.end()) {
      table = bohr::coeff_from_json(*it);
    }
    probe = bohr::coeff_table_probe(name, table);
  }

  const double radius =
      cfg.contains("radius")
          ? as_number(cfg.at("radius"), "radius")
          : (probe.default_radius ? *probe.default_radius
                                  : throw bohr::config_error(
                                        "instance has no default radius; "
                                        "pass 'radius'"));
  const double epsilon = number_or(cfg, "epsilon", 1e-3, "sharpness");
  std::vector<double> grid = probe.default_grid;
  if (auto it = cfg.find("grid"); it != cfg.end()) {
    if (!it->is_array()) {
      throw bohr::config_error("sharpness config: 'grid' must be an array");
    }
    grid.clear();
    for (const auto& x : *it) grid.push_back(as_number(x, "grid entry"));
  }
  const double tol = number_or(cfg, "tol", 1e-9, "sharpness");

  const auto report = bohr::sharpness_probe(probe, radius, epsilon, grid, tol);
  if (g.format == Format::kJson) {
    emit(g, bohr::to_json(report).dump(2) + "\n");
  } else if (g.format == Format::kCsv) {
    std::ostringstream out;
    out << "param,value_below,value_above,bound_below,bound_above,verdict\n";
    for (const auto& row : report.rows) {
      out << num(row.param) << ',' << num(row.value_below) << ','
          << num(row.value_above) << ',' << num(report.bound_below) << ','
          << num(report.bound_above) << ',' << bohr::to_string(report.verdict)
          << "\n";
    }
    emit(g, out.str());
  } else {
    std::ostringstream out;
    out << "instance: " << report.instance << "\nradius: " << num(radius)
        << " (epsilon " << num(epsilon) << ")\nverdict: "
        << bohr::to_string(report.verdict) << "\n";
    if (!report.note.empty()) out << "note: " << report.note << "\n";
    out << "below: " << num(report.below) << " vs bound "
        << num(report.bound_below) << "\nabove: " << num(report.above)
        << " vs bound " << num(report.bound_above) << "\n";
    emit(g, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const GlobalOpts& g, const json& cfg) {
  reject_unknown_keys(cfg, {"seed"}, "verify config");
  std::uint64_t seed = g.seed;
  if (auto it = cfg.find("seed"); it != cfg.end()) {
    seed = static_cast<std::uint64_t>(as_int(*it, "seed"));
  }
  const auto suite = bohr::run_suite(seed);
  if (g.format == Format::kJson) {
    emit(g, bohr::to_json(suite).dump(2) + "\n");
  } else if (g.format == Format::kCsv) {
    std::ostringstream out;
    out << "check,samples,violations,worst_margin,pass\n";
    for (const auto& c : suite.checks) {
      out << c.name << ',' << c.checked << ',' << c.violations << ','
          << num(c.worst_margin) << ',' << (c.pass() ? "true" : "false")
          << "\n";
    }
    emit(g, out.str());
  } else {
    emit(g, bohr::format_suite_text(suite));
  }
  return suite.all_pass ? kExitOk : kExitError;
}

// --------------------------------------------------------- eval and curve --

struct Functional {
  std::function<double(double)> value;
  std::function<double(double)> bound;
};

Functional resolve_functional(const json& inst_spec,
                              const std::optional<bohr::CoeffSeq>& f,
                              const GlobalOpts& g, const json& cfg) {
  if (inst_spec.is_string()) {
    const std::string name = inst_spec.get<std::string>();
    if (!f) {
      throw bohr::config_error("instance '" + name +
                               "' needs a function sample 'f'");
    }
    const bohr::CoeffSeq sample = *f;
    auto analytic = [sample](bohr::AnalyticInstance inst) {
      auto shared = std::make_shared<bohr::AnalyticInstance>(std::move(inst));
      return Functional{
          [sample, shared](double r) { return eval_Cf(sample, *shared, r); },
          [shared](double r) {
            return bohr::eval_weight(shared->phi, 0, r);
          }};
    };
    if (name == "classical") {
      return analytic({1.0, bohr::WeightSeq::Monomial(),
                       bohr::WeightSeq::Zero()});
    }
    if (name == "classical-p2") {
      return analytic({2.0, bohr::WeightSeq::Monomial(),
                       bohr::WeightSeq::Zero()});
    }
    if (name == "refined-I(i)(a)") {
      return analytic({1.0, bohr::WeightSeq::Monomial(),
                       bohr::WeightSeq::RefinedWeight(sample.at(0))});
    }
    if (name == "refined-I(i)(b)") {
      return analytic({2.0, bohr::WeightSeq::Monomial(),
                       bohr::WeightSeq::RefinedWeight(sample.at(0))});
    }
    if (name == "improved-II(i)(a)") {
      return analytic({1.0, bohr::WeightSeq::Monomial(),
                       bohr::WeightSeq::LinearK(16.0 / 9.0)});
    }
    if (name == "improved-II(i)(b)") {
      return analytic({2.0, bohr::WeightSeq::Monomial(),
                       bohr::WeightSeq::LinearK(9.0 / 8.0)});
    }
    if (name == "area") {
      return {[sample](double r) { return bohr::eval_area_ratio(sample, r); },
              [sample](double r) {
                return bohr::area_upper_bound(sample.at(0), r);
              }};
    }
    throw bohr::config_error("unknown instance '" + name + "'");
  }
  if (!inst_spec.is_object()) {
    throw bohr::config_error("'instance' must be a name or an object");
  }
  if (inst_spec.contains("p")) {
    reject_unknown_keys(inst_spec, {"p", "phi", "Phi"}, "analytic instance");
    if (!f) {
      throw bohr::config_error("analytic instances need a function sample");
    }
    auto inst = std::make_shared<bohr::AnalyticInstance>(
        as_number(inst_spec.at("p"), "p"),
        bohr::weight_from_json(require_key(inst_spec, "phi", "instance")),
        inst_spec.contains("Phi")
            ? bohr::weight_from_json(inst_spec.at("Phi"))
            : bohr::WeightSeq::Zero());
    const bohr::CoeffSeq sample = *f;
    return {[sample, inst](double r) { return eval_Cf(sample, *inst, r); },
            [inst](double r) { return bohr::eval_weight(inst->phi, 0, r); }};
  }
  const std::string family =
      as_string(require_key(inst_spec, "family", "instance"), "family");
  if (family == "harmonic") {
    reject_unknown_keys(inst_spec,
                        {"family", "beta", "m", "N", "mu", "lambda", "fn",
                         "allow_extended_beta"},
                        "harmonic instance");
    const double beta = as_number(require_key(inst_spec, "beta", "harmonic"),
                                  "beta");
    const bool extended = inst_spec.contains("allow_extended_beta") &&
                          inst_spec.at("allow_extended_beta").get<bool>();
    auto inst = std::make_shared<bohr::HarmonicInstance>(
        beta, int_or(inst_spec, "m", 1, "harmonic"),
        int_or(inst_spec, "N", 1, "harmonic"),
        number_or(inst_spec, "mu", 1.0, "harmonic"),
        number_or(inst_spec, "lambda", 1.0, "harmonic"), extended);
    bohr::ModulusMode mode = bohr::ModulusMode::kWorstCase;
    if (auto it = inst_spec.find("fn"); it != inst_spec.end()) {
      const std::string fn = as_string(*it, "fn");
      if (fn == "sample") {
        mode = bohr::ModulusMode::kSample;
      } else if (fn != "worst-case") {
        throw bohr::config_error("'fn' must be worst-case or sample");
      }
    }
    const bohr::CoeffSeq sample =
        f ? *f : bohr::CoeffSeq::HarmonicExtremal(beta);
    return {[sample, inst, mode](double r) {
              return eval_harmonic_S(sample, *inst, r, mode);
            },
            [beta](double) { return bohr::harmonic_distance(beta); }};
  }
  if (family == "fbeta") {
    reject_unknown_keys(inst_spec, {"family", "beta", "phi"},
                        "fbeta instance");
    const double beta =
        as_number(require_key(inst_spec, "beta", "fbeta"), "beta");
    const bohr::WeightSeq phi =
        bohr::weight_from_json(require_key(inst_spec, "phi", "fbeta"));
    const bohr::CoeffSeq sample =
        f ? *f : bohr::CoeffSeq::HarmonicExtremal(beta);
    return {[sample, phi](double r) {
              return bohr::eval_fbeta_lhs(sample, phi, r);
            },
            [beta](double) { return bohr::harmonic_distance(beta); }};
  }
  (void)g;
  (void)cfg;
  throw bohr::config_error("unknown instance family '" + family + "'");
}

int cmd_eval(const GlobalOpts& g, const json& cfg) {
  reject_unknown_keys(cfg, {"f", "instance", "r", "abs_tol"}, "eval config");
  std::optional<bohr::CoeffSeq> f;
  if (auto it = cfg.find("f"); it != cfg.end()) {
    f = bohr::coeff_from_json(*it);
  }
  const auto fn = resolve_functional(
      require_key(cfg, "instance", "eval config"), f, g, cfg);
  const double r = as_number(require_key(cfg, "r", "eval config"), "r");
  const double value = fn.value(r);
  if (g.format == Format::kJson) {
    json j{{"r", r}, {"value", value}, {"bound", fn.bound(r)}};
    emit(g, j.dump(2) + "\n");
  } else {
    emit(g, num(value) + "\n");
  }
  return kExitOk;
}

int cmd_curve(const GlobalOpts& g, const json& cfg) {
  reject_unknown_keys(cfg, {"f", "instance", "r_min", "r_max", "steps"},
                      "curve config");
  std::optional<bohr::CoeffSeq> f;
  if (auto it = cfg.find("f"); it != cfg.end()) {
    f = bohr::coeff_from_json(*it);
  }
  const auto fn = resolve_functional(
      require_key(cfg, "instance", "curve config"), f, g, cfg);
  const double r_min = number_or(cfg, "r_min", 0.0, "curve");
  const double r_max =
      as_number(require_key(cfg, "r_max", "curve config"), "r_max");
  const int steps = int_or(cfg, "steps", 100, "curve");
  if (!(r_min >= 0.0 && r_max < 1.0 && r_min <= r_max)) {
    throw bohr::config_error("curve range must satisfy 0 <= r_min <= r_max < 1");
  }
  if (steps < 1) throw bohr::config_error("steps must be >= 1");

  std::ostringstream csv;
  json rows = json::array();
  csv << "r,value,bound\n";
  for (int i = 0; i <= steps; ++i) {
    const double r = r_min + (r_max - r_min) * i / steps;
    const double v = fn.value(r);
    const double b = fn.bound(r);
    if (g.format == Format::kJson) {
      rows.push_back({{"r", r}, {"value", v}, {"bound", b}});
    } else {
      csv << num(r) << ',' << num(v) << ',' << num(b) << "\n";
    }
  }
  if (g.format == Format::kJson) {
    emit(g, rows.dump(2) + "\n");
  } else {
    emit(g, csv.str());
  }
  return kExitOk;
}

// Inline flag values collected per subcommand and overlaid on the config
// file. Strings holding JSON objects/arrays are parsed; anything else stays
// a plain string.
json parse_json_or_string(const std::string& s, const std::string& what) {
  const auto first = s.find_first_not_of(" \t");
  if (first != std::string::npos && (s[first] == '{' || s[first] == '[')) {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw bohr::config_error(what + " is not valid JSON: " + e.what());
    }
  }
  return json(s);
}

struct FlagSet {
  std::vector<std::pair<std::string, std::string>> strings;  // key, raw value
  std::vector<std::pair<std::string, double>> numbers;
  std::vector<std::pair<std::string, int>> ints;
  std::vector<std::pair<std::string, bool>> bools;
  std::vector<double> grid;
  bool grid_given = false;

  void overlay(json& cfg) const {
    for (const auto& [key, raw] : strings) {
      cfg[key] = parse_json_or_string(raw, "--" + key);
    }
    for (const auto& [key, v] : numbers) cfg[key] = v;
    for (const auto& [key, v] : ints) cfg[key] = v;
    for (const auto& [key, v] : bools) cfg[key] = v;
    if (grid_given) cfg["grid"] = grid;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bohr: radii of weighted majorant inequalities as minimal residual "
      "roots, with sharpness probes and inequality verification"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::string format_str = "json";
  std::string mode_str;
  app.add_option("--format", format_str, "Output format: json, csv or md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--tol", g.tol, "Root bisection tolerance");
  app.add_option("--seed", g.seed, "Seed for the verification sample set");
  app.add_option("--mode", mode_str,
                 "Series mode: paper-printed or verified-series")
      ->check(CLI::IsMember({"paper-printed", "verified-series"}));
  app.add_option("--out", g.out_path,
                 "Write output to FILE instead of stdout");

  struct Sub {
    CLI::App* cmd = nullptr;
    std::string config_path;
    std::shared_ptr<FlagSet> flags = std::make_shared<FlagSet>();
  };

  auto make_sub = [&](const char* name, const char* desc) {
    Sub sub;
    sub.cmd = app.add_subcommand(name, desc);
    sub.cmd->fallthrough();  // global flags may follow the subcommand
    sub.cmd->add_option("config", sub.config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    return sub;
  };
  auto str_flag = [](Sub& sub, const char* flag, const char* key,
                     const char* desc) {
    auto flags = sub.flags;
    std::string k = key;
    sub.cmd->add_option_function<std::string>(
        flag,
        [flags, k](const std::string& v) { flags->strings.emplace_back(k, v); },
        desc);
  };
  auto num_flag = [](Sub& sub, const char* flag, const char* key,
                     const char* desc) {
    auto flags = sub.flags;
    std::string k = key;
    sub.cmd->add_option_function<double>(
        flag, [flags, k](double v) { flags->numbers.emplace_back(k, v); },
        desc);
  };
  auto int_flag = [](Sub& sub, const char* flag, const char* key,
                     const char* desc) {
    auto flags = sub.flags;
    std::string k = key;
    sub.cmd->add_option_function<int>(
        flag, [flags, k](int v) { flags->ints.emplace_back(k, v); }, desc);
  };

  Sub radius = make_sub("radius",
                        "Solve one radius problem (minimal residual root)");
  str_flag(radius, "--theorem", "theorem",
           "generalized, harmonic, fbeta or prior");
  num_flag(radius, "--p", "p", "Exponent on |a_0| (generalized)");
  str_flag(radius, "--phi", "phi", "Weight sequence: kind name or JSON spec");
  str_flag(radius, "--Phi", "Phi", "Correction weights: kind name or JSON");
  num_flag(radius, "--beta", "beta", "Class parameter (harmonic/fbeta)");
  int_flag(radius, "--m", "m", "Power on |f(z)| (harmonic)");
  int_flag(radius, "--N", "N", "Series start (harmonic) or equation index "
                               "(prior)");
  num_flag(radius, "--mu", "mu", "Correction weight mu (harmonic)");
  num_flag(radius, "--lambda", "lambda", "Correction weight lambda "
                                         "(harmonic)");
  str_flag(radius, "--name", "name", "Prior radius name");
  num_flag(radius, "--a", "a", "Parameter a (prior)");
  int_flag(radius, "--q", "q", "Gap exponent q (prior)");
  {
    auto flags = radius.flags;
    radius.cmd->add_flag_callback(
        "--allow-extended-beta",
        [flags] { flags->bools.emplace_back("allow_extended_beta", true); },
        "Accept beta in [1/2, 1) for the harmonic residual");
  }

  Sub table1 = make_sub("table1",
                        "Reproduce the published radius table and compare");

  Sub sharp = make_sub(
      "sharpness", "Probe a radius for sharpness on its extremal family");
  str_flag(sharp, "--instance", "instance", "Probe instance name");
  num_flag(sharp, "--a", "a", "Family parameter a (refined probe)");
  num_flag(sharp, "--beta", "beta", "Family parameter beta (harmonic "
                                    "probes)");
  num_flag(sharp, "--radius", "radius", "Radius to probe (defaults to the "
                                        "instance's)");
  num_flag(sharp, "--epsilon", "epsilon", "Probe offset (default 1e-3)");
  str_flag(sharp, "--f", "f", "Coefficient table sample as JSON");
  {
    auto flags = sharp.flags;
    sharp.cmd->add_option_function<std::vector<double>>(
        "--grid",
        [flags](const std::vector<double>& v) {
          flags->grid = v;
          flags->grid_given = true;
        },
        "Family parameter grid");
  }

  Sub verify = make_sub("verify",
                        "Run the seeded inequality verification suite");

  Sub curve = make_sub("curve",
                       "Emit (r, functional value, bound) over an r grid");
  str_flag(curve, "--instance", "instance", "Instance name or JSON");
  str_flag(curve, "--f", "f", "Function sample as JSON");
  num_flag(curve, "--r-min", "r_min", "Grid start (default 0)");
  num_flag(curve, "--r-max", "r_max", "Grid end (required)");
  int_flag(curve, "--steps", "steps", "Grid steps (default 100)");

  Sub eval = make_sub("eval", "Evaluate one functional at one radius");
  str_flag(eval, "--instance", "instance", "Instance name or JSON");
  str_flag(eval, "--f", "f", "Function sample as JSON");
  num_flag(eval, "--r", "r", "Evaluation radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (format_str == "csv") {
    g.format = Format::kCsv;
  } else if (format_str == "md") {
    g.format = Format::kMd;
  }
  try {
    if (!mode_str.empty()) g.mode = bohr::sum_mode_from_string(mode_str);

    auto config_of = [](const Sub& sub) {
      json cfg = json::object();
      if (!sub.config_path.empty()) cfg = load_config_file(sub.config_path);
      sub.flags->overlay(cfg);
      return cfg;
    };

    if (radius.cmd->parsed()) return cmd_radius(g, config_of(radius));
    if (table1.cmd->parsed()) return cmd_table1(g, config_of(table1));
    if (sharp.cmd->parsed()) return cmd_sharpness(g, config_of(sharp));
    if (verify.cmd->parsed()) return cmd_verify(g, config_of(verify));
    if (curve.cmd->parsed()) return cmd_curve(g, config_of(curve));
    if (eval.cmd->parsed()) return cmd_eval(g, config_of(eval));
    return kExitError;
  } catch (const bohr::degenerate_error& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitNoResult;
  } catch (const bohr::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitError;
  } catch (const bohr::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitError;
  } catch (const bohr::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
