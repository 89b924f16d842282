#include "bohr/json_io.hpp"

#include <sstream>

namespace bohr {

namespace {

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_number(const json& j, const char* key, const char* what) {
  const json* v = find(j, key);
  if (!v || !v->is_number()) {
    throw config_error(std::string(what) + ": missing numeric '" + key + "'");
  }
  return v->get<double>();
}

int get_int(const json& j, const char* key, const char* what) {
  const json* v = find(j, key);
  if (!v || !v->is_number_integer()) {
    throw config_error(std::string(what) + ": missing integer '" + key + "'");
  }
  return v->get<int>();
}

std::vector<double> get_array(const json& j, const char* key,
                              const char* what) {
  const json* v = find(j, key);
  if (!v || !v->is_array()) {
    throw config_error(std::string(what) + ": missing array '" + key + "'");
  }
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) {
      throw config_error(std::string(what) + ": '" + key +
                         "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

WeightSeq weight_from_kind(const std::string& kind, const json& params,
                           int start, bool start_given) {
  auto pick_start = [&](int fallback) {
    return start_given ? start : fallback;
  };
  if (kind == "monomial") return WeightSeq::Monomial(pick_start(0));
  if (kind == "unit-then-monomial") return WeightSeq::UnitThenMonomial();
  if (kind == "shifted") return WeightSeq::Shifted(pick_start(2));
  if (kind == "power-weighted") {
    return WeightSeq::PowerWeighted(
        get_int(params, "alpha", "power-weighted"), pick_start(2));
  }
  if (kind == "lacunary") {
    return WeightSeq::Lacunary(get_int(params, "q", "lacunary"),
                               pick_start(0));
  }
  if (kind == "refined-weight") {
    return WeightSeq::RefinedWeight(get_number(params, "a", "refined-weight"));
  }
  if (kind == "linear-k") {
    return WeightSeq::LinearK(get_number(params, "c", "linear-k"));
  }
  if (kind == "zero") return WeightSeq::Zero();
  if (kind == "custom-table") {
    double ratio = 0.0;
    if (const json* tr = find(params, "tail_ratio")) {
      if (!tr->is_number()) {
        throw config_error("custom-table: 'tail_ratio' must be a number");
      }
      ratio = tr->get<double>();
    }
    return WeightSeq::CustomTable(get_array(params, "values", "custom-table"),
                                  pick_start(0), ratio);
  }
  throw config_error("unknown weight kind '" + kind + "'");
}

}  // namespace

WeightSeq weight_from_json(const json& j) {
  if (j.is_string()) {
    return weight_from_kind(j.get<std::string>(), json::object(), 0, false);
  }
  if (!j.is_object()) {
    throw config_error("weight spec must be an object or a kind string");
  }
  const json* kind = find(j, "kind");
  if (!kind || !kind->is_string()) {
    throw config_error("weight spec: missing string 'kind'");
  }
  json params = json::object();
  if (const json* p = find(j, "params")) {
    if (!p->is_object()) {
      throw config_error("weight spec: 'params' must be an object");
    }
    params = *p;
  } else {
    params = j;  // inline parameters next to "kind"
  }
  int start = 0;
  bool start_given = false;
  if (const json* s = find(j, "start")) {
    if (!s->is_number_integer()) {
      throw config_error("weight spec: 'start' must be an integer");
    }
    start = s->get<int>();
    start_given = true;
  }
  return weight_from_kind(kind->get<std::string>(), params, start,
                          start_given);
}

json weight_to_json(const WeightSeq& seq) {
  json j;
  json params = json::object();
  switch (seq.kind) {
    case WeightKind::kMonomial:
      j["kind"] = "monomial";
      break;
    case WeightKind::kUnitThenMonomial:
      j["kind"] = "unit-then-monomial";
      break;
    case WeightKind::kShifted:
      j["kind"] = "shifted";
      break;
    case WeightKind::kPowerWeighted:
      j["kind"] = "power-weighted";
      params["alpha"] = seq.alpha;
      break;
    case WeightKind::kLacunary:
      j["kind"] = "lacunary";
      params["q"] = seq.q;
      break;
    case WeightKind::kRefinedWeight:
      j["kind"] = "refined-weight";
      params["a"] = seq.a;
      break;
    case WeightKind::kLinearK:
      j["kind"] = "linear-k";
      params["c"] = seq.c;
      break;
    case WeightKind::kZero:
      j["kind"] = "zero";
      break;
    case WeightKind::kCustomTable:
      j["kind"] = "custom-table";
      params["values"] = seq.table;
      params["tail_ratio"] = seq.tail_ratio;
      break;
  }
  j["params"] = params;
  j["start"] = seq.start_index;
  return j;
}

CoeffSeq coeff_from_json(const json& j) {
  if (!j.is_object()) {
    throw config_error("function sample spec must be an object");
  }
  const json* kind = find(j, "kind");
  if (!kind || !kind->is_string()) {
    throw config_error("function sample spec: missing string 'kind'");
  }
  const std::string k = kind->get<std::string>();
  if (k == "blaschke_point") {
    return CoeffSeq::BlaschkePoint(get_number(j, "a", "blaschke_point"));
  }
  if (k == "harmonic_extremal") {
    return CoeffSeq::HarmonicExtremal(
        get_number(j, "beta", "harmonic_extremal"));
  }
  if (k == "coeff_table") {
    return CoeffSeq::FiniteTable(get_array(j, "values", "coeff_table"));
  }
  if (k == "blaschke_product") {
    return CoeffSeq::BlaschkeProduct(get_array(j, "zeros", "blaschke_product"));
  }
  throw config_error("unknown function sample kind '" + k + "'");
}

json to_json(const RadiusResult& result) {
  json j;
  j["value"] = result.value;
  j["bracket"] = {result.bracket_lo, result.bracket_hi};
  j["residual"] = result.residual_at_root;
  j["iterations"] = result.iterations;
  j["mode"] = to_string(result.mode);
  return j;
}

json to_json(const SharpnessReport& report) {
  json j;
  j["instance"] = report.instance;
  j["radius"] = report.radius;
  j["epsilon"] = report.epsilon;
  j["param_grid"] = report.param_grid;
  j["below"] = report.below;
  j["above"] = report.above;
  j["bound_below"] = report.bound_below;
  j["bound_above"] = report.bound_above;
  j["verdict"] = to_string(report.verdict);
  if (!report.note.empty()) j["note"] = report.note;
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"param", row.param},
                    {"below", row.value_below},
                    {"above", row.value_above}});
  }
  j["rows"] = rows;
  return j;
}

json to_json(const CheckReport& report) {
  json j;
  j["name"] = report.name;
  j["samples"] = report.checked;
  j["violations"] = report.violations;
  j["worst_margin"] = report.worst_margin;
  if (report.equality_gap) j["equality_gap"] = *report.equality_gap;
  j["failures"] = report.failures;
  if (!report.note.empty()) j["note"] = report.note;
  j["pass"] = report.pass();
  return j;
}

json to_json(const SuiteReport& report) {
  json j;
  j["seed"] = report.seed;
  j["all_pass"] = report.all_pass;
  j["warnings"] = report.warnings;
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

json to_json(const Table1Result& result) {
  json j;
  j["mode"] = to_string(result.mode);
  j["reference_version"] = kTable1ReferenceVersion;
  j["max_abs_deviation"] = result.max_abs_deviation();
  json rows = json::array();
  for (int row = 0; row < 4; ++row) {
    json cells = json::array();
    for (size_t i = 0; i < kTable1Betas.size(); ++i) {
      cells.push_back(
          {{"beta", kTable1Betas[i]},
           {"computed", result.computed[static_cast<size_t>(row)][i]},
           {"paper", kTable1Reference[static_cast<size_t>(row)][i]},
           {"delta", result.deviation[static_cast<size_t>(row)][i]}});
    }
    rows.push_back({{"row", kTable1RowLabels[static_cast<size_t>(row)]},
                    {"cells", cells}});
  }
  j["rows"] = rows;
  return j;
}

std::string format_suite_text(const SuiteReport& report) {
  std::ostringstream out;
  out << "verification suite (seed " << report.seed << ")\n";
  for (const auto& c : report.checks) {
    out << (c.pass() ? "  [pass] " : "  [FAIL] ") << c.name << ": "
        << c.checked << " assertions, " << c.violations << " violations";
    out << ", worst margin " << c.worst_margin;
    if (c.equality_gap) out << ", equality gap " << *c.equality_gap;
    out << "\n";
    for (const auto& f : c.failures) out << "      " << f << "\n";
  }
  for (const auto& w : report.warnings) out << "  warning: " << w << "\n";
  out << (report.all_pass ? "all checks passed" : "violations detected")
      << "\n";
  return out.str();
}

}  // namespace bohr
