#pragma once

#include <nlohmann/json.hpp>

#include "bohr/extremal.hpp"
#include "bohr/radii.hpp"
#include "bohr/series.hpp"
#include "bohr/verify.hpp"

namespace bohr {

using json = nlohmann::json;

/// {"kind": "...", "params": {...}, "start": n}; a bare string is shorthand
/// for a parameterless kind ("monomial", "zero", ...). Throws config_error
/// on anything malformed.
WeightSeq weight_from_json(const json& j);
json weight_to_json(const WeightSeq& seq);

/// {"kind":"blaschke_point","a":...}, {"kind":"harmonic_extremal","beta":...},
/// {"kind":"coeff_table","values":[...]},
/// {"kind":"blaschke_product","zeros":[...]}.
CoeffSeq coeff_from_json(const json& j);

json to_json(const RadiusResult& result);
json to_json(const SharpnessReport& report);
json to_json(const CheckReport& report);
json to_json(const SuiteReport& report);
json to_json(const Table1Result& result);

std::string format_suite_text(const SuiteReport& report);

}  // namespace bohr
