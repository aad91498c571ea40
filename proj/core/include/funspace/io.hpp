#pragma once

// JSON and CSV formats. Non-finite numbers are written as the strings "inf",
// "-inf" and "nan"; parameters as integers or strings such as "1/2".

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "funspace/besov.hpp"
#include "funspace/compact.hpp"
#include "funspace/lorentz.hpp"
#include "funspace/measure.hpp"
#include "funspace/rearrange.hpp"
#include "funspace/weight.hpp"

namespace funspace::io {

using nlohmann::json;

json number(double x);
double to_double(const json& j);

json to_json(const Param& p);
Param param_from_json(const json& j);

/// {"box": {"lower": [...], "upper": [...]}, "cells": [...], "values": [...]}
json to_json(const SampledFunction& f);
SampledFunction function_from_json(const json& j);

/// {"c", "a", "b"} or {"tabulated": {"t": [...], "w": [...]}}.
json to_json(const Weight& w);
Weight weight_from_json(const json& j, double domain_end);

/// {"kind": "...", "params": {...}}
json to_json(const FamilySpec& s);
FamilySpec family_spec_from_json(const json& j);

json to_json(const LorentzSpec& spec);
json to_json(const BesovSpec& spec);
json to_json(const Evaluated& e);
json to_json(const DecreasingProfile& profile);
json to_json(const Delta2Result& r);
json to_json(const BesovReport& r);
json to_json(const UacReport& r);
json to_json(const AcReport& r);
json to_json(const ConditionResult& r);
json to_json(const CoveringResult& r);
json to_json(const EmbeddingVerdict& v);
json to_json(const EnvelopeFit& f);
json to_json(const LimitAssessment& a);

json read_json_file(const std::string& path);
/// Two-space indented dump followed by a newline.
void write_json(std::ostream& os, const json& j);

/// CSV with a header row; rows of doubles printed with %.17g.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace funspace::io
