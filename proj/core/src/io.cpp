#include "funspace/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "funspace/error.hpp"

namespace funspace::io {

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double to_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    return Param::parse(s).value();
  }
  fail(ErrorKind::ParseError, "expected a number, got " + j.dump());
}

json to_json(const Param& p) {
  if (p.is_infinite()) return "inf";
  if (p.is_exact() && p.rational()->denominator() == 1) return p.rational()->numerator();
  if (p.is_exact()) return p.to_string();
  return p.value();
}

Param param_from_json(const json& j) {
  if (j.is_number_integer()) return Param::exact(j.get<long long>());
  if (j.is_number()) return Param(j.get<double>());
  if (j.is_string()) return Param::parse(j.get<std::string>());
  fail(ErrorKind::ParseError, "expected a parameter (number or string), got " + j.dump());
}

namespace {

std::vector<double> doubles(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(to_double(x));
  return out;
}

json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const SampledFunction& f) {
  return {{"box", {{"lower", numbers(f.box().lower())}, {"upper", numbers(f.box().upper())}}},
          {"cells", f.cells()},
          {"values", numbers(f.values())}};
}

SampledFunction function_from_json(const json& j) {
  const auto& box = field(j, "box");
  Box b(doubles(field(box, "lower"), "box.lower"), doubles(field(box, "upper"), "box.upper"));
  const auto& cj = field(j, "cells");
  if (!cj.is_array()) fail(ErrorKind::ParseError, "cells must be an array");
  std::vector<std::size_t> cells;
  for (const auto& c : cj) {
    if (!c.is_number_integer() || c.get<long long>() < 1) fail(ErrorKind::ParseError, "cells must be positive integers");
    cells.push_back(c.get<std::size_t>());
  }
  return SampledFunction(std::move(b), std::move(cells), doubles(field(j, "values"), "values"));
}

json to_json(const Weight& w) {
  if (const auto* pl = std::get_if<PowerLogWeight>(&w))
    return {{"c", number(pl->scale())}, {"a", to_json(pl->power())}, {"b", to_json(pl->log_power())}};
  const auto& tw = std::get<TabulatedWeight>(w);
  return {{"tabulated", {{"t", numbers(tw.knots())}, {"w", numbers(tw.values())}}}};
}

Weight weight_from_json(const json& j, double domain_end) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "weight must be an object");
  if (j.contains("tabulated")) {
    const auto& t = j.at("tabulated");
    return TabulatedWeight(doubles(field(t, "t"), "tabulated.t"), doubles(field(t, "w"), "tabulated.w"), domain_end);
  }
  const double c = j.contains("c") ? to_double(j.at("c")) : 1.0;
  const Param a = j.contains("a") ? param_from_json(j.at("a")) : Param::exact(0);
  const Param b = j.contains("b") ? param_from_json(j.at("b")) : Param::exact(0);
  return PowerLogWeight(c, a, b, domain_end);
}

json to_json(const FamilySpec& s) {
  json params = json::object();
  for (const auto& [k, v] : s.params) params[k] = number(v);
  return {{"kind", to_string(s.kind)}, {"params", params}};
}

FamilySpec family_spec_from_json(const json& j) {
  FamilySpec s;
  s.kind = family_kind_from_string(field(j, "kind").get<std::string>());
  if (j.contains("params")) {
    if (!j.at("params").is_object()) fail(ErrorKind::ParseError, "params must be an object");
    for (const auto& [k, v] : j.at("params").items()) s.params[k] = to_double(v);
  }
  return s;
}

json to_json(const LorentzSpec& spec) {
  return {{"p", to_json(spec.p())},
          {"q", to_json(spec.q())},
          {"weight", to_json(spec.weight())},
          {"omega_measure", number(spec.omega_measure())}};
}

json to_json(const BesovSpec& spec) {
  return {{"s", to_json(spec.s())}, {"p", to_json(spec.p())}, {"q", to_json(spec.q())}, {"n", spec.n()}};
}

json to_json(const Evaluated& e) {
  return {{"value", number(e.value)}, {"est_error", number(e.est_error)}, {"method", to_string(e.method)}};
}

json to_json(const DecreasingProfile& profile) {
  return {{"breakpoints", numbers(profile.breakpoints())},
          {"levels", numbers(profile.levels())},
          {"domain_length", number(profile.domain_length())}};
}

json to_json(const Delta2Result& r) {
  return {{"holds", r.holds},
          {"bound", number(r.bound)},
          {"probe_t", numbers(r.probe_t)},
          {"ratios", numbers(r.ratios)},
          {"witness_t", numbers(r.witness_t)},
          {"method", to_string(r.method)},
          {"rationale", r.rationale}};
}

json to_json(const BesovReport& r) {
  return {{"value", number(r.value)},
          {"lp_part", number(r.lp_part)},
          {"seminorm_part", number(r.seminorm_part)},
          {"probe_grid_J", r.J},
          {"probe_t", numbers(r.probe_t)},
          {"probe_omega", numbers(r.probe_omega)},
          {"boundary_warning", r.boundary_warning}};
}

json to_json(const LimitAssessment& a) {
  return {{"verdict", to_string(a.verdict)},
          {"slope", number(a.slope)},
          {"final_value", number(a.final_value)},
          {"rationale", a.rationale}};
}

json to_json(const UacReport& r) {
  json j = {{"family_id", r.family_id},
            {"delta_probes", numbers(r.delta_probes)},
            {"sup_tail_norms", numbers(r.sup_tail_norms)},
            {"argmax", r.argmax},
            {"verdict", to_string(r.verdict)},
            {"decay_exponent", number(r.decay_exponent)},
            {"assessment", to_json(r.assessment)}};
  if (r.witness) {
    j["witness"] = *r.witness;
    j["witness_value"] = number(r.witness_value);
  }
  return j;
}

json to_json(const AcReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"measures", numbers(r.measures)},
          {"values", numbers(r.values)},
          {"rationale", r.rationale}};
}

json to_json(const ConditionResult& r) {
  json j = {{"pass", r.pass}, {"value", number(r.value)}};
  if (r.witness) j["witness"] = *r.witness;
  if (!r.witness_shift.empty()) j["witness_shift"] = numbers(r.witness_shift);
  return j;
}

json to_json(const CoveringResult& r) {
  return {{"net_size", r.net_size}, {"net_indices", r.net_indices}, {"covering_radius", number(r.covering_radius)}};
}

json to_json(const EmbeddingVerdict& v) {
  json probes = json::array();
  for (const auto& row : v.probes) probes.push_back({{"delta", number(row.delta)}, {"value", number(row.value)}});
  return {{"case", to_string(v.case_tag)},
          {"source", v.source},
          {"target", v.target},
          {"alpha", to_json(v.alpha)},
          {"beta", to_json(v.beta)},
          {"boundary_flagged", v.boundary_flagged},
          {"method", v.empirical ? "empirical" : "closed_form"},
          {"symbolic_verdict", to_string(v.symbolic_verdict)},
          {"numeric_verdict", to_string(v.numeric_verdict)},
          {"refinement_applicable", v.refinement_applicable},
          {"alpha_hat", number(v.alpha_hat)},
          {"beta_hat", number(v.beta_hat)},
          {"probes", probes},
          {"slope", number(v.probe_assessment.slope)},
          {"probe_assessment", to_json(v.probe_assessment)},
          {"final_verdict", to_string(v.final_verdict)},
          {"certificate_text", v.certificate}};
}

json to_json(const EnvelopeFit& f) {
  return {{"t", numbers(f.t)},
          {"sup_values", numbers(f.sup_values)},
          {"slope", number(f.slope)},
          {"constant", number(f.constant)},
          {"expected_slope", number(f.expected_slope)},
          {"widths", numbers(f.widths)},
          {"besov_norms", numbers(f.besov_norms)},
          {"method", "empirical"}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, "invalid JSON in '" + path + "': " + e.what());
  }
}

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) fail(ErrorKind::InvalidArgument, "write_csv: header/column count mismatch");
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  char buf[32];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", columns[c].at(r));
      os << (c ? "," : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace funspace::io
