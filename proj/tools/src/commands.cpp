#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "funspace/besov.hpp"
#include "funspace/compact.hpp"
#include "funspace/error.hpp"
#include "funspace/io.hpp"
#include "funspace/lorentz.hpp"
#include "funspace/rearrange.hpp"
#include "funspace/version.hpp"
#include "funspace_cli/cli.hpp"

namespace funspace::cli {

namespace {

using io::json;

struct Config {
  std::string command;
  std::string input;
  std::string output;
  std::string family;
  std::string weight;
  std::uint64_t seed = 20240601;
  int probes = 0;  // 0: command default
  double tol_quadrature = 1e-9;
  double tol_verdict = 1e-3;
  bool csv = false;
  bool json_flag = false;

  // space parameters
  std::string p = "2", q = "2", r = "1", u = "inf", s = "1/2", a = "0", b = "0";
  double c = 1.0;
  double T = 0.0;  // 0: box volume (or 1 without an input function)
  int n = 1;
  bool spikes = false;

  // grids, probes and scales
  std::vector<double> lower, upper, t;
  std::vector<std::size_t> cells;
  double eps = 0.5;
  bool empirical = false;
};

json config_json(const Config& c) {
  return {{"command", c.command},
          {"input", c.input},
          {"family", c.family},
          {"weight", c.weight},
          {"seed", c.seed},
          {"probes", c.probes},
          {"tol_quadrature", c.tol_quadrature},
          {"tol_verdict", c.tol_verdict},
          {"format", c.csv ? "csv" : "json"},
          {"p", c.p},
          {"q", c.q},
          {"r", c.r},
          {"u", c.u},
          {"s", c.s},
          {"a", c.a},
          {"b", c.b},
          {"c", c.c},
          {"T", c.T},
          {"n", c.n},
          {"spikes", c.spikes},
          {"lower", c.lower},
          {"upper", c.upper},
          {"cells", c.cells},
          {"t", c.t},
          {"eps", c.eps},
          {"empirical", c.empirical}};
}

json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::exception& e) {
      fail(ErrorKind::ParseError, std::string("invalid inline JSON: ") + e.what());
    }
  }
  return io::read_json_file(arg);
}

SampledFunction load_function(const Config& c) {
  if (c.input.empty()) fail(ErrorKind::InvalidArgument, "--input is required for '" + c.command + "'");
  return io::function_from_json(load_json_arg(c.input));
}

Weight make_weight(const Config& c, double T) {
  if (c.spikes) return TabulatedWeight::default_spikes();
  if (!c.weight.empty()) return io::weight_from_json(load_json_arg(c.weight), T);
  return PowerLogWeight(c.c, Param::parse(c.a), Param::parse(c.b), T);
}

LorentzSpec lorentz_from(const Config& c, const std::string& p, const std::string& q, double T) {
  return LorentzSpec(Param::parse(p), Param::parse(q), make_weight(c, T), T);
}

BesovSpec besov_from(const Config& c) { return BesovSpec(Param::parse(c.s), Param::parse(c.p), Param::parse(c.q), c.n); }

double domain_measure(const Config& c, const SampledFunction* f) {
  if (c.T > 0) return c.T;
  return f ? f->box().volume() : 1.0;
}

Box grid_box(const Config& c) {
  if (c.lower.empty() || c.upper.empty() || c.cells.empty())
    fail(ErrorKind::InvalidArgument, "--lower, --upper and --cells are required to build a family grid");
  return Box(c.lower, c.upper);
}

std::vector<SampledFunction> load_family(const Config& c, json& meta) {
  if (!c.family.empty()) {
    const auto spec = io::family_spec_from_json(load_json_arg(c.family));
    auto fam = make_family(spec, grid_box(c), c.cells);
    meta = io::to_json(spec);
    return std::move(fam.members);
  }
  const auto j = load_json_arg(c.input);
  std::vector<SampledFunction> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(io::function_from_json(x));
  } else {
    out.push_back(io::function_from_json(j));
  }
  meta = {{"members", out.size()}};
  return out;
}

struct Outcome {
  json result;
  int code = kOk;
  std::vector<std::string> csv_header;
  std::vector<std::vector<double>> csv_columns;
  std::optional<DecreasingProfile> profile;
};

Outcome cmd_rearrange(const Config& c) {
  const auto f = load_function(c);
  Outcome o;
  o.profile = rearrangement(f);
  o.result = {{"profile", io::to_json(*o.profile)}, {"method", "closed_form"}};
  return o;
}

Outcome cmd_norm(const Config& c) {
  const auto f = load_function(c);
  const auto spec = lorentz_from(c, c.p, c.q, domain_measure(c, &f));
  const auto e = lorentz_quasinorm(spec, f);
  Outcome o;
  o.result = io::to_json(e);
  o.result["spec"] = io::to_json(spec);
  o.result["within_tol_quadrature"] = e.est_error <= c.tol_quadrature * std::max(1.0, e.value);
  return o;
}

Outcome cmd_delta2(const Config& c) {
  const double T = c.T > 0 ? c.T : 1.0;
  const LorentzParams params(Param::parse(c.p), Param::parse(c.q), make_weight(c, T), T);
  const auto r = delta2_classify(params);
  Outcome o;
  o.result = io::to_json(r);
  o.result["verdict"] = r.holds ? "Holds" : "Fails";
  o.csv_header = {"t", "ratio"};
  o.csv_columns = {r.probe_t, r.ratios};
  return o;
}

Outcome cmd_modulus(const Config& c) {
  const auto f = load_function(c);
  const double p = Param::parse(c.p).value();
  std::vector<double> ts = c.t;
  if (ts.empty()) {
    const int count = c.probes > 0 ? c.probes : 17;
    for (int j = 0; j < count; ++j) ts.push_back(std::exp2(-j / 4.0));
  }
  double t_max = 0;
  for (double t : ts) {
    if (!(t > 0)) fail(ErrorKind::DomainError, "modulus: t must be positive");
    t_max = std::max(t_max, t);
  }
  const auto table = modulus_table_lp(f, p, t_max);
  std::vector<double> omega;
  for (double t : ts) omega.push_back(table.at(t));
  Outcome o;
  json tj = json::array(), oj = json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tj.push_back(io::number(ts[i]));
    oj.push_back(io::number(omega[i]));
  }
  o.result = {{"norm", "L_" + c.p + " (zero extension)"},
              {"t", tj},
              {"omega", oj},
              {"lattice_spacing", io::number(table.lattice_spacing)},
              {"method", "closed_form"}};
  o.csv_header = {"t", "omega"};
  o.csv_columns = {ts, omega};
  return o;
}

Outcome cmd_besov(const Config& c, std::ostream& err) {
  const auto f = load_function(c);
  const auto spec = besov_from(c);
  const auto r = besov_quasinorm(f, spec);
  if (r.boundary_warning) err << "warning: support touches the box boundary; zero extension may distort the modulus\n";
  Outcome o;
  o.result = io::to_json(r);
  o.result["spec"] = io::to_json(spec);
  o.csv_header = {"t", "omega"};
  o.csv_columns = {r.probe_t, r.probe_omega};
  return o;
}

VerdictThresholds thresholds(const Config& c) {
  VerdictThresholds th;
  th.zero_value = c.tol_verdict;
  return th;
}

Outcome cmd_uac(const Config& c) {
  json meta;
  const auto family = load_family(c, meta);
  const double T = c.T > 0 ? c.T : (family.empty() ? 1.0 : family.front().box().volume());
  const auto spec = lorentz_from(c, c.p, c.q, T);
  std::vector<double> deltas;
  const int count = c.probes > 0 ? c.probes : 10;
  for (int k = 1; k <= count; ++k) deltas.push_back(T * std::ldexp(1.0, -k));
  const auto r = uac_check(family, spec, deltas, thresholds(c), meta.dump());
  Outcome o;
  o.result = io::to_json(r);
  o.result["spec"] = io::to_json(spec);
  o.csv_header = {"delta", "sup_tail_norm"};
  o.csv_columns = {r.delta_probes, r.sup_tail_norms};
  if (r.verdict == UacVerdict::Inconclusive) o.code = kInconclusive;
  return o;
}

Outcome cmd_classify(const Config& c) {
  const auto src = besov_from(c);
  const double T = c.T > 0 ? c.T : 1.0;
  const auto tgt = lorentz_from(c, c.r, c.u, T);
  ClassifyOptions opt;
  opt.thresholds = thresholds(c);
  if (c.probes > 0) opt.k_max = opt.k_min + c.probes - 1;
  const auto v = classify_embedding(src, tgt, opt);
  Outcome o;
  o.result = io::to_json(v);
  std::vector<double> d, val;
  for (const auto& row : v.probes) {
    d.push_back(row.delta);
    val.push_back(row.value);
  }
  o.csv_header = {"delta", "value"};
  o.csv_columns = {d, val};
  if (v.final_verdict == EmbeddingOutcome::Inconclusive) o.code = kInconclusive;
  return o;
}

Outcome cmd_envelope(const Config& c) {
  const auto src = besov_from(c);
  const auto env = envelope(src);
  Outcome o;
  o.result = {{"case", to_string(env.case_tag)},
              {"envelope", env.describe()},
              {"power", io::to_json(env.power)},
              {"log_power", io::to_json(env.log_power)},
              {"method", "closed_form"}};
  if (c.empirical) {
    std::vector<double> widths, ts = c.t;
    for (int j = 8; j <= 44; ++j) widths.push_back(std::exp2(-j / 4.0));
    if (ts.empty())
      for (int i = 0; i <= 24; ++i) ts.push_back(std::exp2(-4.0 - i / 4.0));
    Config g = c;
    if (g.lower.empty()) g.lower.assign(static_cast<std::size_t>(c.n), -2.0);
    if (g.upper.empty()) g.upper.assign(static_cast<std::size_t>(c.n), 2.0);
    if (g.cells.empty()) g.cells.assign(static_cast<std::size_t>(c.n), 16384);
    const auto fit = envelope_empirical(src, grid_box(g), g.cells, widths, ts);
    o.result["empirical"] = io::to_json(fit);
    o.csv_header = {"t", "sup_f_star"};
    o.csv_columns = {fit.t, fit.sup_values};
  }
  return o;
}

Outcome cmd_covering(const Config& c) {
  json meta;
  const auto family = load_family(c, meta);
  const double T = c.T > 0 ? c.T : (family.empty() ? 1.0 : family.front().box().volume());
  const auto spec = lorentz_from(c, c.p, c.q, T);
  const auto r = covering_estimate(family, spec, c.eps);
  Outcome o;
  o.result = io::to_json(r);
  o.result["family"] = meta;
  o.result["family_size"] = family.size();
  o.result["spec"] = io::to_json(spec);
  o.result["method"] = "empirical";
  return o;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResolutionError:
    case ErrorKind::DomainError:
      return kResolution;
    default:
      return kValidation;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"funspace: rearrangements, Lorentz and Besov quasi-norms, compactness diagnostics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--input", c.input, "function JSON (file or inline)");
  app.add_option("--output", c.output, "write the report here instead of stdout");
  app.add_option("--seed", c.seed, "seed for randomized trials");
  app.add_option("--probes", c.probes, "number of probes (command specific)");
  app.add_option("--tol-quadrature", c.tol_quadrature, "accepted relative quadrature error")
      ->check(CLI::Range(1e-14, 1e-1));
  app.add_option("--tol-verdict", c.tol_verdict, "final-value threshold for 'tends to zero'")
      ->check(CLI::Range(1e-14, 1e-1));
  auto* csv = app.add_flag("--csv", c.csv, "emit the probe/profile table as CSV");
  auto* js = app.add_flag("--json", c.json_flag, "emit a JSON report (default)");
  csv->excludes(js);

  auto add_lorentz = [&](CLI::App* sub) {
    sub->add_option("--p", c.p, "Lorentz p (e.g. 2, 1/2, inf)");
    sub->add_option("--q", c.q, "Lorentz q");
    sub->add_option("--a", c.a, "weight power a");
    sub->add_option("--b", c.b, "weight log power b");
    sub->add_option("--c", c.c, "weight scale c");
    sub->add_option("--T", c.T, "|Omega| (default: box volume)");
    sub->add_option("--weight", c.weight, "weight JSON (file or inline)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--family", c.family, "family JSON {kind, params}");
    sub->add_option("--lower", c.lower, "grid box lower corner");
    sub->add_option("--upper", c.upper, "grid box upper corner");
    sub->add_option("--cells", c.cells, "cells per axis");
  };
  auto add_besov = [&](CLI::App* sub) {
    sub->add_option("--s", c.s, "smoothness s in (0,1)");
    sub->add_option("--p", c.p, "Besov p");
    sub->add_option("--q", c.q, "Besov q");
    sub->add_option("--n", c.n, "dimension");
  };

  app.add_subcommand("rearrange", "non-increasing rearrangement f*");
  add_lorentz(app.add_subcommand("norm", "weighted Lorentz quasi-norm"));
  auto* d2 = app.add_subcommand("delta2", "Delta_2 classification of B_{p,q;w}");
  add_lorentz(d2);
  d2->add_flag("--spikes", c.spikes, "use the tabulated spike weight");
  auto* mod = app.add_subcommand("modulus", "L_p modulus of continuity");
  mod->add_option("--p", c.p, "L_p exponent");
  mod->add_option("--t", c.t, "probe points");
  add_besov(app.add_subcommand("besov-norm", "Besov quasi-norm"));
  auto* uac = app.add_subcommand("uac", "uniform absolute continuity check");
  add_lorentz(uac);
  add_grid(uac);
  auto* cls = app.add_subcommand("classify", "Besov -> Lorentz compact embedding criterion");
  add_besov(cls);
  cls->add_option("--r", c.r, "target r");
  cls->add_option("--u", c.u, "target u");
  cls->add_option("--a", c.a, "target weight power a");
  cls->add_option("--b", c.b, "target weight log power b");
  cls->add_option("--c", c.c, "target weight scale c");
  cls->add_option("--T", c.T, "|Omega| (default 1)");
  cls->add_option("--weight", c.weight, "target weight JSON");
  auto* env = app.add_subcommand("envelope", "growth envelope of the Besov unit ball");
  add_besov(env);
  env->add_flag("--empirical", c.empirical, "also fit the envelope from normalized spikes");
  env->add_option("--lower", c.lower, "grid box lower corner");
  env->add_option("--upper", c.upper, "grid box upper corner");
  env->add_option("--cells", c.cells, "cells per axis");
  env->add_option("--t", c.t, "probe points");
  auto* cov = app.add_subcommand("covering", "greedy epsilon-net size");
  add_lorentz(cov);
  add_grid(cov);
  cov->add_option("--eps", c.eps, "net scale epsilon");
  app.add_subcommand("selftest", "run the invariant battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }
  c.command = app.get_subcommands().front()->get_name();

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "error: cannot open '" << c.output << "' for writing\n";
      return kValidation;
    }
    sink = &file;
  }

  try {
    Outcome o;
    if (c.command == "selftest") {
      auto st = run_selftest(c.seed);
      json report = {{"command", c.command},
                     {"version", kVersion},
                     {"config", config_json(c)},
                     {"result", st.report}};
      io::write_json(*sink, report);
      return st.all_pass ? kOk : 1;
    }
    if (c.command == "rearrange") o = cmd_rearrange(c);
    else if (c.command == "norm") o = cmd_norm(c);
    else if (c.command == "delta2") o = cmd_delta2(c);
    else if (c.command == "modulus") o = cmd_modulus(c);
    else if (c.command == "besov-norm") o = cmd_besov(c, err);
    else if (c.command == "uac") o = cmd_uac(c);
    else if (c.command == "classify") o = cmd_classify(c);
    else if (c.command == "envelope") o = cmd_envelope(c);
    else if (c.command == "covering") o = cmd_covering(c);

    if (c.csv) {
      if (o.profile) {
        write_profile_csv(*sink, *o.profile);
      } else if (!o.csv_header.empty()) {
        io::write_csv(*sink, o.csv_header, o.csv_columns);
      } else {
        err << "error: '" << c.command << "' has no tabular output\n";
        return kValidation;
      }
    } else {
      json report = {{"command", c.command}, {"version", kVersion}, {"config", config_json(c)}, {"result", o.result}};
      io::write_json(*sink, report);
    }
    return o.code;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace funspace::cli
