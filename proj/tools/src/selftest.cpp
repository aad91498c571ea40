#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "funspace/besov.hpp"
#include "funspace/compact.hpp"
#include "funspace/error.hpp"
#include "funspace/io.hpp"
#include "funspace/lorentz.hpp"
#include "funspace/rearrange.hpp"
#include "funspace_cli/cli.hpp"

namespace funspace::cli {

namespace {

using io::json;
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Random step function with zeros and repeated levels.
SampledFunction random_function(Rng& rng, std::size_t cells, double a, double b) {
  std::vector<double> v(cells);
  for (auto& x : v) {
    const double r = uniform(rng, 0, 1);
    x = r < 0.2 ? 0.0 : (r < 0.4 ? std::round(uniform(rng, -3, 3)) : uniform(rng, -3, 3));
  }
  return SampledFunction(Box::interval(a, b), {cells}, std::move(v));
}

// f*(t) = inf{lambda : |{|f| > lambda}| <= t}, by brute force over the candidate levels.
double brute_rearrangement(const SampledFunction& f, double t) {
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double lambda) {
    if (distribution(f, lambda) <= t) best = std::min(best, lambda);
  };
  consider(0.0);
  for (double x : f.values()) consider(std::fabs(x));
  return best;
}

struct Battery {
  json checks = json::array();
  bool all_pass = true;

  void run(const std::string& name, const std::function<std::pair<bool, json>()>& body) {
    json entry = {{"name", name}};
    try {
      auto [pass, detail] = body();
      entry["pass"] = pass;
      entry["detail"] = detail;
      all_pass = all_pass && pass;
    } catch (const std::exception& e) {
      entry["pass"] = false;
      entry["detail"] = {{"exception", e.what()}};
      all_pass = false;
    }
    checks.push_back(entry);
  }
};

double rel_err(double x, double y) { return std::fabs(x - y) / std::max({std::fabs(x), std::fabs(y), 1e-300}); }

}  // namespace

SelftestOutcome run_selftest(std::uint64_t seed) {
  Battery bat;
  Rng rng(seed);

  bat.run("rearrangement_matches_distribution_inversion", [&] {
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = random_function(rng, 1 + rng() % 128, 0.0, 1.0 + trial % 3);
      const auto prof = rearrangement(f);
      for (int k = 0; k < 200; ++k) {
        const double t = uniform(rng, 0, f.box().volume());
        if (prof(t) != brute_rearrangement(f, t)) ++mismatches;
      }
    }
    return std::pair{mismatches == 0, json{{"functions", 50}, {"probes", 200}, {"mismatches", mismatches}}};
  });

  bat.run("subadditivity", [&] {
    std::size_t violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_function(rng, 64, 0.0, 2.0), g = random_function(rng, 64, 0.0, 2.0);
      const auto fg = rearrangement(f + g), pf = rearrangement(f), pg = rearrangement(g);
      for (int k = 0; k < 20; ++k) {
        const double t = uniform(rng, 0, 2.0);
        if (fg(t) > pf(t / 2) + pg(t / 2)) ++violations;
      }
    }
    return std::pair{violations == 0, json{{"pairs", 100}, {"violations", violations}}};
  });

  bat.run("indicator_norm_identity", [&] {
    double worst = 0.0;
    int specs = 0;
    const std::vector<std::string> ps = {"1/2", "1", "2", "inf"};
    const std::vector<std::pair<std::string, std::string>> weights = {{"0", "0"}, {"1/4", "-1"}, {"-1/4", "1/2"}};
    const auto grid = SampledFunction::zeros(Box::interval(0, 2), {64});
    for (const auto& p : ps)
      for (const auto& q : ps)
        for (const auto& [a, b] : weights) {
          std::optional<LorentzSpec> spec;
          try {
            spec.emplace(Param::parse(p), Param::parse(q), PowerLogWeight(1.5, Param::parse(a), Param::parse(b), 2), 2);
          } catch (const Error&) {
            continue;
          }
          ++specs;
          std::vector<double> v(64, 0.0);
          for (int i = 10; i < 30; ++i) v[i] = -2.5;
          const auto f = grid.with_values(v);
          const double lhs = lorentz_quasinorm(*spec, f).value;
          const double rhs = 2.5 * big_B(*spec, 20 * f.cell_measure()).value;
          worst = std::max(worst, rel_err(lhs, rhs));
        }
    return std::pair{worst <= 1e-9, json{{"specs", specs}, {"max_rel_err", worst}}};
  });

  bat.run("weak_type_sup_identity", [&] {
    const LorentzSpec spec(Param::exact(2), Param::infinity(), PowerLogWeight(1, Param::exact(-1, 4), Param::exact(1), 1), 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto prof = rearrangement(random_function(rng, 32, 0, 1));
      double oracle = 0.0;
      for (std::size_t i = 0; i < prof.segment_count(); ++i) {
        const auto seg = prof.segment(i);
        oracle = std::max(oracle, seg.level * big_B(spec, seg.end).value);
      }
      worst = std::max(worst, rel_err(lorentz_quasinorm(spec, prof).value, oracle));
    }
    return std::pair{worst <= 1e-6, json{{"profiles", 20}, {"max_rel_err", worst}}};
  });

  bat.run("power_transform_identity", [&] {
    const LorentzSpec spec(Param::exact(3, 2), Param::exact(2), PowerLogWeight(1, Param::exact(1, 4), Param::exact(-1, 2), 1), 1);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto prof = rearrangement(random_function(rng, 32, 0, 1));
      for (const auto& b : {Param::exact(1, 4), Param::exact(1, 2), Param::exact(3, 4), Param::exact(1)}) {
        const double lhs = power_transform_norm(spec, b, prof).value;
        const double rhs = lorentz_quasinorm(power_transformed_spec(spec, b), prof).value;
        worst = std::max(worst, rel_err(lhs, rhs));
      }
    }
    return std::pair{worst <= 1e-9, json{{"max_rel_err", worst}}};
  });

  bat.run("delta2_classification", [&] {
    int agree = 0, total = 0;
    for (const char* a : {"-1/2", "0", "1/2"})
      for (const char* b : {"-2", "0", "1"}) {
        const LorentzParams params(Param::exact(2), Param::exact(1), PowerLogWeight(1, Param::parse(a), Param::parse(b), 1), 1);
        if (!weight_origin_finite(params.weight, params.inv_p(), params.q)) continue;
        ++total;
        if (delta2_classify(params).holds && delta2_numeric(params).holds) ++agree;
      }
    const LorentzParams spikes(Param::exact(1), Param::exact(1), TabulatedWeight::default_spikes(), 1);
    const bool spike_fails = !delta2_classify(spikes).holds;
    return std::pair{agree == total && spike_fails, json{{"power_log_agree", agree}, {"power_log_total", total}, {"spike_weight_fails", spike_fails}}};
  });

  bat.run("modulus_and_besov_of_indicator", [&] {
    const auto f = SampledFunction::from_centers(Box::interval(-1, 3), {512},
                                                 [](std::span<const double> x) { return x[0] >= 0 && x[0] < 1 ? 1.0 : 0.0; });
    const auto table = modulus_table_lp(f, 1.0, 1.0);
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5, 1.0}) worst = std::max(worst, std::fabs(table.at(t) - 2 * t));
    const auto besov = besov_quasinorm(f, BesovSpec(Param::exact(1, 2), Param::exact(1), Param::infinity(), 1));
    const bool pass = worst <= 2 * f.cell_measure() && std::fabs(besov.value - 3.0) <= 0.15;
    return std::pair{pass, json{{"max_modulus_gap", worst}, {"besov_value", besov.value}}};
  });

  bat.run("classifier_examples", [&] {
    const BesovSpec src(Param::exact(1, 2), Param::exact(1), Param::exact(2), 1);
    const auto v1 = classify_embedding(src, LorentzSpec(Param::exact(1), Param::infinity(), PowerLogWeight::unit(1), 1));
    const auto v2 = classify_embedding(src, LorentzSpec(Param::exact(2), Param::exact(2), PowerLogWeight::unit(1), 1));
    const auto v3 = classify_embedding(
        src, LorentzSpec(Param::exact(2), Param::exact(2), PowerLogWeight(1, Param::exact(0), Param::exact(-3, 4), 1), 1));
    const bool pass = v1.final_verdict == EmbeddingOutcome::Compact &&
                      v2.final_verdict == EmbeddingOutcome::CriterionFails &&
                      v3.final_verdict == EmbeddingOutcome::Compact;
    return std::pair{pass, json{{"sup_norm_target", to_string(v1.final_verdict)},
                                {"critical_L2", to_string(v2.final_verdict)},
                                {"critical_L2_log_weight", to_string(v3.final_verdict)}}};
  });

  bat.run("uac_witnesses", [&] {
    const auto chi = SampledFunction::from_centers(Box::interval(0, 2), {1024},
                                                   [](std::span<const double> x) { return x[0] < 1 ? 1.0 : 0.0; });
    const auto l2 = LorentzSpec::lebesgue(Param::exact(2), 2);
    std::vector<double> deltas;
    for (int k = 1; k <= 9; ++k) deltas.push_back(std::ldexp(1.0, -k));
    VerdictThresholds th;
    th.zero_value = 0.1;
    const auto u1 = uac_check({chi}, l2, deltas, th);
    FamilySpec fs;
    fs.kind = FamilyKind::ConcentratingSpike;
    fs.params = {{"k_min", 1}, {"k_max", 512}, {"p", 2}};
    const auto spikes = make_family(fs, Box::interval(0, 2), {1024});
    const auto u2 = uac_check(spikes.members, l2, deltas, th);
    const bool pass = u1.verdict == UacVerdict::UAC && std::fabs(u1.decay_exponent - 0.5) <= 0.05 &&
                      u2.verdict == UacVerdict::NotUAC && u2.witness_value >= 0.99;
    return std::pair{pass, json{{"indicator", to_string(u1.verdict)},
                                {"indicator_decay", u1.decay_exponent},
                                {"spikes", to_string(u2.verdict)},
                                {"spike_floor", u2.witness_value}}};
  });

  bat.run("y_assumption", [&] {
    const std::vector<double> probes = {0.5, 0.25, 0.125, 0.0625};
    const auto a = y_assumption_check(0.5, Param::exact(1), probes);
    const auto b = y_assumption_check(0.5, Param::infinity(), probes);
    const auto c = y_assumption_check(0.0, Param::infinity(), probes);
    const double expected = 2 * (std::pow(0.0625, -0.5) - 1);
    const bool pass = a.satisfied && b.satisfied && !c.satisfied && rel_err(a.values.back(), expected) < 1e-12;
    return std::pair{pass, json{{"s_half_q1", a.satisfied}, {"s_half_qinf", b.satisfied}, {"s_zero_qinf", c.satisfied}}};
  });

  bat.run("axioms_and_minkowski", [&] {
    const LorentzSpec spec(Param::exact(1, 2), Param::exact(2), PowerLogWeight(1, Param::exact(0), Param::exact(1), 1), 1);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(rng, 32, 0, 1);
      const double nf = lorentz_quasinorm(spec, f).value;
      ok = ok && rel_err(lorentz_quasinorm(spec, 2.0 * f).value, 2 * nf) < 1e-12;
      std::vector<double> g(f.values());
      for (auto& x : g) x *= uniform(rng, 0, 1);
      ok = ok && lorentz_quasinorm(spec, f.with_values(g)).value <= nf;
    }
    for (double p : {1.0, 2.0, 4.0}) {
      std::vector<double> v(16 * 16);
      for (auto& x : v) x = uniform(rng, -1, 1);
      const SampledFunction f2(Box({0, 0}, {1, 2}), {16, 16}, v);
      ok = ok && minkowski_property_check(f2, p).holds;
    }
    return std::pair{ok, json{{"trials", 20}}};
  });

  bat.run("envelope_closed_forms", [&] {
    const auto e1 = envelope(BesovSpec(Param::exact(1, 2), Param::exact(1), Param::exact(3), 1));
    const auto e2 = envelope(BesovSpec(Param::exact(1, 2), Param::exact(2), Param::exact(2), 1));
    const auto e3 = envelope(BesovSpec(Param::exact(1, 2), Param::exact(4), Param::exact(1), 1));
    const bool pass = e1.case_tag == EmbeddingCase::I && e1.power.to_string() == "-1/2" &&
                      e2.case_tag == EmbeddingCase::II && e2.log_power.to_string() == "1/2" &&
                      e3.case_tag == EmbeddingCase::III;
    return std::pair{pass, json{{"I", e1.describe()}, {"II", e2.describe()}, {"III", e3.describe()}}};
  });

  SelftestOutcome out;
  std::size_t passed = 0;
  for (const auto& c : bat.checks) passed += c["pass"].get<bool>() ? 1 : 0;
  out.all_pass = bat.all_pass;
  out.report = {{"seed", seed},
                {"checks", bat.checks},
                {"passed", passed},
                {"failed", bat.checks.size() - passed},
                {"all_pass", bat.all_pass}};
  return out;
}

}  // namespace funspace::cli
