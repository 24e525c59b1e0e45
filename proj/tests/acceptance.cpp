// Copyright 2026 The qmlhcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmlhcs/qmlhcs.hpp"

namespace {

using namespace qmlhcs;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0.0 && elapsed >= budget_s) {
    out.pass = false;
    out.detail += "; over time budget";
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.3f s)\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(), elapsed);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome single_wire_law() {
  CircuitBackend b({.dim = 1});
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double theta = -kPi + 2.0 * kPi * i / 40.0;
    worst = std::max(worst, std::abs(b.execute(StateVector{theta})[0] - std::cos(theta)));
  }
  return {worst <= 1e-12, "max |S - cos| = " + fmt("%.3g", worst)};
}

Outcome shot_agreement() {
  CircuitBackend analytic({.dim = 7, .depth = 3});
  SplitMix64 rng(20260101);
  int good = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(7);
    for (double& v : x) v = rng.uniform(-kPi, kPi);
    CircuitBackend sampled({.dim = 7, .shots = 100000, .depth = 3, .seed = derive_seed(7, {static_cast<std::uint64_t>(trial)})});
    const auto a = analytic.execute(x);
    const auto s = sampled.execute(x);
    double gap = 0.0;
    for (std::size_t i = 0; i < 7; ++i) gap = std::max(gap, std::abs(a[i] - s[i]));
    worst = std::max(worst, gap);
    if (gap <= 0.02) ++good;
  }
  return {good >= 19, std::to_string(good) + "/20 inputs within 0.02, worst gap " + fmt("%.4f", worst)};
}

Outcome counts_fidelity() {
  SplitMix64 rng(314);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, std::uint64_t> table;
    const std::size_t width = 1 + rng() % 8;
    const int entries = 1 + static_cast<int>(rng() % 20);
    for (int e = 0; e < entries; ++e) {
      std::string key;
      for (std::size_t i = 0; i < width; ++i) key.push_back((rng() & 1) ? '1' : '0');
      table[key] += 1 + rng() % 5000;
    }
    const BitstringCounts counts(table);
    const auto one_pos = counts_to_expectations(counts, CountsConvention::BitOnePositive);
    const auto pauli_z = counts_to_expectations(counts, CountsConvention::PauliZ);
    const auto ref = oracle::counts_bit_one_positive(table);
    bool ok = true;
    for (std::size_t i = 0; i < width; ++i) ok = ok && one_pos[i] == ref[i] && one_pos[i] == -pauli_z[i];
    if (ok) ++exact;
  }
  return {exact == 100, std::to_string(exact) + "/100 tables exact"};
}

Outcome policy_oracles() {
  SplitMix64 rng(4242);
  int mean_ok = 0, median_ok = 0, risk_ok = 0;
  auto l2 = [](const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return std::sqrt(s);
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 7, d = 1 + rng() % 5;
    std::vector<std::vector<double>> rows(k, std::vector<double>(d));
    for (auto& r : rows)
      for (double& v : r) v = (rng() % 5 == 0) ? std::round(rng.uniform(-2, 2)) : rng.uniform(-2, 2);
    const FutureSet f(rows);
    if (policy_aggregate(f, Policy::mean()).vector() == oracle::column_mean(rows)) ++mean_ok;
    const auto med = policy_aggregate(f, Policy::median());
    const auto med_ref = oracle::column_median(rows);
    bool close = true;
    for (std::size_t j = 0; j < d; ++j) close = close && std::abs(med[j] - med_ref[j]) <= 1e-12;
    if (close) ++median_ok;
    if (policy_aggregate(f, Policy::min_risk(risk::l2_norm)).vector() == rows[oracle::argmin_risk(rows, l2)]) ++risk_ok;
  }
  return {mean_ok == 1000 && median_ok == 1000 && risk_ok == 1000,
          "mean " + std::to_string(mean_ok) + ", median " + std::to_string(median_ok) + ", min_risk " +
              std::to_string(risk_ok) + " of 1000"};
}

Outcome graph_chain() {
  int equal = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t d = 1 + rng() % 6;
    std::vector<HCNode> nodes;
    for (int i = 0; i < 3; ++i) {
      nodes.emplace_back(std::make_shared<ReferenceBackend>(
          BackendConfig{.dim = d, .branches = 2 + rng() % 6, .seed = derive_seed(seed, {static_cast<std::uint64_t>(i)})}));
    }
    std::vector<double> x(d);
    for (double& v : x) v = rng.uniform(-2, 2);
    GraphSpec g;
    g.add_node("c", nodes[2]).add_node("a", nodes[0]).add_node("b", nodes[1]);
    g.add_edge("b", "c").add_edge("a", "b").set_input("a", StateVector(x));
    const auto graph = graph_forward(g).at("c");
    const auto chain = chain_forward(nodes, StateVector(x));
    if (graph.state == chain.state && graph.futures == chain.futures && graph.representative == chain.representative)
      ++equal;
  }
  return {equal == 100, std::to_string(equal) + "/100 seeds bitwise equal"};
}

Outcome loss_identities() {
  SplitMix64 rng(66);
  int translation = 0, alignment = 0, rmse_ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 7, d = 1 + rng() % 5;
    std::vector<double> data(k * d), moved(k * d), shift(d);
    for (double& v : shift) v = rng.uniform(-10, 10);
    for (std::size_t i = 0; i < data.size(); ++i) {
      data[i] = rng.uniform(-1, 1);
      moved[i] = data[i] + shift[i % d];
    }
    const FutureSet f(k, d, data), fm(k, d, moved);
    bool ok = true;
    for (auto mode : {CoherenceMode::Var, CoherenceMode::Mad})
      ok = ok && std::abs(loss_coherence(f, mode) - loss_coherence(fm, mode)) <= 1e-10;
    if (ok) ++translation;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng() % 5;
    std::vector<double> cur(d), prev(d), hat(d);
    for (double& v : cur) v = rng.uniform(-1, 1);
    const bool same_prev = rng() % 2 == 0, same_hat = rng() % 2 == 0;
    for (std::size_t i = 0; i < d; ++i) {
      prev[i] = same_prev ? cur[i] : cur[i] + rng.uniform(0.1, 1.0);
      hat[i] = same_hat ? cur[i] : cur[i] - rng.uniform(0.1, 1.0);
    }
    const LossWeights w{(rng() % 3 == 0) ? 0.0 : rng.uniform(0.1, 2.0), (rng() % 3 == 0) ? 0.0 : rng.uniform(0.1, 2.0)};
    const double v = loss_consistency(StateVector(prev), StateVector(cur), StateVector(hat), w);
    const bool expected_zero = (w.alpha == 0.0 || same_prev) && (w.beta == 0.0 || same_hat);
    if (expected_zero == (std::abs(v) <= 1e-10) && v >= 0.0) ++alignment;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    SeriesPair p;
    for (std::size_t i = 0; i < n; ++i) {
      p.predictions.push_back(rng.uniform(-5, 5));
      p.targets.push_back(rng.uniform(-5, 5));
    }
    const double r = rmse(p);
    if (std::abs(r * r - loss_task(p, TaskLoss::Mse)) <= 1e-10) ++rmse_ok;
  }
  return {translation == 1000 && alignment == 1000 && rmse_ok == 1000,
          "translation " + std::to_string(translation) + ", alignment " + std::to_string(alignment) + ", rmse^2=mse " +
              std::to_string(rmse_ok) + " of 1000"};
}

Outcome mase_identity() {
  SplitMix64 rng(77);
  int ok = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    SeriesPair p;
    for (std::size_t i = 0; i < n; ++i) p.targets.push_back(rng.uniform(-10, 10));
    p.predictions.push_back(rng.uniform(-10, 10));
    for (std::size_t i = 1; i < n; ++i) p.predictions.push_back(p.targets[i - 1]);
    const double err = std::abs(mase(p) - 1.0);
    worst = std::max(worst, err);
    if (err <= 1e-12) ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 series, worst |MASE - 1| = " + fmt("%.3g", worst)};
}

Outcome depth_endpoints() {
  const DepthSchedule s{1, 5, 300};
  const auto d0 = depth_at(s, 0), d300 = depth_at(s, 300), d150 = depth_at(s, 150);
  return {d0 == 1 && d300 == 5 && d150 == 3,
          "depth(0)=" + std::to_string(d0) + " depth(150)=" + std::to_string(d150) + " depth(300)=" + std::to_string(d300)};
}

Outcome trust_region() {
  const TrustRegionScalarOptimizer tr;
  int converged = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto state = tr.init(1, derive_seed(seed, {9}));
    double alpha = 1.0;
    for (int step = 0; step < 300; ++step)
      alpha = step_trust_region_scalar(tr, state, alpha, [](double a) { return (a - 1.04) * (a - 1.04); });
    if (std::abs(alpha - 1.04) <= 0.01) ++converged;
  }
  return {converged >= 95, std::to_string(converged) + "/100 seeds within 0.01 of 1.04"};
}

std::string csv_of(const std::vector<EpochLog>& logs) {
  std::ostringstream out;
  write_epochs_csv(out, logs);
  return out.str();
}

Outcome experiment_properties() {
  const ExperimentConfig config;  // defaults: sampled backend, 1024 shots, T = 300, seed 42
  const auto logs = run_experiment(config);

  // (a) bounded losses
  std::vector<double> totals;
  bool finite = logs.size() == config.epochs;
  for (const auto& r : logs) {
    finite = finite && std::isfinite(r.loss_total);
    totals.push_back(r.loss_total);
  }
  auto sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[(sorted.size() - 1) / 2] + sorted[sorted.size() / 2]);
  const double ratio_a = sorted.back() / median;
  const bool pass_a = finite && sorted.back() <= 10.0 * median;

  // (b) stabilization of the alpha feedback
  double early = 0.0, late = 0.0;
  for (std::size_t t = 0; t < 50; ++t) early += std::abs(logs[t].delta_alpha) / 50.0;
  for (std::size_t t = logs.size() - 50; t < logs.size(); ++t) late += std::abs(logs[t].delta_alpha) / 50.0;
  const double ratio_b = early > 0.0 ? late / early : INFINITY;
  const bool pass_b = late <= 0.25 * early;

  // (c) zero drift, reference backend, frozen alpha: epoch-invariant from epoch 1
  ExperimentConfig still = config;
  still.backend = ExperimentBackend::Reference;
  still.drift = DriftParams::none();
  still.adapt_alpha = false;
  const auto flat = run_experiment(still);
  double linf = 0.0;
  for (std::size_t t = 2; t < flat.size(); ++t) {
    const auto& r = flat[t];
    const auto& o = flat[1];
    for (double diff : {r.alpha - o.alpha, r.delta_alpha - o.delta_alpha, r.loss_task - o.loss_task,
                        r.loss_cons - o.loss_cons, r.loss_coh - o.loss_coh, r.loss_total - o.loss_total,
                        r.mean_state - o.mean_state, r.mean_future - o.mean_future, r.phi - o.phi, r.a - o.a, r.b - o.b})
      linf = std::max(linf, std::abs(diff));
  }
  const bool pass_c = linf <= 1e-12;

  // (d) byte-identical CSV across two same-seed runs
  const bool pass_d = csv_of(logs) == csv_of(run_experiment(config));

  std::string detail = std::string("(a) ") + (pass_a ? "ok" : "FAIL") + " max/median L_total = " + fmt("%.3f", ratio_a) +
                       "; (b) " + (pass_b ? "ok" : "FAIL") + " late/early mean|dalpha| = " + fmt("%.3f", ratio_b) +
                       " (need <= 0.25); (c) " + (pass_c ? "ok" : "FAIL") + " Linf = " + fmt("%.3g", linf) + "; (d) " +
                       (pass_d ? "ok" : "FAIL");
  return {pass_a && pass_b && pass_c && pass_d, detail};
}

Outcome telemetry_roundtrip() {
  SplitMix64 rng(11);
  TelemetryLogger logger;
  double tau = 1.7e9;
  for (int i = 0; i < 1000; ++i) {
    tau += rng.uniform() * 10.0;
    TelemetryContext xi;
    const int n = static_cast<int>(rng() % 6);
    for (int j = 0; j < n; ++j) {
      const std::string key = "k" + std::to_string(rng() % 50);
      switch (rng() % 3) {
        case 0: xi[key] = rng.uniform(-1e6, 1e6); break;
        case 1: xi[key] = std::ldexp(rng.uniform(), static_cast<int>(rng() % 600) - 300); break;
        default: xi[key] = "value \"" + std::to_string(rng()) + "\"\n"; break;
      }
    }
    logger.append({tau, "event" + std::to_string(rng() % 4), std::move(xi)});
  }
  std::stringstream stream;
  logger.flush_jsonl(stream);
  const auto loaded = load_jsonl(stream);
  const auto original = logger.records();
  std::size_t same = 0;
  for (std::size_t i = 0; i < std::min(loaded.size(), original.size()); ++i) same += loaded[i] == original[i] ? 1 : 0;
  return {loaded.size() == 1000 && same == 1000, std::to_string(same) + "/1000 records identical after reload"};
}

Outcome mirror_identity() {
  SplitMix64 rng(12);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 7, d = 1 + rng() % 5;
    std::vector<double> data(k * d);
    for (double& v : data) v = rng.uniform(-1, 1);
    const FutureSet base(k, d, data);
    PerturbationSet set{{Perturbation::shift(rng.uniform(-1, 1)), Perturbation::scale(rng.uniform(-3, 3))}, true};
    const auto out = anticipate(base, set);
    const auto c = column_mean(base);
    for (std::size_t p = 0; p < set.items.size(); ++p)
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst, std::abs(0.5 * (out(k + 2 * p, j) + out(k + 2 * p + 1, j)) - c[j]));
  }
  return {worst <= 1e-12, "1000 sets, worst |mean(v, v_mir) - c| = " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
  report(1, "single-wire cos law", 1.0, single_wire_law);
  report(2, "shot/analytic agreement", 30.0, shot_agreement);
  report(3, "counts formula fidelity", 0.0, counts_fidelity);
  report(4, "policy oracles", 0.0, policy_oracles);
  report(5, "graph-chain equivalence", 0.0, graph_chain);
  report(6, "loss identities", 0.0, loss_identities);
  report(7, "MASE naive-baseline identity", 0.0, mase_identity);
  report(8, "depth schedule endpoints", 0.0, depth_endpoints);
  report(9, "trust-region convergence", 5.0, trust_region);
  report(10, "experiment properties", 60.0, experiment_properties);
  report(11, "telemetry round-trip", 0.0, telemetry_roundtrip);
  report(12, "mirror identity", 0.0, mirror_identity);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
