// Copyright 2026 The genent Authors
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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "genent/bounds.hpp"
#include "genent/experiments.hpp"
#include "genent/measures.hpp"
#include "genent/protocols.hpp"
#include "genent/sampler.hpp"
#include "genent/states.hpp"

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
  }
}

genent::states::Register load_state(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open state file " + path);
  json j;
  f >> j;
  return genent::states::register_from_json(j);
}

json bound_to_json(const genent::bounds::BoundResult& b) {
  // Probability values are clamped to [0,1] when reported; log2_value
  // keeps the raw magnitude.
  const double shown = b.probability ? std::min(b.value, 1.0) : b.value;
  return json{{"kind", b.kind},
              {"params", b.params},
              {"value", shown},
              {"log2_value", b.log2_value},
              {"vacuous", b.vacuous},
              {"probability", b.probability}};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  std::vector<double> entries;
  entries.reserve(2 * m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(m(r, c).real());
      entries.push_back(m(r, c).imag());
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

struct BoundFlags {
  double d_a = 0, d_b = 0, d = 0, n = 0, s = 0, q = 0;
  double alpha = 0, epsilon = 0, k = 0, eta = 0;
  double m1 = 0, m2 = 0;

  genent::bounds::Params params() const {
    genent::bounds::Params p;
    if (d_a) p["d_a"] = d_a;
    if (d_b) p["d_b"] = d_b;
    if (d) p["d"] = d;
    if (n) p["n"] = n;
    if (s) p["s"] = s;
    if (q) p["q"] = q;
    if (alpha) p["alpha"] = alpha;
    if (epsilon) p["epsilon"] = epsilon;
    if (k) p["k"] = k;
    if (eta) p["eta"] = eta;
    if (m1) p["m1"] = m1;
    if (m2) p["m2"] = m2;
    return p;
  }
};

int run(int argc, char** argv) {
  CLI::App app{
      "genent: samplers, correlation measures, concentration bounds and "
      "protocol simulations for random quantum states"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write primary output to a file")
      ->capture_default_str();

  // ---- sample -------------------------------------------------------------
  auto* sample = app.add_subcommand(
      "sample", "draw seeded states, unitaries, subspaces and mixed states");
  sample->require_subcommand(1);
  std::vector<Eigen::Index> dims;
  std::int64_t d = 0, s_dim = 0, d_a = 0, d_b = 0;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;

  auto* sp = sample->add_subcommand("haar-pure",
                                    "uniform pure states on the given dims");
  sp->add_option("--dims", dims, "subsystem dimensions, e.g. --dims 2 2")
      ->required();
  sp->add_option("--seed", seed, "master seed");
  sp->add_option("--trials", trials, "number of draws");
  sp->callback([&] {
    json out;
    out["samples"] = json::array();
    for (std::int64_t t = 0; t < trials; ++t)
      out["samples"].push_back(genent::states::to_json(
          genent::sampler::haar_pure_register(dims, {seed, std::uint64_t(t)})));
    emit(out, out_path);
  });

  auto* su = sample->add_subcommand("haar-unitary", "Haar unitary matrices");
  su->add_option("--d", d, "dimension")->required();
  su->add_option("--seed", seed, "master seed");
  su->add_option("--trials", trials, "number of draws");
  su->callback([&] {
    json out;
    out["samples"] = json::array();
    for (std::int64_t t = 0; t < trials; ++t)
      out["samples"].push_back(matrix_to_json(
          genent::sampler::haar_unitary(d, {seed, std::uint64_t(t)})));
    emit(out, out_path);
  });

  auto* ss = sample->add_subcommand("subspace",
                                    "uniform subspaces of a bipartite space");
  ss->add_option("--dA", d_a, "dimension of A")->required();
  ss->add_option("--dB", d_b, "dimension of B")->required();
  ss->add_option("--s", s_dim, "subspace dimension")->required();
  ss->add_option("--seed", seed, "master seed");
  ss->callback([&] {
    const auto v = genent::sampler::random_subspace(d_a, d_b, s_dim,
                                                    {seed, 0});
    json out;
    out["dims"] = {d_a, d_b};
    out["s"] = s_dim;
    out["columns"] = matrix_to_json(v.columns);
    emit(out, out_path);
  });

  auto* sm = sample->add_subcommand(
      "mixed", "rank-s random states (environment of dimension s traced out)");
  std::vector<Eigen::Index> group_dims;
  sm->add_option("--d", d, "system dimension")->required();
  sm->add_option("--s", s_dim, "environment dimension (rank)")->required();
  sm->add_option("--dims", group_dims,
                 "party grouping of the output (product must equal d)");
  sm->add_option("--seed", seed, "master seed");
  sm->add_option("--trials", trials, "number of draws");
  sm->callback([&] {
    json out;
    out["samples"] = json::array();
    const std::vector<Eigen::Index> dims_out =
        group_dims.empty() ? std::vector<Eigen::Index>{d} : group_dims;
    for (std::int64_t t = 0; t < trials; ++t) {
      const auto rho =
          genent::sampler::random_mixed(d, s_dim, {seed, std::uint64_t(t)});
      out["samples"].push_back(genent::states::to_json(
          genent::states::Register::mixed(dims_out, rho)));
    }
    emit(out, out_path);
  });

  // ---- bounds -------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand(
      "bounds",
      "closed-form tail bounds and thresholds; --list shows every kind");
  std::string kind;
  bool list_kinds = false;
  BoundFlags bf;
  bounds_cmd->add_option("--kind", kind,
                         "bound kind, e.g. entropy_concentration "
                         "(subsystem-entropy tail), eig_concentration "
                         "(reduced-spectrum tail), subspace_failure "
                         "(entangled-subspace exception), page_mean "
                         "(exact mean subsystem entropy)");
  bounds_cmd->add_flag("--list", list_kinds, "list available kinds");
  bounds_cmd->add_option("--dA", bf.d_a, "dimension of A");
  bounds_cmd->add_option("--dB", bf.d_b, "dimension of B");
  bounds_cmd->add_option("--d", bf.d, "local dimension");
  bounds_cmd->add_option("--n", bf.n, "number of parties");
  bounds_cmd->add_option("--s", bf.s, "subspace dimension / rank");
  bounds_cmd->add_option("--q", bf.q, "fixed projector rank");
  bounds_cmd->add_option("--alpha", bf.alpha, "deviation (bits)");
  bounds_cmd->add_option("--epsilon", bf.epsilon, "relative deviation");
  bounds_cmd->add_option("--k", bf.k, "sphere dimension parameter");
  bounds_cmd->add_option("--eta", bf.eta, "Lipschitz constant");
  bounds_cmd->add_option("--m1", bf.m1, "multiparty constant M1 (default 1)");
  bounds_cmd->add_option("--m2", bf.m2, "multiparty constant M2 (default 1)");
  bounds_cmd->callback([&] {
    if (list_kinds) {
      json out;
      out["tail_kinds"] = genent::bounds::tail_kinds();
      out["threshold_kinds"] = genent::bounds::threshold_kinds();
      out["special"] = {"page_mean", "constants"};
      emit(out, out_path);
      return;
    }
    if (kind.empty())
      throw CLI::ValidationError("bounds", "--kind is required (or --list)");
    if (kind == "constants") {
      const auto c = genent::bounds::constants();
      emit(json{{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"gamma", c.gamma}},
           out_path);
      return;
    }
    if (kind == "page_mean") {
      const auto pm = genent::bounds::page_mean_entropy(
          std::int64_t(bf.d_a), std::int64_t(bf.d_b));
      emit(json{{"kind", "page_mean"},
                {"params", {{"d_a", bf.d_a}, {"d_b", bf.d_b}}},
                {"mean_bits", pm.mean_bits},
                {"lower_bound_bits", pm.lower_bound_bits},
                {"beta", pm.beta}},
           out_path);
      return;
    }
    const auto& tails = genent::bounds::tail_kinds();
    const bool is_tail =
        std::find(tails.begin(), tails.end(), kind) != tails.end();
    const auto result = is_tail
                            ? genent::bounds::tail_bound(kind, bf.params())
                            : genent::bounds::threshold_calculator(
                                  kind, bf.params());
    emit(bound_to_json(result), out_path);
  });

  // ---- measure ------------------------------------------------------------
  auto* measure = app.add_subcommand(
      "measure", "correlation quantities of a state loaded from JSON");
  std::string op, state_path;
  std::vector<int> cut_parties;
  int restarts = 50, iters = 200;
  measure->add_option("--op", op,
                      "one of: entropy, pure-entanglement, mutual-information, "
                      "coherent-information, npt, purity, purity-separable, "
                      "eof-upper, oneway-lower, distill-search, "
                      "closest-max-entangled")
      ->required();
  measure->add_option("--state", state_path, "state JSON file")->required();
  measure->add_option("--cut", cut_parties, "party indices of the X side");
  measure->add_option("--restarts", restarts, "optimizer restarts");
  measure->add_option("--iters", iters, "optimizer iterations per restart");
  measure->add_option("--seed", seed, "optimizer seed");
  measure->callback([&] {
    const auto reg = load_state(state_path);
    const genent::states::Cut cut{cut_parties.empty() ? std::vector<int>{0}
                                                      : cut_parties};
    json out;
    if (op == "entropy") {
      out["bits"] = genent::measures::entropy(reg);
    } else if (op == "pure-entanglement") {
      out["bits"] = genent::measures::pure_entanglement(reg, cut);
    } else if (op == "mutual-information") {
      out["bits"] = genent::measures::mutual_information(reg, cut);
    } else if (op == "coherent-information") {
      out["bits"] = genent::measures::coherent_information(reg);
    } else if (op == "npt") {
      const auto r = genent::measures::is_npt(reg);
      out["npt"] = r.npt;
      out["min_eigenvalue"] = r.min_eigenvalue;
    } else if (op == "purity") {
      out["purity"] = genent::states::purity(reg);
    } else if (op == "purity-separable") {
      out["separable_certified"] = genent::measures::purity_separable(reg);
      out["purity"] = genent::states::purity(reg);
      out["threshold"] = 1.0 / double(reg.total_dim() - 1);
    } else if (op == "eof-upper") {
      const auto r =
          genent::measures::eof_upper_bound(reg, restarts, iters, {seed, 0});
      out["bits"] = r.bits;
      out["restarts"] = r.restarts_used;
      out["iterations"] = r.iterations;
      out["ensemble_size"] = r.decomposition.members.size();
      std::vector<double> weights(r.decomposition.weights.data(),
                                  r.decomposition.weights.data() +
                                      r.decomposition.weights.size());
      out["weights"] = weights;
    } else if (op == "oneway-lower") {
      const auto r = genent::measures::oneway_info_lower_bound(
          reg, restarts, {seed, 0}, iters);
      out["bits"] = r.bits;
      out["restarts"] = r.restarts_used;
    } else if (op == "distill-search") {
      const auto r = genent::measures::one_copy_distillable_search(
          reg, restarts, {seed, 0}, iters);
      out["found"] = r.found;
      out["negativity"] = r.negativity;
    } else if (op == "closest-max-entangled") {
      const auto r = genent::measures::closest_max_entangled(reg);
      out["fidelity"] = r.fidelity;
      out["state"] = genent::states::to_json(r.state);
    } else {
      throw CLI::ValidationError("measure", "unknown op " + op);
    }
    emit(out, out_path);
  });

  // ---- subspace -----------------------------------------------------------
  auto* subspace = app.add_subcommand(
      "subspace", "sample and certify minimum entanglement over a subspace");
  auto* certify = subspace->add_subcommand(
      "certify",
      "lower-bound (net) or upper-bound (minimize) the minimum entanglement");
  std::string mode = "minimize";
  double epsilon = 0.2;
  std::uint64_t budget = 4'000'000;
  bool emit_isometry = false;
  certify->add_option("--dA", d_a, "dimension of A")->required();
  certify->add_option("--dB", d_b, "dimension of B")->required();
  certify->add_option("--s", s_dim, "subspace dimension")->required();
  certify->add_option("--seed", seed, "master seed");
  certify->add_option("--mode", mode, "net | minimize");
  certify->add_option("--epsilon", epsilon, "net resolution");
  certify->add_option("--budget", budget, "maximum net cardinality");
  certify->add_option("--restarts", restarts, "minimization starts");
  certify->add_option("--iters", iters, "gradient steps per start");
  certify->add_flag("--emit-isometry", emit_isometry,
                    "include the subspace columns in the output");
  certify->callback([&] {
    const auto v =
        genent::sampler::random_subspace(d_a, d_b, s_dim, {seed, 0});
    genent::protocols::CertifyOptions opts;
    opts.mode = mode == "net" ? genent::protocols::CertifyMode::kNet
                              : genent::protocols::CertifyMode::kMinimize;
    opts.epsilon = epsilon;
    opts.budget = budget;
    opts.restarts = restarts;
    opts.iters = iters;
    const auto cert = genent::protocols::certify_subspace(v, opts, {seed, 1});
    json out;
    out["dims"] = {d_a, d_b};
    out["s"] = s_dim;
    out["min_entanglement_estimate"] = cert.min_entanglement_estimate;
    out["method"] = cert.method;
    out["certified"] = cert.certified;
    if (cert.method == "net-enumeration") {
      out["net_epsilon"] = cert.net_epsilon;
      out["net_size"] = cert.net_size;
    } else {
      out["restarts"] = cert.restarts;
    }
    out["deficit"] =
        std::max(0.0, std::log2(double(d_a)) - cert.min_entanglement_estimate);
    if (emit_isometry) out["columns"] = matrix_to_json(cert.isometry.columns);
    emit(out, out_path);
  });

  // ---- protocol -----------------------------------------------------------
  auto* protocol = app.add_subcommand(
      "protocol", "distillation, superdense-coding and locking simulations");
  protocol->require_subcommand(1);

  auto* distill = protocol->add_subcommand(
      "distill",
      "measure all parties outside the pair; tabulate outcome entanglement");
  std::int64_t n_parties = 3;
  std::vector<int> pair = {0, 1};
  distill->add_option("--n", n_parties, "number of parties")->required();
  distill->add_option("--d", d, "local dimension")->required();
  distill->add_option("--pair", pair, "the two parties kept, e.g. --pair 0 1");
  distill->add_option("--seed", seed, "master seed");
  distill->add_option("--trials", trials, "number of random states");
  distill->callback([&] {
    std::string csv = "trial,outcome_label,probability,entanglement\n";
    double prob_sum = 0.0;
    std::int64_t omitted = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
      const std::vector<Eigen::Index> dims_vec(n_parties, d);
      const auto reg = genent::sampler::haar_pure_register(
          dims_vec, {seed, std::uint64_t(t)});
      const auto report = genent::protocols::multiparty_distill(
          reg, {{pair[0], pair[1]}});
      omitted += report.omitted;
      for (const auto& o : report.outcomes) {
        std::string label;
        for (size_t i = 0; i < o.label.size(); ++i) {
          if (i) label += ':';
          label += std::to_string(o.label[i]);
        }
        if (label.empty()) label = "-";
        prob_sum += o.probability;
        csv += std::to_string(t) + "," + label + "," +
               format_double(o.probability) + "," +
               format_double(o.entanglement) + "\n";
      }
    }
    json summary;
    summary["trials"] = trials;
    summary["omitted_outcomes"] = omitted;
    summary["mean_total_probability"] = prob_sum / double(trials);
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + out_path);
      f << csv;
      std::cout << summary.dump(2) << "\n";
    } else {
      // CSV on stdout; the summary goes to stderr to keep it pipeable.
      std::cout << csv;
      std::cerr << summary.dump(2) << "\n";
    }
  });

  auto* sdc = protocol->add_subcommand(
      "sdc", "derandomized superdense coding over a certified subspace");
  std::int64_t targets = 20;
  sdc->add_option("--dA", d_a, "dimension of A")->required();
  sdc->add_option("--dB", d_b, "dimension of B")->required();
  sdc->add_option("--s", s_dim, "subspace dimension")->required();
  sdc->add_option("--targets", targets, "targets per subspace");
  sdc->add_option("--trials", trials, "number of subspaces");
  sdc->add_option("--seed", seed, "master seed");
  sdc->add_option("--restarts", restarts, "certification starts");
  sdc->add_option("--iters", iters, "certification gradient steps");
  sdc->callback([&] {
    genent::experiments::ExperimentConfig cfg;
    cfg.scenario = "sdc";
    cfg.d_a = d_a;
    cfg.d_b = d_b;
    cfg.s = s_dim;
    cfg.targets = targets;
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.restarts = restarts;
    cfg.iters = iters;
    const auto report = genent::experiments::run_monte_carlo(cfg);
    emit(genent::experiments::report_to_json(report), out_path);
    if (report.any_violated()) std::exit(2);
  });

  auto* locking = protocol->add_subcommand(
      "locking",
      "entanglement-of-formation drop from discarding a few qubits");
  std::int64_t n_side = 2, traced = 1, rank = 0;
  locking->add_option("--n", n_side, "qubits per side")->required();
  locking->add_option("--traced", traced, "qubits discarded from the A side");
  locking->add_option("--s", rank, "sampled rank (0 = auto)");
  locking->add_option("--trials", trials, "number of random states");
  locking->add_option("--seed", seed, "master seed");
  locking->add_option("--restarts", restarts, "EoF see-saw restarts");
  locking->add_option("--iters", iters, "EoF see-saw iterations");
  locking->callback([&] {
    const auto report = genent::protocols::locking_experiment(
        int(n_side), int(traced), trials, {seed, 0}, rank, restarts, iters);
    json rows = json::array();
    for (const auto& row : report.rows)
      rows.push_back({{"trial", row.trial},
                      {"eof_before", row.before_bits},
                      {"eof_after", row.after_bits},
                      {"after_purity_separable", row.after_purity_separable},
                      {"gap", row.gap}});
    emit(json{{"rank", report.rank},
              {"traced", report.traced},
              {"mean_gap", report.mean_gap},
              {"rows", rows}},
         out_path);
  });

  // ---- experiment ---------------------------------------------------------
  auto* experiment = app.add_subcommand(
      "experiment", "seeded Monte Carlo campaigns with bound comparisons");
  auto* exp_run = experiment->add_subcommand("run", "run a campaign config");
  std::string config_path, out_dir;
  int workers = 0;
  exp_run->add_option("config", config_path, "campaign config JSON")
      ->required();
  exp_run->add_option("--workers", workers,
                      "worker threads (default: GENENT_WORKERS or 1)");
  exp_run->add_option("--out-dir", out_dir,
                      "write report.json and samples.csv here");
  exp_run->callback([&] {
    std::ifstream f(config_path);
    if (!f) throw std::runtime_error("cannot open config " + config_path);
    json j;
    f >> j;
    auto cfg = genent::experiments::config_from_json(j);
    if (workers > 0) {
      cfg.workers = workers;
    } else if (const char* env = std::getenv("GENENT_WORKERS")) {
      cfg.workers = std::max(1, std::atoi(env));
    }
    const auto report = genent::experiments::run_monte_carlo(cfg);
    std::fprintf(stderr, "campaign %s: %lld trials, %.2f s wall\n",
                 cfg.scenario.c_str(), static_cast<long long>(cfg.trials),
                 report.wall_seconds);
    if (out_dir.empty()) {
      std::cout << genent::experiments::report_to_json(report).dump(2) << "\n";
    } else {
      std::filesystem::create_directories(out_dir);
      const auto csv_path = std::filesystem::path(out_dir) / "samples.csv";
      const auto report_path = std::filesystem::path(out_dir) / "report.json";
      std::ofstream csv(csv_path, std::ios::binary);
      csv << genent::experiments::samples_csv(report);
      std::ofstream rep(report_path, std::ios::binary);
      rep << genent::experiments::report_to_json(report, "samples.csv").dump(2)
          << "\n";
      std::cout << report_path.string() << "\n";
    }
    if (report.any_violated()) std::exit(2);
  });

  auto* scenarios = experiment->add_subcommand("scenarios",
                                               "list campaign scenarios");
  scenarios->callback([&] {
    emit(json{{"scenarios", genent::experiments::scenario_names()}}, out_path);
  });

  // Let app-level flags such as --out appear after the subcommand.
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the one-line diagnostic
    return code == 0 ? 0 : 1;     // 0 is --help; everything else is usage
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
