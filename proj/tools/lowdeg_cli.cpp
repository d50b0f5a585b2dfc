#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "lowdeg/distinguisher.hpp"
#include "lowdeg/experiments.hpp"
#include "lowdeg/list_decoding.hpp"
#include "lowdeg/spectral.hpp"
#include "lowdeg/tensor.hpp"

using namespace lowdeg;

namespace {

// Flag values are kept as strings and copied into the config only when given.
struct ParamFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options[key] = app->add_option(flag, values[key], help);
  }
  void apply(ExperimentConfig& c) const {
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) c.set(key, values.at(key));
  }
  bool given(const std::string& key) const { return options.at(key)->count() > 0; }
  const std::string& get(const std::string& key) const { return values.at(key); }
};

struct Globals {
  std::string config_path;
  std::string seed, trials, out, threads;
  bool timing = false;
  CLI::Option *seed_opt = nullptr, *trials_opt = nullptr, *out_opt = nullptr, *threads_opt = nullptr;
};

ExperimentConfig base_config(const Globals& g, Experiment e) {
  ExperimentConfig c;
  if (!g.config_path.empty()) c = ExperimentConfig::load(g.config_path);
  c.experiment = e;
  if (g.seed_opt->count()) c.set("seed", g.seed);
  if (g.trials_opt->count()) c.set("trials", g.trials);
  if (g.out_opt->count()) c.set("out", g.out);
  if (g.threads_opt->count()) c.set("threads", g.threads);
  if (g.timing) c.timing = true;
  return c;
}

int finish(const ExperimentResult& r) {
  if (r.config.out_path.empty()) {
    std::cout << (r.config.experiment == Experiment::lda_curve ? lda_curve_csv(r.curve) : trials_csv(r.trials));
    std::cerr << summary_json(r).dump(2) << "\n";
  } else {
    write_outputs(r);
    std::cerr << summary_json(r).dump(2) << "\n";
  }
  return meets_threshold(r) ? 0 : 2;
}

std::uint64_t seed_of(const Globals& g) {
  ExperimentConfig c = base_config(g, Experiment::rs_matrix);
  return c.master_seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-degree hardness experiments: Reed-Solomon planted tensors, list decoding, spectral models"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "master seed (64-bit)");
  g.trials_opt = app.add_option("--trials", g.trials, "trials per label");
  g.out_opt = app.add_option("--out", g.out, "output CSV path; summary goes to the same path with .json");
  g.threads_opt = app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--config", g.config_path, "key = value config file; flags override it")->check(CLI::ExistingFile);
  app.add_flag("--timing", g.timing, "record wall_time_ms (makes the CSV run-dependent)");

  // rs-sample
  auto* sample = app.add_subcommand("rs-sample", "sample a null or planted tensor and write it in LDT1 format");
  std::size_t s_n = 0, s_k = 2, s_m = 2;
  std::uint64_t s_q = 0;
  double s_eps = 0.0;
  bool s_null = false, s_partite = false;
  std::string s_tensor, s_witness;
  sample->add_option("--n", s_n, "dimension")->required();
  sample->add_option("--k", s_k, "tensor order (symmetric)");
  sample->add_option("--q", s_q, "field size, a power of two")->required();
  sample->add_option("--m", s_m, "message length");
  sample->add_option("--epsilon", s_eps, "noise rate");
  sample->add_flag("--null", s_null, "sample from the null distribution");
  sample->add_flag("--partite", s_partite, "partite 3-tensor instead of a symmetric one");
  sample->add_option("--tensor-out", s_tensor, "tensor file")->required();
  sample->add_option("--witness-out", s_witness, "witness JSON (planted only)");

  // rs-distinguish
  auto* rsd = app.add_subcommand("rs-distinguish", "symmetric distinguisher on a file or as an experiment");
  ParamFlags rs;
  std::string rs_input, rs_witness;
  rsd->add_option("--input", rs_input, "tensor file; without it an experiment is run")->check(CLI::ExistingFile);
  rsd->add_option("--witness", rs_witness, "witness JSON for --policy oracle")->check(CLI::ExistingFile);
  rs.add(rsd, "--n", "n", "dimension");
  rs.add(rsd, "--k", "k", "tensor order");
  rs.add(rsd, "--q", "q", "field size");
  rs.add(rsd, "--m", "m", "message length");
  rs.add(rsd, "--nprime", "n_prime", "acceptance threshold (0 = automatic)");
  rs.add(rsd, "--policy", "policy", "exhaustive | budget=N | oracle");
  rs.add(rsd, "--null-policy", "null_policy", "policy for null trials (default budget=1000)");
  rs.add(rsd, "--epsilon", "epsilon", "noise rate");
  rs.add(rsd, "--min-rate", "min_rate", "success rate required per label");

  // partite-distinguish
  auto* pd = app.add_subcommand("partite-distinguish", "partite distinguisher on a file or as an experiment");
  ParamFlags pf;
  std::string pd_input;
  pd->add_option("--input", pd_input, "partite tensor file")->check(CLI::ExistingFile);
  pf.add(pd, "--n", "n", "slices");
  pf.add(pd, "--q", "q", "field size");
  pf.add(pd, "--m", "m", "message length");
  pf.add(pd, "--nprime", "n_prime", "acceptance threshold (0 = automatic)");
  pf.add(pd, "--epsilon", "epsilon", "noise rate");
  pf.add(pd, "--min-rate", "min_rate", "success rate required per label");

  // gs-decode
  auto* gs = app.add_subcommand("gs-decode", "list decode a JSON instance or benchmark random ones");
  ParamFlags gf;
  std::string gs_input;
  gs->add_option("--input", gs_input, "JSON {q, m, t, points: [[x, y], ...]}; '-' reads stdin");
  gf.add(gs, "--n", "n", "points");
  gf.add(gs, "--q", "q", "field size");
  gf.add(gs, "--m", "m", "message length");
  gf.add(gs, "--t", "t", "agreement");
  gf.add(gs, "--min-rate", "min_rate", "success rate required per label");

  // kwise-test
  auto* kw = app.add_subcommand("kwise-test", "chi-square test of k-wise uniformity");
  ParamFlags kf;
  kf.add(kw, "--n", "n", "dimension");
  kf.add(kw, "--k", "k", "tensor order");
  kf.add(kw, "--q", "q", "field size");
  kf.add(kw, "--m", "m", "message length");
  kf.add(kw, "--sampler", "sampler", "symmetric | partite");
  kf.add(kw, "--subset-size", "subset_size", "coordinates per subset (default m - 1)");
  kf.add(kw, "--subsets", "subsets", "number of subsets");
  kf.add(kw, "--samples", "samples", "samples per test");
  kf.add(kw, "--alpha", "alpha", "significance level");

  // spectral-run
  auto* sp = app.add_subcommand("spectral-run", "top-eigenvalue distinguisher on the spectral model");
  ParamFlags sf;
  std::string sp_dump;
  sf.add(sp, "--n", "n", "dimension");
  sf.add(sp, "--m", "m", "eigen-directions (default n)");
  sf.add(sp, "--gamma", "gamma", "mass of the uniform part (default ln^2 n / n)");
  sf.add(sp, "--lambda-star", "lambda_star", "planted eigenvalue (default gamma ln n)");
  sf.add(sp, "--epsilon", "epsilon", "mixing weight of a fresh null sample");
  sf.add(sp, "--tau", "tau", "detection threshold (default 1e-8 ||M||_F)");
  sf.add(sp, "--min-rate", "min_rate", "success rate required per label");
  sp->add_option("--dump", sp_dump, "also write one planted matrix in LDR1 format");

  // lda-curve
  auto* lc = app.add_subcommand("lda-curve", "restricted advantage against the closed-form bound per degree");
  ParamFlags lf;
  lf.add(lc, "--n", "n", "dimension");
  lf.add(lc, "--m", "m", "eigen-directions (default n)");
  lf.add(lc, "--gamma", "gamma", "mass of the uniform part (default ln^2 n / n)");
  lf.add(lc, "--lambda-star", "lambda_star", "planted eigenvalue (default gamma ln n)");
  lf.add(lc, "--degree", "degree", "largest degree d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sample) {
      Rng rng(derive_subseed(seed_of(g), 0, "sample"));
      std::variant<SymTensor, PartiteTensor> out;
      std::optional<PlantedWitness> witness;
      if (s_partite) {
        PartiteSample ps = sample_partite(s_n, s_q, s_m, !s_null, rng);
        out = apply_noise(ps.tensor, s_eps, rng);
        if (!s_null) witness = ps.witness;
      } else if (s_null) {
        out = apply_noise(sample_null_tensor(s_n, s_k, rng), s_eps, rng);
      } else {
        PlantedSample ps = sample_planted_tensor(s_n, s_k, s_q, s_m, rng);
        out = apply_noise(ps.tensor, s_eps, rng);
        witness = ps.witness;
      }
      save_tensor(s_tensor, out);
      if (witness && !s_witness.empty()) save_witness(s_witness, *witness);
      return 0;
    }
    if (*rsd) {
      if (!rs_input.empty()) {
        const auto t = load_tensor(rs_input);
        if (!std::holds_alternative<SymTensor>(t)) throw std::invalid_argument("rs-distinguish expects a symmetric tensor");
        if (!rs.given("q") || !rs.given("m")) throw std::invalid_argument("--q and --m are required with --input");
        const auto& M = std::get<SymTensor>(t);
        const PolicySpec spec = PolicySpec::parse(rs.given("policy") ? rs.get("policy") : "budget=1000");
        GuessPolicy policy;
        if (spec.mode == GuessPolicy::Mode::oracle) {
          if (rs_witness.empty()) throw std::invalid_argument("--policy oracle needs --witness");
          policy = GuessPolicy::oracle(load_witness(rs_witness));
        } else if (spec.mode == GuessPolicy::Mode::budgeted) {
          policy = GuessPolicy::budgeted(spec.budget, derive_subseed(seed_of(g), 0, "guesses"));
        }
        const std::uint64_t q = std::stoull(rs.get("q"));
        const std::size_t m = std::stoull(rs.get("m"));
        const std::size_t np = rs.given("n_prime") ? std::stoull(rs.get("n_prime")) : 0;
        std::cout << report_to_json(distinguish_tensor_k(M, q, m, np, policy)).dump(2) << "\n";
        return 0;
      }
      ExperimentConfig c = base_config(g, Experiment::rs_matrix);
      rs.apply(c);
      if (c.get_uint("k", 2) != 2) c.experiment = Experiment::rs_tensor_k;
      return finish(run_experiment(c));
    }
    if (*pd) {
      if (!pd_input.empty()) {
        const auto t = load_tensor(pd_input);
        if (!std::holds_alternative<PartiteTensor>(t)) throw std::invalid_argument("partite-distinguish expects a partite tensor");
        if (!pf.given("q") || !pf.given("m")) throw std::invalid_argument("--q and --m are required with --input");
        const std::size_t np = pf.given("n_prime") ? std::stoull(pf.get("n_prime")) : 0;
        const auto rep = distinguish_partite(std::get<PartiteTensor>(t), std::stoull(pf.get("q")),
                                             std::stoull(pf.get("m")), np);
        std::cout << report_to_json(rep).dump(2) << "\n";
        return 0;
      }
      ExperimentConfig c = base_config(g, Experiment::partite);
      pf.apply(c);
      return finish(run_experiment(c));
    }
    if (*gs) {
      if (!gs_input.empty()) {
        nlohmann::json j;
        if (gs_input == "-") std::cin >> j;
        else {
          std::ifstream in(gs_input);
          if (!in) throw std::runtime_error("cannot open " + gs_input);
          in >> j;
        }
        const GaloisField& f = field_for_order(j.at("q").get<std::uint64_t>());
        std::vector<Point> pts;
        for (const auto& p : j.at("points")) {
          const auto xy = p.get<std::vector<std::uint64_t>>();
          if (xy.size() != 2) throw std::invalid_argument("points must be [x, y] pairs");
          pts.push_back({xy[0], xy[1]});
        }
        const DecodeResult r = list_decode(f, pts, j.at("m").get<std::size_t>(), j.at("t").get<std::size_t>());
        nlohmann::json out;
        out["polynomials"] = nlohmann::json::array();
        for (const auto& p : r.polys) out["polynomials"].push_back(p.coeffs);
        out["agreements"] = r.agreements;
        std::cout << out.dump(2) << "\n";
        return 0;
      }
      ExperimentConfig c = base_config(g, Experiment::gs_bench);
      gf.apply(c);
      return finish(run_experiment(c));
    }
    if (*kw) {
      ExperimentConfig c = base_config(g, Experiment::kwise);
      kf.apply(c);
      return finish(run_experiment(c));
    }
    if (*sp) {
      ExperimentConfig c = base_config(g, Experiment::spectral);
      sf.apply(c);
      if (!sp_dump.empty()) {
        c.validate();
        SpectralParams p = SpectralParams::defaults(c.get_uint("n"), c.get_double("epsilon", 0.0));
        p.m = c.get_uint("m", p.n);
        p.gamma = c.get_double("gamma", p.gamma);
        p.lambda_star = c.get_double("lambda_star", p.gamma * std::log(static_cast<double>(p.n)));
        Rng rng(derive_subseed(c.master_seed, 0, "dump"));
        const std::filesystem::path dp(sp_dump);
        if (dp.has_parent_path()) std::filesystem::create_directories(dp.parent_path());
        std::ofstream os(sp_dump, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + sp_dump);
        write_real_tensor(os, to_real_tensor(sample_planted_spectral(p, rng).matrix));
      }
      return finish(run_experiment(c));
    }
    if (*lc) {
      ExperimentConfig c = base_config(g, Experiment::lda_curve);
      lf.apply(c);
      return finish(run_experiment(c));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
