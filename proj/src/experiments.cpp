#include "lowdeg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lowdeg/lda.hpp"
#include "lowdeg/list_decoding.hpp"
#include "lowdeg/spectral.hpp"

namespace lowdeg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::uint64_t x = 0;
  try {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    x = std::stoull(v, &pos, 0);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " is not a nonnegative integer: " + v);
  }
  if (pos != v.size()) throw std::invalid_argument("config: " + key + " is not a nonnegative integer: " + v);
  return x;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " is not a number: " + v);
  }
  if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument("config: " + key + " is not a number: " + v);
  return x;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t next_pow2(std::uint64_t n) {
  std::uint64_t q = 2;
  while (q < n) q <<= 1;
  return q;
}

struct Outcome {
  int decision = 0;
  double statistic = 0.0;
};

GuessPolicy make_policy(const PolicySpec& spec, const PlantedWitness* w, std::uint64_t seed) {
  switch (spec.mode) {
    case GuessPolicy::Mode::exhaustive: return GuessPolicy::exhaustive();
    case GuessPolicy::Mode::budgeted: return GuessPolicy::budgeted(spec.budget, seed);
    case GuessPolicy::Mode::oracle:
      // Without a planted witness one arbitrary guess stands in for the oracle.
      if (w == nullptr) return GuessPolicy::budgeted(1, seed);
      return GuessPolicy::oracle(*w);
  }
  return GuessPolicy::exhaustive();
}

Outcome run_symmetric(const ExperimentConfig& c, bool planted, Rng& rng) {
  const std::size_t n = c.get_uint("n");
  const std::size_t k = c.experiment == Experiment::rs_tensor_k ? c.get_uint("k") : 2;
  const std::uint64_t q = c.get_uint("q", next_pow2(n));
  const std::size_t m = c.get_uint("m");
  const double eps = c.get_double("epsilon", 0.0);
  const std::size_t n_prime = c.get_uint("n_prime", 0);
  const std::uint64_t guess_seed = rng.next_u64();
  DistinguishReport rep;
  if (planted) {
    const PolicySpec spec = PolicySpec::parse(c.get_string("policy", "oracle"));
    const PlantedSample s = sample_planted_tensor(n, k, q, m, rng);
    const SymTensor t = apply_noise(s.tensor, eps, rng);
    rep = distinguish_tensor_k(t, q, m, n_prime, make_policy(spec, &s.witness, guess_seed));
  } else {
    const PolicySpec spec = PolicySpec::parse(c.get_string("null_policy", "budget=1000"));
    const SymTensor t = apply_noise(sample_null_tensor(n, k, rng), eps, rng);
    rep = distinguish_tensor_k(t, q, m, n_prime, make_policy(spec, nullptr, guess_seed));
  }
  return {rep.decision, static_cast<double>(rep.agreement_count)};
}

Outcome run_partite(const ExperimentConfig& c, bool planted, Rng& rng) {
  const std::size_t n = c.get_uint("n");
  const std::uint64_t q = c.get_uint("q", next_pow2(n));
  const std::size_t m = c.get_uint("m");
  const double eps = c.get_double("epsilon", 0.0);
  const std::size_t n_prime = c.get_uint("n_prime", 0);
  const PartiteSample s = sample_partite(n, q, m, planted, rng);
  const PartiteTensor t = apply_noise(s.tensor, eps, rng);
  const DistinguishReport rep = distinguish_partite(t, q, m, n_prime);
  return {rep.decision, static_cast<double>(rep.agreement_count)};
}

SpectralParams spectral_params(const ExperimentConfig& c) {
  const std::size_t n = c.get_uint("n");
  SpectralParams p = SpectralParams::defaults(n, c.get_double("epsilon", 0.0));
  p.m = c.get_uint("m", n);
  p.gamma = c.get_double("gamma", p.gamma);
  p.lambda_star = c.get_double("lambda_star", p.gamma * std::log(static_cast<double>(n)));
  p.validate();
  return p;
}

Outcome run_spectral(const ExperimentConfig& c, bool planted, Rng& rng) {
  const SpectralParams p = spectral_params(c);
  SpectralSample s;
  if (planted) {
    s = sample_planted_spectral(p, rng);
    if (p.epsilon > 0.0) s = mix_noise(s, sample_null_spectral(p, rng), p.epsilon);
  } else {
    s = sample_null_spectral(p, rng);
  }
  const double tau = c.has("tau") ? c.get_double("tau") : default_tau(s.matrix);
  const double top = top_eigenvalue(s.matrix).value;
  return {top > tau ? 1 : 0, top};
}

Outcome run_gs_bench(const ExperimentConfig& c, bool planted, Rng& rng) {
  const std::size_t n = c.get_uint("n");
  const std::uint64_t q = c.get_uint("q", next_pow2(n));
  const std::size_t m = c.get_uint("m");
  const std::size_t t = c.get_uint("t");
  const GaloisField& f = field_for_order(q);
  if (q < n) throw std::invalid_argument("gs_bench: needs q >= n for distinct evaluation points");
  std::vector<std::size_t> xs = rng.permutation(q);
  const PolyFq p = sample_message(f, m, rng);
  const std::vector<std::size_t> order = rng.permutation(n);
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].x = xs[i];
    pts[i].y = rng.uniform(q);
  }
  if (planted)
    for (std::size_t i = 0; i < t; ++i) pts[order[i]].y = poly_eval(f, p.coeffs, pts[order[i]].x);
  const DecodeResult r = list_decode(f, pts, m, t);
  return {r.polys.empty() ? 0 : 1, static_cast<double>(r.polys.size())};
}

Outcome run_kwise(const ExperimentConfig& c, bool planted, std::uint64_t seed) {
  const std::size_t n = c.get_uint("n");
  const std::uint64_t q = c.get_uint("q", next_pow2(n));
  const std::size_t m = c.get_uint("m");
  const std::size_t k = c.get_uint("k", 2);
  const std::string sampler = c.get_string("sampler", "symmetric");
  const std::size_t size = c.get_uint("subset_size", m - 1);
  const std::size_t subsets = c.get_uint("subsets", 50);
  const std::size_t samples = c.get_uint("samples", 100000);
  const double alpha = c.get_double("alpha", 0.001);
  BitSampler draw;
  std::size_t coords = 0;
  if (sampler == "partite") {
    const auto L = PartiteLayout::for_degree(field_for_order(q).degree());
    coords = L.l1 * L.l2 * n;
    draw = [=](Rng& r) { return sample_partite(n, q, m, planted, r).tensor.words; };
  } else if (sampler == "symmetric") {
    coords = static_cast<std::size_t>(binomial(n, k));
    if (planted) draw = [=](Rng& r) { return sample_planted_tensor(n, k, q, m, r).tensor.words; };
    else draw = [=](Rng& r) { return sample_null_tensor(n, k, r).words; };
  } else {
    throw std::invalid_argument("kwise: sampler must be symmetric or partite");
  }
  const KwiseReport rep = kwise_uniformity_test(draw, coords, size, subsets, samples, alpha, seed);
  return {rep.passed ? 1 : 0, rep.corrected_pvalue};
}

std::vector<LdaCurveRow> run_lda_curve(const ExperimentConfig& c) {
  const std::size_t n = c.get_uint("n");
  const std::size_t m = c.get_uint("m", n);
  const double ln = std::log(static_cast<double>(n));
  const double gamma = c.get_double("gamma", ln * ln / static_cast<double>(n));
  const double ls = c.get_double("lambda_star", gamma * ln);
  const auto dmax = static_cast<unsigned>(c.get_uint("degree"));
  std::vector<LdaCurveRow> rows;
  for (unsigned d = 1; d <= dmax; ++d) {
    LdaCurveRow r;
    r.d = d;
    r.gamma = gamma;
    r.m = m;
    r.lambda_star = ls;
    r.restricted_lda = restricted_lda(gamma, m, ls, d).value;
    const AdvantageReport b = ev_ldlr_bound(gamma, n, m, ls, d);
    r.ev_ldlr_bound = b.value;
    r.regime_ok = b.regime_ok;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::rs_matrix: return "rs_matrix";
    case Experiment::rs_tensor_k: return "rs_tensor_k";
    case Experiment::partite: return "partite";
    case Experiment::spectral: return "spectral";
    case Experiment::lda_curve: return "lda_curve";
    case Experiment::gs_bench: return "gs_bench";
    case Experiment::kwise: return "kwise";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (auto e : {Experiment::rs_matrix, Experiment::rs_tensor_k, Experiment::partite, Experiment::spectral,
                 Experiment::lda_curve, Experiment::gs_bench, Experiment::kwise})
    if (to_string(e) == name) return e;
  throw std::invalid_argument("unknown experiment: " + name);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw std::invalid_argument("config: empty key");
  if (key == "experiment") experiment = parse_experiment(value);
  else if (key == "trials") trials = parse_uint(key, value);
  else if (key == "seed") master_seed = parse_uint(key, value);
  else if (key == "out") out_path = value;
  else if (key == "threads") threads = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_uint(key, value)));
  else if (key == "timing") timing = value == "1" || value == "true";
  else params[key] = value;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "experiment = " << to_string(experiment) << "\n";
  os << "trials = " << trials << "\n";
  os << "seed = " << master_seed << "\n";
  if (!out_path.empty()) os << "out = " << out_path << "\n";
  os << "threads = " << threads << "\n";
  if (timing) os << "timing = 1\n";
  for (const auto& [k, v] : params) os << k << " = " << v << "\n";
  return os.str();
}

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::uint64_t ExperimentConfig::get_uint(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("config: missing parameter " + key);
  return parse_uint(key, it->second);
}

std::uint64_t ExperimentConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? get_uint(key) : fallback;
}

double ExperimentConfig::get_double(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("config: missing parameter " + key);
  return parse_double(key, it->second);
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

void ExperimentConfig::validate() const {
  std::vector<std::string> required;
  switch (experiment) {
    case Experiment::rs_matrix: required = {"n", "m"}; break;
    case Experiment::rs_tensor_k: required = {"n", "k", "m"}; break;
    case Experiment::partite: required = {"n", "m"}; break;
    case Experiment::spectral: required = {"n"}; break;
    case Experiment::lda_curve: required = {"n", "degree"}; break;
    case Experiment::gs_bench: required = {"n", "m", "t"}; break;
    case Experiment::kwise: required = {"n", "m"}; break;
  }
  for (const auto& k : required)
    if (!has(k)) throw std::invalid_argument("config: " + to_string(experiment) + " requires " + k);
  for (const auto& [k, v] : params) {
    if (k == "n" || k == "k" || k == "q" || k == "m" || k == "n_prime" || k == "t" || k == "degree" ||
        k == "subset_size" || k == "subsets" || k == "samples")
      parse_uint(k, v);
    if (k == "gamma" || k == "lambda_star" || k == "alpha" || k == "tau" || k == "min_rate") parse_double(k, v);
    if (k == "policy" || k == "null_policy") PolicySpec::parse(v);
  }
  const double eps = get_double("epsilon", 0.0);
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("config: epsilon outside [0, 1]");
  if (experiment == Experiment::spectral) spectral_params(*this);
}

PolicySpec PolicySpec::parse(const std::string& s) {
  PolicySpec p;
  if (s == "exhaustive") p.mode = GuessPolicy::Mode::exhaustive;
  else if (s == "oracle") p.mode = GuessPolicy::Mode::oracle;
  else if (s.rfind("budget=", 0) == 0) {
    p.mode = GuessPolicy::Mode::budgeted;
    p.budget = parse_uint("budget", s.substr(7));
    if (p.budget == 0) throw std::invalid_argument("policy: budget must be positive");
  } else {
    throw std::invalid_argument("policy must be exhaustive, oracle or budget=N: " + s);
  }
  return p;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult res;
  res.config = config;
  if (config.experiment == Experiment::lda_curve) {
    res.curve = run_lda_curve(config);
    return res;
  }
  const bool kwise = config.experiment == Experiment::kwise;
  res.expected = {{"null", kwise ? 1 : 0}, {"planted", 1}};

  struct Job {
    std::uint64_t trial;
    const char* label;
  };
  std::vector<Job> jobs;
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    jobs.push_back({t, "null"});
    jobs.push_back({t, "planted"});
  }
  res.trials.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      const bool planted = std::string_view(job.label) == "planted";
      TrialReport& tr = res.trials[i];
      tr.trial_id = job.trial;
      tr.label = job.label;
      tr.sub_seed = derive_subseed(config.master_seed, job.trial, job.label);
      try {
        const auto start = std::chrono::steady_clock::now();
        Rng rng(tr.sub_seed);
        Outcome o;
        switch (config.experiment) {
          case Experiment::rs_matrix:
          case Experiment::rs_tensor_k: o = run_symmetric(config, planted, rng); break;
          case Experiment::partite: o = run_partite(config, planted, rng); break;
          case Experiment::spectral: o = run_spectral(config, planted, rng); break;
          case Experiment::gs_bench: o = run_gs_bench(config, planted, rng); break;
          case Experiment::kwise: o = run_kwise(config, planted, tr.sub_seed); break;
          case Experiment::lda_curve: break;
        }
        tr.decision = o.decision;
        tr.statistic = o.statistic;
        if (config.timing)
          tr.wall_time_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const unsigned nthreads = std::max(1u, config.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const char* label : {"null", "planted"}) {
    LabelSummary s;
    for (const auto& tr : res.trials)
      if (tr.label == label) {
        ++s.trials;
        s.correct += tr.decision == res.expected[label];
      }
    if (s.trials > 0) s.rate = static_cast<double>(s.correct) / static_cast<double>(s.trials);
    s.wilson = wilson_interval(s.correct, s.trials);
    res.labels[label] = s;
  }
  return res;
}

std::string trials_csv(const std::vector<TrialReport>& trials) {
  std::vector<TrialReport> sorted = trials;
  std::stable_sort(sorted.begin(), sorted.end(), [](const TrialReport& a, const TrialReport& b) {
    return a.trial_id != b.trial_id ? a.trial_id < b.trial_id : a.label < b.label;
  });
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& t : sorted)
    os << t.trial_id << "," << t.label << "," << t.decision << "," << format_double(t.statistic) << ","
       << t.sub_seed << "," << format_double(t.wall_time_ms) << "\n";
  return os.str();
}

std::string lda_curve_csv(const std::vector<LdaCurveRow>& rows) {
  std::ostringstream os;
  os << kLdaCsvHeader << "\n";
  for (const auto& r : rows)
    os << r.d << "," << format_double(r.gamma) << "," << r.m << "," << format_double(r.lambda_star) << ","
       << format_double(r.restricted_lda) << "," << format_double(r.ev_ldlr_bound) << ","
       << (r.regime_ok ? 1 : 0) << "\n";
  return os.str();
}

nlohmann::json summary_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["experiment"] = to_string(r.config.experiment);
  j["trials"] = r.config.trials;
  j["master_seed"] = r.config.master_seed;
  j["params"] = r.config.params;
  if (r.config.experiment == Experiment::lda_curve) {
    j["rows"] = r.curve.size();
  } else {
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [name, s] : r.labels) {
      nlohmann::json l;
      l["trials"] = s.trials;
      l["correct"] = s.correct;
      l["expected_decision"] = r.expected.at(name);
      l["success_rate"] = s.rate ? nlohmann::json(*s.rate) : nlohmann::json(nullptr);
      l["wilson95"] = {s.wilson.low, s.wilson.high};
      labels[name] = l;
    }
    j["labels"] = labels;
  }
  j["meets_threshold"] = meets_threshold(r);
  return j;
}

bool meets_threshold(const ExperimentResult& r) {
  if (r.config.experiment == Experiment::lda_curve) {
    for (const auto& row : r.curve)
      if (row.regime_ok && row.restricted_lda > row.ev_ldlr_bound) return false;
    return true;
  }
  const double min_rate = r.config.get_double("min_rate", 0.95);
  for (const auto& [name, s] : r.labels)
    if (s.rate && *s.rate < min_rate) return false;
  return true;
}

void write_outputs(const ExperimentResult& r) {
  const std::string& path = r.config.out_path;
  if (path.empty()) throw std::runtime_error("write_outputs: no output path");
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (r.config.experiment == Experiment::lda_curve ? lda_curve_csv(r.curve) : trials_csv(r.trials));
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  std::filesystem::path jp = p;
  jp.replace_extension(".json");
  std::ofstream js(jp, std::ios::binary);
  if (!js) throw std::runtime_error("cannot write " + jp.string());
  js << summary_json(r).dump(2) << "\n";
  if (!js) throw std::runtime_error("write failed: " + jp.string());
}

nlohmann::json witness_to_json(const PlantedWitness& w) {
  nlohmann::json j;
  j["partite"] = w.partite;
  j["n"] = w.n;
  j["k"] = w.k;
  j["q"] = w.q;
  j["m"] = w.m;
  j["message"] = w.message.coeffs;
  j["alphas"] = w.evalset.alphas;
  j["betas"] = w.evalset.betas;
  j["resampled"] = w.evalset.resampled;
  j["filler_seed"] = w.filler_seed;
  if (w.partite) {
    j["layout"] = {w.layout.l1, w.layout.l2};
    j["perm1"] = w.perm1;
    j["perm2"] = w.perm2;
    j["perm3"] = w.perm3;
  } else {
    j["sigma"] = w.sigma;
  }
  return j;
}

PlantedWitness witness_from_json(const nlohmann::json& j) {
  PlantedWitness w;
  try {
    w.partite = j.at("partite").get<bool>();
    w.n = j.at("n").get<std::size_t>();
    w.k = j.at("k").get<std::size_t>();
    w.q = j.at("q").get<std::uint64_t>();
    w.m = j.at("m").get<std::size_t>();
    const GaloisField& f = field_for_order(w.q);
    w.message = PolyFq(f, j.at("message").get<std::vector<std::uint64_t>>());
    w.evalset.field = &f;
    w.evalset.alphas = j.at("alphas").get<std::vector<std::uint64_t>>();
    w.evalset.betas = j.at("betas").get<std::vector<std::uint64_t>>();
    w.evalset.resampled = j.at("resampled").get<std::vector<std::uint8_t>>();
    w.filler_seed = j.at("filler_seed").get<std::uint64_t>();
    if (w.partite) {
      const auto l = j.at("layout").get<std::vector<std::size_t>>();
      if (l.size() != 2) throw std::invalid_argument("layout must have two entries");
      w.layout = {l[0], l[1]};
      w.perm1 = j.at("perm1").get<std::vector<std::size_t>>();
      w.perm2 = j.at("perm2").get<std::vector<std::size_t>>();
      w.perm3 = j.at("perm3").get<std::vector<std::size_t>>();
    } else {
      w.sigma = j.at("sigma").get<std::vector<std::size_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("witness JSON: ") + e.what());
  }
  const std::size_t N = w.evalset.alphas.size();
  if (w.evalset.betas.size() != N || w.evalset.resampled.size() != N)
    throw std::invalid_argument("witness JSON: evaluation arrays differ in length");
  for (auto v : w.evalset.alphas)
    if (v >= w.q) throw std::invalid_argument("witness JSON: alpha outside the field");
  for (auto v : w.evalset.betas)
    if (v >= w.q) throw std::invalid_argument("witness JSON: beta outside the field");
  if (!w.partite && (w.sigma.size() != w.n || !is_permutation_of_range(w.sigma)))
    throw std::invalid_argument("witness JSON: sigma is not a permutation of [n]");
  return w;
}

void save_witness(const std::string& path, const PlantedWitness& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << witness_to_json(w).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

PlantedWitness load_witness(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("witness JSON: ") + e.what());
  }
  return witness_from_json(j);
}

nlohmann::json report_to_json(const DistinguishReport& r) {
  nlohmann::json j;
  j["decision"] = r.decision;
  j["agreement_count"] = r.agreement_count;
  j["guesses_tried"] = r.guesses_tried;
  j["threshold"] = r.threshold;
  j["unique_pairs"] = r.unique_pairs;
  j["accepted_polynomial"] = r.accepted_polynomial ? nlohmann::json(r.accepted_polynomial->coeffs)
                                                   : nlohmann::json(nullptr);
  return j;
}

}  // namespace lowdeg
