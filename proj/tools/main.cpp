#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "lifo/error.hpp"
#include "lifo/estimators.hpp"
#include "lifo/excursion.hpp"
#include "lifo/export.hpp"
#include "lifo/kernels.hpp"
#include "lifo/oracle.hpp"
#include "lifo/parallel.hpp"
#include "lifo/rng.hpp"
#include "lifo/stats.hpp"
#include "lifo/theory.hpp"
#include "settings.hpp"

#ifndef LIFO_VERSION
#define LIFO_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace lifo;
using lifo::cli::Json;
using lifo::cli::Settings;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Output directory plus the list of files written, for the manifest.
class Run {
 public:
  Run(std::string command, fs::path dir) : command_(std::move(command)), dir_(std::move(dir)), started_(utc_now()) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error("cannot write " + path.string());
      out.imbue(std::locale::classic());
      body(out);
    }
    files_.push_back(name);
  }

  void write_json(const std::string& name, const Json& j) {
    write(name, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  }

  void finish(const Settings& settings) {
    Json m;
    m["subcommand"] = command_;
    m["version"] = LIFO_VERSION;
    m["config"] = settings.echo();
    m["seed"] = settings.echo().contains("seed") ? settings.echo()["seed"] : Json(nullptr);
    m["simd"] = kernels::name(kernels::active().isa);
    m["started"] = started_;
    m["finished"] = utc_now();
    Json outputs = Json::array();
    for (const auto& f : files_) outputs.push_back({{"file", f}, {"sha256", io::sha256_file(dir_ / f)}});
    m["outputs"] = outputs;
    std::ofstream out(dir_ / (command_ + ".manifest.json"), std::ios::binary);
    out << m.dump(2) << '\n';
  }

  const std::string& command() const { return command_; }

 private:
  std::string command_;
  fs::path dir_;
  std::string started_;
  std::vector<std::string> files_;
};

// ------------------------------------------------------------------ parsing helpers

ModelParams model(Settings& s) {
  ModelParams params;
  params.k = static_cast<int>(s.get_int("k", 2));
  params.p = s.get_double("p", 0.0);
  params.validate();
  return params;
}

std::size_t positive(Settings& s, const std::string& key, long long fallback) {
  const long long v = s.get_int(key, fallback);
  if (v <= 0) throw ConfigError(key, "must be at least 1");
  return static_cast<std::size_t>(v);
}

unsigned threads(Settings& s) { return static_cast<unsigned>(positive(s, "threads", 1)); }

theory::DiscrepancyPair parse_pair(const std::string& key, const std::string& text, int k) {
  const auto dash = text.find('-');
  theory::DiscrepancyPair pr;
  try {
    if (dash == std::string::npos) throw std::invalid_argument("missing '-'");
    std::size_t used = 0;
    pr.i = std::stoi(text.substr(0, dash), &used);
    if (used != dash) throw std::invalid_argument("junk");
    const std::string rest = text.substr(dash + 1);
    pr.j = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("junk");
  } catch (const std::exception&) {
    throw ConfigError(key, "expected i-j, got '" + text + "'");
  }
  if (pr.i == pr.j || pr.i < 1 || pr.j < 1 || pr.i > k || pr.j > k)
    throw ConfigError(key, "indices must be distinct and in 1.." + std::to_string(k));
  return pr;
}

std::string pair_name(theory::DiscrepancyPair pr) { return "D_" + std::to_string(pr.i) + "_" + std::to_string(pr.j); }

double inner(theory::DiscrepancyPair a, theory::DiscrepancyPair b) {
  auto e = [](theory::DiscrepancyPair pr, int t) { return (pr.i == t ? 1 : 0) - (pr.j == t ? 1 : 0); };
  const int hi = std::max({a.i, a.j, b.i, b.j});
  double s = 0;
  for (int t = 1; t <= hi; ++t) s += e(a, t) * e(b, t);
  return s;
}

Json estimate_json(const Estimate& e) {
  return {{"value", e.value}, {"stderr", e.std_error}, {"trials", e.trials}, {"truncated_mass", e.truncated_mass}};
}

ExperimentConfig experiment(Settings& s, const char* count_key = "trials", long long count_default = 100) {
  ExperimentConfig c;
  c.params = model(s);
  c.seed = s.require_seed();
  c.threads = threads(s);
  c.trials = positive(s, count_key, count_default);
  return c;
}

void write_estimates(Run& run, const std::vector<io::EstimateRow>& rows) {
  run.write(run.command() + ".csv", [&](std::ostream& out) { io::write_estimates_csv(out, rows); });
}

Json summary_head(const Settings& s) {
  Json j;
  j["version"] = LIFO_VERSION;
  // The worker count goes to the manifest only, so data files stay
  // byte-identical across --threads.
  Json config = s.echo();
  config.erase("threads");
  j["config"] = std::move(config);
  return j;
}

// ------------------------------------------------------------------ commands

int cmd_simulate(Settings& s, Run& run) {
  const ModelParams params = model(s);
  const PastMode mode = parse_past_mode(s.get_string("past", "exact"));
  const std::uint64_t cap = s.get_u64("past-cap", 10'000'000'000ULL);
  const auto inject = s.find_string("inject");
  Trajectory tr;
  if (inject) {
    const Word forward = parse_word(*inject, params.k);
    std::uint64_t seed = 0;
    if (mode == PastMode::ExactMu) seed = s.require_seed();
    else if (s.has("seed")) seed = s.get_u64("seed", 0);
    if (s.has("n") && static_cast<std::size_t>(s.get_int("n", 0)) != forward.size())
      throw ConfigError("n", "does not match the length of --inject");
    PastStack past = mode == PastMode::Rotating ? PastStack::rotating(params.k)
                                                : PastStack::exact_mu(params, derive_seed(seed, 1), cap);
    tr = simulate_injected(params, forward, std::move(past));
    tr.seed = seed;
  } else {
    const std::uint64_t seed = s.require_seed();
    tr = simulate_trajectory(params, positive(s, "n", 1000), seed, mode, cap);
  }
  run.write("trajectory.csv", [&](std::ostream& out) { io::write_trajectory_csv(out, tr); });
  run.write("events.jsonl", [&](std::ostream& out) { io::write_event_log(out, tr); });
  Json summary = summary_head(s);
  summary["steps"] = tr.n;
  summary["truncated"] = tr.truncated;
  summary["flex_events"] = tr.flex_events.size();
  run.write_json("simulate.summary.json", summary);
  return kExitOk;
}

int cmd_covariance(Settings& s, Run& run) {
  ExperimentConfig c = experiment(s);
  c.n = positive(s, "n", 1000);
  c.past_mode = parse_past_mode(s.get_string("past", "exact"));
  c.caps.past = s.get_u64("past-cap", c.caps.past);
  std::vector<CovarianceRequest> requests;
  for (const auto& item : s.get_list("pairs", {})) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("pairs", "expected i-j:l-m, got '" + item + "'");
    requests.push_back({parse_pair("pairs", item.substr(0, colon), c.params.k),
                        parse_pair("pairs", item.substr(colon + 1), c.params.k)});
  }
  if (requests.empty()) requests = adjacent_requests(c.params.k);
  c.validate();

  const auto trials = run_trials(c);
  const auto estimates = covariance_from_trials(trials, c.n, requests);
  const double alpha = theory::alpha(c.params.k, c.params.p);
  std::vector<io::EstimateRow> rows;
  Json summary = summary_head(s);
  summary["alpha"] = alpha;
  Json items = Json::array();
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const std::string name = "cov_" + pair_name(requests[r].a) + "_" + pair_name(requests[r].b);
    rows.push_back({name, c.params.k, c.params.p, c.n, estimates[r]});
    Json item = estimate_json(estimates[r]);
    item["quantity"] = name;
    item["prediction"] = alpha / 2.0 * inner(requests[r].a, requests[r].b);
    items.push_back(item);
  }
  const GaussianityReport g = gaussianity_from_trials(trials, c.n);
  const std::size_t kept = g.total_samples.size();
  const double truncated = trials.empty() ? 0.0 : 1.0 - static_cast<double>(kept) / static_cast<double>(trials.size());
  rows.push_back({"ks_C", c.params.k, c.params.p, c.n, {g.ks_total, 0.0, kept, truncated}});
  rows.push_back({"ks_D_1_2", c.params.k, c.params.p, c.n, {g.ks_discrepancy, 0.0, kept, truncated}});
  rows.push_back({"corr_C_D_1_2", c.params.k, c.params.p, c.n, g.correlation});
  summary["estimates"] = items;
  summary["ks_C"] = g.ks_total;
  summary["ks_D_1_2"] = g.ks_discrepancy;
  summary["ks_critical_5pct"] = kept ? stats::ks_critical(kept) : 0.0;
  summary["corr_C_D_1_2"] = estimate_json(g.correlation);
  write_estimates(run, rows);
  run.write_json("covariance.summary.json", summary);
  return kExitOk;
}

int cmd_chi(Settings& s, Run& run) {
  ExperimentConfig c = experiment(s, "samples", 100000);
  c.caps.j = positive(s, "jcap", static_cast<long long>(c.caps.j));
  const Estimate e = estimate_chi(c);
  write_estimates(run, {{"chi", c.params.k, c.params.p, 0, e}});
  Json summary = summary_head(s);
  summary["chi"] = estimate_json(e);
  summary["prediction"] = theory::chi_prediction(c.params.k, c.params.p);
  run.write_json("chi.summary.json", summary);
  return kExitOk;
}

int cmd_edd(Settings& s, Run& run) {
  ExperimentConfig c = experiment(s, "samples", 100000);
  c.caps.j = positive(s, "jcap", static_cast<long long>(c.caps.j));
  const auto a = parse_pair("a", s.get_string("a", "1-2"), c.params.k);
  const auto b = parse_pair("b", s.get_string("b", "1-2"), c.params.k);
  const Estimate e = estimate_edd(c, a, b);
  const std::string name = "edd_" + pair_name(a) + "_" + pair_name(b);
  write_estimates(run, {{name, c.params.k, c.params.p, 0, e}});
  Json summary = summary_head(s);
  summary[name] = estimate_json(e);
  run.write_json("edd.summary.json", summary);
  return kExitOk;
}

int cmd_fractions(Settings& s, Run& run) {
  ExperimentConfig c = experiment(s);
  c.caps.past = s.get_u64("past-cap", c.caps.past);
  c.caps.forward = static_cast<std::size_t>(s.get_u64("forward-cap", c.caps.forward));
  std::vector<std::size_t> prefixes;
  for (const auto& t : s.get_list("prefixes", {"1000", "10000"})) {
    try {
      const long long v = std::stoll(t);
      if (v <= 0) throw std::out_of_range("non-positive");
      prefixes.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("prefixes", "expected positive integers, got '" + t + "'");
    }
  }
  const std::size_t depth = positive(s, "depth", 10000);
  c.validate();
  const FractionReport r = estimate_fractions(c, prefixes, depth);
  std::vector<io::EstimateRow> rows;
  Json summary = summary_head(s);
  Json flex = Json::array(), types = Json::array();
  for (std::size_t q = 0; q < prefixes.size(); ++q) {
    rows.push_back({"flex_fraction", c.params.k, c.params.p, prefixes[q], r.flex[q]});
    Json item = estimate_json(r.flex[q]);
    item["prefix"] = prefixes[q];
    flex.push_back(item);
  }
  for (int t = 1; t <= c.params.k; ++t) {
    rows.push_back({"type_fraction_" + std::to_string(t), c.params.k, c.params.p, depth, r.types[t - 1]});
    Json item = estimate_json(r.types[t - 1]);
    item["type"] = t;
    types.push_back(item);
  }
  summary["flex_fraction"] = flex;
  summary["type_fraction"] = types;
  write_estimates(run, rows);
  run.write_json("fractions.summary.json", summary);
  return kExitOk;
}

int cmd_tails(Settings& s, Run& run) {
  ExperimentConfig c = experiment(s);
  c.n = positive(s, "n", 10000);
  std::vector<double> grid;
  for (const auto& t : s.get_list("a-grid", {"0.5", "1", "1.5", "2", "3", "4"})) {
    try {
      grid.push_back(std::stod(t));
    } catch (const std::exception&) {
      throw ConfigError("a-grid", "expected numbers, got '" + t + "'");
    }
  }
  const auto curve = tail_curve(c, grid);
  std::vector<io::EstimateRow> rows;
  Json points = Json::array();
  for (const TailPoint& pt : curve) {
    const std::string a = io::format_double(pt.a);
    rows.push_back({"tail_max_abs_C@a=" + a, c.params.k, c.params.p, c.n, pt.max_total});
    rows.push_back({"tail_window_length@a=" + a, c.params.k, c.params.p, c.n, pt.window_length});
    points.push_back({{"a", pt.a}, {"max_abs_C", estimate_json(pt.max_total)},
                      {"window_length", estimate_json(pt.window_length)}});
  }
  Json summary = summary_head(s);
  summary["curve"] = points;
  write_estimates(run, rows);
  run.write_json("tails.summary.json", summary);
  return kExitOk;
}

int cmd_excursions(Settings& s, Run& run) {
  ExperimentConfig c = experiment(s);
  c.caps.excursion = static_cast<std::size_t>(s.get_u64("excursion-cap", c.caps.excursion));
  const Estimate e = estimate_excursion_length(c);
  write_estimates(run, {{"excursion_length", c.params.k, c.params.p, 0, e}});
  Json summary = summary_head(s);
  summary["excursion_length"] = estimate_json(e);
  run.write_json("excursions.summary.json", summary);
  return kExitOk;
}

int cmd_records(Settings& s, Run& run) {
  const ModelParams params = model(s);
  const std::uint64_t seed = s.require_seed();
  const std::size_t horizon = positive(s, "horizon", 1000);
  SymbolFeed fwd(params, derive_seed(seed, 0)), bwd(params, derive_seed(seed, 1));
  Word forward(horizon), backward(horizon + 1);
  for (Symbol& x : forward) x = fwd.next();
  for (Symbol& x : backward) x = bwd.next();
  const RecordSequences r = record_sequences(forward, backward, params.k, horizon);
  Json out = summary_head(s);
  out["empty_order"] = r.empty_order;
  out["empty_burger"] = r.empty_burger;
  out["left_min"] = r.left_min;
  out["right_min"] = r.right_min;
  out["left_filtered"] = r.left_filtered;
  out["right_filtered"] = r.right_filtered;
  run.write_json("records.json", out);
  return kExitOk;
}

Json matrix_json(const theory::Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

int cmd_theory(Settings& s, Run& run) {
  const ModelParams params = model(s);
  const auto cm = theory::covariance_model(params.k, params.p);
  Json out;
  out["k"] = params.k;
  out["p"] = params.p;
  out["alpha"] = cm.alpha;
  out["critical_p"] = theory::critical_p(params.k);
  out["regime"] = theory::at_or_below_critical(params.k, params.p) ? "at_or_below_critical" : "above_critical";
  out["chi"] = theory::chi_prediction(params.k, params.p);
  out["cov_A"] = matrix_json(cm.cov_a);
  out["cov_A_tilde"] = matrix_json(cm.cov_a_tilde);
  out["M"] = matrix_json(cm.m.cast<double>());
  std::cout << out.dump(2) << '\n';
  run.write_json("theory.json", out);
  return kExitOk;
}

int cmd_enumerate(Settings& s, Run& run) {
  oracle::EnumerationSpec spec;
  spec.k = static_cast<int>(s.get_int("k", 2));
  spec.p = oracle::Probability::parse(s.get_string("p", "0"));
  spec.n = positive(s, "n", 1);
  spec.functional = oracle::parse_functional(s.get_string("functional", "product-at-zero"));
  spec.policy = oracle::parse_f_policy(s.get_string("policy", "resolve-in-window"));
  if (spec.k < 1 || spec.k > kMaxTypes) throw ConfigError("k", "out of range");
  spec.a = parse_pair("a", s.get_string("a", "1-2"), spec.k);
  spec.b = parse_pair("b", s.get_string("b", "1-2"), spec.k);
  const auto r = oracle::exact_expectation(spec);
  auto value = [](const oracle::ExactValue& v) {
    Json j{{"value", v.value}};
    j["exact"] = v.exact ? Json(v.text()) : Json(nullptr);
    return j;
  };
  Json out = summary_head(s);
  out["conditional"] = value(r.conditional);
  out["partial"] = value(r.partial);
  out["residual"] = value(r.residual);
  out["covered"] = value(r.covered);
  out["states"] = r.states;
  std::cout << out.dump(2) << '\n';
  run.write_json("enumerate.json", out);
  return kExitOk;
}

int cmd_verify(Settings& s, Run& run) {
  const std::vector<std::string> known{"reduction", "increments", "neighbors", "example-stack", "m-relation"};
  std::vector<std::string> suites = s.get_list("suite", {"all"});
  if (std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = known;
  for (const auto& name : suites)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError("suite", "unknown suite '" + name + "'");

  Json reports = Json::object();
  bool ok = true;
  for (const auto& name : suites) {
    Json r;
    if (name == "reduction") {
      const int k = static_cast<int>(s.get_int("k", 2));
      const auto rep = oracle::verify_reduction(k, static_cast<std::size_t>(s.get_int("maxlen", 6)), threads(s));
      r = {{"k", rep.k}, {"max_len", rep.max_len}, {"words", rep.words},
           {"append_mismatches", rep.append_mismatches}, {"normal_form_failures", rep.normal_form_failures},
           {"prepend_mismatches", rep.prepend_mismatches}, {"splits", rep.splits},
           {"associativity_failures", rep.associativity_failures}, {"pass", rep.ok()}};
      ok &= rep.ok();
    } else if (name == "increments") {
      const int k = static_cast<int>(s.get_int("k", 2));
      const auto rep = oracle::verify_increment_bound(k, positive(s, "N", 5));
      r = {{"k", rep.k}, {"N", rep.n}, {"sequences", rep.sequences}, {"substitutions", rep.substitutions},
           {"max", rep.max_change}, {"violations", rep.violations}, {"witness", format_word(rep.witness)},
           {"witness_position", rep.witness_position}, {"witness_replacement", to_string(rep.witness_replacement)},
           {"pass", rep.ok()}};
      ok &= rep.ok();
    } else if (name == "neighbors") {
      const auto rep = oracle::verify_neighbor_closure(positive(s, "trials", 100000), positive(s, "max-stack", 12),
                                                       static_cast<std::size_t>(s.get_int("max-word", 12)),
                                                       s.require_seed(), static_cast<int>(s.get_int("max-k", 4)));
      r = {{"cases", rep.cases}, {"neighbor_failures", rep.neighbor_failures},
           {"discrepancy_failures", rep.discrepancy_failures}, {"pass", rep.ok()}};
      ok &= rep.ok();
    } else if (name == "example-stack") {
      const auto rep = oracle::verify_example_stack(static_cast<std::size_t>(s.get_int("example-max-word", 6)));
      r = {{"cases", rep.cases}, {"neighbor_failures", rep.neighbor_failures},
           {"discrepancy_failures", rep.discrepancy_failures}, {"pass", rep.ok()}};
      ok &= rep.ok();
    } else {
      const std::uint64_t seed = s.require_seed();
      const std::size_t count = positive(s, "trajectories", 100);
      const std::size_t n = positive(s, "trajectory-n", 1000);
      const auto trajectories = run_indexed<Trajectory>(count, threads(s), [&](std::size_t i) {
        const std::uint64_t ts = derive_seed(seed, i);
        ModelParams params{2 + static_cast<int>(i % 3), CounterRng(derive_seed(ts, 2)).uniform()};
        return simulate_trajectory(params, n, ts, PastMode::ExactMu, 100'000'000);
      });
      const auto rep = oracle::verify_m_relation(trajectories);
      r = {{"trajectories", rep.trajectories}, {"steps", rep.steps}, {"mismatches", rep.mismatches},
           {"pass", rep.ok()}};
      ok &= rep.ok();
    }
    reports[name] = r;
  }
  Json out = summary_head(s);
  out["suites"] = reports;
  out["pass"] = ok;
  std::cout << out.dump(2) << '\n';
  run.write_json("verify.json", out);
  return ok ? kExitOk : kExitViolation;
}

struct Command {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> options;
  std::function<int(Settings&, Run&)> handler;
};

const std::pair<const char*, const char*> kK{"k", "number of burger types"};
const std::pair<const char*, const char*> kP{"p", "probability weight of F (decimal or a/b)"};
const std::pair<const char*, const char*> kN{"n", "number of forward steps"};
const std::pair<const char*, const char*> kSeed{"seed", "master seed (required for random runs)"};
const std::pair<const char*, const char*> kThreads{"threads", "worker threads; results do not depend on it"};
const std::pair<const char*, const char*> kTrials{"trials", "independent trials"};
const std::pair<const char*, const char*> kPast{"past", "past stack: exact or rotating"};
const std::pair<const char*, const char*> kPastCap{"past-cap", "max backward draws per past stack"};

std::vector<Command> commands() {
  return {
      {"simulate", "one trajectory: CSV of Y, counts and discrepancies, plus the F event log",
       {kK, kP, kN, kSeed, kThreads, kPast, kPastCap, {"inject", "explicit forward word, e.g. \"B1 B2 O1 F\""}},
       cmd_simulate},
      {"covariance", "Cov(D^a_n, D^b_n)/n plus normality diagnostics",
       {kK, kP, kN, kSeed, kThreads, kTrials, kPast, kPastCap, {"pairs", "requests i-j:l-m, comma separated"}},
       cmd_covariance},
      {"chi", "estimate chi = E|X(-J,-1)|",
       {kK, kP, kSeed, kThreads, {"samples", "number of J samples"}, {"jcap", "max backward steps per sample"}},
       cmd_chi},
      {"edd", "estimate E[D^a(0) D^b(-J,-1)]",
       {kK, kP, kSeed, kThreads, {"samples", "number of J samples"}, {"jcap", "max backward steps per sample"},
        {"a", "pair i-j"}, {"b", "pair l-m"}},
       cmd_edd},
      {"fractions", "F fraction in the forward order segment and type fractions of the past stack",
       {kK, kP, kSeed, kThreads, kTrials, kPastCap, {"prefixes", "order-segment prefix sizes, comma separated"},
        {"depth", "past-stack depth for type fractions"}, {"forward-cap", "max forward steps per trial"}},
       cmd_fractions},
      {"tails", "P(max|C| > a sqrt n) and P(|X(1,n)| > a sqrt n)",
       {kK, kP, kN, kSeed, kThreads, kTrials, {"a-grid", "thresholds a, comma separated"}},
       cmd_tails},
      {"excursions", "mean excursion length",
       {kK, kP, kSeed, kThreads, kTrials, {"excursion-cap", "max forward steps per excursion"}},
       cmd_excursions},
      {"records", "record sequences of one realization", {kK, kP, kSeed, kThreads, {"horizon", "steps on each side"}},
       cmd_records},
      {"theory", "closed-form quantities as JSON", {kK, kP, kThreads}, cmd_theory},
      {"enumerate", "exact expectation by enumeration",
       {kK, kP, kThreads, {"n", "window length"}, {"functional", "product-at-zero or window-covariance"},
        {"a", "pair i-j"}, {"b", "pair l-m"}, {"policy", "forbid or resolve-in-window"}},
       cmd_enumerate},
      {"verify", "exhaustive and randomized property suites",
       {kK, kSeed, kThreads, kTrials,
        {"suite", "reduction, increments, neighbors, example-stack, m-relation or all; comma separated"},
        {"maxlen", "reduction: max word length"}, {"N", "increments: sequence length"},
        {"max-stack", "neighbors: max stack size"}, {"max-word", "neighbors: max word length"},
        {"max-k", "neighbors: largest k"}, {"example-max-word", "example-stack: max word length"},
        {"trajectories", "m-relation: number of trajectories"}, {"trajectory-n", "m-relation: steps each"}},
       cmd_verify},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LIFO inventory model simulator and verifier"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "JSON config file; flags override it");
  app.add_option("--out", out_dir, "output directory");

  const auto table = commands();
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> given;
  std::map<std::string, CLI::App*> subs;
  for (const Command& c : table) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    auto& store = raw[c.name];
    for (const auto& [name, help] : c.options) {
      CLI::Option* opt = sub->add_option(std::string("--") + name, store[name], help);
      given[c.name].emplace_back(name, opt);
    }
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option("--out", out_dir, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  for (const Command& c : table) {
    if (!subs[c.name]->parsed()) continue;
    try {
      Json file = nullptr;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("config", "cannot open " + config_path);
        try {
          file = Json::parse(in);
        } catch (const Json::parse_error& e) {
          throw ConfigError("config", e.what());
        }
      }
      std::map<std::string, std::string> flags;
      for (const auto& [name, opt] : given[c.name])
        if (opt->count() > 0) flags[name] = raw[c.name][name];
      Settings settings(std::move(file), std::move(flags));
      Run run(c.name, out_dir);
      const int code = c.handler(settings, run);
      run.finish(settings);
      return code;
    } catch (const ConfigError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const lifo::ParseError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const GuardViolation& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitViolation;
    }
  }
  return kExitUsage;
}
