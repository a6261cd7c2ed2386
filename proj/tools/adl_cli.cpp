// Command-line front end: dataset generation, the exact solvers, every
// learner, and the acceptance gate, each reporting as JSON on stdout.
//
// Reports are byte-stable for fixed flags and seeds, so wall-clock timing
// never goes to stdout: bench prints timings on stderr and the budget file
// is the one place wall_ms appears.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance.hpp"
#include "adl/bits.hpp"
#include "adl/boosting.hpp"
#include "adl/bruteforce.hpp"
#include "adl/chebyshev.hpp"
#include "adl/csq_weak.hpp"
#include "adl/dataset.hpp"
#include "adl/generators.hpp"
#include "adl/hypothesis.hpp"
#include "adl/l1regression.hpp"
#include "adl/learner_sample.hpp"
#include "adl/learner_sq.hpp"
#include "adl/learner_tradeoff.hpp"
#include "adl/parallel.hpp"
#include "adl/rng.hpp"
#include "adl/sqoracle.hpp"

namespace {

using nlohmann::json;
using namespace adl;

std::string backend_name(SqBackend b) {
  switch (b) {
    case SqBackend::Exact: return "exact";
    case SqBackend::Empirical: return "empirical";
    case SqBackend::Adversarial: return "adversarial";
  }
  return "exact";
}

SqBackend parse_backend(const std::string& s) {
  if (s == "exact") return SqBackend::Exact;
  if (s == "empirical") return SqBackend::Empirical;
  if (s == "adversarial") return SqBackend::Adversarial;
  throw std::invalid_argument("unknown backend '" + s +
                              "' (expected exact, empirical, or adversarial)");
}

std::string stop_name(BoostStop s) {
  switch (s) {
    case BoostStop::MeasureFloor: return "measure-floor";
    case BoostStop::RoundsCap: return "rounds-cap";
    case BoostStop::WeakStall: return "weak-stall";
  }
  return "rounds-cap";
}

BitVector parse_bits(const std::string& s, int n, const std::string& what) {
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument(what + " must be a " + std::to_string(n) +
                                "-character bitstring, got '" + s + "'");
  for (char c : s)
    if (c != '0' && c != '1')
      throw std::invalid_argument(what + " must contain only 0 and 1, got '" + s + "'");
  return BitVector::from_string(s);
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

void emit_report(const json& rep, const std::string& path) {
  write_text(rep.dump(2) + "\n", path);
}

json budget_json(const QueryBudget& b, SqBackend backend) {
  json j;
  j["backend"] = backend_name(backend);
  j["stat_queries"] = b.stat_queries;
  j["cstat_queries"] = b.cstat_queries;
  j["total_queries"] = b.total_queries();
  if (std::isfinite(b.min_tolerance))
    j["min_tolerance"] = b.min_tolerance;
  else
    j["min_tolerance"] = nullptr;
  return j;
}

void write_budget_file(const std::string& path, const QueryBudget& b, SqBackend backend) {
  if (path.empty()) return;
  json q;
  q["stat"] = b.stat_queries;
  q["cstat"] = b.cstat_queries;
  q["total"] = b.total_queries();
  json j;
  j["queries"] = q;
  if (std::isfinite(b.min_tolerance))
    j["min_tolerance"] = b.min_tolerance;
  else
    j["min_tolerance"] = nullptr;
  j["backend"] = backend_name(backend);
  j["wall_ms"] = b.wall_ms;
  emit_report(j, path);
}

// Exact optimum over monotone disjunctions whenever the class is small
// enough to enumerate at desk scale; null otherwise.
json auto_opt(const ExplicitDistribution& d, int jobs) {
  if (d.dimension() > 16) return nullptr;
  OptResult o = opt_enumerate(d, ConceptClass::Monotone, 10000000, jobs);
  json j;
  j["class"] = "monotone";
  j["opt"] = o.opt;
  j["argmin"] = o.support.to_string();
  j["count_enumerated"] = o.count_enumerated;
  return j;
}

json base_report(const std::string& command, json config) {
  json j;
  j["command"] = command;
  j["config"] = std::move(config);
  j["budget"] = nullptr;
  j["degree"] = nullptr;
  j["iterations"] = nullptr;
  j["error"] = nullptr;
  j["opt"] = nullptr;
  return j;
}

struct GenOpts {
  int n = 8;
  std::string out;
  std::string planted;
  double eta = 0.0;
  uint64_t seed = 0;
  std::string marginal = "band";
  int lo = 0;
  int hi = 0;
  double p_heavy = 0.3;
  int r = 0;
  int count_light = 32;
  int count_heavy = 8;
  int light_cap = -1;
  std::string support_file;
};

int run_gen(const GenOpts& o) {
  if (o.n < 1) throw std::invalid_argument("gen: --n must be positive");
  const BitVector S = parse_bits(o.planted, o.n, "gen: --planted");

  MarginalSpec spec;
  if (o.marginal == "band") {
    const int hi = o.hi > 0 ? o.hi : o.n;
    spec = MarginalSpec::weight_band(o.lo, hi);
  } else if (o.marginal == "heavy-light") {
    const int r = o.r > 0 ? o.r : alg1_default_r(o.n);
    spec = MarginalSpec::heavy_light(o.p_heavy, r, o.count_light, o.count_heavy, o.light_cap);
  } else if (o.marginal == "support") {
    if (o.support_file.empty())
      throw std::invalid_argument("gen: --marginal support requires --support-file");
    std::ifstream in(o.support_file);
    if (!in) throw std::runtime_error("cannot open support file '" + o.support_file + "'");
    std::vector<BitVector> pts;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      pts.push_back(parse_bits(line, o.n, "gen: support point"));
    }
    if (pts.empty()) throw std::invalid_argument("gen: support file holds no points");
    spec = MarginalSpec::support_list(std::move(pts));
  } else {
    throw std::invalid_argument("gen: unknown marginal '" + o.marginal +
                                "' (expected band, heavy-light, or support)");
  }

  ExplicitDistribution D = gen_planted(o.n, MonotoneDisjunction{S}, spec, o.eta, o.seed);
  save_distribution(D, o.out);

  json cfg;
  cfg["n"] = o.n;
  cfg["out"] = o.out;
  cfg["planted"] = o.planted;
  cfg["eta"] = o.eta;
  cfg["seed"] = o.seed;
  cfg["marginal"] = o.marginal;
  if (o.marginal == "band") {
    cfg["lo"] = o.lo;
    cfg["hi"] = o.hi > 0 ? o.hi : o.n;
  } else if (o.marginal == "heavy-light") {
    cfg["p_heavy"] = o.p_heavy;
    cfg["r"] = o.r > 0 ? o.r : alg1_default_r(o.n);
    cfg["count_light"] = o.count_light;
    cfg["count_heavy"] = o.count_heavy;
    cfg["light_cap"] = o.light_cap;
  } else {
    cfg["support_file"] = o.support_file;
  }

  json rep = base_report("gen", cfg);
  rep["support_size"] = static_cast<int64_t>(D.support().size());
  rep["error"] = disjunction_error(S, D);
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");
  return 0;
}

struct OptOpts {
  std::string in;
  std::string cls = "monotone";
  int64_t cap = 10000000;
  int jobs = 0;
};

int run_opt(const OptOpts& o) {
  ConceptClass cls;
  if (o.cls == "monotone")
    cls = ConceptClass::Monotone;
  else if (o.cls == "monotone1")
    cls = ConceptClass::MonotoneConst1;
  else if (o.cls == "general")
    cls = ConceptClass::GeneralLiterals;
  else
    throw std::invalid_argument("opt: unknown class '" + o.cls +
                                "' (expected monotone, monotone1, or general)");

  ExplicitDistribution D = load_distribution(o.in);
  OptResult res = opt_enumerate(D, cls, o.cap, o.jobs);

  json cfg;
  cfg["in"] = o.in;
  cfg["class"] = o.cls;
  cfg["cap"] = o.cap;
  cfg["jobs"] = o.jobs;
  json rep = base_report("opt", cfg);
  rep["n"] = D.dimension();
  rep["error"] = res.opt;
  json argmin;
  if (cls == ConceptClass::GeneralLiterals) {
    argmin["pos"] = res.literals.pos.to_string();
    argmin["neg"] = res.literals.neg.to_string();
  } else if (res.is_const1) {
    argmin = "const1";
  } else {
    argmin = res.support.to_string();
  }
  json opt;
  opt["class"] = o.cls;
  opt["opt"] = res.opt;
  opt["argmin"] = argmin;
  opt["count_enumerated"] = res.count_enumerated;
  opt["is_const1"] = res.is_const1;
  rep["opt"] = opt;
  emit_report(rep, "");
  return 0;
}

struct ApproxOpts {
  int r = 25;
  double eps = 0.1;
  bool frontier = false;
  std::vector<int> r_list;
  std::vector<double> eps_list;
  std::string out;
};

int run_approx(const ApproxOpts& o) {
  if (o.frontier) {
    std::vector<int> rs = o.r_list.empty() ? std::vector<int>{4, 9, 25, 64, 100} : o.r_list;
    std::vector<double> es =
        o.eps_list.empty() ? std::vector<double>{0.3, 0.25, 0.1, 0.01} : o.eps_list;
    std::string csv = "r,eps,degree,max_dev\n";
    char row[128];
    for (int r : rs)
      for (double eps : es) {
        UnivariatePoly q = build_approx(r, eps);
        ApproxReport rep = certify_approx(q, r, eps);
        const double dev = std::max(rep.max_dev_at_zero, rep.max_dev_on_band);
        std::snprintf(row, sizeof(row), "%d,%.12g,%d,%.12g\n", r, eps, q.degree(), dev);
        csv += row;
      }
    write_text(csv, o.out);
    return 0;
  }

  UnivariatePoly q = build_approx(o.r, o.eps);
  ApproxReport ap = certify_approx(q, o.r, o.eps);
  json cfg;
  cfg["r"] = o.r;
  cfg["epsilon"] = o.eps;
  json rep = base_report("approx", cfg);
  rep["degree"] = q.degree();
  rep["coefficients"] = q.coefficients();
  rep["max_dev_at_zero"] = ap.max_dev_at_zero;
  rep["max_dev_on_band"] = ap.max_dev_on_band;
  rep["error"] = std::max(ap.max_dev_at_zero, ap.max_dev_on_band);
  rep["pass"] = ap.pass;
  emit_report(rep, o.out);
  return 0;
}

struct L1FitOpts {
  std::string in;
  int degree = 0;
  double eps = 0.1;
  std::string coords;
};

int run_l1fit(const L1FitOpts& o) {
  ExplicitDistribution D = load_distribution(o.in);
  const int n = D.dimension();
  const CoordSet I = o.coords.empty() ? CoordSet::all_ones(n) : parse_bits(o.coords, n, "l1fit: --coords");

  json cfg;
  cfg["in"] = o.in;
  cfg["degree"] = o.degree;
  cfg["epsilon"] = o.eps;
  cfg["coords"] = I.to_string();
  json rep = base_report("l1fit", cfg);
  rep["n"] = n;

  if (o.degree > 0) {
    L1FitResult fit = l1_fit(D, I, o.degree);
    RoundResult rr = round_to_hypothesis(fit.poly, D, default_threshold_grid(fit.poly, D, o.eps));
    rep["loss"] = fit.loss;
    rep["degree"] = fit.degree_used;
    rep["threshold"] = rr.threshold;
    rep["error"] = rr.error;
    rep["hypothesis"] = rr.h.describe();
  } else {
    L1LearnerResult res = l1_regress_learner(D, I, o.eps);
    rep["loss"] = res.loss;
    rep["degree"] = res.degree_used;
    rep["threshold"] = res.threshold;
    rep["error"] = res.train_error;
    rep["hypothesis"] = res.h.describe();
  }
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");
  return 0;
}

struct WeakSampleOpts {
  std::string in;
  double eps = 0.2;
  int repeats = 500;
  int64_t sample_size = 0;
  int r = 0;
  uint64_t seed = 0;
  bool force = false;
  std::string planted;
  std::string trace_out;
};

json alg1_trace_json(const Alg1Trace& t, int trial) {
  json iters = json::array();
  for (const auto& it : t.iterations) {
    json j;
    j["remaining"] = it.remaining;
    j["light_count"] = it.light_count;
    j["heavy_count"] = it.heavy_count;
    j["err1"] = it.err1;
    j["err2"] = it.err2;
    j["accepted"] = it.accepted;
    j["accepted_candidate"] = it.accepted_candidate;
    j["guess"] = it.guess;
    j["removed"] = it.removed;
    iters.push_back(std::move(j));
  }
  json j;
  j["trial"] = trial;
  j["outcome"] = to_string(t.outcome);
  j["iterations"] = std::move(iters);
  return j;
}

Alg1Config weak_sample_config(const WeakSampleOpts& o, int n) {
  Alg1Config cfg;
  cfg.eps = o.eps;
  cfg.r = o.r;
  cfg.sample_size = o.sample_size;
  cfg.repetitions = o.repeats;
  cfg.seed = o.seed;
  cfg.force_correct_guesses = o.force;
  if (o.force) {
    if (o.planted.empty())
      throw std::invalid_argument("weak-sample: --force-correct-guesses requires --planted");
    cfg.planted = parse_bits(o.planted, n, "weak-sample: --planted");
  }
  return cfg;
}

json weak_sample_config_json(const WeakSampleOpts& o) {
  json cfg;
  cfg["in"] = o.in;
  cfg["epsilon"] = o.eps;
  cfg["repeats"] = o.repeats;
  cfg["sample_size"] = o.sample_size;
  cfg["r"] = o.r;
  cfg["seed"] = o.seed;
  cfg["force_correct_guesses"] = o.force;
  cfg["planted"] = o.planted;
  return cfg;
}

int run_weak_sample(const WeakSampleOpts& o) {
  ExplicitDistribution D = load_distribution(o.in);
  Alg1Config cfg = weak_sample_config(o, D.dimension());
  WeakSampleReport res = alg1_weak_learner(D, cfg);

  json rep = base_report("weak-sample", weak_sample_config_json(o));
  rep["n"] = D.dimension();
  rep["held_out_error"] = res.held_out_error;
  rep["winning_trial"] = res.winning_trial;
  rep["trials"] = res.trials;
  rep["runs_accepted"] = res.runs_accepted;
  rep["runs_validated"] = res.runs_validated;
  rep["sample_size"] = res.sample_size;
  if (res.hypothesis) {
    rep["hypothesis"] = res.hypothesis->describe();
    rep["error"] = hypothesis_error(*res.hypothesis, D);
    rep["iterations"] =
        static_cast<int64_t>(res.traces[static_cast<size_t>(res.winning_trial)].iterations.size());
  } else {
    rep["hypothesis"] = nullptr;
  }
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");

  if (!o.trace_out.empty()) {
    std::string lines;
    for (size_t i = 0; i < res.traces.size(); ++i)
      lines += alg1_trace_json(res.traces[i], static_cast<int>(i)).dump() + "\n";
    write_text(lines, o.trace_out);
  }
  return 0;
}

struct StrongSampleOpts {
  WeakSampleOpts weak;
  int64_t rounds = 0;
  int retries = 10;
};

int run_strong_sample(const StrongSampleOpts& o) {
  ExplicitDistribution D = load_distribution(o.weak.in);
  Alg1Config cfg = weak_sample_config(o.weak, D.dimension());
  BoostConfig bc;
  bc.rounds = o.rounds;
  bc.retries = o.retries;
  bc.seed = o.weak.seed;
  StrongSampleResult res = strong_learner_sample(D, o.weak.eps, cfg, bc);

  json cfgj = weak_sample_config_json(o.weak);
  cfgj["rounds"] = o.rounds;
  cfgj["retries"] = o.retries;
  json rep = base_report("strong-sample", cfgj);
  rep["n"] = D.dimension();
  rep["error"] = res.error;
  rep["hypothesis"] = res.hypothesis.describe();
  rep["iterations"] = res.boost.rounds_run;
  json boost;
  boost["train_error"] = res.boost.train_error;
  boost["stop"] = stop_name(res.boost.stop);
  boost["rounds_run"] = res.boost.rounds_run;
  boost["rounds_cap"] = res.boost.rounds_cap;
  boost["floor_used"] = res.boost.floor_used;
  boost["weak_calls"] = res.boost.weak_calls;
  boost["best_single_error"] = res.boost.best_single_error;
  boost["max_density_ratio"] = res.boost.max_density_ratio;
  boost["measure_monotone"] = res.boost.measure_monotone;
  boost["chosen"] = res.boost.chosen;
  rep["boost"] = boost;
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");
  return 0;
}

struct SqLearnOpts {
  std::string in;
  double eps = 0.1;
  int trials = 1;
  int r = 0;
  std::string backend = "exact";
  uint64_t seed = 0;
  bool force = false;
  std::string planted;
  std::string budget_out;
  std::string trace_out;
};

json alg2_trace_json(const Alg2Trace& t, int trial) {
  json iters = json::array();
  for (const auto& it : t.iterations) {
    json j;
    j["branch"] = it.branch == Alg2Branch::HeavyGuess ? "heavy" : "light";
    j["guessed"] = it.guessed;
    j["dropped"] = it.dropped;
    j["p_u_hat"] = it.p_u_hat;
    j["block_mass_hat"] = it.block_mass_hat;
    j["residual_hat"] = it.residual_hat;
    j["finished"] = it.finished;
    j["remaining"] = it.remaining;
    iters.push_back(std::move(j));
  }
  json j;
  j["trial"] = trial;
  j["default_label"] = t.default_label;
  j["iterations"] = std::move(iters);
  return j;
}

int run_sq_learn(const SqLearnOpts& o) {
  ExplicitDistribution D = load_distribution(o.in);
  const int n = D.dimension();
  const SqBackend backend = parse_backend(o.backend);

  Alg2Config cfg;
  cfg.eps = o.eps;
  cfg.r = o.r;
  cfg.seed = o.seed;
  cfg.force_correct_guesses = o.force;
  if (o.force) {
    if (o.planted.empty())
      throw std::invalid_argument("sq-learn: --force-correct-guesses requires --planted");
    cfg.planted = parse_bits(o.planted, n, "sq-learn: --planted");
  }

  SqOracle oracle(D, backend, o.seed);
  Alg2LearnerResult res = alg2_learner(oracle, cfg, o.trials);

  json cfgj;
  cfgj["in"] = o.in;
  cfgj["epsilon"] = o.eps;
  cfgj["trials"] = o.trials;
  cfgj["r"] = o.r;
  cfgj["backend"] = o.backend;
  cfgj["seed"] = o.seed;
  cfgj["force_correct_guesses"] = o.force;
  cfgj["planted"] = o.planted;
  json rep = base_report("sq-learn", cfgj);
  rep["n"] = n;

  // The wrapper runs single passes at eps/3 and validates at eps/3.
  const double run_eps = o.eps / 3.0;
  const int r = cfg.r > 0 ? cfg.r : alg1_default_r(n);
  const int T = alg2_default_T(n, r, run_eps, 4);
  json sched;
  sched["r"] = r;
  sched["T"] = T;
  sched["degree"] = alg2_default_degree(r, T, run_eps, 2);
  rep["schedule"] = sched;
  rep["degree"] = sched["degree"];

  rep["est_error"] = res.est_error;
  rep["error"] = hypothesis_error(*res.hypothesis, D);
  rep["winning_trial"] = res.winning_trial;
  rep["produced"] = res.produced;
  rep["trials"] = res.trials;
  rep["iterations"] = static_cast<int64_t>(
      res.traces[static_cast<size_t>(res.winning_trial)].iterations.size());
  rep["hypothesis"] = res.hypothesis->describe();
  rep["budget"] = budget_json(oracle.budget(), backend);
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");

  write_budget_file(o.budget_out, oracle.budget(), backend);
  if (!o.trace_out.empty()) {
    std::string lines;
    for (size_t i = 0; i < res.traces.size(); ++i)
      lines += alg2_trace_json(res.traces[i], static_cast<int>(i)).dump() + "\n";
    write_text(lines, o.trace_out);
  }
  return 0;
}

struct TradeoffOpts {
  std::string in;
  double alpha = 4.0;
  double eps = 0.1;
  bool relaxed = false;
  int trials = 8;
  std::string backend = "exact";
  uint64_t seed = 0;
  bool force = false;
  std::string planted;
  std::string budget_out;
};

int run_tradeoff(const TradeoffOpts& o) {
  ExplicitDistribution D = load_distribution(o.in);
  const int n = D.dimension();
  const SqBackend backend = parse_backend(o.backend);

  TradeoffConfig cfg;
  cfg.alpha = o.alpha;
  cfg.eps = o.eps;
  cfg.relaxed_constants = o.relaxed;
  cfg.weak_trials = o.trials;
  cfg.seed = o.seed;
  cfg.force_correct_guesses = o.force;
  if (o.force) {
    if (o.planted.empty())
      throw std::invalid_argument("tradeoff: --force-correct-guesses requires --planted");
    cfg.planted = parse_bits(o.planted, n, "tradeoff: --planted");
  }

  SqOracle oracle(D, backend, o.seed);
  TradeoffResult res = tradeoff_learner(oracle, cfg);

  json cfgj;
  cfgj["in"] = o.in;
  cfgj["alpha"] = o.alpha;
  cfgj["epsilon"] = o.eps;
  cfgj["relaxed_constants"] = o.relaxed;
  cfgj["trials"] = o.trials;
  cfgj["backend"] = o.backend;
  cfgj["seed"] = o.seed;
  cfgj["force_correct_guesses"] = o.force;
  cfgj["planted"] = o.planted;
  json rep = base_report("tradeoff", cfgj);
  rep["n"] = n;

  // The weak runs execute at factor 2 alpha; their booster sees the
  // complementary advantage.
  const double alpha3 = 2.0 * o.alpha;
  const int r = alg3_default_r(n, alpha3);
  json sched;
  sched["r"] = r;
  sched["T"] = alg3_default_T(n, r, alpha3, cfg.c);
  sched["degree"] = alg3_default_degree(r, alpha3, cfg.c);
  sched["weak_alpha"] = 0.5 - 1.0 / (2.0 * alpha3);
  sched["gamma"] = static_cast<double>(r) / (16.0 * n);
  rep["schedule"] = sched;
  rep["degree"] = sched["degree"];

  rep["est_error"] = res.est_error;
  rep["error"] = hypothesis_error(res.hypothesis, D);
  rep["chosen_branch"] = res.chosen_branch;
  json branches = json::array();
  int64_t iterations = 0;
  for (const auto& b : res.branches) {
    json bj;
    bj["eps_used"] = b.eps_used;
    bj["completed"] = b.completed;
    bj["failure"] = b.failure;
    bj["est_error"] = b.est_error;
    if (b.completed) {
      bj["train_error"] = b.boost.train_error;
      bj["final_guess"] = b.boost.final_guess;
      bj["total_weak_calls"] = b.boost.total_weak_calls;
      iterations += b.boost.winning.rounds_run;
    }
    branches.push_back(std::move(bj));
  }
  rep["branches"] = branches;
  rep["iterations"] = iterations;
  rep["hypothesis"] = res.hypothesis.describe();
  rep["budget"] = budget_json(oracle.budget(), backend);
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");

  write_budget_file(o.budget_out, oracle.budget(), backend);
  return 0;
}

struct BoostOpts {
  std::string in;
  std::string weak;
  std::string mode = "additive";
  double eps = 0.1;
  double alpha = 4.0;
  int64_t rounds = 0;
  int retries = 10;
  uint64_t seed = 0;
  int64_t sample_size = 0;
  int repeats = 100;
  int trials = 3;
  bool relaxed = false;
  std::string backend = "exact";
  bool force = false;
  std::string planted;
};

int run_boost(const BoostOpts& o) {
  ExplicitDistribution D = load_distribution(o.in);
  const int n = D.dimension();
  const SqBackend backend = parse_backend(o.backend);
  if (o.mode != "additive" && o.mode != "di")
    throw std::invalid_argument("boost: unknown mode '" + o.mode + "' (expected additive or di)");

  CoordSet planted;
  if (o.force) {
    if (o.planted.empty())
      throw std::invalid_argument("boost: --force-correct-guesses requires --planted");
    planted = parse_bits(o.planted, n, "boost: --planted");
  }

  // Registered weak learners; oracle budgets of the query-side learner
  // accumulate across boosting rounds.
  auto spent = std::make_shared<QueryBudget>();
  WeakLearnerHandle handle;
  if (o.weak == "alg1") {
    Alg1Config cfg;
    cfg.eps = o.eps;
    cfg.sample_size = o.sample_size;
    cfg.repetitions = o.repeats;
    cfg.force_correct_guesses = o.force;
    cfg.planted = planted;
    handle.name = "alg1";
    handle.alpha = o.eps;
    handle.gamma = o.eps / 100.0;
    handle.run = [cfg](const ExplicitDistribution& view,
                       uint64_t seed) -> std::optional<Hypothesis> {
      Alg1Config c = cfg;
      c.seed = seed;
      return alg1_weak_learner(view, c).hypothesis;
    };
  } else if (o.weak == "alg3") {
    const double alpha3 = 2.0 * o.alpha;
    const int r = alg3_default_r(n, alpha3);
    Alg3Config cfg;
    cfg.alpha = alpha3;
    cfg.relaxed_constants = o.relaxed;
    cfg.force_correct_guesses = o.force;
    cfg.planted = planted;
    const int trials = o.trials;
    handle.name = "alg3";
    handle.alpha = 0.5 - 1.0 / (2.0 * alpha3);
    handle.gamma = static_cast<double>(r) / (16.0 * n);
    handle.run = [cfg, trials, backend, spent](
                     const ExplicitDistribution& view,
                     uint64_t seed) -> std::optional<Hypothesis> {
      SqOracle vo(view, backend, seed);
      Alg3Config c = cfg;
      c.seed = seed;
      std::optional<Hypothesis> out;
      try {
        out = alg3_weak_learner(vo, c, trials).hypothesis;
      } catch (const std::runtime_error&) {
        out = std::nullopt;
      }
      spent->merge(vo.budget());
      return out;
    };
  } else {
    throw std::invalid_argument("boost: unknown weak learner '" + o.weak +
                                "' (expected alg1 or alg3)");
  }

  BoostConfig bc;
  bc.rounds = o.rounds;
  bc.retries = o.retries;
  bc.seed = o.seed;

  json cfgj;
  cfgj["in"] = o.in;
  cfgj["weak"] = o.weak;
  cfgj["mode"] = o.mode;
  cfgj["epsilon"] = o.eps;
  cfgj["alpha"] = o.alpha;
  cfgj["rounds"] = o.rounds;
  cfgj["retries"] = o.retries;
  cfgj["seed"] = o.seed;
  cfgj["sample_size"] = o.sample_size;
  cfgj["repeats"] = o.repeats;
  cfgj["trials"] = o.trials;
  cfgj["relaxed_constants"] = o.relaxed;
  cfgj["backend"] = o.backend;
  cfgj["force_correct_guesses"] = o.force;
  cfgj["planted"] = o.planted;
  json rep = base_report("boost", cfgj);
  rep["n"] = n;
  rep["weak_alpha"] = handle.alpha;
  rep["weak_gamma"] = handle.gamma;

  if (o.mode == "additive") {
    BoostResult res = aboost(handle, D, handle.alpha, handle.gamma, bc);
    rep["error"] = hypothesis_error(res.hypothesis, D);
    rep["train_error"] = res.train_error;
    rep["stop"] = stop_name(res.stop);
    rep["iterations"] = res.rounds_run;
    rep["rounds_cap"] = res.rounds_cap;
    rep["floor_used"] = res.floor_used;
    rep["weak_calls"] = res.weak_calls;
    rep["chosen"] = res.chosen;
    rep["hypothesis"] = res.hypothesis.describe();
  } else {
    BoostDiResult res = aboost_di(handle, D, handle.alpha, handle.gamma, o.eps, bc);
    rep["error"] = hypothesis_error(res.hypothesis, D);
    rep["train_error"] = res.train_error;
    rep["final_guess"] = res.final_guess;
    rep["iterations"] = res.winning.rounds_run;
    rep["weak_calls"] = res.total_weak_calls;
    json guesses = json::array();
    for (const auto& g : res.guesses) {
      json gj;
      gj["delta_guess"] = g.delta_guess;
      gj["rounds_budget"] = g.rounds_budget;
      gj["weak_calls"] = g.weak_calls;
      gj["train_error"] = g.train_error;
      gj["accepted"] = g.accepted;
      guesses.push_back(std::move(gj));
    }
    rep["guesses"] = guesses;
    rep["hypothesis"] = res.hypothesis.describe();
  }
  if (o.weak == "alg3") rep["budget"] = budget_json(*spent, backend);
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");
  return 0;
}

struct CsqOpts {
  std::string in;
  double eps = 0.25;
  int degree = 0;
  std::string mode = "auto";
  int random_constraints = 512;
  int enumerate_limit = 16;
  std::string backend = "exact";
  uint64_t seed = 0;
  std::string budget_out;
};

int run_csq(const CsqOpts& o) {
  ExplicitDistribution D = load_distribution(o.in);
  const int n = D.dimension();
  const SqBackend backend = parse_backend(o.backend);

  CsqWeakOptions opts;
  opts.seed = o.seed;
  opts.random_constraints = o.random_constraints;
  opts.enumerate_limit = o.enumerate_limit;
  if (o.mode == "auto")
    opts.mode = CsqConstraintMode::Auto;
  else if (o.mode == "enumerate")
    opts.mode = CsqConstraintMode::Enumerate;
  else if (o.mode == "support+random")
    opts.mode = CsqConstraintMode::SupportRandom;
  else
    throw std::invalid_argument("csq-weak: unknown constraint mode '" + o.mode +
                                "' (expected auto, enumerate, or support+random)");
  if (!(o.eps > 0.0 && o.eps < 0.5))
    throw std::invalid_argument("csq-weak: --epsilon must lie in (0, 1/2)");

  const int degree =
      o.degree > 0
          ? o.degree
          : static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n)) *
                                       std::log2(1.0 / o.eps)));

  SqOracle base(D, backend, o.seed);
  CsqOracle oracle(base);
  CsqWeakResult res = csq_weak_learner(oracle, o.eps, degree, opts);

  json cfgj;
  cfgj["in"] = o.in;
  cfgj["epsilon"] = o.eps;
  cfgj["degree"] = o.degree;
  cfgj["constraint_mode"] = o.mode;
  cfgj["random_constraints"] = o.random_constraints;
  cfgj["enumerate_limit"] = o.enumerate_limit;
  cfgj["backend"] = o.backend;
  cfgj["seed"] = o.seed;
  json rep = base_report("csq-weak", cfgj);
  rep["n"] = n;
  rep["degree"] = degree;
  rep["basis_size"] = static_cast<int64_t>(res.lp.alpha.size());
  rep["lp_objective"] = res.lp.objective;
  rep["est_error"] = res.est_error;
  rep["error"] = hypothesis_error(res.hypothesis, D);
  rep["threshold"] = res.threshold;
  rep["iterations"] = res.thresholds;
  rep["hypothesis"] = res.hypothesis.describe();
  rep["budget"] = budget_json(oracle.budget(), backend);
  rep["opt"] = auto_opt(D, 0);
  emit_report(rep, "");

  write_budget_file(o.budget_out, oracle.budget(), backend);
  return 0;
}

struct BenchOpts {
  int n = 22;
  int support = 64;
  int jobs = 0;
  uint64_t seed = 1;
  double eta = 0.1;
};

int run_bench(const BenchOpts& o) {
  if (o.n < 1 || o.n > 24)
    throw std::invalid_argument("bench: --n must lie in [1, 24] to keep enumeration feasible");
  if (o.support < 1) throw std::invalid_argument("bench: --support must be positive");

  Rng rng(o.seed);
  std::unordered_set<std::string> seen;
  std::vector<BitVector> pts;
  while (static_cast<int>(pts.size()) < o.support) {
    BitVector x(o.n);
    for (int i = 0; i < o.n; ++i)
      if (rng.coin()) x.set(i, true);
    if (seen.insert(x.to_string()).second) pts.push_back(x);
  }
  const BitVector S = BitVector::from_indices(o.n, {0, 1, 2});
  ExplicitDistribution D =
      gen_planted(o.n, MonotoneDisjunction{S}, MarginalSpec::support_list(pts), o.eta, o.seed);

  const int64_t cap = int64_t{1} << o.n;
  const auto t0 = std::chrono::steady_clock::now();
  OptResult serial = opt_enumerate_serial(D, ConceptClass::Monotone, cap);
  const auto t1 = std::chrono::steady_clock::now();
  OptResult parallel = opt_enumerate(D, ConceptClass::Monotone, cap, o.jobs);
  const auto t2 = std::chrono::steady_clock::now();

  if (serial.opt != parallel.opt || !(serial.support == parallel.support) ||
      serial.count_enumerated != parallel.count_enumerated)
    throw std::runtime_error("bench: parallel enumeration disagrees with the serial reference");

  const double serial_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double parallel_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  std::fprintf(stderr, "bench: serial %.1f ms, parallel %.1f ms, speedup %.2f, jobs %d\n",
               serial_ms, parallel_ms, serial_ms / std::max(parallel_ms, 1e-9),
               resolve_jobs(o.jobs));

  json cfgj;
  cfgj["n"] = o.n;
  cfgj["support"] = o.support;
  cfgj["jobs"] = o.jobs;
  cfgj["seed"] = o.seed;
  cfgj["eta"] = o.eta;
  json rep = base_report("bench", cfgj);
  rep["error"] = serial.opt;
  json opt;
  opt["class"] = "monotone";
  opt["opt"] = serial.opt;
  opt["argmin"] = serial.support.to_string();
  opt["count_enumerated"] = serial.count_enumerated;
  rep["opt"] = opt;
  rep["equal"] = true;
  emit_report(rep, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agnostic learners for boolean disjunctions"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a planted labeled distribution");
  gen_cmd->add_option("--n", gen.n, "dimension")->required();
  gen_cmd->add_option("--out", gen.out, "output distribution file")->required();
  gen_cmd->add_option("--planted", gen.planted, "planted support bitstring")->required();
  gen_cmd->add_option("--eta", gen.eta, "label flip rate in [0, 1/2)");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--marginal", gen.marginal, "band, heavy-light, or support");
  gen_cmd->add_option("--lo", gen.lo, "band: minimum weight");
  gen_cmd->add_option("--hi", gen.hi, "band: maximum weight (0: n)");
  gen_cmd->add_option("--p-heavy", gen.p_heavy, "heavy-light: heavy-side mass");
  gen_cmd->add_option("--r", gen.r, "heavy-light: weight threshold (0: default schedule)");
  gen_cmd->add_option("--count-light", gen.count_light, "heavy-light: light points");
  gen_cmd->add_option("--count-heavy", gen.count_heavy, "heavy-light: heavy points");
  gen_cmd->add_option("--light-cap", gen.light_cap, "heavy-light: light weight cap (-1: r)");
  gen_cmd->add_option("--support-file", gen.support_file, "support: one bitstring per line");

  OptOpts opt;
  CLI::App* opt_cmd = app.add_subcommand("opt", "exact optimum by concept enumeration");
  opt_cmd->add_option("--in", opt.in, "distribution file")->required();
  opt_cmd->add_option("--class", opt.cls, "monotone, monotone1, or general");
  opt_cmd->add_option("--cap", opt.cap, "max candidates to enumerate");
  opt_cmd->add_option("--jobs", opt.jobs, "worker threads (0: ADL_JOBS or OpenMP default)");

  ApproxOpts approx;
  CLI::App* approx_cmd = app.add_subcommand("approx", "weight-band step approximator");
  approx_cmd->add_option("--r", approx.r, "band endpoint");
  approx_cmd->add_option("--epsilon", approx.eps, "target deviation");
  approx_cmd->add_flag("--frontier", approx.frontier, "emit a CSV over an (r, eps) grid");
  approx_cmd->add_option("--r-list", approx.r_list, "frontier r values")->delimiter(',');
  approx_cmd->add_option("--eps-list", approx.eps_list, "frontier eps values")->delimiter(',');
  approx_cmd->add_option("--out", approx.out, "output file (default stdout)");

  L1FitOpts l1;
  CLI::App* l1_cmd = app.add_subcommand("l1fit", "L1 polynomial regression and rounding");
  l1_cmd->add_option("--in", l1.in, "distribution file")->required();
  l1_cmd->add_option("--degree", l1.degree, "fit degree (0: from the band approximator)");
  l1_cmd->add_option("--epsilon", l1.eps, "grid accuracy / auto-degree target");
  l1_cmd->add_option("--coords", l1.coords, "coordinate mask bitstring (default all)");

  WeakSampleOpts ws;
  CLI::App* ws_cmd = app.add_subcommand("weak-sample", "sample-based weak learner");
  ws_cmd->add_option("--in", ws.in, "distribution file")->required();
  ws_cmd->add_option("--epsilon", ws.eps, "weak accuracy target");
  ws_cmd->add_option("--repeats", ws.repeats, "single-run repetitions");
  ws_cmd->add_option("--sample-size", ws.sample_size, "training sample size (0: VC default)");
  ws_cmd->add_option("--r", ws.r, "weight split (0: default schedule)");
  ws_cmd->add_option("--seed", ws.seed, "sampling seed");
  ws_cmd->add_flag("--force-correct-guesses", ws.force, "guess only outside the planted support");
  ws_cmd->add_option("--planted", ws.planted, "planted support bitstring");
  ws_cmd->add_option("--trace-out", ws.trace_out, "JSON-lines file, one record per trial");

  StrongSampleOpts ss;
  CLI::App* ss_cmd = app.add_subcommand("strong-sample", "boosted sample learner");
  ss_cmd->add_option("--in", ss.weak.in, "distribution file")->required();
  ss_cmd->add_option("--epsilon", ss.weak.eps, "additive accuracy target");
  ss_cmd->add_option("--repeats", ss.weak.repeats, "weak-run repetitions");
  ss_cmd->add_option("--sample-size", ss.weak.sample_size, "training sample size (0: VC default)");
  ss_cmd->add_option("--r", ss.weak.r, "weight split (0: default schedule)");
  ss_cmd->add_option("--seed", ss.weak.seed, "sampling seed");
  ss_cmd->add_flag("--force-correct-guesses", ss.weak.force,
                   "guess only outside the planted support");
  ss_cmd->add_option("--planted", ss.weak.planted, "planted support bitstring");
  ss_cmd->add_option("--rounds", ss.rounds, "boosting rounds cap (0: engine default)");
  ss_cmd->add_option("--retries", ss.retries, "weak attempts per round");

  SqLearnOpts sq;
  CLI::App* sq_cmd = app.add_subcommand("sq-learn", "statistical-query learner");
  sq_cmd->add_option("--in", sq.in, "distribution file")->required();
  sq_cmd->add_option("--epsilon", sq.eps, "additive accuracy target");
  sq_cmd->add_option("--trials", sq.trials, "independent runs to validate");
  sq_cmd->add_option("--r", sq.r, "weight split (0: default schedule)");
  sq_cmd->add_option("--backend", sq.backend, "exact, empirical, or adversarial");
  sq_cmd->add_option("--seed", sq.seed, "oracle and guess seed");
  sq_cmd->add_flag("--force-correct-guesses", sq.force, "guess only inside the planted support");
  sq_cmd->add_option("--planted", sq.planted, "planted support bitstring");
  sq_cmd->add_option("--budget-out", sq.budget_out, "write the query budget JSON here");
  sq_cmd->add_option("--trace-out", sq.trace_out, "JSON-lines file, one record per trial");

  TradeoffOpts to;
  CLI::App* to_cmd = app.add_subcommand("tradeoff", "multiplicative-factor query learner");
  to_cmd->add_option("--in", to.in, "distribution file")->required();
  to_cmd->add_option("--alpha", to.alpha, "target approximation factor");
  to_cmd->add_option("--epsilon", to.eps, "additive slack");
  to_cmd->add_flag("--relaxed-constants", to.relaxed, "allow desk-scale alpha and dimension");
  to_cmd->add_option("--trials", to.trials, "weak trials per boosting call");
  to_cmd->add_option("--backend", to.backend, "exact, empirical, or adversarial");
  to_cmd->add_option("--seed", to.seed, "oracle and guess seed");
  to_cmd->add_flag("--force-correct-guesses", to.force, "guess only inside the planted support");
  to_cmd->add_option("--planted", to.planted, "planted support bitstring");
  to_cmd->add_option("--budget-out", to.budget_out, "write the query budget JSON here");

  BoostOpts bo;
  CLI::App* bo_cmd = app.add_subcommand("boost", "boost a registered weak learner");
  bo_cmd->add_option("--in", bo.in, "distribution file")->required();
  bo_cmd->add_option("--weak", bo.weak, "alg1 or alg3")->required();
  bo_cmd->add_option("--mode", bo.mode, "additive or di");
  bo_cmd->add_option("--epsilon", bo.eps, "accuracy target");
  bo_cmd->add_option("--alpha", bo.alpha, "alg3: approximation factor");
  bo_cmd->add_option("--rounds", bo.rounds, "boosting rounds cap (0: engine default)");
  bo_cmd->add_option("--retries", bo.retries, "weak attempts per round");
  bo_cmd->add_option("--seed", bo.seed, "boosting seed");
  bo_cmd->add_option("--sample-size", bo.sample_size, "alg1: training sample size");
  bo_cmd->add_option("--repeats", bo.repeats, "alg1: single-run repetitions");
  bo_cmd->add_option("--trials", bo.trials, "alg3: weak trials per call");
  bo_cmd->add_flag("--relaxed-constants", bo.relaxed, "alg3: desk-scale constants");
  bo_cmd->add_option("--backend", bo.backend, "alg3: oracle backend");
  bo_cmd->add_flag("--force-correct-guesses", bo.force, "guess from the planted support");
  bo_cmd->add_option("--planted", bo.planted, "planted support bitstring");

  CsqOpts cq;
  CLI::App* cq_cmd = app.add_subcommand("csq-weak", "correlation-query weak learner");
  cq_cmd->add_option("--in", cq.in, "distribution file")->required();
  cq_cmd->add_option("--epsilon", cq.eps, "weak margin target");
  cq_cmd->add_option("--degree", cq.degree, "parity basis degree (0: formula default)");
  cq_cmd->add_option("--constraint-mode", cq.mode, "auto, enumerate, or support+random");
  cq_cmd->add_option("--random-constraints", cq.random_constraints,
                     "extra random constraint points");
  cq_cmd->add_option("--enumerate-limit", cq.enumerate_limit,
                     "max dimension for full enumeration");
  cq_cmd->add_option("--backend", cq.backend, "exact, empirical, or adversarial");
  cq_cmd->add_option("--seed", cq.seed, "oracle and constraint seed");
  cq_cmd->add_option("--budget-out", cq.budget_out, "write the query budget JSON here");

  BenchOpts be;
  CLI::App* be_cmd = app.add_subcommand("bench", "parallel vs serial enumeration check");
  be_cmd->add_option("--n", be.n, "dimension (enumeration is 2^n)");
  be_cmd->add_option("--support", be.support, "support points");
  be_cmd->add_option("--jobs", be.jobs, "worker threads (0: ADL_JOBS or OpenMP default)");
  be_cmd->add_option("--seed", be.seed, "instance seed");
  be_cmd->add_option("--eta", be.eta, "label flip rate");

  std::string suite = "all";
  int accept_jobs = 0;
  CLI::App* ac_cmd = app.add_subcommand("accept", "run the acceptance criteria");
  ac_cmd->add_option("--suite", suite, "all, a criterion key, or a criterion number");
  ac_cmd->add_option("--jobs", accept_jobs, "worker threads for enumeration oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*opt_cmd) return run_opt(opt);
    if (*approx_cmd) return run_approx(approx);
    if (*l1_cmd) return run_l1fit(l1);
    if (*ws_cmd) return run_weak_sample(ws);
    if (*ss_cmd) return run_strong_sample(ss);
    if (*sq_cmd) return run_sq_learn(sq);
    if (*to_cmd) return run_tradeoff(to);
    if (*bo_cmd) return run_boost(bo);
    if (*cq_cmd) return run_csq(cq);
    if (*be_cmd) return run_bench(be);
    if (*ac_cmd) return adl_accept::run_suite(suite, accept_jobs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
