#pragma once

// Seeded Monte Carlo campaigns that compare sampled maximum degrees/loads
// against their predicted windows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "planardeg/balls_bins.hpp"
#include "planardeg/dense_ops.hpp"
#include "planardeg/errors.hpp"
#include "planardeg/graph.hpp"
#include "planardeg/nu.hpp"
#include "planardeg/pruefer.hpp"
#include "planardeg/random.hpp"
#include "planardeg/samplers.hpp"

namespace planardeg {

using Json = nlohmann::json;

enum class ExperimentKind {
  bins_concentration,
  gnm_maxdegree,
  noncomplex_maxdegree,
  forest_maxdegree,
  complexpart_maxdegree,
  root_gap,
  decomposition_stats,
  dense_ratio,
};

NLOHMANN_JSON_SERIALIZE_ENUM(ExperimentKind, {
                                                 {ExperimentKind::bins_concentration, "bins_concentration"},
                                                 {ExperimentKind::gnm_maxdegree, "gnm_maxdegree"},
                                                 {ExperimentKind::noncomplex_maxdegree, "noncomplex_maxdegree"},
                                                 {ExperimentKind::forest_maxdegree, "forest_maxdegree"},
                                                 {ExperimentKind::complexpart_maxdegree, "complexpart_maxdegree"},
                                                 {ExperimentKind::root_gap, "root_gap"},
                                                 {ExperimentKind::decomposition_stats, "decomposition_stats"},
                                                 {ExperimentKind::dense_ratio, "dense_ratio"},
                                             })

/// How the predicted window of a sparse-graph experiment is formed:
/// [floor(nu - eps), floor(nu + eps)] or {D*, D* + 1} with D* = floor(nu - 1/3).
enum class IntervalMode { window, two_point };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::bins_concentration;
  std::vector<std::uint64_t> n;          // one or more orders
  std::optional<std::uint64_t> k;        // balls (default n)
  std::optional<std::uint64_t> m;        // edges (default floor(m_ratio * n))
  double m_ratio = 0.5;
  std::optional<std::uint64_t> t;        // roots
  std::optional<double> t_exponent;      // t = ceil(n^e) when t is absent
  std::optional<std::uint64_t> q;        // complex part order (default n)
  std::optional<SimpleGraph> core;       // complex part core on [v(C)]
  std::uint64_t trials = 1;
  double eps = 0.25;
  std::uint64_t seed = 0;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  IntervalMode interval = IntervalMode::window;
  bool planar = true;                    // dense_ratio only
  std::optional<double> min_hit_rate;    // asserted thresholds
  std::optional<double> min_acceptance_rate;

  void validate() const {
    if (trials < 1) throw ValidationError("config: trials must be >= 1");
    if (!(eps > 0.0)) throw ValidationError("config: eps must be > 0");
    if (n.empty()) throw ValidationError("config: n is required");
    for (auto x : n) {
      if (x < 1) throw ValidationError("config: n must be positive");
    }
    if (experiment == ExperimentKind::complexpart_maxdegree && !core) {
      throw ValidationError("config: complexpart_maxdegree needs a core");
    }
  }
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::int64_t observed = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool in_interval = false;
  Json aux = Json::object();

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline void to_json(Json& j, const TrialRecord& r) {
  j = Json{{"trial", r.trial}, {"observed", r.observed}, {"lo", r.lo},
           {"hi", r.hi},       {"in_interval", r.in_interval}, {"aux", r.aux}};
}

inline void from_json(const Json& j, TrialRecord& r) {
  j.at("trial").get_to(r.trial);
  j.at("observed").get_to(r.observed);
  j.at("lo").get_to(r.lo);
  j.at("hi").get_to(r.hi);
  j.at("in_interval").get_to(r.in_interval);
  r.aux = j.value("aux", Json::object());
}

struct ExperimentResult {
  std::vector<TrialRecord> records;
  Json summary = Json::object();
  bool passed = true;  // every asserted threshold met
};

namespace detail {

inline SimpleGraph core_from_json(const Json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  return SimpleGraph(j.at("n").get<Vertex>(), std::move(edges));
}

inline std::int64_t floor_i(double x) { return static_cast<std::int64_t>(std::floor(x)); }

inline double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

inline Json describe(std::vector<double> xs) {
  if (xs.empty()) return Json{{"count", 0}};
  std::sort(xs.begin(), xs.end());
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
  return Json{{"count", xs.size()}, {"min", xs.front()},       {"median", median(xs)},
              {"max", xs.back()},   {"mean", mean},            {"stddev", std::sqrt(var)}};
}

}  // namespace detail

/// Config schema: see README ("experiment run").
inline ExperimentConfig config_from_json(const Json& j, const std::string& base_dir = ".") {
  ExperimentConfig c;
  j.at("experiment").get_to(c.experiment);
  if (Json(c.experiment) != j.at("experiment")) {
    throw ValidationError("config: unknown experiment " + j.at("experiment").dump());
  }
  const Json& n = j.at("n");
  if (n.is_array()) {
    for (const auto& x : n) c.n.push_back(x.get<std::uint64_t>());
  } else {
    c.n.push_back(n.get<std::uint64_t>());
  }
  if (j.contains("k")) c.k = j["k"].get<std::uint64_t>();
  if (j.contains("m")) c.m = j["m"].get<std::uint64_t>();
  c.m_ratio = j.value("m_ratio", c.m_ratio);
  if (j.contains("t")) c.t = j["t"].get<std::uint64_t>();
  if (j.contains("t_exponent")) c.t_exponent = j["t_exponent"].get<double>();
  if (j.contains("q")) c.q = j["q"].get<std::uint64_t>();
  if (j.contains("core")) c.core = detail::core_from_json(j["core"]);
  if (j.contains("core_file")) {
    std::string path = j["core_file"].get<std::string>();
    if (!path.empty() && path.front() != '/') path = base_dir + "/" + path;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open core_file " + path);
    auto [cn, edges] = read_edge_list(in);
    c.core = SimpleGraph(cn, std::move(edges));
  }
  c.trials = j.value("trials", c.trials);
  c.eps = j.value("eps", c.eps);
  c.seed = j.value("seed", c.seed);
  c.max_attempts = j.value("max_attempts", c.max_attempts);
  const std::string interval = j.value("interval", std::string("window"));
  if (interval == "window") {
    c.interval = IntervalMode::window;
  } else if (interval == "two_point") {
    c.interval = IntervalMode::two_point;
  } else {
    throw ValidationError("config: interval must be 'window' or 'two_point'");
  }
  c.planar = j.value("planar", c.planar);
  if (j.contains("min_hit_rate")) c.min_hit_rate = j["min_hit_rate"].get<double>();
  if (j.contains("min_acceptance_rate")) c.min_acceptance_rate = j["min_acceptance_rate"].get<double>();
  c.validate();
  return c;
}

/// Default worker count: $PLANARDEG_JOBS, else the hardware concurrency.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("PLANARDEG_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

struct TrialPlan {
  std::uint64_t n = 0;
  std::uint64_t index = 0;  // global trial index
};

inline std::uint64_t edges_for(const ExperimentConfig& c, std::uint64_t n) {
  return c.m ? *c.m : static_cast<std::uint64_t>(std::floor(c.m_ratio * static_cast<double>(n)));
}

inline std::uint64_t roots_for(const ExperimentConfig& c, std::uint64_t n) {
  if (c.t) return *c.t;
  if (c.t_exponent) return static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), *c.t_exponent)));
  return 1;
}

inline std::pair<std::int64_t, std::int64_t> sparse_window(const ExperimentConfig& c, std::uint64_t n,
                                                           std::uint64_t m) {
  const PredictedInterval p = predicted_interval_sparse(n, m, c.eps);
  if (c.interval == IntervalMode::two_point) return {p.delta_star, p.delta_star + 1};
  return {p.lo, p.hi};
}

// Forest / complex part window: [floor(nu_hat - eps) + 1, floor(nu_hat + eps) + 1].
inline std::pair<std::int64_t, std::int64_t> shifted_window(double eps, std::uint64_t order) {
  const double v = nu_hat(order);
  return {floor_i(v - eps) + 1, floor_i(v + eps) + 1};
}

inline void finish(TrialRecord& r) { r.in_interval = r.lo <= r.observed && r.observed <= r.hi; }

inline void record_failure(TrialRecord& r, const RejectionReport& rep) {
  r.observed = -1;
  r.aux["failed"] = true;
  r.aux["attempts"] = rep.attempts;
  r.aux["reject_loop"] = rep.loop;
  r.aux["reject_parallel_edge"] = rep.parallel_edge;
  r.aux["reject_complex_component"] = rep.complex_component;
}

inline void record_report(TrialRecord& r, const RejectionReport& rep) {
  r.aux["attempts"] = rep.attempts;
  r.aux["reject_loop"] = rep.loop;
  r.aux["reject_parallel_edge"] = rep.parallel_edge;
  r.aux["reject_complex_component"] = rep.complex_component;
}

inline TrialRecord run_trial(const ExperimentConfig& c, const TrialPlan& plan) {
  Engine gen(derive_seed(c.seed, plan.index));
  TrialRecord r;
  r.trial = plan.index;
  r.aux["n"] = plan.n;
  const auto n32 = static_cast<Vertex>(plan.n);
  switch (c.experiment) {
    case ExperimentKind::bins_concentration: {
      const std::uint64_t k = c.k.value_or(plan.n);
      const double v = nu(plan.n, k);
      r.lo = floor_i(v - c.eps);
      r.hi = floor_i(v + c.eps);
      r.observed = max_load(loads(sample_locations(n32, k, gen)));
      r.aux["k"] = k;
      break;
    }
    case ExperimentKind::gnm_maxdegree:
    case ExperimentKind::noncomplex_maxdegree: {
      const std::uint64_t m = edges_for(c, plan.n);
      std::tie(r.lo, r.hi) = sparse_window(c, plan.n, m);
      r.aux["m"] = m;
      const GraphSample s = c.experiment == ExperimentKind::gnm_maxdegree
                                ? sample_gnm(n32, m, gen, c.max_attempts)
                                : sample_noncomplex(n32, m, gen, c.max_attempts);
      if (!s.graph) {
        record_failure(r, s.report);
        break;
      }
      record_report(r, s.report);
      r.observed = static_cast<std::int64_t>(max_degree(*s.graph));
      break;
    }
    case ExperimentKind::forest_maxdegree:
    case ExperimentKind::root_gap: {
      const auto t = static_cast<Vertex>(roots_for(c, plan.n));
      const RootedForest f = sample_uniform_forest(n32, t, gen);
      const auto deg = f.degrees();
      const std::size_t delta = *std::max_element(deg.begin(), deg.end());
      const std::size_t root_max = *std::max_element(deg.begin() + 1, deg.begin() + 1 + t);
      r.aux["t"] = t;
      r.aux["max_degree"] = delta;
      r.aux["max_root_degree"] = root_max;
      const auto [lo, hi] = shifted_window(c.eps, plan.n);
      if (c.experiment == ExperimentKind::forest_maxdegree) {
        r.lo = lo;
        r.hi = hi;
        r.observed = static_cast<std::int64_t>(delta);
      } else {
        // Gap between the overall and the root maximum degree; in the window
        // when positive (it cannot exceed the degree window's top).
        r.lo = 1;
        r.hi = hi;
        r.observed = static_cast<std::int64_t>(delta) - static_cast<std::int64_t>(root_max);
      }
      break;
    }
    case ExperimentKind::complexpart_maxdegree: {
      const auto q = static_cast<Vertex>(c.q.value_or(plan.n));
      const SimpleGraph part = build_complex_part(*c.core, q, gen);
      std::tie(r.lo, r.hi) = shifted_window(c.eps, q);
      r.observed = static_cast<std::int64_t>(max_degree(part));
      r.aux["q"] = q;
      r.aux["core_preserved"] = core_preserved(part, *c.core);
      break;
    }
    case ExperimentKind::decomposition_stats: {
      const std::uint64_t m = edges_for(c, plan.n);
      std::tie(r.lo, r.hi) = sparse_window(c, plan.n, m);
      r.aux["m"] = m;
      const GraphSample s = sample_gnm(n32, m, gen, c.max_attempts);
      if (!s.graph) {
        record_failure(r, s.report);
        break;
      }
      record_report(r, s.report);
      const SimpleGraph& g = *s.graph;
      r.observed = static_cast<std::int64_t>(max_degree(g));
      const Decomposition d = decompose(g);
      const auto core_comps = nontrivial_components(d.core);
      r.aux["core_max_degree"] = max_degree(d.core);
      r.aux["core_vertices"] = support(d.core).size();
      r.aux["core_largest_component"] = core_comps.empty() ? 0 : core_comps.front().size();
      r.aux["qL_vertices"] = d.big_complex.vertices.size();
      r.aux["qS_vertices"] = d.small_complex.vertices.size();
      r.aux["u_vertices"] = d.non_complex.vertices.size();
      r.aux["u_edges"] = d.non_complex.edges.size();
      r.aux["u_excess"] = static_cast<double>(d.non_complex.edges.size()) -
                          0.5 * static_cast<double>(d.non_complex.vertices.size());
      break;
    }
    case ExperimentKind::dense_ratio:
      throw std::logic_error("dense_ratio has no Monte Carlo trials");
  }
  if (r.observed >= 0) finish(r);
  return r;
}

inline ExperimentResult run_dense_ratio(const ExperimentConfig& c, unsigned jobs) {
  ExperimentResult out;
  std::uint64_t index = 0;
  for (auto n : c.n) {
    for (const RatioCheck& rc : sweep_ratio(static_cast<Vertex>(n), c.planar, jobs)) {
      TrialRecord r;
      r.trial = index++;
      r.observed = rc.holds ? 1 : 0;
      r.lo = r.hi = 1;
      r.aux = Json{{"n", n},
                   {"m", rc.source.m},
                   {"k", rc.source.k},
                   {"l", rc.source.l},
                   {"d", rc.source.d},
                   {"count_src", rc.count_src.str()},
                   {"count_dst", rc.count_dst.str()},
                   {"bound", rc.bound}};
      finish(r);
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace detail

/// Runs every trial of `cfg`. Trial i of the whole campaign uses the stream
/// derive_seed(seed, i); records come back in trial order whatever `jobs` is.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned jobs = 0) {
  cfg.validate();
  if (jobs == 0) jobs = default_jobs();
  ExperimentResult out;
  if (cfg.experiment == ExperimentKind::dense_ratio) {
    out = detail::run_dense_ratio(cfg, jobs);
  } else {
    std::vector<detail::TrialPlan> plan;
    for (auto n : cfg.n) {
      for (std::uint64_t i = 0; i < cfg.trials; ++i) plan.push_back({n, plan.size()});
    }
    out.records.resize(plan.size());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, plan.size()));
    auto work = [&](unsigned j) {
      for (std::size_t i = j; i < plan.size(); i += jobs) out.records[i] = detail::run_trial(cfg, plan[i]);
    };
    if (jobs <= 1) {
      work(0);
    } else {
      std::vector<std::jthread> threads;
      for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    }
  }

  // Summary.
  std::uint64_t hits = 0, failures = 0, attempts = 0, accepted = 0;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::map<std::uint64_t, std::vector<const TrialRecord*>> by_n;
  for (const TrialRecord& r : out.records) {
    hits += r.in_interval;
    if (r.aux.value("failed", false)) {
      ++failures;
    } else {
      ++histogram[r.observed];
    }
    if (r.aux.contains("attempts")) {
      attempts += r.aux["attempts"].get<std::uint64_t>();
      accepted += r.aux.value("failed", false) ? 0 : 1;
    }
    by_n[r.aux.value("n", std::uint64_t{0})].push_back(&r);
  }
  const double total = static_cast<double>(out.records.size());
  Json& s = out.summary;
  s["experiment"] = cfg.experiment;
  s["records"] = out.records.size();
  s["hit_rate"] = out.records.empty() ? 0.0 : static_cast<double>(hits) / total;
  s["failures"] = failures;
  Json hist = Json::object();
  for (const auto& [value, count] : histogram) hist[std::to_string(value)] = count;
  s["histogram"] = hist;
  if (attempts > 0) s["acceptance_rate"] = static_cast<double>(accepted) / static_cast<double>(attempts);

  Json per_n = Json::array();
  for (const auto& [n, rs] : by_n) {
    std::vector<double> observed;
    std::uint64_t n_hits = 0;
    for (const TrialRecord* r : rs) {
      n_hits += r->in_interval;
      if (!r->aux.value("failed", false)) observed.push_back(static_cast<double>(r->observed));
    }
    Json row{{"n", n},
             {"trials", rs.size()},
             {"hit_rate", static_cast<double>(n_hits) / static_cast<double>(rs.size())},
             {"observed", detail::describe(observed)}};
    if (!rs.empty()) {
      row["lo"] = rs.front()->lo;
      row["hi"] = rs.front()->hi;
    }
    if (cfg.experiment == ExperimentKind::decomposition_stats) {
      for (const char* key : {"core_max_degree", "core_largest_component", "qL_vertices", "qS_vertices",
                              "u_vertices", "u_edges", "u_excess"}) {
        std::vector<double> xs;
        for (const TrialRecord* r : rs) {
          if (r->aux.contains(key)) xs.push_back(r->aux[key].get<double>());
        }
        row[key] = detail::describe(xs);
      }
    }
    if (n > 1 && cfg.experiment != ExperimentKind::dense_ratio && !observed.empty()) {
      const double ln = std::log(static_cast<double>(n));
      row["median_ratio_to_log_over_loglog"] = detail::median(observed) * std::log(ln) / ln;
    }
    per_n.push_back(std::move(row));
  }
  s["by_n"] = per_n;

  // Descriptive experiments assert nothing.
  if (cfg.experiment != ExperimentKind::decomposition_stats) {
    if (cfg.min_hit_rate) {
      const bool ok = s["hit_rate"].get<double>() >= *cfg.min_hit_rate;
      s["min_hit_rate"] = *cfg.min_hit_rate;
      out.passed = out.passed && ok;
    }
    if (cfg.min_acceptance_rate) {
      const bool ok = s.value("acceptance_rate", 0.0) >= *cfg.min_acceptance_rate;
      s["min_acceptance_rate"] = *cfg.min_acceptance_rate;
      out.passed = out.passed && ok;
    }
  }
  s["passed"] = out.passed;
  return out;
}

/// Distributions of the decomposition of G(n, m) samples; descriptive only.
inline Json decomposition_stats(std::uint64_t n, std::uint64_t m, std::uint64_t trials, std::uint64_t seed,
                                unsigned jobs = 0) {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentKind::decomposition_stats;
  cfg.n = {n};
  cfg.m = m;
  cfg.trials = trials;
  cfg.seed = seed;
  return run_experiment(cfg, jobs).summary;
}

enum class EmitFormat { csv, json };

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// CSV: header trial,observed,lo,hi,in_interval,aux_json then one row per
/// record. JSON: {"records": [...], "summary": {...}}.
inline void emit(std::ostream& out, const std::vector<TrialRecord>& records, EmitFormat format,
                 const Json& summary = Json::object()) {
  if (format == EmitFormat::csv) {
    out << "trial,observed,lo,hi,in_interval,aux_json\n";
    for (const TrialRecord& r : records) {
      out << r.trial << ',' << r.observed << ',' << r.lo << ',' << r.hi << ',' << (r.in_interval ? 1 : 0) << ','
          << csv_quote(r.aux.dump()) << '\n';
    }
    return;
  }
  Json j{{"records", records}, {"summary", summary}};
  out << j.dump(2) << '\n';
}

inline void emit(const std::vector<TrialRecord>& records, EmitFormat format, const std::string& path,
                 const Json& summary = Json::object()) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit(out, records, format, summary);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

inline std::vector<TrialRecord> records_from_json(const Json& j) {
  return j.at("records").get<std::vector<TrialRecord>>();
}

}  // namespace planardeg
