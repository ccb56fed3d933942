// planardeg: command-line front end for the library.
//
//   planardeg nu --k K --n N [--tol T]
//   planardeg nu --hat --n N
//   planardeg nu --interval --n N --m M --eps E
//   planardeg nu --regime R --n N [--s-or-t X] [--d D]
//   planardeg sample bins --n N --k K --seed S [--emit loads|max]
//   planardeg sample forest --n N --t T --seed S [--emit edges|pruefer|degrees]
//   planardeg sample gnm|noncomplex --n N --m M --seed S [--report] [--max-attempts A]
//   planardeg sample complex-part --core FILE --q Q --seed S
//   planardeg decompose --in FILE
//   planardeg enumerate dense-ratio --n N [--planar]
//   planardeg experiment run --config FILE.json [--out PATH] [--format csv|json] [--jobs J]

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "planardeg/balls_bins.hpp"
#include "planardeg/dense_ops.hpp"
#include "planardeg/graph.hpp"
#include "planardeg/harness.hpp"
#include "planardeg/nu.hpp"
#include "planardeg/pruefer.hpp"
#include "planardeg/random.hpp"
#include "planardeg/samplers.hpp"

namespace pd = planardeg;
using Json = nlohmann::json;

namespace {

constexpr int kExitSamplerExhausted = 3;
constexpr int kExitThresholdMissed = 4;

pd::SimpleGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto [n, edges] = pd::read_edge_list(in);
  return pd::SimpleGraph(n, std::move(edges));
}

Json vertices_json(const pd::VertexSet& vs) { return Json(vs); }

Json report_json(const pd::RejectionReport& r) {
  return Json{{"attempts", r.attempts},
              {"accepted", r.accepted},
              {"reject_reasons", {{"loop", r.loop}, {"parallel_edge", r.parallel_edge},
                                  {"complex_component", r.complex_component}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-degree concentration laboratory for sparse random planar graphs"};
  app.require_subcommand(1);

  // nu
  auto* nu_cmd = app.add_subcommand("nu", "Evaluate the concentration value nu");
  std::uint64_t nu_k = 0, nu_n = 0, nu_m = 0;
  double nu_tol = pd::kDefaultNuTolerance, nu_eps = 1.0 / 3.0, nu_d = 1.5;
  std::int64_t nu_s_or_t = 0;
  bool nu_hat_flag = false, nu_interval_flag = false;
  std::string nu_regime;
  nu_cmd->add_option("--k", nu_k, "Number of balls");
  nu_cmd->add_option("--n", nu_n, "Number of bins / vertices")->required();
  nu_cmd->add_option("--m", nu_m, "Number of edges (with --interval)");
  nu_cmd->add_option("--tol", nu_tol, "Bisection tolerance in x");
  nu_cmd->add_option("--eps", nu_eps, "Window half-width (with --interval)");
  nu_cmd->add_flag("--hat", nu_hat_flag, "Print nu_hat(n) = nu(n, n)");
  nu_cmd->add_flag("--interval", nu_interval_flag, "Print the sparse predicted interval as JSON");
  nu_cmd->add_option("--regime", nu_regime, "Regime A-E: print N_L, N_R and the two-point value as JSON");
  nu_cmd->add_option("--s-or-t", nu_s_or_t, "s (regime A) or t (regimes C-E)");
  nu_cmd->add_option("--d", nu_d, "Density d in (1,2) (regime B)");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw random structures");
  sample_cmd->require_subcommand(1);
  std::uint64_t s_seed = 0, s_max_attempts = pd::kDefaultMaxAttempts;
  std::uint32_t s_n = 0, s_t = 0, s_q = 0;
  std::uint64_t s_k = 0, s_m = 0;
  std::string s_emit, s_core;
  bool s_report = false;

  auto* bins_cmd = sample_cmd->add_subcommand("bins", "Balls into bins");
  bins_cmd->add_option("--n", s_n, "Bins")->required();
  bins_cmd->add_option("--k", s_k, "Balls")->required();
  bins_cmd->add_option("--seed", s_seed, "Seed");
  bins_cmd->add_option("--emit", s_emit, "loads|max")->check(CLI::IsMember({"loads", "max"}));

  auto* forest_cmd = sample_cmd->add_subcommand("forest", "Uniform forest with roots 1..t");
  forest_cmd->add_option("--n", s_n, "Vertices")->required();
  forest_cmd->add_option("--t", s_t, "Roots")->required();
  forest_cmd->add_option("--seed", s_seed, "Seed");
  forest_cmd->add_option("--emit", s_emit, "edges|pruefer|degrees")
      ->check(CLI::IsMember({"edges", "pruefer", "degrees"}));

  auto add_graph_sampler = [&](const char* name, const char* help) {
    auto* c = sample_cmd->add_subcommand(name, help);
    c->add_option("--n", s_n, "Vertices")->required();
    c->add_option("--m", s_m, "Edges")->required();
    c->add_option("--seed", s_seed, "Seed");
    c->add_option("--max-attempts", s_max_attempts, "Rejection attempts before giving up");
    c->add_flag("--report", s_report, "Write the rejection report as JSON to stderr");
    return c;
  };
  auto* gnm_cmd = add_graph_sampler("gnm", "Uniform simple graph G(n,m)");
  auto* noncomplex_cmd = add_graph_sampler("noncomplex", "Uniform graph without complex components");

  auto* complex_cmd = sample_cmd->add_subcommand("complex-part", "Uniform complex part with a given core");
  complex_cmd->add_option("--core", s_core, "Core edge-list file")->required();
  complex_cmd->add_option("--q", s_q, "Order of the complex part")->required();
  complex_cmd->add_option("--seed", s_seed, "Seed");

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "Core / complex-part decomposition of a graph");
  std::string in_path;
  decompose_cmd->add_option("--in", in_path, "Edge-list file")->required();

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Exhaustive class counts");
  enumerate_cmd->require_subcommand(1);
  auto* ratio_cmd = enumerate_cmd->add_subcommand("dense-ratio", "Check the degree-raising ratio bound");
  std::uint32_t e_n = 0;
  bool e_planar = false;
  unsigned e_jobs = 0;
  ratio_cmd->add_option("--n", e_n, "Order (<= 11)")->required();
  ratio_cmd->add_flag("--planar", e_planar, "Count planar graphs only");
  ratio_cmd->add_option("--jobs", e_jobs, "Worker threads");

  // experiment
  auto* experiment_cmd = app.add_subcommand("experiment", "Monte Carlo campaigns");
  experiment_cmd->require_subcommand(1);
  auto* run_cmd = experiment_cmd->add_subcommand("run", "Run a campaign from a JSON config");
  std::string x_config, x_out, x_format = "csv";
  unsigned x_jobs = 0;
  run_cmd->add_option("--config", x_config, "Config JSON file")->required();
  run_cmd->add_option("--out", x_out, "Output path (default stdout)");
  run_cmd->add_option("--format", x_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--jobs", x_jobs, "Worker threads (default $PLANARDEG_JOBS or all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nu_cmd) {
      if (!nu_regime.empty()) {
        pd::RegimeSpec spec{pd::parse_regime(nu_regime), nu_n, nu_s_or_t, nu_d};
        const auto p = pd::regime_parameters(spec);
        std::cout << Json{{"N_L", p.left}, {"N_R", p.right},
                          {"delta_star", pd::predicted_two_point(spec, nu_tol)}}.dump()
                  << '\n';
      } else if (nu_interval_flag) {
        if (nu_m == 0) throw CLI::ValidationError("--interval requires --m >= 1");
        const auto p = pd::predicted_interval_sparse(nu_n, nu_m, nu_eps, nu_tol);
        std::cout << Json{{"lo", p.lo}, {"hi", p.hi}, {"delta_star", p.delta_star}}.dump() << '\n';
      } else if (nu_hat_flag) {
        std::cout << std::setprecision(17) << pd::nu_hat(nu_n, nu_tol) << '\n';
      } else {
        if (nu_k == 0) throw CLI::ValidationError("nu requires --k (or --hat / --interval / --regime)");
        std::cout << std::setprecision(17) << pd::nu(nu_n, nu_k, nu_tol) << '\n';
      }
      return 0;
    }

    if (*sample_cmd) {
      pd::Engine gen(s_seed);
      if (*bins_cmd) {
        const auto lv = pd::loads(pd::sample_locations(s_n, s_k, gen));
        if (s_emit == "max") {
          std::cout << Json{{"max_load", pd::max_load(lv)}}.dump() << '\n';
        } else {
          std::cout << Json{{"loads", lv.loads}, {"max_load", pd::max_load(lv)}}.dump() << '\n';
        }
      } else if (*forest_cmd) {
        const auto seq = pd::sample_sequence(s_n, s_t, gen);
        if (s_emit == "pruefer") {
          std::cout << Json{{"pruefer", seq.entries}}.dump() << '\n';
        } else {
          const auto forest = pd::decode(seq, s_n, s_t);
          if (s_emit == "degrees") {
            auto deg = forest.degrees();
            deg.erase(deg.begin());
            std::cout << Json{{"degrees", deg}}.dump() << '\n';
          } else {
            pd::write_edge_list(std::cout, forest.n, forest.edges);
          }
        }
      } else if (*gnm_cmd || *noncomplex_cmd) {
        const auto s = *gnm_cmd ? pd::sample_gnm(s_n, s_m, gen, s_max_attempts)
                                : pd::sample_noncomplex(s_n, s_m, gen, s_max_attempts);
        if (s_report) std::cerr << report_json(s.report).dump() << '\n';
        if (!s.graph) {
          std::cerr << "error: no sample accepted within " << s_max_attempts << " attempts\n";
          return kExitSamplerExhausted;
        }
        pd::write_edge_list(std::cout, *s.graph);
      } else if (*complex_cmd) {
        const auto core = load_graph(s_core);
        pd::write_edge_list(std::cout, pd::build_complex_part(core, s_q, gen));
      }
      return 0;
    }

    if (*decompose_cmd) {
      const auto g = load_graph(in_path);
      const auto d = pd::decompose(g);
      const auto iso = pd::isolated_counts(g);
      std::cout << Json{{"core_vertices", vertices_json(pd::support(d.core))},
                        {"qL_vertices", vertices_json(d.big_complex.vertices)},
                        {"qS_vertices", vertices_json(d.small_complex.vertices)},
                        {"u_vertices", vertices_json(d.non_complex.vertices)},
                        {"max_degree", pd::max_degree(g)},
                        {"isolated_vertices", iso.vertices},
                        {"isolated_edges", iso.edges}}
                       .dump()
                << '\n';
      return 0;
    }

    if (*enumerate_cmd) {
      std::cout << "m,k,l,d,count_src,count_dst,bound,holds\n";
      for (const auto& r : pd::sweep_ratio(e_n, e_planar, e_jobs)) {
        std::cout << r.source.m << ',' << r.source.k << ',' << r.source.l << ',' << r.source.d << ','
                  << r.count_src << ',' << r.count_dst << ',' << std::setprecision(17) << r.bound << ','
                  << (r.holds ? "true" : "false") << '\n';
      }
      return 0;
    }

    if (*run_cmd) {
      std::ifstream in(x_config);
      if (!in) throw std::runtime_error("cannot open " + x_config);
      const Json j = Json::parse(in);
      const auto base = std::filesystem::path(x_config).parent_path().string();
      const auto cfg = pd::config_from_json(j, base.empty() ? "." : base);
      const auto result = pd::run_experiment(cfg, x_jobs);
      const auto format = x_format == "json" ? pd::EmitFormat::json : pd::EmitFormat::csv;
      if (x_out.empty()) {
        pd::emit(std::cout, result.records, format, result.summary);
      } else {
        pd::emit(result.records, format, x_out, result.summary);
      }
      std::cerr << result.summary.dump() << '\n';
      return result.passed ? 0 : kExitThresholdMissed;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
