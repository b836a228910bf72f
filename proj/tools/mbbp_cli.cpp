// Command-line front end: solve, gen, export-lp, fetch, variants.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbbp/campaign.hpp"
#include "mbbp/error.hpp"
#include "mbbp/instance_io.hpp"
#include "mbbp/konect_fetch.hpp"
#include "mbbp/reduction.hpp"
#include "mbbp/solver.hpp"

namespace {

using namespace mbbp;

struct instance_flags {
  std::vector<std::string> inputs;
  std::string format = "bip";
  std::vector<std::string> gens;
  std::vector<std::string> konect;

  void attach(CLI::App &app) {
    app.add_option("--in", inputs, "Instance file (repeatable)");
    app.add_option("--format", format, "Format of --in files")
        ->check(CLI::IsMember({"bip", "konect"}));
    app.add_option("--gen", gens, "Generated instance n,p,id (repeatable)");
    app.add_option("--konect", konect, "KONECT dataset name (repeatable)");
  }

  std::vector<instance_spec> specs() const {
    std::vector<instance_spec> out;
    const auto fmt = format == "konect" ? file_format::konect : file_format::bip;
    for (const auto &p : inputs) out.push_back(instance_spec::from_file(p, fmt));
    for (const auto &g : gens) out.push_back(parse_gen_triple(g));
    for (const auto &k : konect) out.push_back(instance_spec::from_konect(k));
    return out;
  }
};

struct solver_flags {
  std::string profile = "dense";
  std::size_t depth = 0;
  double alpha = 0;
  std::size_t k = 0;
  double exact_timeout = 10.0;
  double time_limit = 30.0;
  std::uint64_t max_restarts = 0;
  std::string unbalance = "2";
  std::string reduction = "peel+exact";
  std::uint64_t seed = 0;
  bool no_swap_escape = false;
  CLI::Option *depth_opt = nullptr, *alpha_opt = nullptr, *k_opt = nullptr,
              *restarts_opt = nullptr;

  void attach(CLI::App &app) {
    app.add_option("--profile", profile, "Parameter profile")
        ->check(CLI::IsMember({"dense", "sparse"}));
    depth_opt = app.add_option("--L", depth, "Tabu search depth");
    alpha_opt = app.add_option("--alpha", alpha, "Tabu tenure coefficient");
    k_opt = app.add_option("--K", k, "Exact-reduction component size threshold");
    app.add_option("--exact-timeout", exact_timeout, "Seconds per exact subgraph search")
        ->capture_default_str();
    app.add_option("--time-limit", time_limit, "Seconds per run")->capture_default_str();
    restarts_opt = app.add_option("--max-restarts", max_restarts, "Restart cap per run");
    app.add_option("--unbalance", unbalance, "Deviation bound of the tabu search")
        ->check(CLI::IsMember({"2", "1", "inf"}))
        ->capture_default_str();
    app.add_option("--reduction", reduction, "Graph reduction variant")
        ->check(CLI::IsMember({"none", "peel", "peel+exact"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "Base seed; run i uses seed + i")->capture_default_str();
    app.add_flag("--no-swap-escape", no_swap_escape,
                 "Idle instead of swapping when no expanding or plateau move exists");
  }

  solver_params params() const {
    auto p = profile == "sparse" ? solver_params::sparse() : solver_params::dense();
    if (depth_opt->count()) p.depth = depth;
    if (alpha_opt->count()) p.alpha = alpha;
    if (k_opt->count()) p.k = k;
    if (restarts_opt->count()) p.max_restarts = max_restarts;
    p.exact_budget = std::chrono::duration<double>(exact_timeout);
    p.time_limit = std::chrono::duration<double>(time_limit);
    p.unbalance = *parse_unbalance_variant(unbalance);
    p.reduction = *parse_reduction_variant(reduction);
    p.seed = seed;
    p.swap_escape = !no_swap_escape;
    p.validate();
    return p;
  }
};

emit_format parse_emit(const std::string &s) {
  if (s == "csv") return emit_format::csv;
  if (s == "json") return emit_format::json;
  return emit_format::table;
}

// Writes to --out when given, else stdout.
class output {
public:
  explicit output(const std::string &path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw usage_error("cannot write " + path);
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

campaign_config make_config(const instance_flags &inst, const solver_flags &solver,
                            std::size_t runs, std::size_t jobs) {
  campaign_config cfg;
  cfg.instances = inst.specs();
  if (cfg.instances.empty()) throw usage_error("no instance given (use --in, --gen or --konect)");
  cfg.runs = runs;
  cfg.params = solver.params();
  cfg.base_seed = solver.seed;
  cfg.jobs = jobs;
  cfg.cache_dir = default_cache_dir();
  return cfg;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Maximum balanced biclique solver: tabu search with graph reduction"};
  app.require_subcommand(1);

  instance_flags inst;
  solver_flags solver;
  std::size_t runs = 1, jobs = 1;
  std::string out_path, emit = "table";

  auto *solve_cmd = app.add_subcommand("solve", "Run a multi-run campaign");
  inst.attach(*solve_cmd);
  solver.attach(*solve_cmd);
  solve_cmd->add_option("--runs", runs, "Independent runs per instance")->capture_default_str();
  solve_cmd->add_option("--jobs", jobs, "Parallel workers")->capture_default_str();
  solve_cmd->add_option("--out", out_path, "Report file (default stdout)");
  solve_cmd->add_option("--emit", emit, "Report format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  std::string gen_triple;
  auto *gen_cmd = app.add_subcommand("gen", "Write a random instance in .bip format");
  gen_cmd->add_option("--gen", gen_triple, "n,p,id")->required();
  gen_cmd->add_option("--out", out_path, "Output file (default stdout)");

  instance_flags lp_inst;
  solver_flags lp_solver;
  bool peel_with_best = false;
  std::optional<std::size_t> peel_omega;
  std::uint64_t max_complement = 10'000'000;
  auto *lp_cmd = app.add_subcommand("export-lp", "Write the binary program in LP format");
  lp_inst.attach(*lp_cmd);
  lp_solver.attach(*lp_cmd);
  lp_cmd->add_flag("--peel-with-best", peel_with_best,
                   "Solve once, then peel with the best size before exporting");
  lp_cmd->add_option("--peel", peel_omega, "Peel with this bound before exporting");
  lp_cmd->add_option("--max-complement", max_complement, "Refuse larger complements")
      ->capture_default_str();
  lp_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::string fetch_name;
  auto *fetch_cmd = app.add_subcommand("fetch", "Download a KONECT dataset into the cache");
  fetch_cmd->add_option("--konect,name", fetch_name, "Dataset name")->required();

  instance_flags var_inst;
  solver_flags var_solver;
  std::string study = "unbalance";
  auto *var_cmd = app.add_subcommand("variants", "Ablation study over solver variants");
  var_inst.attach(*var_cmd);
  var_solver.attach(*var_cmd);
  var_cmd->add_option("--study", study, "Which switch to vary")
      ->check(CLI::IsMember({"unbalance", "reduction"}))
      ->capture_default_str();
  var_cmd->add_option("--runs", runs, "Independent runs per instance")->capture_default_str();
  var_cmd->add_option("--jobs", jobs, "Parallel workers")->capture_default_str();
  var_cmd->add_option("--out", out_path, "Report file (default stdout)");
  var_cmd->add_option("--emit", emit, "Report format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*solve_cmd) {
      const auto report = run_campaign(make_config(inst, solver, runs, jobs));
      output out(out_path);
      mbbp::emit(report, parse_emit(emit), out.stream());
      return report.exit_code();
    }
    if (*gen_cmd) {
      const auto spec = parse_gen_triple(gen_triple);
      output out(out_path);
      write_bip(gen_random(spec.n, spec.p, spec.id), out.stream());
      return 0;
    }
    if (*lp_cmd) {
      const auto specs = lp_inst.specs();
      if (specs.size() != 1) throw usage_error("export-lp takes exactly one instance");
      auto loaded = load_instance(specs.front(), default_cache_dir());
      std::optional<std::size_t> bound = peel_omega;
      if (peel_with_best) {
        const auto report = solve(loaded.graph, lp_solver.params());
        bound = report.omega;
        std::cerr << "best balanced size " << report.omega
                  << (report.proven_optimal ? " (proven optimal)" : "") << '\n';
      }
      if (bound) {
        const auto removed = peel(loaded.graph, *bound);
        std::cerr << "peel(" << *bound << ") removed " << removed << " vertices, "
                  << loaded.graph.alive_u_count() << " + " << loaded.graph.alive_v_count()
                  << " remain\n";
      }
      output out(out_path);
      export_lp(loaded.graph, out.stream(), {max_complement});
      return 0;
    }
    if (*fetch_cmd) {
      std::cout << fetch_konect(fetch_name, default_cache_dir()).string() << '\n';
      return 0;
    }
    if (*var_cmd) {
      const auto kind = study == "reduction" ? study_kind::reduction : study_kind::unbalance;
      const auto results = run_variant_study(make_config(var_inst, var_solver, runs, jobs), kind);
      output out(out_path);
      if (emit == "json")
        emit_variant_json(results, out.stream());
      else
        emit_variant_table(results, out.stream());
      return 0;
    }
  } catch (const usage_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
