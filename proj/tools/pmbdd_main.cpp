#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pmbdd/bench.hpp"
#include "pmbdd/branch_price.hpp"
#include "pmbdd/colgen.hpp"
#include "pmbdd/diagram.hpp"
#include "pmbdd/formulations.hpp"
#include "pmbdd/horizon.hpp"
#include "pmbdd/instance.hpp"
#include "pmbdd/lp.hpp"

namespace {

pmbdd::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return pmbdd::parse_instance(buf.str());
}

double env_time_limit() {
  if (const char* v = std::getenv("PMBDD_TIME_LIMIT")) return std::atof(v);
  return 1e18;
}

int run(int argc, char** argv) {
  CLI::App app{"Parallel-machine weighted-tardiness solver over decision diagrams"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random instance file");
  int g_n = 40, g_m = 2;
  double g_rdd = 0.4, g_tf = 0.4;
  std::uint64_t g_seed = 1;
  std::string g_out;
  gen->add_option("-n,--jobs", g_n)->required();
  gen->add_option("-m,--machines", g_m)->required();
  gen->add_option("--rdd", g_rdd)->required();
  gen->add_option("--tf", g_tf)->required();
  gen->add_option("--seed", g_seed)->required();
  gen->add_option("-o,--output", g_out, "Output file (stdout if omitted)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Branch-and-price one instance");
  std::string s_file;
  double s_time = env_time_limit();
  long long s_nodes = 1000000;
  int s_cg_cap = 5000;
  std::uint64_t s_seed = 1;
  bool s_print_schedule = false;
  solve_cmd->add_option("instance", s_file)->required();
  solve_cmd->add_option("--time-limit", s_time, "Seconds");
  solve_cmd->add_option("--node-limit", s_nodes);
  solve_cmd->add_option("--cg-iter-cap", s_cg_cap);
  solve_cmd->add_option("--seed", s_seed, "Heuristic seed");
  solve_cmd->add_flag("--print-schedule", s_print_schedule,
                      "Also print the incumbent machine sequences");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Root LP bounds of all formulations");
  std::string b_file, b_dot, b_lp;
  bool b_partition = false;
  bounds->add_option("instance", b_file)->required();
  bounds->add_option("--dot", b_dot, "Write the decision diagram in DOT format");
  bounds->add_option("--export-lp", b_lp, "Write the flow LP in text form");
  bounds->add_flag("--partition", b_partition, "Print the horizon partition");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by enumeration (n <= 10)");
  std::string o_file;
  oracle->add_option("instance", o_file)->required();

  // profile
  auto* profile = app.add_subcommand("profile", "Performance profiles from a results CSV");
  std::string p_file, p_taus = "1,2,3,4,5,6,7,8,9,10";
  profile->add_option("results", p_file, "CSV: instance_id,<method>,... with runtimes")
      ->required();
  profile->add_option("--tau", p_taus, "Comma-separated tau values");

  // suite
  auto* suite = app.add_subcommand("suite", "Solve every *.inst in a directory");
  std::string d_dir, d_out = "results.csv";
  double d_time = env_time_limit();
  long long d_nodes = 1000000;
  std::uint64_t d_seed = 1;
  suite->add_option("dir", d_dir)->required();
  suite->add_option("-o,--output", d_out);
  suite->add_option("--time-limit", d_time, "Seconds per instance");
  suite->add_option("--node-limit", d_nodes);
  suite->add_option("--seed", d_seed, "Heuristic seed");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    const auto inst = pmbdd::generate_instance(g_n, g_m, g_rdd, g_tf, g_seed);
    const std::string text = pmbdd::write_instance(inst);
    if (g_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(g_out);
      out << text;
    }
    return 0;
  }

  if (solve_cmd->parsed()) {
    const auto inst = load_instance(s_file);
    pmbdd::SolveConfig config;
    config.time_limit_s = s_time;
    config.node_limit = s_nodes;
    config.cg.max_iters = s_cg_cap;
    config.heuristic_seed = s_seed;
    const std::string id = s_file.substr(s_file.find_last_of('/') + 1);
    const auto res = pmbdd::solve(inst, config);
    std::cout << pmbdd::result_csv_header() << '\n'
              << pmbdd::result_csv_line(pmbdd::result_row_from(id, inst, res)) << '\n';
    if (s_print_schedule) {
      for (std::size_t k = 0; k < res.schedule.machine_sequences.size(); ++k) {
        std::cerr << "machine " << (k + 1) << ':';
        for (int jid : res.schedule.machine_sequences[k]) std::cerr << ' ' << jid;
        std::cerr << '\n';
      }
    }
    return 0;
  }

  if (bounds->parsed()) {
    const auto inst = load_instance(b_file);
    const auto part = pmbdd::refine_partition(inst);
    const auto diagram = pmbdd::build_diagram(inst, part);
    if (b_partition) std::cerr << pmbdd::dump_partition(part);
    if (!b_dot.empty()) {
      std::ofstream out(b_dot);
      out << pmbdd::to_dot(diagram);
    }
    const auto tif = pmbdd::build_tif(inst);
    const auto atif = pmbdd::build_atif(inst);
    const auto bddf = pmbdd::build_bddf(inst, diagram);
    if (!b_lp.empty()) {
      std::ofstream out(b_lp);
      out << pmbdd::write_lp_text(bddf.lp);
    }
    const auto lp_tif = pmbdd::solve_lp(tif.lp);
    const auto lp_atif = pmbdd::solve_lp(atif.lp);
    const auto lp_bddf = pmbdd::solve_lp(bddf.lp);

    auto alive = pmbdd::all_alive(diagram);
    std::vector<pmbdd::Column> pool;
    pmbdd::CgConfig cg;
    cg.mode = pmbdd::PricingMode::kNoConsecutive;
    cg.fix_period = 0;
    cg.fix_at_convergence = false;
    const auto state = pmbdd::run_colgen(diagram, inst, alive, pool,
                                         std::numeric_limits<long long>::max() / 8, cg);
    const auto stats = pmbdd::diagram_stats(diagram);

    std::cout << "lp_tif,lp_atif,lp_bddf,lp_bddf_nc,tif_vars,atif_vars,bdd_nodes,"
                 "bdd_hi_edges\n";
    std::cout << lp_tif.objective << ',' << lp_atif.objective << ',' << lp_bddf.objective
              << ',' << state.lb << ',' << tif.lp.num_vars() << ',' << atif.lp.num_vars()
              << ',' << stats.node_count << ',' << stats.hi_edge_count << '\n';
    return 0;
  }

  if (oracle->parsed()) {
    const auto inst = load_instance(o_file);
    const auto res = pmbdd::brute_force_opt(inst);
    std::cout << "optimum " << res.opt_cost << '\n';
    for (std::size_t k = 0; k < res.schedule.machine_sequences.size(); ++k) {
      std::cout << "machine " << (k + 1) << ':';
      for (int id : res.schedule.machine_sequences[k]) std::cout << ' ' << id;
      std::cout << '\n';
    }
    return 0;
  }

  if (profile->parsed()) {
    std::ifstream in(p_file);
    if (!in) throw std::runtime_error("cannot open " + p_file);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty results file");
    std::vector<std::string> methods;
    {
      std::stringstream hs(line);
      std::string tok;
      bool first = true;
      while (std::getline(hs, tok, ',')) {
        if (!first) methods.push_back(tok);
        first = false;
      }
    }
    std::vector<std::vector<double>> times;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ls(line);
      std::string tok;
      std::getline(ls, tok, ',');  // instance id
      std::vector<double> row;
      while (std::getline(ls, tok, ',')) {
        row.push_back(tok.empty() || tok == "inf" || tok == "unsolved"
                          ? std::numeric_limits<double>::infinity()
                          : std::stod(tok));
      }
      times.push_back(std::move(row));
    }
    std::vector<double> taus;
    std::stringstream ts(p_taus);
    std::string tok;
    while (std::getline(ts, tok, ',')) taus.push_back(std::stod(tok));
    std::cout << pmbdd::profile_to_csv(pmbdd::performance_profile(times, methods, taus));
    return 0;
  }

  if (suite->parsed()) {
    pmbdd::SolveConfig config;
    config.time_limit_s = d_time;
    config.node_limit = d_nodes;
    config.heuristic_seed = d_seed;
    const int solved = pmbdd::run_suite(d_dir, d_out, config);
    std::cout << "solved " << solved << " new instance(s)\n";
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
