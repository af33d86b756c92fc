#include "ddfl/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddfl/experiment.hpp"
#include "ddfl/extensive.hpp"
#include "ddfl/instgen.hpp"
#include "ddfl/io.hpp"
#include "ddfl/oracle.hpp"

namespace fs = std::filesystem;

namespace ddfl {

namespace {

struct SolveFlags {
  std::string method = "lshaped";
  bool vi = false;
  std::string mode = "single-tree";
  double time_limit = 1800.0;
  double gap_tol = 1e-4;
  std::string trace_path;
  std::string out_path;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f, bool with_method) {
  if (with_method)
    cmd->add_option("--method", f.method, "lshaped | extensive | oracle")
        ->check(CLI::IsMember({"lshaped", "extensive", "oracle"}));
  cmd->add_flag("--vi", f.vi, "add the a priori valid inequality to the master");
  cmd->add_option("--mode", f.mode, "single-tree | iterative")
      ->check(CLI::IsMember({"single-tree", "iterative"}));
  cmd->add_option("--time-limit", f.time_limit, "wall clock limit in seconds");
  cmd->add_option("--gap-tol", f.gap_tol, "relative optimality gap tolerance");
}

void append_csv(const std::string& path, const std::string& header, const std::string& row) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (fresh) out << header << "\n";
  out << row << "\n";
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

LShapedOptions lshaped_options(const SolveFlags& f, std::ofstream* trace) {
  LShapedOptions o;
  o.valid_inequality = f.vi;
  o.iterative = f.mode == "iterative";
  o.time_limit_s = f.time_limit;
  o.gap_tol = f.gap_tol;
  if (trace)
    o.trace = [trace](const SeparationTrace& t) {
      nlohmann::ordered_json line{
          {"iter", t.iter}, {"d_mask", t.d_mask}, {"E", t.expected},
          {"mu", t.mu},     {"bound", t.bound},
      };
      *trace << line.dump() << "\n";
    };
  return o;
}

RunRecord execute_solve(const Instance& inst, const std::string& label, const SolveFlags& f) {
  RunRecord rec;
  rec.instance = label;
  rec.method = f.method;
  rec.vi = f.vi;
  rec.n_facilities = inst.n_facilities();
  rec.n_zones = inst.n_zones();
  rec.demand_type = inst.demand_type;
  DemandModel demand(inst);
  if (f.method == "oracle") {
    rec.report = exhaustive_oracle(inst, demand);
  } else if (f.method == "extensive") {
    rec.report = solve_extensive(inst, demand, f.gap_tol, f.time_limit);
  } else {
    std::optional<std::ofstream> trace;
    if (!f.trace_path.empty()) {
      trace.emplace(f.trace_path);
      if (!*trace) throw std::runtime_error("cannot open " + f.trace_path);
    }
    rec.report = solve_lshaped(inst, demand, lshaped_options(f, trace ? &*trace : nullptr));
  }
  return rec;
}

int cmd_generate(const GenParams& base, int config, int count, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<int> configs;
  if (config == 0)
    for (int c = 1; c <= 7; ++c) configs.push_back(c);
  else
    configs.push_back(config);
  std::uint64_t seed = base.seed;
  for (int rep = 0; rep < count; ++rep)
    for (int cfg : configs) {
      GenParams p = base;
      p.config = cfg;
      p.seed = seed++;
      const Instance inst = generate_instance(p);
      const std::string path = out_dir + "/inst_" + std::to_string(p.seed) + ".json";
      save_instance(inst, path);
      std::cout << path << "\n";
    }
  return 0;
}

int cmd_solve(const std::string& path, const SolveFlags& f) {
  const Instance inst = load_instance(path);
  const RunRecord rec = execute_solve(inst, stem_of(path), f);
  const std::string row = run_csv_row(rec);
  if (!f.out_path.empty()) append_csv(f.out_path, run_csv_header(), row);
  std::cout << run_csv_header() << "\n" << row << "\n";
  return 0;
}

int cmd_compare(const std::string& path, const SolveFlags& f, const std::string& out) {
  const Instance inst = load_instance(path);
  SolveFlags sf = f;
  sf.method = "lshaped";
  const CompareResult c = run_compare(inst, lshaped_options(sf, nullptr));
  std::printf("simplified objective   %.17g (%s)\n", c.simplified_objective,
              to_string(c.simplified_status).c_str());
  std::printf("fixed under true model %.17g\n", c.fixed_objective);
  std::printf("ddu objective          %.17g (%s)\n", c.ddu_objective,
              to_string(c.ddu_status).c_str());
  std::printf("uplift_pct             %.17g\n", c.uplift_percent);
  if (!out.empty()) append_csv(out, compare_csv_header(), compare_csv_row(stem_of(path), c));
  return 0;
}

int cmd_bench(const std::string& dir, const std::string& methods_csv, const SolveFlags& f) {
  std::vector<std::string> methods;
  {
    std::string cur;
    for (char ch : methods_csv + ",") {
      if (ch == ',') {
        if (!cur.empty()) methods.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    for (const auto& m : methods)
      if (m != "lshaped" && m != "extensive" && m != "oracle")
        throw CLI::ValidationError("--methods", "unknown method " + m);
  }
  std::vector<std::string> files;
  if (!fs::is_directory(dir)) throw std::invalid_argument("bench: not a directory: " + dir);
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("inst_", 0) == 0 && e.path().extension() == ".json")
      files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());

  const std::string out = f.out_path.empty() ? "bench.csv" : f.out_path;
  fs::path agg_path = fs::path(out);
  agg_path.replace_filename(agg_path.stem().string() + "_agg" +
                            (agg_path.has_extension() ? agg_path.extension().string() : ".csv"));

  std::vector<RunRecord> records;
  for (const std::string& file : files) {
    Instance inst;
    try {
      inst = load_instance(file);
    } catch (const std::exception& e) {
      std::cerr << "skipping " << file << ": " << e.what() << "\n";
      continue;
    }
    for (const std::string& method : methods) {
      SolveFlags sf = f;
      sf.method = method;
      sf.trace_path.clear();
      RunRecord rec = execute_solve(inst, stem_of(file), sf);
      append_csv(out, run_csv_header(), run_csv_row(rec));
      records.push_back(std::move(rec));
    }
  }
  if (!fs::exists(out)) append_csv(out, run_csv_header(), "");  // header-only for empty dirs

  std::ofstream agg(agg_path);
  if (!agg) throw std::runtime_error("cannot open " + agg_path.string());
  for (const std::string& line : aggregate_csv(records)) agg << line << "\n";
  std::cout << "wrote " << records.size() << " runs to " << out << ", aggregates to "
            << agg_path.string() << "\n";
  return 0;
}

int cmd_dump_scenarios(const std::string& path, const std::string& out_path) {
  const Instance inst = load_instance(path);
  const double rows = static_cast<double>(inst.n_distributions()) * inst.n_customers() *
                      inst.scenarios_per_distribution;
  if (rows > 1e7) throw std::invalid_argument("dump-scenarios: more than 1e7 rows");
  DemandModel demand(inst);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    os = &file;
  }
  *os << "d_mask,j,s,xi\n";
  char buf[64];
  for (std::uint32_t d = 0; d < inst.n_distributions(); ++d) {
    auto scen = demand.scenarios(DistributionId{d});
    for (int j = 0; j < inst.n_customers(); ++j)
      for (int s = 0; s < inst.scenarios_per_distribution; ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", scen->xi(j, s));
        *os << d << "," << j << "," << s << "," << buf << "\n";
      }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"two-stage facility location under decision-dependent demand"};
  app.require_subcommand(1);

  GenParams gen;
  int gen_config = 0;  // 0 = all seven cost configurations
  int gen_count = 1;
  std::string gen_out = ".";
  std::string gen_dt = "A";
  CLI::App* g = app.add_subcommand("generate", "write seeded instance files");
  g->add_option("--facilities", gen.n_facilities);
  g->add_option("--customers", gen.n_customers);
  g->add_option("--zones", gen.n_zones);
  g->add_option("--scenarios", gen.scenarios_per_distribution);
  g->add_option("--demand-type", gen_dt)->check(CLI::IsMember({"A", "B", "C", "D"}));
  g->add_option("--config", gen_config, "cost configuration 1..7, 0 = all")
      ->check(CLI::Range(0, 7));
  g->add_option("--seed", gen.seed, "seed of the first file; later files increment it");
  g->add_option("--count", gen_count, "repetitions of the configuration sweep");
  g->add_option("--out", gen_out, "output directory");

  SolveFlags sf;
  std::string solve_path;
  CLI::App* s = app.add_subcommand("solve", "run one solver on one instance");
  s->add_option("instance", solve_path)->required();
  add_solver_flags(s, sf, true);
  s->add_option("--trace", sf.trace_path, "JSONL separation trace (lshaped only)");
  s->add_option("--out", sf.out_path, "CSV file to append the report row to");

  SolveFlags cf;
  std::string compare_path, compare_out;
  CLI::App* c = app.add_subcommand("compare", "price the single-zone simplification");
  c->add_option("instance", compare_path)->required();
  add_solver_flags(c, cf, false);
  c->add_option("--out", compare_out, "CSV file to append the comparison row to");

  SolveFlags bf;
  std::string bench_dir, bench_methods = "lshaped";
  CLI::App* b = app.add_subcommand("bench", "solve every inst_*.json in a directory");
  b->add_option("dir", bench_dir)->required();
  b->add_option("--methods", bench_methods, "comma list of lshaped,extensive,oracle");
  add_solver_flags(b, bf, false);
  b->add_option("--out", bf.out_path, "runs CSV (aggregates go to <stem>_agg)");

  std::string dump_path, dump_out;
  CLI::App* ds = app.add_subcommand("dump-scenarios", "emit every scenario table as CSV");
  ds->add_option("instance", dump_path)->required();
  ds->add_option("--out", dump_out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
    if (g->parsed()) {
      gen.demand_type = demand_type_from_string(gen_dt);
      return cmd_generate(gen, gen_config, gen_count, gen_out);
    }
    if (s->parsed()) return cmd_solve(solve_path, sf);
    if (c->parsed()) return cmd_compare(compare_path, cf, compare_out);
    if (b->parsed()) return cmd_bench(bench_dir, bench_methods, bf);
    if (ds->parsed()) return cmd_dump_scenarios(dump_path, dump_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ddfl
