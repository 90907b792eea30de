#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tubepack/generate.hpp"
#include "tubepack/io_format.hpp"
#include "tubepack/partition.hpp"
#include "tubepack/validate.hpp"

namespace fs = std::filesystem;
using namespace tubepack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnpackable = 3;
constexpr int kExitInternal = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct SolveOpts {
  std::string instance_path;
  double time_limit = 30.0;
  std::uint64_t seed = 0;
  double noise = 0.2;
  std::string out_path;
  bool wallclock = false;
  int threads = 1;
};

SolveParams to_params(const SolveOpts& o) {
  SolveParams p;
  p.time_limit_sec = o.time_limit;
  p.wallclock = o.wallclock;
  p.seed = o.seed;
  p.noise = o.noise;
  p.threads = std::max(o.threads, 1);
  return p;
}

int run_solve(const SolveOpts& o) {
  const InstanceDoc instance = parse_instance(slurp(o.instance_path));
  const Solution sol = solve(instance, to_params(o));
  const SolutionDoc doc = make_solution_doc(instance, sol);
  const std::string text = write_solution(doc);
  if (o.out_path.empty())
    std::cout << text;
  else
    spit(o.out_path, text);

  std::cerr << "containers: " << sol.metrics.containers_used << "\n";
  for (std::size_t i = 0; i < sol.metrics.fill_ratio.size(); ++i)
    std::cerr << "  container " << (i + 1) << " fill ratio: " << std::fixed
              << std::setprecision(3) << sol.metrics.fill_ratio[i] << "\n";
  std::size_t left = 0;
  for (const auto& [id, n] : sol.unpacked_tubes) left += n;
  for (const auto& [id, n] : sol.unpacked_boxes) left += n;
  std::cerr << "unpacked items: " << left << "\n";
  std::cerr << "wall time: " << std::fixed << std::setprecision(2)
            << sol.metrics.wall_time_sec << " s\n";
  return kExitOk;
}

int run_validate(const std::string& instance_path, const std::string& solution_path) {
  const InstanceDoc instance = parse_instance(slurp(instance_path));
  const SolutionDoc doc = read_solution(slurp(solution_path));
  const auto violations = validate(instance, doc);
  for (const auto& v : violations)
    std::cout << to_string(v.code) << " " << v.subject << ": " << v.detail
              << (v.magnitude > 0 ? " (" + std::to_string(v.magnitude) + " mm)" : "")
              << "\n";
  std::cout << violations.size() << " violation(s)\n";
  return violations.empty() ? kExitOk : kExitViolations;
}

int run_render(const std::string& solution_path, const std::string& holder,
               const std::string& out_dir) {
  const SolutionDoc doc = read_solution(slurp(solution_path));
  fs::create_directories(out_dir);

  auto holder_matches = [&](std::size_t ci, const Holder& h) {
    if (holder.empty()) return true;
    const std::string qualified = std::to_string(ci + 1) + "/" + h.id;
    return holder == h.id || holder == qualified;
  };

  int written = 0;
  for (std::size_t ci = 0; ci < doc.containers.size(); ++ci) {
    const std::string stem = (fs::path(out_dir) / ("container_" + std::to_string(ci + 1))).string();
    if (holder.empty()) {
      spit(stem + ".svg", render_longitudinal(doc, ci));
      ++written;
    }
    for (const auto& h : doc.containers[ci].holders) {
      if (!holder_matches(ci, h)) continue;
      if (h.kind == HolderKind::Tubes) {
        spit(stem + "_" + h.id + ".svg", render_transversal(doc, ci, h.id));
      } else {
        spit(stem + "_" + h.id + "_manifest.txt", box_manifest(doc, ci, h.id));
      }
      ++written;
    }
  }
  if (!holder.empty() && written == 0)
    throw std::runtime_error("no holder named '" + holder + "'");
  std::cerr << written << " file(s) written to " << out_dir << "\n";
  return kExitOk;
}

GenProfile parse_profile(const std::vector<std::string>& kvs, std::uint64_t seed) {
  GenProfile p;
  p.seed = seed;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("profile entries look like KEY=VAL, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    const double num = std::stod(val);
    if (key == "tube_types" || key == "N")
      p.n_tube_types = static_cast<int>(num);
    else if (key == "tubes" || key == "T")
      p.total_tubes = static_cast<int>(num);
    else if (key == "box_types" || key == "M")
      p.n_box_types = static_cast<int>(num);
    else if (key == "boxes" || key == "B")
      p.total_boxes = static_cast<int>(num);
    else if (key == "width")
      p.container.width = num;
    else if (key == "height")
      p.container.height = num;
    else if (key == "depth")
      p.container.depth = num;
    else if (key == "ediam_min")
      p.ediam_min = num;
    else if (key == "ediam_max")
      p.ediam_max = num;
    else
      throw std::runtime_error("unknown profile key '" + key + "'");
  }
  return p;
}

int run_gen(const std::vector<std::string>& kvs, std::uint64_t seed,
            const std::string& out_path) {
  GenProfile profile = parse_profile(kvs, seed);
  const InstanceDoc doc = generate_instance(profile);
  const std::string text = write_instance(doc);
  if (out_path.empty())
    std::cout << text;
  else
    spit(out_path, text);
  return kExitOk;
}

struct BenchRow {
  std::string name;
  std::string error;
  int n = 0, m = 0;
  long t = 0, b = 0;
  int containers = 0;
  double cpu = 0.0;
  double min_fill = 0.0;
  long unpacked = 0;
};

int run_bench(const std::string& dir, double time_limit, bool csv,
              std::uint64_t seed) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  for (const auto& f : files) {
    BenchRow row;
    row.name = f.filename().string();
    try {
      const InstanceDoc instance = parse_instance(slurp(f.string()));
      row.n = static_cast<int>(instance.tubes.size());
      row.m = static_cast<int>(instance.boxes.size());
      for (const auto& t : instance.tubes) row.t += t.count;
      for (const auto& b : instance.boxes) row.b += b.count;
      SolveParams params;
      params.time_limit_sec = time_limit;
      params.seed = seed;
      const Solution sol = solve(instance, params);
      row.containers = sol.metrics.containers_used;
      row.cpu = sol.metrics.wall_time_sec;
      row.min_fill = sol.metrics.fill_ratio.empty()
                         ? 0.0
                         : *std::min_element(sol.metrics.fill_ratio.begin(),
                                             sol.metrics.fill_ratio.end());
      for (const auto& [id, n] : sol.unpacked_tubes) row.unpacked += n;
      for (const auto& [id, n] : sol.unpacked_boxes) row.unpacked += n;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  if (csv) {
    std::cout << "instance,N,T,M,B,C,CPU,min_fill,unpacked,error\n";
    for (const auto& r : rows) {
      std::cout << r.name << ',' << r.n << ',' << r.t << ',' << r.m << ',' << r.b
                << ',' << r.containers << ',' << std::fixed << std::setprecision(2)
                << r.cpu << ',' << std::setprecision(3) << r.min_fill << ','
                << r.unpacked << ',' << '"' << r.error << '"' << "\n";
    }
  } else {
    std::cout << std::left << std::setw(24) << "instance" << std::right
              << std::setw(5) << "N" << std::setw(7) << "T" << std::setw(5) << "M"
              << std::setw(7) << "B" << std::setw(4) << "C" << std::setw(8) << "CPU"
              << std::setw(9) << "fill" << std::setw(10) << "unpacked" << "\n";
    for (const auto& r : rows) {
      std::cout << std::left << std::setw(24) << r.name << std::right;
      if (!r.error.empty()) {
        std::cout << "  error: " << r.error << "\n";
        continue;
      }
      std::cout << std::setw(5) << r.n << std::setw(7) << r.t << std::setw(5) << r.m
                << std::setw(7) << r.b << std::setw(4) << r.containers << std::fixed
                << std::setw(8) << std::setprecision(2) << r.cpu << std::setw(9)
                << std::setprecision(3) << r.min_fill << std::setw(10) << r.unpacked
                << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tubepack: heuristic container loading for tubes and boxes"};
  app.require_subcommand(1);

  SolveOpts so;
  auto* solve_cmd = app.add_subcommand("solve", "pack an instance into containers");
  solve_cmd->add_option("instance", so.instance_path, "instance file")->required();
  solve_cmd->add_option("--time-limit", so.time_limit, "budget in seconds (node quota)");
  solve_cmd->add_option("--seed", so.seed, "random seed");
  solve_cmd->add_option("--noise", so.noise, "randomization strength, 0..1");
  solve_cmd->add_option("--out", so.out_path, "write the solution here (default stdout)");
  solve_cmd->add_flag("--wallclock", so.wallclock,
                      "treat the budget as real time as well (not reproducible)");
  solve_cmd->add_option("--threads", so.threads, "restart worker count");

  std::string v_instance, v_solution;
  auto* validate_cmd = app.add_subcommand("validate", "check a solution for an instance");
  validate_cmd->add_option("instance", v_instance, "instance file")->required();
  validate_cmd->add_option("solution", v_solution, "solution file")->required();

  std::string r_solution, r_holder, r_outdir = ".";
  auto* render_cmd = app.add_subcommand("render", "write SVG sections and manifests");
  render_cmd->add_option("solution", r_solution, "solution file")->required();
  render_cmd->add_option("--holder", r_holder, "only this holder (ID or CONTAINER/ID)");
  render_cmd->add_option("--out-dir", r_outdir, "output directory");

  std::vector<std::string> g_profile;
  std::uint64_t g_seed = 0;
  std::string g_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark instance");
  gen_cmd->add_option("--profile", g_profile, "KEY=VAL (N, T, M, B, width, ...)");
  gen_cmd->add_option("--seed", g_seed, "random seed");
  gen_cmd->add_option("--out", g_out, "write the instance here (default stdout)");

  std::string b_dir;
  double b_time = 30.0;
  bool b_csv = false;
  std::uint64_t b_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "solve every instance in a directory");
  bench_cmd->add_option("dir", b_dir, "directory of instance files")->required();
  bench_cmd->add_option("--time-limit", b_time, "budget per instance in seconds");
  bench_cmd->add_flag("--csv", b_csv, "CSV output");
  bench_cmd->add_option("--seed", b_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return run_solve(so);
    if (*validate_cmd) return run_validate(v_instance, v_solution);
    if (*render_cmd) return run_render(r_solution, r_holder, r_outdir);
    if (*gen_cmd) return run_gen(g_profile, g_seed, g_out);
    if (*bench_cmd) return run_bench(b_dir, b_time, b_csv, b_seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitParse;
  } catch (const MalformedSolution& e) {
    std::cerr << "malformed solution: " << e.what() << "\n";
    return kExitParse;
  } catch (const Unpackable& e) {
    std::cerr << "unpackable: " << e.what() << "\n";
    return kExitUnpackable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
