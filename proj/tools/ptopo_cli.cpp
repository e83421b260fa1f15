// Command-line driver: progressive persistence diagrams and critical points
// on raw regular-grid volumes, with time budgets, interruption, per-level
// artifacts, convergence metrics and a benchmark harness.

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ptopo/io.hpp"
#include "ptopo/lifetime.hpp"
#include "ptopo/metrics.hpp"
#include "ptopo/persistence.hpp"
#include "ptopo/synthetic.hpp"

namespace {

std::atomic<bool> g_interrupt{false};

void on_signal(int) { g_interrupt.store(true); }

ptopo::Coords parse_dims(const std::string& s) {
  ptopo::Coords dims{};
  std::stringstream ss(s);
  std::string tok;
  for (int a = 0; a < 3; ++a) {
    if (!std::getline(ss, tok, ','))
      throw CLI::ValidationError("--dims", "expected X,Y,Z");
    dims[a] = std::stoll(tok);
  }
  return dims;
}

struct InputOptions {
  std::string input;
  std::string dims_str;
  std::string dtype_str;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "raw volume file (little-endian, x-fastest)")
        ->required();
    cmd->add_option("--dims", dims_str,
                    "sample counts per axis, X,Y,Z (Z=1 for 2D); optional when "
                    "a <input>.json sidecar exists");
    cmd->add_option("--dtype", dtype_str, "u8|i16|u16|f32|f64");
  }

  ptopo::ScalarField load() const {
    std::optional<ptopo::VolumeHeader> header = ptopo::read_sidecar(input);
    if (!dims_str.empty()) {
      if (!header) header.emplace();
      header->samples = parse_dims(dims_str);
    }
    if (!dtype_str.empty()) {
      if (!header) header.emplace();
      header->dtype = ptopo::parse_dtype(dtype_str);
    }
    if (!header)
      throw std::runtime_error(
          "no volume header: pass --dims/--dtype or provide " + input + ".json");
    return ptopo::read_raw_volume(input, *header);
  }
};

ptopo::PairSelection parse_pairs(const std::string& s) {
  if (s == "min-saddle") return ptopo::PairSelection::MinSaddle;
  if (s == "saddle-max") return ptopo::PairSelection::SaddleMax;
  if (s == "both") return ptopo::PairSelection::Both;
  throw CLI::ValidationError("--pairs", "expected min-saddle|saddle-max|both");
}

ptopo::HierarchyDescriptor hierarchy_for(const ptopo::ScalarField& field) {
  const ptopo::Coords cells = ptopo::field_cells(field);
  return ptopo::build_hierarchy(cells, cells[2] == 0 ? 2 : 3);
}

std::string level_path(const std::string& dir, const std::string& stem, int level,
                       const std::string& ext) {
  return dir + "/" + stem + "_level_" + std::to_string(level) + ext;
}

void write_ti_stats(const std::vector<ptopo::LevelStats>& stats,
                    const std::string& path) {
  std::ostringstream out;
  out << "level,vertices,new_vertices,old_vertices,ti_new,ti_old,updated_old,"
         "recomputed,ti_fraction\n";
  ptopo::Index ti = 0, total = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    const double frac =
        s.vertices ? double(s.ti_new + s.ti_old) / double(s.vertices) : 0.0;
    out << s.level << ',' << s.vertices << ',' << s.new_vertices << ','
        << s.old_vertices << ',' << s.ti_new << ',' << s.ti_old << ','
        << s.updated_old << ',' << s.recomputed << ',' << frac << '\n';
    if (i > 0) {  // the first computed level has no invariant vertices
      ti += s.ti_new + s.ti_old;
      total += s.vertices;
    }
  }
  out << "total,,,,,,,," << (total ? double(ti) / double(total) : 0.0) << '\n';
  std::ofstream f(path, std::ios::trunc);
  f << out.str();
}

int cmd_synth(const std::string& name, const std::string& dims_str,
              std::uint64_t seed, const std::string& out) {
  const ptopo::Coords dims = parse_dims(dims_str);
  ptopo::ScalarField field;
  if (name == "minmax")
    field = ptopo::make_minmax(dims);
  else if (name == "random")
    field = ptopo::make_random(dims, seed);
  else if (name == "hills")
    field = ptopo::make_hills(dims, seed);
  else
    throw std::runtime_error("unknown synthetic field: " + name);
  ptopo::write_raw_volume(out, field, ptopo::Dtype::F64);
  ptopo::write_sidecar(out, ptopo::VolumeHeader{field.samples, ptopo::Dtype::F64});
  std::cout << "wrote " << out << " (" << dims[0] << "x" << dims[1] << "x"
            << dims[2] << " f64)\n";
  return 0;
}

struct RunFlags {
  std::string pairs = "both";
  std::optional<double> budget_ms;
  std::optional<int> levels;
  int threads = 1;
  std::string out = ".";
  bool per_level = false;
  bool metrics = false;
  bool lifetime = false;
  int lmax = 10;
  std::string mode = "progressive";

  void attach(CLI::App* cmd) {
    cmd->add_option("--pairs", pairs, "min-saddle|saddle-max|both");
    cmd->add_option("--budget-ms", budget_ms,
                    "wall-clock budget, checked between levels");
    cmd->add_option("--levels", levels, "stop after this many levels");
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", out, "output directory");
    cmd->add_flag("--per-level", per_level, "write one diagram per level");
    cmd->add_flag("--metrics", metrics, "write the convergence report");
    cmd->add_flag("--lifetime", lifetime, "track extremum lifetimes");
    cmd->add_option("--lmax", lmax, "integral-line cap for lifetime tracking")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--mode", mode, "progressive|nonprogressive");
  }
};

int cmd_diagram(const InputOptions& in, const RunFlags& flags) {
  const ptopo::ScalarField field = in.load();
  const ptopo::HierarchyDescriptor desc = hierarchy_for(field);
  const ptopo::PairSelection selection = parse_pairs(flags.pairs);
  std::filesystem::create_directories(flags.out);

  if (flags.mode == "nonprogressive") {
    ptopo::ProgressiveState state(desc, field, desc.finest_level(), flags.threads);
    const auto diagram =
        ptopo::compute_diagram_at_level(state, selection, flags.threads);
    ptopo::write_diagram(diagram, field.samples, flags.out + "/diagram.csv");
    return 0;
  }
  if (flags.mode != "progressive")
    throw std::runtime_error("unknown mode: " + flags.mode);

  const auto start = std::chrono::steady_clock::now();
  std::vector<ptopo::PersistenceDiagram> diagrams;
  std::vector<double> elapsed;
  std::vector<ptopo::LevelStats> stats;
  ptopo::LifetimeTracker max_tracks(true, flags.lmax);
  ptopo::LifetimeTracker min_tracks(false, flags.lmax);

  ptopo::ProgressiveOptions options;
  options.pairs = selection;
  options.budget_ms = flags.budget_ms;
  options.level_cap = flags.levels;
  options.threads = flags.threads;
  options.interrupt = &g_interrupt;

  ptopo::run_progressive(
      desc, field, options,
      [&](const ptopo::PersistenceDiagram& d, const ptopo::ProgressiveState& s) {
        diagrams.push_back(d);
        elapsed.push_back(std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count());
        stats = s.stats();
        if (flags.lifetime) {
          max_tracks.observe(s);
          min_tracks.observe(s);
        }
        if (flags.per_level)
          ptopo::write_diagram(d, field.samples,
                               level_path(flags.out, "diagram", d.level, ".csv"));
      });

  const ptopo::PersistenceDiagram& last = diagrams.back();
  ptopo::write_diagram(last, field.samples, flags.out + "/diagram.csv");

  if (flags.metrics) {
    std::vector<ptopo::ConvergenceRow> rows;
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
      ptopo::ConvergenceRow row;
      row.level = diagrams[i].level;
      row.elapsed_ms = elapsed[i];
      row.normalized_w2 = ptopo::normalized_distance(last, diagrams[i]);
      const auto ind = ptopo::significant_pair_indicators(last, diagrams[i]);
      row.sig_ratio = ind.ratio;
      row.avg_persistence_ratio = ind.avg_persistence_ratio;
      row.sig_defined = ind.avg_defined;
      rows.push_back(row);
    }
    ptopo::write_convergence_report(rows, flags.out + "/convergence.csv");
  }
  if (flags.lifetime) {
    ptopo::write_tracks(max_tracks.tracks(), field, flags.out + "/lifetime_maxima.csv");
    ptopo::write_tracks(min_tracks.tracks(), field, flags.out + "/lifetime_minima.csv");
  }
  write_ti_stats(stats, flags.out + "/ti_stats.csv");
  return 0;
}

int cmd_critical_points(const InputOptions& in, const RunFlags& flags) {
  const ptopo::ScalarField field = in.load();
  const ptopo::HierarchyDescriptor desc = hierarchy_for(field);
  std::filesystem::create_directories(flags.out);

  if (flags.mode == "nonprogressive") {
    ptopo::ProgressiveState state(desc, field, desc.finest_level(), flags.threads);
    ptopo::write_critical_points(
        state, level_path(flags.out, "critical_points", state.level(), ".csv"));
    write_ti_stats(state.stats(), flags.out + "/ti_stats.csv");
    return 0;
  }
  if (flags.mode != "progressive")
    throw std::runtime_error("unknown mode: " + flags.mode);

  const auto start = std::chrono::steady_clock::now();
  const auto expired = [&] {
    if (g_interrupt.load()) return true;
    if (!flags.budget_ms) return false;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
               .count() >= *flags.budget_ms;
  };

  ptopo::ProgressiveState state(desc, field, 0, flags.threads);
  int emitted = 0;
  while (true) {
    ptopo::write_critical_points(
        state, level_path(flags.out, "critical_points", state.level(), ".csv"));
    ++emitted;
    if (state.level() >= desc.finest_level()) break;
    if (flags.levels && emitted >= *flags.levels) break;
    if (expired()) break;
    state.advance_level(flags.threads);
  }
  write_ti_stats(state.stats(), flags.out + "/ti_stats.csv");
  return 0;
}

int cmd_bench(const InputOptions& in, const RunFlags& flags) {
  const ptopo::ScalarField field = in.load();
  const ptopo::HierarchyDescriptor desc = hierarchy_for(field);
  const ptopo::PairSelection selection = parse_pairs(flags.pairs);

  const auto time_run = [&](bool progressive, int threads,
                            ptopo::PersistenceDiagram& out) {
    const auto t0 = std::chrono::steady_clock::now();
    if (progressive) {
      ptopo::ProgressiveOptions options;
      options.pairs = selection;
      options.threads = threads;
      ptopo::run_progressive(desc, field, options,
                             [&](const ptopo::PersistenceDiagram& d,
                                 const ptopo::ProgressiveState&) { out = d; });
    } else {
      ptopo::ProgressiveState state(desc, field, desc.finest_level(), threads);
      out = ptopo::compute_diagram_at_level(state, selection, threads);
    }
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  const auto same = [](const ptopo::PersistenceDiagram& a,
                       const ptopo::PersistenceDiagram& b) {
    if (a.pairs.size() != b.pairs.size()) return false;
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      const auto &x = a.pairs[i], &y = b.pairs[i];
      if (x.birth_vertex != y.birth_vertex || x.death_vertex != y.death_vertex ||
          x.birth_value != y.birth_value || x.death_value != y.death_value ||
          x.cls != y.cls)
        return false;
    }
    return true;
  };

  ptopo::PersistenceDiagram np1, npN, p1, pN, p1b;
  const double t_np1 = time_run(false, 1, np1);
  const double t_p1 = time_run(true, 1, p1);
  const double t_p1b = time_run(true, 1, p1b);
  double t_npN = t_np1, t_pN = t_p1;
  if (flags.threads > 1) {
    t_npN = time_run(false, flags.threads, npN);
    t_pN = time_run(true, flags.threads, pN);
  } else {
    npN = np1;
    pN = p1;
  }

  std::cout << "mode            threads   wall_ms\n";
  std::cout << "nonprogressive  1         " << t_np1 << "\n";
  std::cout << "progressive     1         " << t_p1 << "  (repeat: " << t_p1b
            << ")\n";
  if (flags.threads > 1) {
    std::cout << "nonprogressive  " << flags.threads << "         " << t_npN << "\n";
    std::cout << "progressive     " << flags.threads << "         " << t_pN << "\n";
  }
  std::cout << "repeat-identical: " << (same(p1, p1b) ? "yes" : "NO") << "\n";
  std::cout << "modes-agree:      " << (same(np1, p1) && same(npN, pN) ? "yes" : "NO")
            << "\n";
  std::cout << "prog/nonprog (1 thread): " << (t_np1 > 0 ? t_p1 / t_np1 : 0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  CLI::App app{
      "progressive topological analysis of scalar fields on regular grids"};
  app.require_subcommand(1);

  // synth
  std::string synth_name, synth_dims = "33,33,33", synth_out = "volume.raw";
  std::uint64_t synth_seed = 1;
  auto* synth = app.add_subcommand("synth", "generate a synthetic volume");
  synth->add_option("name", synth_name, "minmax|random|hills")->required();
  synth->add_option("--dims", synth_dims, "sample counts X,Y,Z (Z=1 for 2D)");
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--out", synth_out, "output volume path");

  InputOptions diagram_in, cp_in, bench_in;
  RunFlags diagram_flags, cp_flags, bench_flags;
  bench_flags.threads = 2;

  auto* diagram = app.add_subcommand("diagram", "persistence diagram computation");
  diagram_in.attach(diagram);
  diagram_flags.attach(diagram);

  auto* cp = app.add_subcommand("critical-points", "critical point extraction");
  cp_in.attach(cp);
  cp_flags.attach(cp);

  auto* bench = app.add_subcommand("bench",
                                   "progressive vs non-progressive timings "
                                   "(informational)");
  bench_in.attach(bench);
  bench->add_option("--threads", bench_flags.threads, "parallel run thread count");
  bench->add_option("--pairs", bench_flags.pairs, "min-saddle|saddle-max|both");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return cmd_synth(synth_name, synth_dims, synth_seed, synth_out);
    if (diagram->parsed()) return cmd_diagram(diagram_in, diagram_flags);
    if (cp->parsed()) return cmd_critical_points(cp_in, cp_flags);
    if (bench->parsed()) return cmd_bench(bench_in, bench_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
