#pragma once

// Command-line front end. `run` is separate from main() so the test suite can
// drive it in-process.
//
// Exit codes: 0 ok, 2 invalid input, 3 resource cap, 4 precondition violated.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chipfas/chipfas.hpp"
#include "json.hpp"

namespace chipfas::cli {

using nlohmann::json;

inline std::string fnv1a64_hex(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json arcs_json(const ArcSet& a) {
  json out = json::array();
  for (const Arc& e : a) out.push_back({e.tail, e.head});
  return out;
}

inline json arcs_json(std::span<const Arc> arcs) {
  json out = json::array();
  for (const Arc& e : arcs) out.push_back({e.tail, e.head});
  return out;
}

/// Shared state for one invocation.
struct Session {
  std::ostream& out;
  std::ostream& err;
  std::string command_line;
  std::optional<std::string> format;  // "text" | "json"
  std::optional<std::size_t> max_exact_n;
  std::string digest_input;
  std::vector<std::string> caps_hit;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Session(std::ostream& o, std::ostream& e, std::string cmd) : out(o), err(e), command_line(std::move(cmd)) {}

  [[nodiscard]] bool json_out(bool default_json = false) const {
    return format ? *format == "json" : default_json;
  }

  ExactLimits limits() {
    ExactLimits lim;
    if (max_exact_n) {
      lim.max_n = *max_exact_n;
      err << "exact solver: n <= " << lim.max_n << ", estimated memory "
          << exact_memory_estimate(std::min<std::size_t>(lim.max_n, 62)) << " bytes at the cap\n";
    }
    return lim;
  }

  std::string load(const std::string& path) {
    std::string text = read_input(path);
    digest_input += text;
    return text;
  }

  void emit_report(json result) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json report = {{"command", command_line},
                   {"input_digest", "fnv1a64:" + fnv1a64_hex(digest_input)},
                   {"result", std::move(result)},
                   {"ms", ms},
                   {"caps_hit", caps_hit}};
    out << report.dump(2) << '\n';
  }
};

inline Digraph load_graph(Session& s, const std::string& path) { return parse_digraph(s.load(path)); }

// ---------------------------------------------------------------------------

struct MinfasArgs {
  std::string graph;
  bool exact = false;
  bool heuristic = false;
  bool emit_witness = false;
};

/// Heuristic upper bound; non-Eulerian graphs go through the Eulerian lift.
struct HeuristicOutcome {
  std::size_t upper_bound;
  ArcSet witness;
  bool lifted;
};

inline HeuristicOutcome heuristic_fas(const Digraph& g) {
  if (is_eulerian(g)) {
    auto h = min_fas_heuristic(g);
    return {h.upper_bound, h.witness, false};
  }
  auto inst = eulerianize(g);
  auto h = min_fas_heuristic(inst.lifted);
  ArcSet witness = project_to_original(inst, h.witness);
  // the projected witness is a feedback arc set of g, and its size is an upper bound too
  return {std::min(recover_minfas(inst, h.upper_bound), witness.size()), witness, true};
}

inline int cmd_minfas(Session& s, const MinfasArgs& a) {
  const Digraph g = load_graph(s, a.graph);
  json result;
  std::size_t value;
  ArcSet witness;
  std::string method;
  if (a.heuristic) {
    auto h = heuristic_fas(g);
    value = h.upper_bound;
    witness = std::move(h.witness);
    method = "heuristic";
    if (witness.size() > value) witness = ArcSet{};  // only the bound is meaningful
    result["via_lift"] = h.lifted;
  } else {
    auto f = min_fas_exact(g, s.limits());
    value = f.size;
    witness = std::move(f.witness);
    method = "exact";
  }
  const bool exact = method == "exact";
  if (s.json_out()) {
    result["min_fas"] = value;
    result["method"] = method;
    result["bound"] = exact ? "exact" : "upper";
    if (a.emit_witness) result["witness"] = arcs_json(witness);
    s.emit_report(std::move(result));
  } else {
    s.out << "min_fas " << value << '\n' << "bound " << (exact ? "exact" : "upper") << '\n'
          << "method " << method << '\n';
    if (a.emit_witness) {
      s.out << "witness\n";
      write_edge_list(s.out, g.vertex_count(), witness);
    }
  }
  return 0;
}

inline int cmd_eulerianize(Session& s, const std::string& path) {
  const Digraph g = load_graph(s, path);
  const auto inst = eulerianize(g);
  if (s.json_out()) {
    json map = json::array();
    for (Vertex v : inst.vertex_map) map.push_back(v);
    s.emit_report({{"d", inst.surplus},
                   {"s_new", inst.hub ? json(*inst.hub) : json(nullptr)},
                   {"vertices", inst.lifted.vertex_count()},
                   {"arcs", inst.lifted.arc_count()},
                   {"lifted", arcs_json(inst.lifted.arcs())},
                   {"map", std::move(map)}});
    return 0;
  }
  write_edge_list(s.out, inst.lifted);
  s.out << "# d " << inst.surplus << '\n';
  s.out << "# s_new " << (inst.hub ? std::to_string(*inst.hub) : std::string("none")) << '\n';
  s.out << "# vertices " << inst.lifted.vertex_count() << '\n';
  s.out << "# arcs " << inst.lifted.arc_count() << '\n';
  for (Vertex v = 0; v < inst.vertex_map.size(); ++v) s.out << "# map " << v << "→" << inst.vertex_map[v] << '\n';
  return 0;
}

struct MinrecArgs {
  std::string graph;
  Vertex sink = 0;
  bool exact = false;
  bool brute = false;
  bool emit_config = false;
};

inline int cmd_minrec(Session& s, const MinrecArgs& a) {
  const Digraph g = load_graph(s, a.graph);
  g.check_vertex(a.sink);
  MinRec r;
  std::string method;
  if (a.brute) {
    r = minrec_brute(g, a.sink);
    method = "brute";
  } else {
    if (!is_eulerian(g))
      throw PreconditionError("graph is not Eulerian, so the feedback-arc-set route does not apply; "
                              "rerun with --brute to enumerate recurrent configurations");
    r = minrec_exact(g, a.sink, s.limits());
    method = "exact";
  }
  if (s.json_out()) {
    json result = {{"min_rec", r.chips}, {"sink", a.sink}, {"method", method}};
    if (method == "exact") result["max_acyclic"] = r.max_acyclic;
    if (a.emit_config) result["config"] = to_json(r.witness);
    s.emit_report(std::move(result));
  } else {
    s.out << "min_rec " << r.chips << '\n' << "sink " << a.sink << '\n' << "method " << method << '\n';
    if (a.emit_config) {
      s.out << "config\n";
      write_configuration(s.out, r.witness);
    }
  }
  return 0;
}

struct CheckArgs {
  std::string graph;
  std::string config;
  std::optional<Vertex> sink;
  bool emit_firing_graph = false;
};

inline int cmd_check(Session& s, const CheckArgs& a) {
  const Digraph g = load_graph(s, a.graph);
  std::optional<Vertex> sink = a.sink;
  const std::string text = s.load(a.config);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json_file = first != std::string::npos && text[first] == '{';
  if (!sink && !is_json_file) sink = 0;
  const Configuration c = parse_configuration(text, g.vertex_count(), sink);
  detail::require_global_sink(g, c.sink());
  detail::require_stable(g, c);

  json v = {{"sink", c.sink()}};
  if (is_eulerian(g)) {
    BurnResult b = burn(g, c);
    v["test"] = "beta";
    v["recurrent"] = b.recurrent;
    v["minimal"] = b.recurrent && is_minimal_recurrent(g, c);
    if (b.recurrent) {
      v["order"] = b.order;
      if (a.emit_firing_graph) v["firing_graph"] = arcs_json(firing_graph(g, c, b.order).arcs);
    } else {
      v["unburnt"] = b.unburnt;
    }
  } else {
    const bool rec = is_recurrent(g, c, RecurrenceTest::Epsilon);
    v["test"] = "epsilon";
    v["recurrent"] = rec;
    v["minimal"] = rec && is_minimal_recurrent(g, c);
  }
  if (s.json_out(true)) {
    s.emit_report(std::move(v));
  } else {
    s.out << "recurrent " << (v["recurrent"].get<bool>() ? "true" : "false") << '\n';
    s.out << "minimal " << (v["minimal"].get<bool>() ? "true" : "false") << '\n';
    for (const char* key : {"order", "unburnt"}) {
      if (!v.contains(key)) continue;
      s.out << key;
      for (const auto& x : v[key]) s.out << ' ' << x.get<Vertex>();
      s.out << '\n';
    }
    if (v.contains("firing_graph")) {
      s.out << "firing_graph\n";
      write_firing_graph(s.out, g.vertex_count(), firing_graph(g, c, v["order"].get<std::vector<Vertex>>()));
    }
  }
  return 0;
}

struct GenArgs {
  std::size_t n = 0;
  std::optional<std::size_t> arcs;
  std::uint64_t seed = 0;
  bool eulerian = false;
};

inline Digraph generate(const GenArgs& a) {
  const std::size_t max_arcs = a.n > 1 ? a.n * (a.n - 1) : 0;
  const std::size_t m = a.arcs.value_or(std::min(max_arcs, 2 * a.n));
  return a.eulerian ? random_eulerian_digraph(a.n, m, a.seed) : random_digraph(a.n, m, a.seed);
}

inline int cmd_gen(Session& s, const GenArgs& a) {
  const Digraph g = generate(a);
  if (s.json_out()) {
    s.emit_report({{"n", g.vertex_count()}, {"m", g.arc_count()}, {"seed", a.seed}, {"eulerian", is_eulerian(g)},
                   {"arcs", arcs_json(g.arcs())}});
  } else {
    write_edge_list(s.out, g);
  }
  return 0;
}

struct BenchRow {
  std::string instance;
  std::string n, m, exact, heuristic, gap;
  double ms = 0;
};

inline BenchRow bench_one(Session& s, const std::filesystem::path& file, const ExactLimits& lim) {
  BenchRow row{file.filename().string(), "", "", "", "", "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Digraph g = parse_digraph(read_input(file.string()));
    row.n = std::to_string(g.vertex_count());
    row.m = std::to_string(g.arc_count());
    std::optional<std::size_t> exact, heur;
    try {
      exact = min_fas_exact(g, lim).size;
      row.exact = std::to_string(*exact);
    } catch (const CapExceeded&) {
      row.exact = "cap";
      s.caps_hit.push_back(row.instance);
    }
    try {
      heur = heuristic_fas(g).upper_bound;
      row.heuristic = std::to_string(*heur);
    } catch (const PreconditionError&) {
      row.heuristic = "n/a";
    }
    if (exact && heur) row.gap = std::to_string(*heur - *exact);
  } catch (const Error& e) {
    row.exact = "error";
    s.err << row.instance << ": " << e.what() << '\n';
  }
  row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

inline int cmd_bench(Session& s, const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidInput("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && !entry.path().filename().string().starts_with("."))
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  const ExactLimits lim = s.limits();
  std::vector<BenchRow> rows;
  for (const auto& f : files) rows.push_back(bench_one(s, f, lim));

  if (s.json_out()) {
    json table = json::array();
    for (const auto& r : rows)
      table.push_back({{"instance", r.instance}, {"n", r.n}, {"m", r.m}, {"exact", r.exact},
                       {"heuristic", r.heuristic}, {"gap", r.gap}, {"ms", r.ms}});
    s.emit_report({{"rows", std::move(table)}});
    return 0;
  }
  s.out << "instance,n,m,exact,heuristic,gap,ms\n";
  for (const auto& r : rows)
    s.out << r.instance << ',' << r.n << ',' << r.m << ',' << r.exact << ',' << r.heuristic << ',' << r.gap << ','
          << std::fixed << std::setprecision(3) << r.ms << std::defaultfloat << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chip-firing recurrence and feedback arc set toolkit", "chipfas"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format;
  std::size_t max_exact_n = 0;
  auto* fmt_opt = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  auto* cap_opt = app.add_option("--max-exact-n", max_exact_n, "Largest vertex count for the exact solver");

  MinfasArgs minfas;
  auto* c_minfas = app.add_subcommand("minfas", "Minimum feedback arc set");
  c_minfas->add_option("graph", minfas.graph, "Edge-list file ('-' for stdin)")->required();
  auto* ex = c_minfas->add_flag("--exact", minfas.exact, "Exact subset DP (default)");
  c_minfas->add_flag("--heuristic", minfas.heuristic, "Rooted cut-stretch heuristic (upper bound)")->excludes(ex);
  c_minfas->add_flag("--emit-witness", minfas.emit_witness, "Print the feedback arc set");

  std::string eul_graph;
  auto* c_eul = app.add_subcommand("eulerianize", "Lift a digraph to an Eulerian digraph");
  c_eul->add_option("graph", eul_graph, "Edge-list file")->required();

  MinrecArgs minrec;
  auto* c_minrec = app.add_subcommand("minrec", "Minimum recurrent configuration");
  c_minrec->add_option("graph", minrec.graph, "Edge-list file")->required();
  c_minrec->add_option("--sink", minrec.sink, "Sink vertex")->capture_default_str();
  auto* mx = c_minrec->add_flag("--exact", minrec.exact, "Via the maximum acyclic arc set (default, Eulerian)");
  c_minrec->add_flag("--brute", minrec.brute, "Enumerate all recurrent configurations")->excludes(mx);
  c_minrec->add_flag("--emit-config", minrec.emit_config, "Print a minimum recurrent configuration");

  CheckArgs check;
  Vertex check_sink = 0;
  auto* c_check = app.add_subcommand("check", "Recurrence and minimality verdict for a configuration");
  c_check->add_option("graph", check.graph, "Edge-list file")->required();
  c_check->add_option("config", check.config, "Configuration file (text or JSON)")->required();
  auto* sink_opt = c_check->add_option("--sink", check_sink, "Sink vertex (default 0, or from JSON)");
  c_check->add_flag("--emit-firing-graph", check.emit_firing_graph, "Print the firing graph of the burning pass");

  GenArgs gen;
  std::size_t gen_arcs = 0;
  auto* c_gen = app.add_subcommand("gen", "Generate a random digraph");
  c_gen->add_option("--n", gen.n, "Vertex count")->required();
  auto* arcs_opt = c_gen->add_option("--arcs", gen_arcs, "Arc count (default min(2n, n(n-1)))");
  c_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  c_gen->add_flag("--eulerian", gen.eulerian, "Strongly connected Eulerian digraph");

  std::string bench_dir;
  auto* c_bench = app.add_subcommand("bench", "Exact vs heuristic feedback arc set over a directory");
  c_bench->add_option("dir", bench_dir, "Directory of edge-list files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::string echo = "chipfas";
  for (const auto& a : args) echo += " " + a;
  Session s{out, err, echo};
  if (*fmt_opt) s.format = format;
  if (*cap_opt) s.max_exact_n = max_exact_n;

  try {
    if (*c_minfas) return cmd_minfas(s, minfas);
    if (*c_eul) return cmd_eulerianize(s, eul_graph);
    if (*c_minrec) return cmd_minrec(s, minrec);
    if (*c_check) {
      if (*sink_opt) check.sink = check_sink;
      return cmd_check(s, check);
    }
    if (*c_gen) {
      if (*arcs_opt) gen.arcs = gen_arcs;
      return cmd_gen(s, gen);
    }
    if (*c_bench) return cmd_bench(s, bench_dir);
  } catch (const NotRecurrent& e) {
    err << "error: " << e.what() << "; unburnt:";
    for (Vertex v : e.unburnt()) err << ' ' << v;
    err << '\n';
    return e.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return 2;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace chipfas::cli
