#pragma once

// Configuration files.
//
// Text:  one "v count" line per non-sink vertex ('#' comments, blank lines
//        ignored; unlisted vertices hold 0). The sink comes from the caller.
// JSON:  {"sink": k, "chips": {"v": count, ...}}
//
// Firing graphs are edge lists followed by a "# order w1 w2 ..." line.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "chipfas/chipfire.hpp"
#include "chipfas/digraph.hpp"
#include "chipfas/recurrence.hpp"
#include "json.hpp"

namespace chipfas {

inline nlohmann::json to_json(const Configuration& c) {
  nlohmann::json chips = nlohmann::json::object();
  for (Vertex v = 0; v < c.vertex_count(); ++v)
    if (v != c.sink()) chips[std::to_string(v)] = c[v];
  return {{"sink", c.sink()}, {"chips", std::move(chips)}};
}

inline void write_configuration(std::ostream& os, const Configuration& c) {
  for (Vertex v = 0; v < c.vertex_count(); ++v)
    if (v != c.sink()) os << v << ' ' << c[v] << '\n';
}

inline void write_firing_graph(std::ostream& os, std::size_t n, const FiringGraph& f) {
  write_edge_list(os, n, f.arcs);
  os << "# order";
  for (Vertex w : f.order) os << ' ' << w;
  os << '\n';
}

namespace detail {

inline Configuration config_from_json(std::string_view text, std::size_t n, std::optional<Vertex> sink) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("configuration JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("chips") || !j["chips"].is_object())
    throw InvalidInput("configuration JSON needs a \"chips\" object");
  if (j.contains("sink")) {
    if (!j["sink"].is_number_unsigned()) throw InvalidInput("\"sink\" must be a non-negative integer");
    const auto js = j["sink"].get<Vertex>();
    if (sink && *sink != js)
      throw InvalidInput("sink " + std::to_string(js) + " in file disagrees with sink " + std::to_string(*sink));
    sink = js;
  }
  if (!sink) throw InvalidInput("no sink given");
  Configuration c(n, *sink);
  for (const auto& [key, val] : j["chips"].items()) {
    auto v = parse_uint(key);
    if (!v || *v >= n) throw InvalidInput("bad vertex key \"" + key + "\"");
    if (!val.is_number_integer()) throw InvalidInput("chip count for vertex " + key + " is not an integer");
    c.set(static_cast<Vertex>(*v), val.get<Chips>());
  }
  return c;
}

}  // namespace detail

/// Reads either format; JSON is recognised by a leading '{'.
inline Configuration parse_configuration(std::string_view text, std::size_t n, std::optional<Vertex> sink) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return detail::config_from_json(text, n, sink);
  if (!sink) throw InvalidInput("no sink given");
  Configuration c(n, *sink);
  std::vector<char> seen(n, 0);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (detail::is_skippable(toks)) continue;
    if (toks.size() != 2) throw ParseError(lineno, "expected \"v count\"");
    auto v = detail::parse_uint(toks[0]);
    if (!v || *v >= n) throw ParseError(lineno, "bad vertex '" + std::string(toks[0]) + "'");
    Chips value = 0;
    auto [p, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), value);
    if (ec != std::errc() || p != toks[1].data() + toks[1].size() || value < 0)
      throw ParseError(lineno, "bad chip count '" + std::string(toks[1]) + "'");
    if (*v == *sink) throw ParseError(lineno, "the sink does not hold chips");
    if (seen[*v]) throw ParseError(lineno, "vertex " + std::to_string(*v) + " listed twice");
    seen[*v] = 1;
    c.set(static_cast<Vertex>(*v), value);
  }
  return c;
}

}  // namespace chipfas
