#include "degseq/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Non-empty lines with the PACE comment marker "c" filtered out.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto tokens = split_ws(text.substr(start, end - start));
    if (!tokens.empty() && tokens[0] != "c") out.push_back(Line{number, std::move(tokens)});
    start = end + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

template <typename Int>
Int to_int(std::string_view s, std::size_t line) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// .gr

Graph parse_graph_file(std::string_view text) {
  std::optional<std::pair<int, std::size_t>> header;
  std::vector<std::pair<int, int>> edges;
  std::size_t header_line = 0;
  for (const Line& ln : content_lines(text)) {
    const auto& t = ln.tokens;
    if (t[0] == "p") {
      if (header) fail(ln.number, "second 'p' header");
      if (t.size() != 4 || t[1] != "tw") fail(ln.number, "malformed header, expected 'p tw <n> <m>'");
      const int n = to_int<int>(t[2], ln.number);
      const long long m = to_int<long long>(t[3], ln.number);
      if (n < 0 || m < 0) fail(ln.number, "negative vertex or edge count in header");
      header = {n, static_cast<std::size_t>(m)};
      header_line = ln.number;
      continue;
    }
    if (!header) fail(ln.number, "edge line before 'p tw' header");
    if (t.size() != 2) fail(ln.number, "expected an edge 'u v'");
    const int u = to_int<int>(t[0], ln.number);
    const int v = to_int<int>(t[1], ln.number);
    if (u < 1 || u > header->first || v < 1 || v > header->first) {
      fail(ln.number, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") has a vertex outside 1.." +
                          std::to_string(header->first));
    }
    if (u == v) fail(ln.number, "loop edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    edges.emplace_back(u, v);
  }
  if (!header) throw InputError("missing 'p tw <n> <m>' header");
  if (edges.size() != header->second) {
    fail(header_line, "header declares " + std::to_string(header->second) + " edges, file has " +
                          std::to_string(edges.size()));
  }
  return Graph::from_one_based(header->first, edges);
}

std::string emit_graph_file(const Graph& g) {
  std::ostringstream os;
  os << "p tw " << g.n() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// costs

CostModel parse_costs_file(std::string_view text, int n) {
  std::optional<std::vector<std::int64_t>> fallback;
  std::map<int, std::vector<std::int64_t>> explicit_tables;

  for (const Line& ln : content_lines(text)) {
    const auto& t = ln.tokens;
    if (t.size() < 2) fail(ln.number, "expected '<vertex|default> <family> ...'");
    const std::string_view family = t[1];
    std::vector<std::int64_t> table;
    try {
      if (family == "table") {
        if (t.size() - 2 != static_cast<std::size_t>(n)) {
          fail(ln.number, "table has " + std::to_string(t.size() - 2) + " entries, expected " + std::to_string(n));
        }
        for (std::size_t k = 2; k < t.size(); ++k) table.push_back(to_int<std::int64_t>(t[k], ln.number));
      } else if (family == "set") {
        std::vector<int> allowed;
        for (std::size_t k = 2; k < t.size(); ++k) {
          std::string_view rest = t[k];
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = rest.substr(0, comma);
            if (!item.empty()) allowed.push_back(to_int<int>(item, ln.number));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
          }
        }
        table = factor_table(allowed, n);
      } else if (family == "interval") {
        if (t.size() != 4) fail(ln.number, "interval takes two bounds");
        table = interval_table(to_int<int>(t[2], ln.number), to_int<int>(t[3], ln.number), n);
      } else if (family == "target") {
        if (t.size() != 3) fail(ln.number, "target takes one degree");
        table = target_table(to_int<int>(t[2], ln.number), n);
      } else if (family == "cubic-main" || family == "cubic-other") {
        if (t.size() != 2) fail(ln.number, std::string(family) + " takes no arguments");
        table = family == "cubic-main" ? cubic_main_table(n) : cubic_other_table(n);
      } else {
        fail(ln.number, "unknown cost family '" + std::string(family) + "'");
      }
    } catch (const InputError& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      fail(ln.number, what);
    }

    if (t[0] == "default") {
      if (fallback) fail(ln.number, "second 'default' line");
      fallback = std::move(table);
      continue;
    }
    const int v = to_int<int>(t[0], ln.number);
    if (v < 1 || v > n) fail(ln.number, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (!explicit_tables.emplace(v - 1, std::move(table)).second) {
      fail(ln.number, "vertex " + std::to_string(v) + " given twice");
    }
  }

  std::vector<std::vector<std::int64_t>> tables(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (auto it = explicit_tables.find(i); it != explicit_tables.end()) {
      tables[i] = it->second;
    } else if (fallback) {
      tables[i] = *fallback;
    } else {
      throw InputError("no cost line for vertex " + std::to_string(i + 1) + " and no default");
    }
  }
  return CostModel(std::move(tables));
}

std::string emit_costs_file(const CostModel& model) {
  std::ostringstream os;
  for (int i = 0; i < model.n(); ++i) {
    os << i + 1 << " table";
    for (std::int64_t x : model.table(i)) os << ' ' << x;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// .td

ParsedTd parse_td_file(std::string_view text) {
  ParsedTd out;
  bool have_header = false;
  std::size_t declared_bags = 0;
  int declared_size = 0;
  std::vector<char> seen;
  for (const Line& ln : content_lines(text)) {
    const auto& t = ln.tokens;
    if (!have_header) {
      if (t[0] != "s" || t.size() != 5 || t[1] != "td") fail(ln.number, "expected 's td <bags> <width+1> <n>'");
      const long long bags = to_int<long long>(t[2], ln.number);
      declared_size = to_int<int>(t[3], ln.number);
      out.n = to_int<int>(t[4], ln.number);
      if (bags < 0 || declared_size < 0 || out.n < 0) fail(ln.number, "negative count on solution line");
      declared_bags = static_cast<std::size_t>(bags);
      out.td.bags.resize(declared_bags);
      seen.assign(declared_bags, 0);
      have_header = true;
      continue;
    }
    if (t[0] == "s") fail(ln.number, "second solution line");
    if (t[0] == "b") {
      if (t.size() < 2) fail(ln.number, "bag line without id");
      const long long id = to_int<long long>(t[1], ln.number);
      if (id < 1 || static_cast<std::size_t>(id) > declared_bags) {
        fail(ln.number, "bag id " + std::to_string(id) + " outside 1.." + std::to_string(declared_bags));
      }
      if (seen[id - 1]) fail(ln.number, "bag " + std::to_string(id) + " listed twice");
      seen[id - 1] = 1;
      auto& bag = out.td.bags[id - 1];
      for (std::size_t k = 2; k < t.size(); ++k) {
        const int v = to_int<int>(t[k], ln.number);
        if (v < 1 || v > out.n) {
          fail(ln.number, "bag " + std::to_string(id) + " references vertex " + std::to_string(v) + " outside 1.." +
                              std::to_string(out.n));
        }
        bag.push_back(v - 1);
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
        fail(ln.number, "bag " + std::to_string(id) + " repeats a vertex");
      }
      continue;
    }
    if (t.size() != 2) fail(ln.number, "expected a tree edge 'a b'");
    const long long a = to_int<long long>(t[0], ln.number);
    const long long b = to_int<long long>(t[1], ln.number);
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > declared_bags || static_cast<std::size_t>(b) > declared_bags) {
      fail(ln.number, "tree edge references a bag outside 1.." + std::to_string(declared_bags));
    }
    if (a == b) fail(ln.number, "tree edge is a loop");
    out.td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (!have_header) throw InputError("missing 's td' solution line");
  for (std::size_t id = 0; id < declared_bags; ++id) {
    if (!seen[id]) throw InputError("bag " + std::to_string(id + 1) + " is declared but never listed");
  }
  const int actual_size = out.td.width() + 1;
  if (actual_size != declared_size) {
    throw InputError("solution line declares width+1 = " + std::to_string(declared_size) +
                     " but the largest bag has " + std::to_string(actual_size) + " vertices");
  }
  // Tree shape: a tree on B bags has B-1 edges and no cycle.
  const std::size_t nb = declared_bags;
  std::vector<int> root(nb);
  for (std::size_t i = 0; i < nb; ++i) root[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (auto [a, b] : out.td.tree_edges) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) throw InputError("not a tree: tree edges contain a cycle through bags " + std::to_string(a + 1) +
                                   " and " + std::to_string(b + 1));
    root[ra] = rb;
  }
  if (nb > 0 && out.td.tree_edges.size() != nb - 1) {
    throw InputError("not a tree: " + std::to_string(out.td.tree_edges.size()) + " tree edges for " +
                     std::to_string(nb) + " bags (disconnected)");
  }
  return out;
}

std::string emit_td_file(const TreeDecomposition& td, int n) {
  std::ostringstream os;
  os << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t id = 0; id < td.bags.size(); ++id) {
    std::vector<Vertex> bag = td.bags[id];
    std::sort(bag.begin(), bag.end());
    os << "b " << id + 1;
    for (Vertex v : bag) os << ' ' << v + 1;
    os << '\n';
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : td.tree_edges) edges.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// solution

std::string emit_solution_file(std::int64_t value, const std::vector<Edge>& edges) {
  std::ostringstream os;
  os << "value " << value << '\n';
  for (const Edge& e : edges) os << "edge " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

SolutionFile parse_solution_file(std::string_view text) {
  SolutionFile out;
  bool have_value = false;
  for (const Line& ln : content_lines(text)) {
    const auto& t = ln.tokens;
    if (t[0] == "value" && t.size() == 2 && !have_value) {
      out.value = to_int<std::int64_t>(t[1], ln.number);
      have_value = true;
    } else if (t[0] == "edge" && t.size() == 3 && have_value) {
      const int u = to_int<int>(t[1], ln.number);
      const int v = to_int<int>(t[2], ln.number);
      if (u < 1 || v < 1 || u == v) fail(ln.number, "bad solution edge");
      out.edges.push_back(Edge::canonical(u - 1, v - 1));
    } else {
      fail(ln.number, "expected 'value <int>' first, then 'edge <u> <v>' lines");
    }
  }
  if (!have_value) throw InputError("solution file has no 'value' line");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("error writing " + path);
}

}  // namespace degseq
