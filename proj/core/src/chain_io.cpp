#include "ptm/chain_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ptm/errors.hpp"
#include "ptm/inference.hpp"

namespace ptm {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::Parse,
              "line " + std::to_string(line_no) + ": " + what);
}

std::optional<std::size_t> parse_index(std::string_view token) {
  std::size_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = tokenize(line);
    if (!tokens.empty()) fn(line_no, tokens);
  }
}

}  // namespace

std::optional<double> parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, ptr);
}

ChainFile parse_chain(std::string_view text) {
  std::optional<std::size_t> num_states;
  std::optional<ValueMode> mode;
  std::vector<Edge> edges;
  std::vector<std::optional<double>> raw_values;

  for_each_line(text, [&](std::size_t line_no,
                          const std::vector<std::string_view>& tok) {
    const std::string_view key = tok[0];
    if (!num_states) {
      if (key != "states" || tok.size() != 2) {
        fail(line_no, "expected 'states N' as the first entry");
      }
      num_states = parse_index(tok[1]);
      if (!num_states) fail(line_no, "invalid state count");
      return;
    }
    if (key == "states") fail(line_no, "'states' given twice");
    if (key == "mode") {
      if (tok.size() != 2) fail(line_no, "expected 'mode edge|expectation'");
      if (mode) fail(line_no, "'mode' given twice");
      if (tok[1] == "edge") {
        mode = ValueMode::EdgeFunction;
      } else if (tok[1] == "expectation") {
        mode = ValueMode::Expectation;
      } else {
        fail(line_no, "unknown mode '" + std::string(tok[1]) + "'");
      }
      return;
    }
    if (key == "edge") {
      if (tok.size() != 3 && tok.size() != 4) {
        fail(line_no, "expected 'edge X Y [VALUE]'");
      }
      const auto x = parse_index(tok[1]);
      const auto y = parse_index(tok[2]);
      if (!x || !y) fail(line_no, "invalid state index");
      edges.push_back({*x, *y});
      if (tok.size() == 4) {
        const auto v = parse_double(tok[3]);
        if (!v) fail(line_no, "invalid value '" + std::string(tok[3]) + "'");
        if (!(*v > 0.0) || !std::isfinite(*v)) {
          fail(line_no, "edge values must be finite and positive");
        }
        raw_values.emplace_back(*v);
      } else {
        raw_values.emplace_back(std::nullopt);
      }
      return;
    }
    fail(line_no, "unknown keyword '" + std::string(key) + "'");
  });

  if (!num_states) throw Error(ErrorKind::Parse, "missing 'states' line");
  const std::size_t with_value = static_cast<std::size_t>(std::count_if(
      raw_values.begin(), raw_values.end(), [](const auto& v) { return v.has_value(); }));
  if (with_value != 0 && with_value != raw_values.size()) {
    throw Error(ErrorKind::Parse, "values must be given for all edges or none");
  }

  // Remember values by edge before the graph re-sorts them.
  std::map<Edge, double> by_edge;
  if (with_value != 0) {
    for (std::size_t i = 0; i < edges.size(); ++i) by_edge[edges[i]] = *raw_values[i];
  }

  ChainFile out;
  out.graph = std::make_shared<const ChainGraph>(
      ChainGraph::build(*num_states, edges));
  out.mode = mode.value_or(ValueMode::EdgeFunction);
  if (with_value != 0) {
    Eigen::VectorXd values(static_cast<Eigen::Index>(out.graph->num_edges()));
    const auto sorted = out.graph->edges();
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      values[static_cast<Eigen::Index>(i)] = by_edge.at(sorted[i]);
    }
    out.values = std::move(values);
  } else if (mode == ValueMode::Expectation) {
    throw Error(ErrorKind::Parse, "expectation files need a value on every edge");
  }
  return out;
}

ChainFile load_chain(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_chain(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

EdgeFunction ChainFile::edge_function() const {
  if (!values) throw Error(ErrorKind::Parse, "chain file has no edge values");
  if (mode != ValueMode::EdgeFunction) {
    throw Error(ErrorKind::Parse, "expected an edge-function file, got 'mode expectation'");
  }
  try {
    return EdgeFunction(graph, *values);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

ExpectationPoint ChainFile::expectation_point() const {
  if (!values) throw Error(ErrorKind::Parse, "chain file has no edge values");
  if (mode != ValueMode::Expectation) {
    throw Error(ErrorKind::Parse, "expected 'mode expectation' file");
  }
  try {
    return ExpectationPoint(graph, *values);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::string format_chain(const ChainGraph& graph, const Eigen::VectorXd* values,
                         ValueMode mode) {
  std::string out = "states " + std::to_string(graph.num_states()) + "\n";
  if (values && mode == ValueMode::Expectation) out += "mode expectation\n";
  const auto edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out += "edge " + std::to_string(edges[i].from) + " " +
           std::to_string(edges[i].to);
    if (values) {
      out += " " + format_double((*values)[static_cast<Eigen::Index>(i)]);
    }
    out += "\n";
  }
  return out;
}

std::string format_chain(const EdgeFunction& f) {
  return format_chain(f.graph(), &f.values(), ValueMode::EdgeFunction);
}

std::string format_chain(const ExpectationPoint& eta) {
  return format_chain(eta.graph(), &eta.values(), ValueMode::Expectation);
}

std::string format_trajectory(const Trajectory& t) {
  std::string out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(t.states()[k]);
  }
  out += '\n';
  return out;
}

std::vector<Trajectory> parse_trajectories(std::string_view text,
                                           const GraphPtr& graph) {
  std::vector<Trajectory> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::vector<State> states;
    states.reserve(tokens.size());
    for (auto tok : tokens) {
      const auto s = parse_index(tok);
      if (!s) fail(line_no, "invalid state '" + std::string(tok) + "'");
      states.push_back(*s);
    }
    out.emplace_back(graph, std::move(states));
  }
  return out;
}

}  // namespace ptm
