#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptm/edge_vector.hpp"

namespace ptm {

// Chain files are line-oriented UTF-8 text:
//
//   # comment
//   states 2
//   mode expectation        (optional; default "edge")
//   edge 0 0 0.25
//   edge 0 1 0.25
//
// `states N` must be the first non-comment line. Edge values are optional but
// must be given for all edges or for none. Numbers are parsed without regard
// to the process locale.

enum class ValueMode { EdgeFunction, Expectation };

struct ChainFile {
  GraphPtr graph;
  ValueMode mode = ValueMode::EdgeFunction;
  /// Canonical edge order; empty when the file lists bare edges.
  std::optional<Eigen::VectorXd> values;

  /// Throws Error{Parse} if the file has no values or is in expectation mode.
  EdgeFunction edge_function() const;
  /// Throws Error{Parse} if the file has no values or is in edge mode.
  ExpectationPoint expectation_point() const;
};

/// Throws Error{Parse} with a line number, or the graph construction errors.
ChainFile parse_chain(std::string_view text);
/// Throws Error{Parse} when the file cannot be read.
ChainFile load_chain(const std::filesystem::path& path);

std::string format_chain(const ChainGraph& graph,
                         const Eigen::VectorXd* values = nullptr,
                         ValueMode mode = ValueMode::EdgeFunction);
std::string format_chain(const EdgeFunction& f);
std::string format_chain(const ExpectationPoint& eta);

/// Shortest-roundtrip-safe rendering with 17 significant digits.
std::string format_double(double value);
/// Locale-independent decimal or scientific parse of the whole token.
std::optional<double> parse_double(std::string_view token);

class Trajectory;

/// One trajectory per line, whitespace-separated state indices.
std::string format_trajectory(const Trajectory& t);
std::vector<Trajectory> parse_trajectories(std::string_view text,
                                           const GraphPtr& graph);

}  // namespace ptm
