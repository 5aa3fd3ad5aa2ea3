#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ptm::cli {

enum class ExitCode : int {
  Ok = 0,
  Usage = 2,
  Domain = 3,
  NoConvergence = 4,
  VerificationFailed = 5,
};

enum class Format { Kv, JsonLines };

using Value = std::variant<std::string, double, std::int64_t, bool,
                           std::vector<double>>;

/// Ordered key/value report. Keys are stable; doubles render with 17
/// significant digits so identical inputs give identical bytes.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(std::string key, Value v) { inputs_.emplace_back(std::move(key), std::move(v)); }
  void result(std::string key, Value v) { results_.emplace_back(std::move(key), std::move(v)); }
  void result(std::string key, const Eigen::VectorXd& v);
  void fail(ExitCode code, std::string kind, std::string message);

  ExitCode code() const noexcept { return code_; }
  void render(std::ostream& out, Format format) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, Value>> inputs_;
  std::vector<std::pair<std::string, Value>> results_;
  ExitCode code_ = ExitCode::Ok;
  std::string error_kind_;
  std::string error_message_;
};

}  // namespace ptm::cli
