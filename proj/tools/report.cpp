#include "report.hpp"

#include <json.hpp>
#include <ostream>

#include "ptm/chain_io.hpp"

namespace ptm::cli {
namespace {

std::string render_value(const Value& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += format_double(xs[i]);
      }
      return out;
    }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::json json_value(const Value& v) {
  struct Visitor {
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(double d) const { return format_double(d); }
    nlohmann::json operator()(std::int64_t i) const { return i; }
    nlohmann::json operator()(bool b) const { return b; }
    nlohmann::json operator()(const std::vector<double>& xs) const {
      nlohmann::json arr = nlohmann::json::array();
      for (double x : xs) arr.push_back(format_double(x));
      return arr;
    }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace

void Report::result(std::string key, const Eigen::VectorXd& v) {
  result(std::move(key), std::vector<double>(v.data(), v.data() + v.size()));
}

void Report::fail(ExitCode code, std::string kind, std::string message) {
  code_ = code;
  error_kind_ = std::move(kind);
  error_message_ = std::move(message);
}

void Report::render(std::ostream& out, Format format) const {
  const bool ok = code_ == ExitCode::Ok;
  if (format == Format::Kv) {
    out << "command " << command_ << '\n';
    for (const auto& [k, v] : inputs_) out << "input." << k << ' ' << render_value(v) << '\n';
    for (const auto& [k, v] : results_) out << k << ' ' << render_value(v) << '\n';
    if (ok) {
      out << "status ok\n";
    } else {
      out << "status error\n";
      out << "error.code " << static_cast<int>(code_) << '\n';
      out << "error.kind " << error_kind_ << '\n';
    }
    return;
  }
  auto line = [&](const char* section, const std::string& key, nlohmann::json value) {
    nlohmann::json j;
    j["section"] = section;
    j["key"] = key;
    j["value"] = std::move(value);
    out << j.dump() << '\n';
  };
  line("command", "command", command_);
  for (const auto& [k, v] : inputs_) line("input", k, json_value(v));
  for (const auto& [k, v] : results_) line("result", k, json_value(v));
  line("status", "status", ok ? "ok" : "error");
  if (!ok) {
    line("status", "error.code", static_cast<int>(code_));
    line("status", "error.kind", error_kind_);
    line("status", "error.message", error_message_);
  }
}

}  // namespace ptm::cli
