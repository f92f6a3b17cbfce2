#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqf/json_io.hpp"
#include "lqf/oml.hpp"
#include "lqf/term.hpp"

namespace lqf::cli {

using nlohmann::json;

enum Exit : int { kAffirmative = 0, kNegative = 1, kUsage = 2 };

struct Options {
  bool json = false;
};

/// Collects a command's result; printed once as text lines or as one JSON document.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json& data() { return data_; }
  void line(std::string text) { lines_.push_back(std::move(text)); }
  /// Failure detail that goes to stderr in text mode.
  void error_line(std::string text) { errors_.push_back(std::move(text)); }
  int emit(const Options& opt, int code, std::ostream& out, std::ostream& err) const;

 private:
  std::string command_;
  json data_ = json::object();
  std::vector<std::string> lines_;
  std::vector<std::string> errors_;
};

/// A lattice argument: file path, catalog name or build spec.
struct LoadedStructure {
  FiniteOml lattice;
  std::optional<ExpandedStructure> expanded;
};
LoadedStructure resolve_structure(const std::string& arg);
FiniteOml resolve_lattice(const std::string& arg);

std::vector<std::string> split(const std::string& text, char sep);
std::vector<Element> elements(const FiniteOml& l, const std::string& csv);
/// "x=a,y=b" with element names.
Valuation parse_valuation(const FiniteOml& l, const std::string& text);

json valuation_json(const Valuation& v, const FiniteOml& l);
json names_json(const FiniteOml& l, const std::vector<Element>& xs);
std::string join_names(const FiniteOml& l, const std::vector<Element>& xs);

}  // namespace lqf::cli
