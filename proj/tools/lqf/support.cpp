#include "support.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include "lqf/error.hpp"
#include "lqf/model_search.hpp"

namespace lqf::cli {

int Report::emit(const Options& opt, int code, std::ostream& out, std::ostream& err) const {
  if (opt.json) {
    json doc = data_;
    doc["schema"] = "lqf/1";
    doc["command"] = command_;
    doc["exit"] = code;
    if (!errors_.empty()) doc["errors"] = errors_;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& l : lines_) out << l << "\n";
    for (const auto& e : errors_) err << e << "\n";
  }
  return code;
}

LoadedStructure resolve_structure(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    auto file = load_structure(arg);
    return {std::move(file.lattice), std::move(file.expanded)};
  }
  if (const CatalogEntry* e = find_catalog(arg)) return {e->lattice, std::nullopt};
  if (arg.find('(') != std::string::npos) {
    try {
      return {build(arg), std::nullopt};
    } catch (const Error& e) {
      throw InputError(arg + ": " + e.what());
    }
  }
  throw InputError(arg + ": no such file, catalog entry or build spec");
}

FiniteOml resolve_lattice(const std::string& arg) { return resolve_structure(arg).lattice; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<Element> elements(const FiniteOml& l, const std::string& csv) {
  std::vector<Element> out;
  for (const auto& name : split(csv, ',')) out.push_back(l.element(name));
  return out;
}

Valuation parse_valuation(const FiniteOml& l, const std::string& text) {
  Valuation v;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("valuation entries look like x=a, got '" + item + "'");
    v[item.substr(0, eq)] = l.element(item.substr(eq + 1));
  }
  return v;
}

json valuation_json(const Valuation& v, const FiniteOml& l) {
  json out = json::object();
  for (const auto& [var, e] : v) out[var] = l.name(e);
  return out;
}

json names_json(const FiniteOml& l, const std::vector<Element>& xs) {
  json out = json::array();
  for (Element x : xs) out.push_back(l.name(x));
  return out;
}

std::string join_names(const FiniteOml& l, const std::vector<Element>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + l.name(xs[i]);
  return out + "}";
}

}  // namespace lqf::cli
