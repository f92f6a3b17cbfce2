#include "lqf/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lqf/error.hpp"

namespace lqf {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  json parse(std::string_view text) const {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      std::size_t line = 1, col = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw InputError(source_ + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": malformed JSON");
    }
  }

  [[noreturn]] void fail(const std::string& path, const std::string& detail) const {
    throw InputError(source_ + ": " + path + ": " + detail);
  }

  const json& field(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing field '" + key + "'");
    return *it;
  }

  std::size_t index(const json& v, const std::string& path) const {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  Term term(const json& v, const std::string& path) const {
    try {
      return parse_term(string(v, path));
    } catch (const SyntaxError& e) {
      fail(path, e.what());
    }
  }

  template <class F>
  auto guard(const std::string& path, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

 private:
  std::string source_;
};

std::vector<Element> table(const Reader& r, const json& v, std::size_t n, const std::string& path) {
  if (!v.is_array() || v.size() != n)
    r.fail(path, "expected " + std::to_string(n) + " rows");
  std::vector<Element> out;
  out.reserve(n * n);
  for (std::size_t z = 0; z < n; ++z) {
    const std::string rp = path + "[" + std::to_string(z) + "]";
    if (!v[z].is_array() || v[z].size() != n) r.fail(rp, "expected " + std::to_string(n) + " entries");
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t e = r.index(v[z][x], rp + "[" + std::to_string(x) + "]");
      if (e >= n) r.fail(rp + "[" + std::to_string(x) + "]", "element index out of range");
      out.push_back(static_cast<Element>(e));
    }
  }
  return out;
}

Substitution substitution(const Reader& r, const json& v, const std::string& path) {
  Substitution out;
  if (!v.is_object()) r.fail(path, "expected an object of term strings");
  for (auto it = v.begin(); it != v.end(); ++it) out.emplace(it.key(), r.term(it.value(), path + "." + it.key()));
  return out;
}

Proof proof_from(const Reader& r, const json& doc, const std::string& path);

Justification justification_from(const Reader& r, const json& j, const std::string& path) {
  const std::string kind = r.string(r.field(j, "kind", path), path + ".kind");
  auto opt_subst = [&](const char* key) {
    auto it = j.find(key);
    return it == j.end() ? Substitution{} : substitution(r, *it, path + "." + key);
  };
  if (kind == "axiom")
    return Justification::axiom(r.string(r.field(j, "id", path), path + ".id"), opt_subst("subst"));
  if (kind == "hyp") return Justification::hyp(r.index(r.field(j, "index", path), path + ".index"));
  if (kind == "ds")
    return Justification::ds(r.index(r.field(j, "minor", path), path + ".minor"),
                             r.index(r.field(j, "major", path), path + ".major"));
  if (kind == "n") return Justification::n(r.index(r.field(j, "premise", path), path + ".premise"));
  if (kind == "macro") {
    const json& ins = r.field(j, "inputs", path);
    if (!ins.is_array()) r.fail(path + ".inputs", "expected an array of step numbers");
    std::vector<std::size_t> inputs;
    for (std::size_t i = 0; i < ins.size(); ++i)
      inputs.push_back(r.index(ins[i], path + ".inputs[" + std::to_string(i) + "]"));
    return Justification::macro(r.string(r.field(j, "rule", path), path + ".rule"), std::move(inputs),
                                opt_subst("params"));
  }
  if (kind == "dt")
    return Justification::dt(r.term(r.field(j, "hypothesis", path), path + ".hypothesis"),
                             proof_from(r, r.field(j, "proof", path), path + ".proof"));
  r.fail(path + ".kind", "unknown justification kind '" + kind + "'");
}

Proof proof_from(const Reader& r, const json& doc, const std::string& path) {
  Proof p;
  if (!doc.is_object()) r.fail(path, "expected an object");
  if (auto it = doc.find("theory"); it != doc.end()) {
    if (!it->is_array()) r.fail(path + ".theory", "expected an array of term strings");
    for (std::size_t i = 0; i < it->size(); ++i)
      p.theory.push_back(r.term((*it)[i], path + ".theory[" + std::to_string(i) + "]"));
  }
  const json& steps = r.field(doc, "steps", path);
  if (!steps.is_array()) r.fail(path + ".steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string sp = path + ".steps[" + std::to_string(i) + "]";
    Term t = r.term(r.field(steps[i], "term", sp), sp + ".term");
    p.steps.push_back({std::move(t), justification_from(r, r.field(steps[i], "just", sp), sp + ".just")});
  }
  return p;
}

json subst_json(const Substitution& s) {
  json out = json::object();
  for (const auto& [k, v] : s) out[k] = print(v);
  return out;
}

json proof_json(const Proof& p) {
  json theory = json::array();
  for (const auto& t : p.theory) theory.push_back(print(t));
  json steps = json::array();
  for (const auto& s : p.steps) {
    json j;
    const auto& just = s.just;
    switch (just.kind) {
      case Justification::Kind::Axiom:
        j = {{"kind", "axiom"}, {"id", just.id}};
        if (!just.subst.empty()) j["subst"] = subst_json(just.subst);
        break;
      case Justification::Kind::Hyp:
        j = {{"kind", "hyp"}, {"index", just.index}};
        break;
      case Justification::Kind::DS:
        j = {{"kind", "ds"}, {"minor", just.minor}, {"major", just.major}};
        break;
      case Justification::Kind::N:
        j = {{"kind", "n"}, {"premise", just.index}};
        break;
      case Justification::Kind::Macro:
        j = {{"kind", "macro"}, {"rule", just.id}, {"inputs", just.inputs}};
        if (!just.subst.empty()) j["params"] = subst_json(just.subst);
        break;
      case Justification::Kind::DT:
        j = {{"kind", "dt"}, {"hypothesis", print(*just.dt_hypothesis)}, {"proof", proof_json(*just.dt_proof)}};
        break;
    }
    steps.push_back({{"term", print(s.term)}, {"just", std::move(j)}});
  }
  return {{"theory", std::move(theory)}, {"steps", std::move(steps)}};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

OmlTables tables_from(const Reader& r, const json& doc) {
  OmlTables t;
  const json& elements = r.field(doc, "elements", "$");
  if (!elements.is_array() || elements.empty()) r.fail("$.elements", "expected a non-empty array of names");
  for (std::size_t i = 0; i < elements.size(); ++i)
    t.names.push_back(r.string(elements[i], "$.elements[" + std::to_string(i) + "]"));
  const std::size_t n = t.names.size();

  const json& leq = r.field(doc, "leq", "$");
  if (!leq.is_array() || leq.size() != n) r.fail("$.leq", "expected " + std::to_string(n) + " rows");
  t.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    const std::string rp = "$.leq[" + std::to_string(a) + "]";
    if (!leq[a].is_array() || leq[a].size() != n) r.fail(rp, "expected " + std::to_string(n) + " booleans");
    for (std::size_t b = 0; b < n; ++b) {
      const json& v = leq[a][b];
      if (v.is_boolean()) t.leq[a][b] = v.get<bool>();
      else if (v.is_number_unsigned() && v.get<unsigned>() <= 1) t.leq[a][b] = v.get<unsigned>() == 1;
      else r.fail(rp + "[" + std::to_string(b) + "]", "expected a boolean");
    }
  }
  const json& neg = r.field(doc, "neg", "$");
  if (!neg.is_array() || neg.size() != n) r.fail("$.neg", "expected " + std::to_string(n) + " indices");
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t e = r.index(neg[a], "$.neg[" + std::to_string(a) + "]");
    if (e >= n) r.fail("$.neg[" + std::to_string(a) + "]", "element index out of range");
    t.neg.push_back(static_cast<Element>(e));
  }
  auto bound = [&](const char* key) {
    std::size_t e = r.index(r.field(doc, key, "$"), std::string("$.") + key);
    if (e >= n) r.fail(std::string("$.") + key, "element index out of range");
    return static_cast<Element>(e);
  };
  t.bottom = bound("bottom");
  t.top = bound("top");

  return t;
}

}  // namespace

OmlTables parse_tables(std::string_view text, std::string_view source) {
  Reader r(source);
  return tables_from(r, r.parse(text));
}

StructureFile parse_structure(std::string_view text, std::string_view source) {
  Reader r(source);
  const json doc = r.parse(text);
  OmlTables t = tables_from(r, doc);
  const std::size_t n = t.names.size();
  FiniteOml lattice = r.guard("$", [&] { return FiniteOml::from_tables(std::move(t), std::string(source)); });
  const bool has_w = doc.contains("w"), has_wstar = doc.contains("wstar");
  if (has_w != has_wstar) r.fail("$", "'w' and 'wstar' must be given together");
  if (!has_w) return {std::move(lattice), std::nullopt};
  auto w = table(r, doc["w"], n, "$.w");
  auto ws = table(r, doc["wstar"], n, "$.wstar");
  ExpandedStructure s = r.guard("$", [&] { return ExpandedStructure(lattice, std::move(w), std::move(ws)); });
  return {std::move(lattice), std::move(s)};
}

StructureFile load_structure(const std::string& path) { return parse_structure(read_file(path), path); }

std::string structure_to_json(const FiniteOml& lattice, const ExpandedStructure* expanded) {
  const OmlTables t = lattice.tables();
  json doc;
  doc["elements"] = t.names;
  json leq = json::array();
  for (const auto& row : t.leq) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    leq.push_back(std::move(r));
  }
  doc["leq"] = std::move(leq);
  doc["neg"] = t.neg;
  doc["bottom"] = t.bottom;
  doc["top"] = t.top;
  if (expanded) {
    const std::size_t n = lattice.size();
    json w = json::array(), ws = json::array();
    for (Element z = 0; z < n; ++z) {
      json rw = json::array(), rs = json::array();
      for (Element x = 0; x < n; ++x) {
        rw.push_back(expanded->w(z, x));
        rs.push_back(expanded->wstar(z, x));
      }
      w.push_back(std::move(rw));
      ws.push_back(std::move(rs));
    }
    doc["w"] = std::move(w);
    doc["wstar"] = std::move(ws);
  }
  return doc.dump(2) + "\n";
}

Proof parse_proof(std::string_view text, std::string_view source) {
  Reader r(source);
  return proof_from(r, r.parse(text), "$");
}

Proof load_proof(const std::string& path) { return parse_proof(read_file(path), path); }

std::string proof_to_json(const Proof& proof) { return proof_json(proof).dump(2) + "\n"; }

RationalMatrix parse_matrix(std::string_view text, std::string_view source) {
  Reader r(source);
  json doc = r.parse(text);
  std::string path = "$";
  if (doc.is_object()) {
    doc = r.field(doc, "matrix", path);
    path = "$.matrix";
  }
  if (!doc.is_array()) r.fail(path, "expected an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!doc[i].is_array()) r.fail(rp, "expected an array of entries");
    std::vector<Rational> row;
    for (std::size_t j = 0; j < doc[i].size(); ++j) {
      const json& v = doc[i][j];
      const std::string ep = rp + "[" + std::to_string(j) + "]";
      if (v.is_number_integer()) row.emplace_back(v.get<long long>());
      else row.push_back(r.guard(ep, [&] { return parse_rational(r.string(v, ep)); }));
    }
    rows.push_back(std::move(row));
  }
  return r.guard(path, [&] { return RationalMatrix::from_rows(rows); });
}

RationalMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path), path); }

std::string matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows.dump() + "\n";
}

}  // namespace lqf
