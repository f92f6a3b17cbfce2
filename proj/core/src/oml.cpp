#include "lqf/oml.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "lqf/error.hpp"

namespace lqf {

std::string_view to_string(OmlLaw law) {
  switch (law) {
    case OmlLaw::Reflexivity: return "reflexivity";
    case OmlLaw::Antisymmetry: return "antisymmetry";
    case OmlLaw::Transitivity: return "transitivity";
    case OmlLaw::Bounds: return "bounds";
    case OmlLaw::Lattice: return "lattice";
    case OmlLaw::Involution: return "involution";
    case OmlLaw::OrderReversal: return "order-reversal";
    case OmlLaw::DeMorgan: return "de-morgan";
    case OmlLaw::Noncontradiction: return "noncontradiction";
    case OmlLaw::Orthomodular: return "orthomodular";
  }
  return "unknown";
}

namespace {

void check_structure(const OmlTables& t) {
  const std::size_t n = t.leq.size();
  if (n == 0) throw StructuralError("lattice has no elements");
  if (!t.names.empty() && t.names.size() != n)
    throw StructuralError("names has " + std::to_string(t.names.size()) + " entries, expected " +
                          std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (t.leq[i].size() != n)
      throw StructuralError("leq row " + std::to_string(i) + " has " +
                            std::to_string(t.leq[i].size()) + " entries, expected " +
                            std::to_string(n));
  if (t.neg.size() != n)
    throw StructuralError("neg has " + std::to_string(t.neg.size()) + " entries, expected " +
                          std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (t.neg[i] >= n)
      throw StructuralError("neg[" + std::to_string(i) + "] = " + std::to_string(t.neg[i]) +
                            " is out of range");
  if (t.bottom >= n) throw StructuralError("bottom index out of range");
  if (t.top >= n) throw StructuralError("top index out of range");
  if (!t.names.empty()) {
    std::set<std::string> seen;
    for (const auto& name : t.names)
      if (!seen.insert(name).second) throw StructuralError("duplicate element name '" + name + "'");
  }
}

// Greatest lower bounds / least upper bounds; nullopt when a pair lacks one.
struct BoundTables {
  std::vector<Element> meet;
  std::vector<Element> join;
  std::optional<std::pair<Element, Element>> missing;
};

BoundTables compute_bounds(const std::vector<char>& leq, std::size_t n) {
  BoundTables out;
  out.meet.assign(n * n, 0);
  out.join.assign(n * n, 0);
  std::vector<std::size_t> below(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) below[a] += leq[b * n + a] ? 1 : 0;

  for (std::size_t a = 0; a < n && !out.missing; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> lo, hi;
      for (std::size_t c = 0; c < n; ++c) {
        if (leq[c * n + a] && leq[c * n + b] && (!lo || below[c] > below[*lo])) lo = c;
        if (leq[a * n + c] && leq[b * n + c] && (!hi || below[c] < below[*hi])) hi = c;
      }
      bool ok = lo && hi;
      for (std::size_t c = 0; ok && c < n; ++c) {
        if (leq[c * n + a] && leq[c * n + b] && !leq[c * n + *lo]) ok = false;
        if (leq[a * n + c] && leq[b * n + c] && !leq[*hi * n + c]) ok = false;
      }
      if (!ok) {
        out.missing = {static_cast<Element>(a), static_cast<Element>(b)};
        break;
      }
      out.meet[a * n + b] = static_cast<Element>(*lo);
      out.join[a * n + b] = static_cast<Element>(*hi);
    }
  }
  return out;
}

std::vector<char> flatten(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<char> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = leq[i][j] ? 1 : 0;
  return flat;
}

ValidationReport fail(OmlLaw law, Element x, Element y = 0, Element z = 0) {
  ValidationReport r;
  r.ok = false;
  r.law = law;
  r.x = x;
  r.y = y;
  r.z = z;
  return r;
}

ValidationReport verify_flat(const std::vector<char>& leq, const std::vector<Element>& neg,
                             Element bottom, Element top, const BoundTables** bounds_out,
                             BoundTables& storage) {
  const std::size_t n = neg.size();
  auto le = [&](std::size_t a, std::size_t b) { return leq[a * n + b] != 0; };

  for (Element a = 0; a < n; ++a)
    if (!le(a, a)) return fail(OmlLaw::Reflexivity, a);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (a != b && le(a, b) && le(b, a)) return fail(OmlLaw::Antisymmetry, a, b);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c)) return fail(OmlLaw::Transitivity, a, b, c);
  for (Element a = 0; a < n; ++a)
    if (!le(bottom, a) || !le(a, top)) return fail(OmlLaw::Bounds, a);

  storage = compute_bounds(leq, n);
  if (storage.missing) return fail(OmlLaw::Lattice, storage.missing->first, storage.missing->second);
  if (bounds_out) *bounds_out = &storage;
  auto meet = [&](Element a, Element b) { return storage.meet[a * n + b]; };
  auto join = [&](Element a, Element b) { return storage.join[a * n + b]; };

  for (Element a = 0; a < n; ++a)
    if (neg[neg[a]] != a) return fail(OmlLaw::Involution, a);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (le(a, b) && !le(neg[b], neg[a])) return fail(OmlLaw::OrderReversal, a, b);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (neg[join(a, b)] != meet(neg[a], neg[b])) return fail(OmlLaw::DeMorgan, a, b);
  for (Element a = 0; a < n; ++a)
    if (meet(a, neg[a]) != bottom) return fail(OmlLaw::Noncontradiction, a);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (join(a, meet(neg[a], join(a, b))) != join(a, b)) return fail(OmlLaw::Orthomodular, a, b);
  return {};
}

std::string describe(const ValidationReport& r, const std::vector<std::string>& names) {
  if (r.ok) return "ok";
  auto nm = [&](Element e) { return e < names.size() ? names[e] : std::to_string(e); };
  std::ostringstream os;
  os << to_string(*r.law) << " fails at (" << nm(r.x);
  switch (*r.law) {
    case OmlLaw::Reflexivity:
    case OmlLaw::Bounds:
    case OmlLaw::Involution:
    case OmlLaw::Noncontradiction: break;
    case OmlLaw::Transitivity: os << ", " << nm(r.y) << ", " << nm(r.z); break;
    default: os << ", " << nm(r.y); break;
  }
  os << ")";
  return os.str();
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "e" + std::to_string(i);
  return names;
}

}  // namespace

ValidationReport verify_oml(const OmlTables& tables) {
  check_structure(tables);
  BoundTables storage;
  auto report = verify_flat(flatten(tables.leq), tables.neg, tables.bottom, tables.top, nullptr,
                            storage);
  report.message = describe(report, tables.names.empty() ? default_names(tables.neg.size())
                                                         : tables.names);
  return report;
}

FiniteOml FiniteOml::from_tables(OmlTables tables, std::string label) {
  check_structure(tables);
  const std::size_t n = tables.neg.size();
  if (tables.names.empty()) tables.names = default_names(n);

  FiniteOml out;
  out.n_ = n;
  out.bottom_ = tables.bottom;
  out.top_ = tables.top;
  out.names_ = std::move(tables.names);
  out.leq_ = flatten(tables.leq);
  out.neg_ = std::move(tables.neg);
  out.label_ = std::move(label);

  BoundTables storage;
  const BoundTables* bounds = nullptr;
  auto report = verify_flat(out.leq_, out.neg_, out.bottom_, out.top_, &bounds, storage);
  if (!report.ok)
    throw PreconditionError("not an orthomodular lattice: " + describe(report, out.names_));
  out.meet_ = std::move(storage.meet);
  out.join_ = std::move(storage.join);

  out.central_.assign(n, 0);
  for (Element z = 0; z < n; ++z) {
    bool central = true;
    for (Element a = 0; a < n && central; ++a)
      central = out.join(out.meet(a, z), out.meet(a, out.neg(z))) == a;
    out.central_[z] = central ? 1 : 0;
  }
  out.cover_.assign(n, out.top_);
  for (Element a = 0; a < n; ++a) {
    Element cover = out.top_;
    for (Element z = 0; z < n; ++z)
      if (out.central_[z] && out.leq(a, z)) cover = out.meet(cover, z);
    out.cover_[a] = cover;
  }
  return out;
}

std::optional<Element> FiniteOml::find(std::string_view name) const {
  for (Element i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Element FiniteOml::element(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw PreconditionError("unknown element '" + std::string(name) + "'" +
                          (label_.empty() ? std::string() : " in " + label_));
}

FiniteOml FiniteOml::with_label(std::string label) const {
  FiniteOml copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

OmlTables FiniteOml::tables() const {
  OmlTables t;
  t.names = names_;
  t.leq.assign(n_, std::vector<bool>(n_, false));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.leq[i][j] = leq_[i * n_ + j] != 0;
  t.neg = neg_;
  t.bottom = bottom_;
  t.top = top_;
  return t;
}

// --- constructions -------------------------------------------------------

FiniteOml boolean(unsigned k) {
  if (k > 10) throw PreconditionError("boolean(k) supports k <= 10");
  const std::size_t n = std::size_t{1} << k;
  const Element full = static_cast<Element>(n - 1);
  OmlTables t;
  t.names.resize(n);
  t.leq.assign(n, std::vector<bool>(n, false));
  t.neg.resize(n);
  for (Element a = 0; a < n; ++a) {
    if (a == 0) {
      t.names[a] = "0";
    } else if (a == full) {
      t.names[a] = "1";
    } else {
      std::string name;
      for (unsigned bit = 0; bit < k; ++bit)
        if (a & (1u << bit)) name += (name.empty() ? "a" : "+a") + std::to_string(bit + 1);
      t.names[a] = name;
    }
    t.neg[a] = full & ~a;
    for (Element b = 0; b < n; ++b) t.leq[a][b] = (a & ~b) == 0;
  }
  t.bottom = 0;
  t.top = full;
  return FiniteOml::from_tables(std::move(t), "boolean(" + std::to_string(k) + ")");
}

FiniteOml mo(unsigned n) {
  if (n < 1) throw PreconditionError("mo(n) requires n >= 1");
  const std::size_t size = 2 * n + 2;
  OmlTables t;
  t.names.resize(size);
  t.leq.assign(size, std::vector<bool>(size, false));
  t.neg.resize(size);
  t.names[0] = "0";
  t.names[size - 1] = "1";
  t.neg[0] = static_cast<Element>(size - 1);
  t.neg[size - 1] = 0;
  for (unsigned i = 0; i < n; ++i) {
    std::string base = i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i);
    const Element atom = 1 + 2 * i;
    t.names[atom] = base;
    t.names[atom + 1] = base + "'";
    t.neg[atom] = atom + 1;
    t.neg[atom + 1] = atom;
  }
  for (std::size_t a = 0; a < size; ++a) {
    t.leq[0][a] = true;
    t.leq[a][size - 1] = true;
    t.leq[a][a] = true;
  }
  t.bottom = 0;
  t.top = static_cast<Element>(size - 1);
  return FiniteOml::from_tables(std::move(t), "mo(" + std::to_string(n) + ")");
}

FiniteOml product(const FiniteOml& left, const FiniteOml& right) {
  const std::size_t m = left.size();
  const std::size_t k = right.size();
  const std::size_t n = m * k;
  OmlTables t;
  t.names.resize(n);
  t.leq.assign(n, std::vector<bool>(n, false));
  t.neg.resize(n);
  auto idx = [k](Element a, Element b) { return static_cast<Element>(a * k + b); };
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < k; ++b) {
      const Element i = idx(a, b);
      t.names[i] = "(" + left.name(a) + "," + right.name(b) + ")";
      t.neg[i] = idx(left.neg(a), right.neg(b));
      for (Element c = 0; c < m; ++c)
        for (Element d = 0; d < k; ++d) t.leq[i][idx(c, d)] = left.leq(a, c) && right.leq(b, d);
    }
  t.bottom = idx(left.bottom(), right.bottom());
  t.top = idx(left.top(), right.top());
  return FiniteOml::from_tables(std::move(t),
                                "product(" + left.label() + "," + right.label() + ")");
}

FiniteOml horizontal_sum(const FiniteOml& left, const FiniteOml& right) {
  std::vector<Element> lmid, rmid;
  for (Element a = 0; a < left.size(); ++a)
    if (a != left.bottom() && a != left.top()) lmid.push_back(a);
  for (Element a = 0; a < right.size(); ++a)
    if (a != right.bottom() && a != right.top()) rmid.push_back(a);

  std::set<std::string> lnames;
  for (Element a : lmid) lnames.insert(left.name(a));
  bool clash = false;
  for (Element a : rmid) clash = clash || lnames.count(right.name(a)) > 0 || right.name(a) == "0" ||
                                 right.name(a) == "1";

  const std::size_t n = 2 + lmid.size() + rmid.size();
  const Element top = static_cast<Element>(n - 1);
  std::vector<Element> lpos(left.size()), rpos(right.size());
  lpos[left.bottom()] = rpos[right.bottom()] = 0;
  lpos[left.top()] = rpos[right.top()] = top;
  OmlTables t;
  t.names.resize(n);
  t.names[0] = "0";
  t.names[top] = "1";
  Element next = 1;
  for (Element a : lmid) {
    lpos[a] = next;
    t.names[next++] = left.name(a);
  }
  for (Element a : rmid) {
    rpos[a] = next;
    t.names[next++] = right.name(a) + (clash ? "_2" : "");
  }
  t.leq.assign(n, std::vector<bool>(n, false));
  t.neg.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    t.leq[0][a] = true;
    t.leq[a][top] = true;
  }
  t.neg[0] = top;
  t.neg[top] = 0;
  for (Element a = 0; a < left.size(); ++a) {
    t.neg[lpos[a]] = lpos[left.neg(a)];
    for (Element b = 0; b < left.size(); ++b)
      if (left.leq(a, b)) t.leq[lpos[a]][lpos[b]] = true;
  }
  for (Element a = 0; a < right.size(); ++a) {
    t.neg[rpos[a]] = rpos[right.neg(a)];
    for (Element b = 0; b < right.size(); ++b)
      if (right.leq(a, b)) t.leq[rpos[a]][rpos[b]] = true;
  }
  t.bottom = 0;
  t.top = top;
  return FiniteOml::from_tables(std::move(t), "hsum(" + left.label() + "," + right.label() + ")");
}

FiniteOml interval(const FiniteOml& lattice, Element a) {
  if (!lattice.contains(a)) throw PreconditionError("interval: element out of range");
  std::vector<Element> members;
  for (Element x = 0; x < lattice.size(); ++x)
    if (lattice.leq(x, a)) members.push_back(x);
  std::vector<std::optional<Element>> pos(lattice.size());
  for (Element i = 0; i < members.size(); ++i) pos[members[i]] = i;
  OmlTables t;
  const std::size_t n = members.size();
  t.names.resize(n);
  t.leq.assign(n, std::vector<bool>(n, false));
  t.neg.resize(n);
  for (Element i = 0; i < n; ++i) {
    const Element x = members[i];
    t.names[i] = lattice.name(x);
    t.neg[i] = *pos[lattice.meet(lattice.neg(x), a)];
    for (Element j = 0; j < n; ++j) t.leq[i][j] = lattice.leq(x, members[j]);
  }
  t.bottom = *pos[lattice.bottom()];
  t.top = *pos[a];
  return FiniteOml::from_tables(std::move(t),
                                "interval(" + lattice.label() + "," + lattice.name(a) + ")");
}

FiniteOml subalgebra(const FiniteOml& lattice, const std::vector<Element>& elements) {
  std::vector<Element> members = elements;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<std::optional<Element>> pos(lattice.size());
  for (Element i = 0; i < members.size(); ++i) {
    if (!lattice.contains(members[i])) throw PreconditionError("subalgebra: element out of range");
    pos[members[i]] = i;
  }
  auto in = [&](Element x) { return pos[x].has_value(); };
  if (!in(lattice.bottom()) || !in(lattice.top()))
    throw PreconditionError("subalgebra must contain 0 and 1");
  for (Element a : members) {
    if (!in(lattice.neg(a))) throw PreconditionError("subalgebra not closed under complement");
    for (Element b : members)
      if (!in(lattice.meet(a, b)) || !in(lattice.join(a, b)))
        throw PreconditionError("subalgebra not closed under meet/join");
  }
  OmlTables t;
  const std::size_t n = members.size();
  t.names.resize(n);
  t.leq.assign(n, std::vector<bool>(n, false));
  t.neg.resize(n);
  for (Element i = 0; i < n; ++i) {
    t.names[i] = lattice.name(members[i]);
    t.neg[i] = *pos[lattice.neg(members[i])];
    for (Element j = 0; j < n; ++j) t.leq[i][j] = lattice.leq(members[i], members[j]);
  }
  t.bottom = *pos[lattice.bottom()];
  t.top = *pos[lattice.top()];
  return FiniteOml::from_tables(std::move(t), "sub(" + lattice.label() + ")");
}

std::vector<Element> closure(const FiniteOml& lattice, const std::vector<Element>& generators,
                             bool close_under_dual_cover) {
  std::vector<char> in(lattice.size(), 0);
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  add(lattice.bottom());
  add(lattice.top());
  for (Element g : generators) {
    if (!lattice.contains(g)) throw PreconditionError("closure: generator out of range");
    add(g);
  }
  // Worklist: each new element is combined with every earlier member once.
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element a = members[i];
    add(lattice.neg(a));
    if (close_under_dual_cover) add(lattice.dual_central_cover(a));
    for (std::size_t j = 0; j <= i; ++j) {
      add(lattice.meet(a, members[j]));
      add(lattice.join(a, members[j]));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FiniteOml parse() {
    auto lattice = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing input in lattice spec");
    return lattice;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw SyntaxError(pos_, std::string("expected '") + c + "' in lattice spec");
    ++pos_;
  }
  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ',' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "expected a name in lattice spec");
    return std::string(text_.substr(start, pos_ - start));
  }
  unsigned number() {
    const std::size_t at = pos_;
    const std::string w = word();
    if (!std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw SyntaxError(at, "expected a number in lattice spec");
    return static_cast<unsigned>(std::stoul(w));
  }
  FiniteOml expr() {
    const std::size_t at = pos_;
    const std::string head = word();
    expect('(');
    if (head == "boolean") {
      const unsigned k = number();
      expect(')');
      return boolean(k);
    }
    if (head == "mo") {
      const unsigned n = number();
      expect(')');
      return mo(n);
    }
    if (head == "product" || head == "hsum" || head == "horizontal_sum") {
      auto left = expr();
      expect(',');
      auto right = expr();
      expect(')');
      return head == "product" ? product(left, right) : horizontal_sum(left, right);
    }
    if (head == "interval") {
      auto base = expr();
      expect(',');
      const std::string elem = word();
      expect(')');
      return interval(base, base.element(elem));
    }
    throw SyntaxError(at, "unknown lattice constructor '" + head + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteOml build(std::string_view spec) { return SpecParser(spec).parse(); }

// --- operations -----------------------------------------------------------

Element sasaki(const FiniteOml& l, Element a, Element x) {
  return l.meet(a, l.join(l.neg(a), x));
}

bool commutes(const FiniteOml& l, Element a, Element b) {
  return a == l.meet(l.join(a, b), l.join(a, l.neg(b)));
}

CenterReport center(const FiniteOml& l) {
  CenterReport report;
  for (Element z = 0; z < l.size(); ++z)
    if (l.is_central(z)) report.elements.push_back(z);
  std::vector<char> in(l.size(), 0);
  for (Element z : report.elements) in[z] = 1;
  bool ok = in[l.bottom()] && in[l.top()];
  for (Element a : report.elements) {
    ok = ok && in[l.neg(a)];
    for (Element b : report.elements) {
      ok = ok && in[l.meet(a, b)] && in[l.join(a, b)];
      for (Element c : report.elements)
        ok = ok && l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c));
    }
  }
  report.boolean_subalgebra = ok;
  return report;
}

bool directly_indecomposable(const FiniteOml& l) {
  if (l.size() < 2) return false;
  for (Element z = 0; z < l.size(); ++z)
    if (l.is_central(z) && z != l.bottom() && z != l.top()) return false;
  return true;
}

std::vector<Element> atoms(const FiniteOml& l) {
  std::vector<Element> out;
  for (Element a = 0; a < l.size(); ++a) {
    if (a == l.bottom()) continue;
    bool atom = true;
    for (Element x = 0; x < l.size() && atom; ++x)
      if (x != a && x != l.bottom() && l.leq(x, a)) atom = false;
    if (atom) out.push_back(a);
  }
  return out;
}

bool is_complement(const FiniteOml& l, Element a, Element b) {
  return l.join(a, b) == l.top() && l.meet(a, b) == l.bottom();
}

Element complement_via_c(const FiniteOml& l, Element a, Element x) {
  return l.join(l.meet(x, l.neg(l.meet(x, a))), l.neg(l.join(x, a)));
}

PerspectivityReport perspective(const FiniteOml& l, Element a, Element b) {
  PerspectivityReport report;
  for (Element c = 0; c < l.size(); ++c) {
    if (!report.common_complement && is_complement(l, a, c) && is_complement(l, b, c))
      report.common_complement = c;
    if (!report.criterion_witness && l.join(a, c) == l.join(b, c) && l.meet(a, c) == l.meet(b, c))
      report.criterion_witness = c;
  }
  return report;
}

CongruencePartition normalize(std::vector<std::size_t> block_of) {
  std::vector<std::size_t> remap;
  std::vector<std::size_t> label_of_old;
  CongruencePartition out;
  out.block_of.resize(block_of.size());
  std::vector<std::optional<std::size_t>> seen;
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    const std::size_t old = block_of[i];
    if (old >= seen.size()) seen.resize(old + 1);
    if (!seen[old]) seen[old] = out.block_count++;
    out.block_of[i] = *seen[old];
  }
  return out;
}

bool is_congruence(const FiniteOml& l, const CongruencePartition& p, bool with_dual_cover) {
  const std::size_t n = l.size();
  if (p.block_of.size() != n) return false;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!p.related(a, b)) continue;
      if (!p.related(l.neg(a), l.neg(b))) return false;
      if (with_dual_cover && !p.related(l.dual_central_cover(a), l.dual_central_cover(b)))
        return false;
      for (Element c = 0; c < n; ++c)
        if (!p.related(l.meet(a, c), l.meet(b, c)) || !p.related(l.join(a, c), l.join(b, c)))
          return false;
    }
  return true;
}

CongruencePartition factor_congruence(const FiniteOml& l, Element z) {
  std::vector<std::size_t> block(l.size());
  for (Element a = 0; a < l.size(); ++a) block[a] = l.meet(a, z);
  return normalize(std::move(block));
}

namespace {

// f: L -> target is a bijective homomorphism of ortholattices.
bool is_isomorphism(const FiniteOml& source, const FiniteOml& target,
                    const std::vector<Element>& f) {
  if (source.size() != target.size() || f.size() != source.size()) return false;
  std::vector<char> hit(target.size(), 0);
  for (Element x : f) {
    if (x >= target.size() || hit[x]) return false;
    hit[x] = 1;
  }
  for (Element a = 0; a < source.size(); ++a) {
    if (f[source.neg(a)] != target.neg(f[a])) return false;
    for (Element b = 0; b < source.size(); ++b)
      if (f[source.meet(a, b)] != target.meet(f[a], f[b]) ||
          f[source.join(a, b)] != target.join(f[a], f[b]))
        return false;
  }
  return true;
}

}  // namespace

FactorDecomposition factor_decompose(const FiniteOml& l, Element z) {
  if (!l.contains(z) || !l.is_central(z))
    throw PreconditionError("factor_decompose: '" + (l.contains(z) ? l.name(z) : std::to_string(z)) +
                            "' is not central");
  auto theta = factor_congruence(l, z);
  auto factor = interval(l, z);
  auto cofactor = interval(l, l.neg(z));
  const bool congruence = is_congruence(l, theta);

  // Block -> x & z, expressed as an index into [0,z].
  std::vector<Element> block_image(theta.block_count, 0);
  for (Element a = 0; a < l.size(); ++a)
    block_image[theta.block_of[a]] = factor.element(l.name(l.meet(a, z)));

  // Quotient operations computed on representatives, then compared with [0,z].
  bool quotient_iso = congruence && theta.block_count == factor.size();
  if (quotient_iso) {
    std::vector<char> hit(factor.size(), 0);
    for (Element img : block_image) {
      if (hit[img]) quotient_iso = false;
      hit[img] = 1;
    }
    for (Element a = 0; a < l.size() && quotient_iso; ++a) {
      const Element fa = block_image[theta.block_of[a]];
      if (block_image[theta.block_of[l.neg(a)]] != factor.neg(fa)) quotient_iso = false;
      for (Element b = 0; b < l.size() && quotient_iso; ++b) {
        const Element fb = block_image[theta.block_of[b]];
        if (block_image[theta.block_of[l.meet(a, b)]] != factor.meet(fa, fb) ||
            block_image[theta.block_of[l.join(a, b)]] != factor.join(fa, fb))
          quotient_iso = false;
      }
    }
  }

  auto prod = product(factor, cofactor);
  std::vector<Element> embed(l.size());
  for (Element a = 0; a < l.size(); ++a) {
    const Element left = factor.element(l.name(l.meet(a, z)));
    const Element right = cofactor.element(l.name(l.meet(a, l.neg(z))));
    embed[a] = static_cast<Element>(left * cofactor.size() + right);
  }
  const bool embedding = is_isomorphism(l, prod, embed);

  return FactorDecomposition{std::move(theta), std::move(factor), std::move(cofactor),
                             std::move(block_image), congruence, quotient_iso, embedding};
}

ModularityReport modularity_suite(const FiniteOml& l) {
  ModularityReport report;
  const std::size_t n = l.size();
  for (Element a = 0; a < n && !report.witness; ++a)
    for (Element b = 0; b < n && !report.witness; ++b)
      for (Element x = 0; x < n; ++x) {
        const Element xb = l.meet(x, b);
        if (l.join(xb, l.meet(a, b)) != l.meet(l.join(xb, a), b)) {
          report.witness = std::array<Element, 3>{a, b, x};
          break;
        }
      }
  report.is_modular = !report.witness;

  for (Element x = 0; x < n && !report.n5; ++x)
    for (Element y = 0; y < n && !report.n5; ++y) {
      if (x == y || !l.leq(x, y)) continue;
      for (Element z = 0; z < n; ++z) {
        if (l.leq(z, y) || l.leq(y, z) || l.leq(z, x) || l.leq(x, z)) continue;
        if (l.meet(x, z) == l.meet(y, z) && l.join(x, z) == l.join(y, z)) {
          report.n5 = std::array<Element, 5>{l.meet(x, z), x, y, z, l.join(x, z)};
          break;
        }
      }
    }

  for (Element x = 0; x < n && !report.perspective_pair; ++x)
    for (Element y = 0; y < n; ++y) {
      if (x == y || !l.leq(x, y)) continue;
      if (perspective(l, x, y).perspective()) {
        report.perspective_pair = std::array<Element, 2>{x, y};
        break;
      }
    }
  return report;
}

bool order_preserving(const FiniteOml& l, const UnaryTable& map) {
  if (map.size() != l.size()) return false;
  for (Element a = 0; a < l.size(); ++a)
    for (Element b = 0; b < l.size(); ++b)
      if (l.leq(a, b) && !l.leq(map[a], map[b])) return false;
  return true;
}

MapDiagnostics map_diagnostics(const FiniteOml& l, Element a, const std::optional<UnaryTable>& w,
                               const std::optional<UnaryTable>& wstar, bool claim_hypotheses) {
  if (!l.contains(a)) throw PreconditionError("map_diagnostics: element out of range");
  if (a == l.bottom()) throw PreconditionError("map_diagnostics requires a != 0");
  auto check_table = [&](const std::optional<UnaryTable>& t, const char* what) {
    if (!t) return;
    if (t->size() != l.size())
      throw PreconditionError(std::string(what) + " table must have one entry per element");
    for (Element v : *t)
      if (!l.contains(v)) throw PreconditionError(std::string(what) + " table value out of range");
  };
  check_table(w, "w");
  check_table(wstar, "w*");
  if (claim_hypotheses) {
    if (w && !order_preserving(l, *w)) throw PreconditionError("w is not order preserving");
    if (wstar && !order_preserving(l, *wstar))
      throw PreconditionError("w* is not order preserving");
  }

  MapDiagnostics report;
  const std::size_t n = l.size();
  if (w) {
    bool global = true, local = true;
    for (Element x = 0; x < n; ++x)
      if ((*w)[sasaki(l, a, l.neg(x))] != l.neg((*w)[l.meet(x, a)])) global = false;
    for (Element x = 0; x < n; ++x)
      if (l.leq(x, a) && (*w)[l.meet(l.neg(x), a)] != l.neg((*w)[x])) local = false;
    report.relcomp_global = global;
    report.relcomp_local = local;
    report.relcomp_equivalent = global == local;
  }
  if (w && wstar) {
    bool hyp = order_preserving(l, *w) && order_preserving(l, *wstar);
    for (Element x = 0; x < n && hyp; ++x)
      hyp = (*w)[(*wstar)[x]] == x && (*wstar)[(*w)[x]] == sasaki(l, a, x);
    report.hypotheses_hold = hyp;

    // w*: L -> [0,a] bijective, order preserving and reflecting.
    bool star_iso = true;
    std::vector<char> hit(n, 0);
    for (Element x = 0; x < n; ++x) {
      const Element y = (*wstar)[x];
      if (!l.leq(y, a) || hit[y]) star_iso = false;
      hit[y] = 1;
    }
    for (Element x = 0; x < n; ++x)
      if (l.leq(x, a) && !hit[x]) star_iso = false;
    for (Element x = 0; x < n && star_iso; ++x)
      for (Element y = 0; y < n; ++y)
        if (l.leq(x, y) != l.leq((*wstar)[x], (*wstar)[y])) star_iso = false;
    report.wstar_onto_interval_iso = star_iso;

    bool w_iso = true;
    std::fill(hit.begin(), hit.end(), 0);
    for (Element x = 0; x < n; ++x) {
      if (!l.leq(x, a)) continue;
      if (hit[(*w)[x]]) w_iso = false;
      hit[(*w)[x]] = 1;
    }
    for (Element y = 0; y < n; ++y)
      if (!hit[y]) w_iso = false;
    for (Element x = 0; x < n && w_iso; ++x)
      for (Element y = 0; y < n; ++y)
        if (l.leq(x, a) && l.leq(y, a) && l.leq(x, y) != l.leq((*w)[x], (*w)[y])) w_iso = false;
    report.w_restricted_iso = w_iso;

    report.wstar_fixes_a = (*wstar)[a] == a;
    report.fixpoint_iff_top = ((*wstar)[a] == a) == (a == l.top());
  }
  return report;
}

}  // namespace lqf
