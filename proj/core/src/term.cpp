#include "lqf/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "lqf/error.hpp"

namespace lqf {

// --- construction ---------------------------------------------------------

Term Term::make(Op op, std::string name, const Term* a, const Term* b) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->name = std::move(name);
  if (a) node->a = std::make_shared<const Term>(*a);
  if (b) node->b = std::make_shared<const Term>(*b);
  return Term(std::move(node));
}

Term Term::zero() {
  static const Term t = make(Op::Zero, "", nullptr, nullptr);
  return t;
}
Term Term::one() {
  static const Term t = make(Op::One, "", nullptr, nullptr);
  return t;
}
Term Term::var(std::string name) { return make(Op::Var, std::move(name), nullptr, nullptr); }
Term Term::neg(Term t) { return make(Op::Neg, "", &t, nullptr); }
Term Term::meet(Term a, Term b) { return make(Op::Meet, "", &a, &b); }
Term Term::join(Term a, Term b) { return make(Op::Join, "", &a, &b); }
Term Term::w(Term z, Term x) { return make(Op::W, "", &z, &x); }
Term Term::wstar(Term z, Term x) { return make(Op::WStar, "", &z, &x); }

Term Term::rel(const Term& t, const Term& s) {
  return join(meet(t, s), meet(neg(t), neg(s)));
}
Term Term::ed(const Term& t) { return neg(w(zero(), neg(t))); }
Term Term::w0(const Term& t) { return w(zero(), t); }
Term Term::w0star(const Term& t) { return wstar(zero(), t); }
Term Term::mu(const Term& z, const Term& x) { return meet(z, join(neg(z), x)); }

std::size_t Term::complexity() const {
  std::size_t n = 1;
  if (node_->a) n += node_->a->complexity();
  if (node_->b) n += node_->b->complexity();
  return n;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  if (node_->a) d = std::max(d, node_->a->depth() + 1);
  if (node_->b) d = std::max(d, node_->b->depth() + 1);
  return d;
}

namespace {
void collect_vars(const Term& t, std::set<std::string>& out) {
  switch (t.op()) {
    case Op::Zero:
    case Op::One: return;
    case Op::Var: out.insert(t.name()); return;
    case Op::Neg: collect_vars(t.lhs(), out); return;
    default:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
  }
}
}  // namespace

std::vector<std::string> Term::variables() const {
  std::set<std::string> vars;
  collect_vars(*this, vars);
  return {vars.begin(), vars.end()};
}

bool Term::uses_w() const {
  if (node_->op == Op::W || node_->op == Op::WStar) return true;
  return (node_->a && node_->a->uses_w()) || (node_->b && node_->b->uses_w());
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.name() != b.name()) return false;
  if (static_cast<bool>(a.node_->a) != static_cast<bool>(b.node_->a)) return false;
  if (a.node_->a && !(*a.node_->a == *b.node_->a)) return false;
  if (a.node_->b && !(*a.node_->b == *b.node_->b)) return false;
  return true;
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.op() != b.op()) return a.op() < b.op();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.node_->a) {
    if (*a.node_->a < *b.node_->a) return true;
    if (*b.node_->a < *a.node_->a) return false;
  }
  if (a.node_->b) return *a.node_->b < *b.node_->b;
  return false;
}

// --- parsing ----------------------------------------------------------------

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term term_only() {
    Term t = expr();
    skip();
    if (pos_ < text_.size()) unexpected();
    return t;
  }

  Equation equation() {
    Term lhs = expr();
    skip();
    if (pos_ == text_.size()) return {lhs, Term::one()};
    if (text_[pos_] != '=') unexpected();
    ++pos_;
    Term rhs = expr();
    skip();
    if (pos_ < text_.size()) unexpected();
    return {lhs, rhs};
  }

 private:
  [[noreturn]] void unexpected() {
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == ')') throw SyntaxError(pos_, "unmatched ')'");
    if (std::string_view("~&|(),=*").find(c) == std::string_view::npos && !ident_char(c))
      throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, std::size_t open) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return;
    }
    if (pos_ >= text_.size() && c == ')')
      throw SyntaxError(open, "unmatched '('");
    if (pos_ >= text_.size()) throw SyntaxError(pos_, std::string("expected '") + c + "'");
    throw SyntaxError(pos_, std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
  }

  Term expr() {
    Term t = meet_expr();
    while (accept('|')) t = Term::join(t, meet_expr());
    return t;
  }

  Term meet_expr() {
    Term t = unary();
    while (accept('&')) t = Term::meet(t, unary());
    return t;
  }

  Term unary() {
    if (accept('~')) return Term::neg(unary());
    return atom();
  }

  Term atom() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      Term t = expr();
      expect(')', open);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const auto word = text_.substr(start, pos_ - start);
      if (word == "0") return Term::zero();
      if (word == "1") return Term::one();
      throw SyntaxError(start, "only the constants 0 and 1 are allowed, found '" + std::string(word) + "'");
    }
    if (!ident_start(c)) unexpected();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string head(text_.substr(start, pos_ - start));
    // w*( and w0*( are the only heads containing '*'.
    std::size_t look = pos_;
    while (look < text_.size() && std::isspace(static_cast<unsigned char>(text_[look]))) ++look;
    if ((head == "w" || head == "w0") && look < text_.size() && text_[look] == '*') {
      head += '*';
      pos_ = look + 1;
      skip();
      if (pos_ >= text_.size() || text_[pos_] != '(')
        throw SyntaxError(pos_, "expected '(' after '" + head + "'");
    }
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      if (head.back() == '*') unexpected();
      return Term::var(head);
    }
    const std::size_t open = pos_++;
    auto args = [&](std::size_t n) {
      std::vector<Term> out;
      out.push_back(expr());
      for (std::size_t i = 1; i < n; ++i) {
        expect(',', open);
        out.push_back(expr());
      }
      expect(')', open);
      return out;
    };
    if (head == "w") { auto a = args(2); return Term::w(a[0], a[1]); }
    if (head == "w*") { auto a = args(2); return Term::wstar(a[0], a[1]); }
    if (head == "R") { auto a = args(2); return Term::rel(a[0], a[1]); }
    if (head == "mu") { auto a = args(2); return Term::mu(a[0], a[1]); }
    if (head == "ed") { auto a = args(1); return Term::ed(a[0]); }
    if (head == "w0") { auto a = args(1); return Term::w0(a[0]); }
    if (head == "w0*") { auto a = args(1); return Term::w0star(a[0]); }
    throw SyntaxError(start, "unknown function '" + head + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).term_only(); }
Equation parse_equation(std::string_view text) { return Parser(text).equation(); }

// --- printing -----------------------------------------------------------------

namespace {

// Levels: 0 = anywhere, 1 = operand of &, or right operand of |, 2 = operand of ~ or right of &.
void print_to(const Term& t, int level, std::string& out) {
  switch (t.op()) {
    case Op::Zero: out += '0'; return;
    case Op::One: out += '1'; return;
    case Op::Var: out += t.name(); return;
    case Op::Neg:
      if (t.lhs().op() == Op::W && t.lhs().lhs().op() == Op::Zero && t.lhs().rhs().op() == Op::Neg) {
        out += "ed(";
        print_to(t.lhs().rhs().lhs(), 0, out);
        out += ')';
        return;
      }
      out += '~';
      print_to(t.lhs(), 2, out);
      return;
    case Op::W:
    case Op::WStar: {
      const bool star = t.op() == Op::WStar;
      if (t.lhs().op() == Op::Zero) {
        out += star ? "w0*(" : "w0(";
      } else {
        out += star ? "w*(" : "w(";
        print_to(t.lhs(), 0, out);
        out += ',';
      }
      print_to(t.rhs(), 0, out);
      out += ')';
      return;
    }
    case Op::Meet: {
      const bool paren = level > 1;
      if (paren) out += '(';
      print_to(t.lhs(), 1, out);
      out += " & ";
      print_to(t.rhs(), 2, out);
      if (paren) out += ')';
      return;
    }
    case Op::Join: {
      const Term& l = t.lhs();
      const Term& r = t.rhs();
      if (l.op() == Op::Meet && r.op() == Op::Meet && r.lhs().op() == Op::Neg &&
          r.rhs().op() == Op::Neg && r.lhs().lhs() == l.lhs() && r.rhs().lhs() == l.rhs()) {
        out += "R(";
        print_to(l.lhs(), 0, out);
        out += ',';
        print_to(l.rhs(), 0, out);
        out += ')';
        return;
      }
      const bool paren = level > 0;
      if (paren) out += '(';
      print_to(l, 0, out);
      out += " | ";
      print_to(r, 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_to(t, 0, out);
  return out;
}

std::string print(const Equation& e) { return print(e.lhs) + " = " + print(e.rhs); }

Term substitute(const Term& t, const std::map<std::string, Term>& map) {
  switch (t.op()) {
    case Op::Zero:
    case Op::One: return t;
    case Op::Var: {
      auto it = map.find(t.name());
      return it == map.end() ? t : it->second;
    }
    case Op::Neg: return Term::neg(substitute(t.lhs(), map));
    case Op::Meet: return Term::meet(substitute(t.lhs(), map), substitute(t.rhs(), map));
    case Op::Join: return Term::join(substitute(t.lhs(), map), substitute(t.rhs(), map));
    case Op::W: return Term::w(substitute(t.lhs(), map), substitute(t.rhs(), map));
    case Op::WStar: return Term::wstar(substitute(t.lhs(), map), substitute(t.rhs(), map));
  }
  return t;
}

// --- structures -------------------------------------------------------------------

ExpandedStructure::ExpandedStructure(FiniteOml base, std::vector<Element> w,
                                     std::vector<Element> wstar)
    : base_(std::move(base)), w_(std::move(w)), wstar_(std::move(wstar)) {
  const std::size_t n = base_.size();
  if (w_.size() != n * n || wstar_.size() != n * n)
    throw StructuralError("w and w* tables must have " + std::to_string(n) + "x" +
                          std::to_string(n) + " entries");
  for (Element v : w_)
    if (v >= n) throw StructuralError("w table value out of range");
  for (Element v : wstar_)
    if (v >= n) throw StructuralError("w* table value out of range");
}

ExpandedStructure central_cover_surrogate(const FiniteOml& lattice) {
  const std::size_t n = lattice.size();
  std::vector<Element> w(n * n), wstar(n * n, lattice.bottom());
  for (Element z = 0; z < n; ++z)
    for (Element x = 0; x < n; ++x) w[z * n + x] = lattice.central_cover(x);
  return ExpandedStructure(lattice, std::move(w), std::move(wstar));
}

// --- evaluation ---------------------------------------------------------------------

namespace {

std::uint32_t compile_into(const Term& t, const std::vector<std::string>& vars,
                           std::vector<std::pair<Op, std::pair<std::uint32_t, std::uint32_t>>>& code) {
  std::uint32_t a = 0, b = 0;
  switch (t.op()) {
    case Op::Zero:
    case Op::One: break;
    case Op::Var: {
      auto it = std::find(vars.begin(), vars.end(), t.name());
      if (it == vars.end()) throw ValuationError("unbound variable '" + t.name() + "'");
      a = static_cast<std::uint32_t>(it - vars.begin());
      break;
    }
    case Op::Neg: a = compile_into(t.lhs(), vars, code); break;
    default:
      a = compile_into(t.lhs(), vars, code);
      b = compile_into(t.rhs(), vars, code);
  }
  code.push_back({t.op(), {a, b}});
  return static_cast<std::uint32_t>(code.size() - 1);
}

}  // namespace

CompiledTerm::CompiledTerm(const Term& t, const std::vector<std::string>& vars) {
  std::vector<std::pair<Op, std::pair<std::uint32_t, std::uint32_t>>> code;
  compile_into(t, vars, code);
  code_.reserve(code.size());
  for (const auto& [op, args] : code) {
    code_.push_back({op, args.first, args.second});
    uses_w_ = uses_w_ || op == Op::W || op == Op::WStar;
  }
}

Element CompiledTerm::run(const Model& m, const Element* args) const {
  std::vector<Element> scratch;
  return run(m, args, scratch);
}

Element CompiledTerm::run(const Model& m, const Element* args, std::vector<Element>& slot) const {
  if (uses_w_ && !m.expanded)
    throw SignatureError("term uses w/w* but the structure has no w/w* tables");
  const FiniteOml& l = *m.lattice;
  slot.resize(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Zero: slot[i] = l.bottom(); break;
      case Op::One: slot[i] = l.top(); break;
      case Op::Var: slot[i] = args[in.a]; break;
      case Op::Neg: slot[i] = l.neg(slot[in.a]); break;
      case Op::Meet: slot[i] = l.meet(slot[in.a], slot[in.b]); break;
      case Op::Join: slot[i] = l.join(slot[in.a], slot[in.b]); break;
      case Op::W: slot[i] = m.expanded->w(slot[in.a], slot[in.b]); break;
      case Op::WStar: slot[i] = m.expanded->wstar(slot[in.a], slot[in.b]); break;
    }
  }
  return slot.back();
}

Element eval(const Term& t, const Model& m, const Valuation& v) {
  const auto vars = t.variables();
  std::vector<Element> args;
  for (const auto& name : vars) {
    auto it = v.find(name);
    if (it == v.end()) throw ValuationError("unbound variable '" + name + "'");
    if (!m.lattice->contains(it->second))
      throw ValuationError("value of '" + name + "' is out of range");
    args.push_back(it->second);
  }
  return CompiledTerm(t, vars).run(m, args.data());
}

void for_each_valuation(std::size_t arity, std::size_t carrier,
                        const std::function<bool(const Element*)>& f) {
  std::vector<Element> args(arity, 0);
  if (carrier == 0) return;
  while (true) {
    if (!f(args.data())) return;
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++args[i] < carrier) break;
      args[i] = 0;
      if (i == 0) return;
    }
    if (arity == 0) return;
  }
}

namespace {

std::vector<std::string> merged_vars(const std::vector<Equation>& eqs) {
  std::set<std::string> vars;
  for (const auto& e : eqs) {
    for (auto& v : e.lhs.variables()) vars.insert(v);
    for (auto& v : e.rhs.variables()) vars.insert(v);
  }
  return {vars.begin(), vars.end()};
}

Valuation to_valuation(const std::vector<std::string>& vars, const Element* args) {
  Valuation v;
  for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = args[i];
  return v;
}

}  // namespace

HoldsResult holds(const Model& m, const Equation& eq) {
  HoldsResult result;
  result.variables = merged_vars({eq});
  CompiledTerm lhs(eq.lhs, result.variables), rhs(eq.rhs, result.variables);
  if ((lhs.uses_w() || rhs.uses_w()) && !m.expanded)
    throw SignatureError("equation uses w/w* but the structure has no w/w* tables");
  std::vector<Element> s1, s2;
  for_each_valuation(result.variables.size(), m.lattice->size(), [&](const Element* args) {
    if (lhs.run(m, args, s1) != rhs.run(m, args, s2)) {
      result.holds = false;
      result.counterexample = to_valuation(result.variables, args);
      return false;
    }
    return true;
  });
  return result;
}

SystemResult holds_all(const Model& m, const std::vector<Equation>& eqs) {
  SystemResult result;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    auto r = holds(m, eqs[i]);
    if (!r.holds) {
      result.holds = false;
      result.failing_equation = i;
      result.counterexample = std::move(r.counterexample);
      return result;
    }
  }
  return result;
}

std::string format_valuation(const Valuation& v, const FiniteOml& lattice) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, value] : v) {
    if (!first) os << ", ";
    first = false;
    os << name << "=" << lattice.name(value);
  }
  return os.str();
}

}  // namespace lqf
