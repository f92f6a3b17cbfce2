#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqf/oml.hpp"

namespace lqf {

enum class Op : std::uint8_t { Zero, One, Var, Neg, Meet, Join, W, WStar };

/// Immutable term tree. Copies share structure.
class Term {
 public:
  static Term zero();
  static Term one();
  static Term var(std::string name);
  static Term neg(Term t);
  static Term meet(Term a, Term b);
  static Term join(Term a, Term b);
  static Term w(Term z, Term x);
  static Term wstar(Term z, Term x);

  // Surface macros, expanded on construction.
  static Term rel(const Term& t, const Term& s);  // (t&s)|(~t&~s)
  static Term ed(const Term& t);                   // ~w(0,~t)
  static Term w0(const Term& t);                   // w(0,t)
  static Term w0star(const Term& t);               // w*(0,t)
  static Term mu(const Term& z, const Term& x);    // z&(~z|x)

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  /// Children: left/only child, right child. Valid for unary/binary ops.
  const Term& lhs() const { return *node_->a; }
  const Term& rhs() const { return *node_->b; }
  bool is_binary() const { return node_->b != nullptr; }

  /// Node count.
  std::size_t complexity() const;
  std::size_t depth() const;
  /// Distinct variable names, sorted.
  std::vector<std::string> variables() const;
  bool uses_w() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  /// Structural total order (op, name, children); used for canonical sorting.
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const Term> a;
    std::shared_ptr<const Term> b;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Op op, std::string name, const Term* a, const Term* b);

  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;
};

/// Throws SyntaxError (with 0-based position) on bad input.
Term parse_term(std::string_view text);
/// "t = s"; a bare term t is read as t = 1.
Equation parse_equation(std::string_view text);

/// Re-sugars R, ed, w0 and w0*; parse_term(print(t)) == t.
std::string print(const Term& t);
std::string print(const Equation& e);

Term substitute(const Term& t, const std::map<std::string, Term>& map);

// --- structures ------------------------------------------------------------

/// A lattice paired with total tables for w and w* (row-major, w(z,x) at z*n+x).
class ExpandedStructure {
 public:
  ExpandedStructure(FiniteOml base, std::vector<Element> w, std::vector<Element> wstar);

  const FiniteOml& base() const noexcept { return base_; }
  Element w(Element z, Element x) const { return w_[z * base_.size() + x]; }
  Element wstar(Element z, Element x) const { return wstar_[z * base_.size() + x]; }
  const std::vector<Element>& w_table() const noexcept { return w_; }
  const std::vector<Element>& wstar_table() const noexcept { return wstar_; }

 private:
  FiniteOml base_;
  std::vector<Element> w_;
  std::vector<Element> wstar_;
};

/// w(z,x) = e(x) for every z and w* = 0: realizes ed(t) as the dual central
/// cover. Not an LQF-algebra; used wherever only ed matters.
ExpandedStructure central_cover_surrogate(const FiniteOml& lattice);

using Valuation = std::map<std::string, Element>;

/// Non-owning view of a structure for evaluation.
struct Model {
  const FiniteOml* lattice = nullptr;
  const ExpandedStructure* expanded = nullptr;

  Model(const FiniteOml& l) : lattice(&l) {}  // NOLINT(google-explicit-constructor)
  Model(const ExpandedStructure& s)           // NOLINT(google-explicit-constructor)
      : lattice(&s.base()), expanded(&s) {}
  const FiniteOml& base() const { return *lattice; }
};

/// Term compiled to straight-line code over a fixed variable order.
class CompiledTerm {
 public:
  /// `vars` fixes the argument order; every variable of t must occur in it.
  CompiledTerm(const Term& t, const std::vector<std::string>& vars);

  /// Throws SignatureError if the term uses w/w* and the model is bare.
  Element run(const Model& m, const Element* args) const;
  Element run(const Model& m, const Element* args, std::vector<Element>& scratch) const;
  bool uses_w() const noexcept { return uses_w_; }

 private:
  struct Instr {
    Op op;
    std::uint32_t a = 0;  // operand slot or variable index
    std::uint32_t b = 0;
  };
  std::vector<Instr> code_;
  bool uses_w_ = false;
};

/// Throws ValuationError for unbound variables, SignatureError for w-terms
/// against a bare lattice.
Element eval(const Term& t, const Model& m, const Valuation& v);

struct HoldsResult {
  bool holds = true;
  std::vector<std::string> variables;
  /// First counter-valuation in lexicographic order (first variable most significant).
  std::optional<Valuation> counterexample;
  explicit operator bool() const { return holds; }
};

HoldsResult holds(const Model& m, const Equation& eq);

/// Universal check of several equations over a shared variable list; reports
/// the first equation (by index) that fails, with its first counter-valuation.
struct SystemResult {
  bool holds = true;
  std::size_t failing_equation = 0;
  std::optional<Valuation> counterexample;
};
SystemResult holds_all(const Model& m, const std::vector<Equation>& eqs);

/// Calls f(args) for every tuple in lexicographic order until f returns false.
void for_each_valuation(std::size_t arity, std::size_t carrier,
                        const std::function<bool(const Element*)>& f);

std::string format_valuation(const Valuation& v, const FiniteOml& lattice);

}  // namespace lqf
