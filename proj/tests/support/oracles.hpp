#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls the lattice operations of lqf::FiniteOml except leq() and neg(), so a
// bug in the precomputed meet/join/center tables cannot hide itself.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lqf/oml.hpp"
#include "lqf/term.hpp"

namespace oracle {

using lqf::Element;

/// Lattice operations recomputed from the order relation alone.
struct Naive {
  std::size_t n = 0;
  std::vector<std::vector<bool>> le;
  std::vector<Element> ng;
  Element bot = 0, top = 0;

  explicit Naive(const lqf::FiniteOml& l) : n(l.size()), ng(l.size()), bot(l.bottom()), top(l.top()) {
    le.assign(n, std::vector<bool>(n, false));
    for (Element a = 0; a < n; ++a) {
      ng[a] = l.neg(a);
      for (Element b = 0; b < n; ++b) le[a][b] = l.leq(a, b);
    }
  }

  Element meet(Element a, Element b) const {
    Element best = bot;
    for (Element c = 0; c < n; ++c)
      if (le[c][a] && le[c][b] && le[best][c]) best = c;
    return best;
  }
  Element join(Element a, Element b) const {
    Element best = top;
    for (Element c = 0; c < n; ++c)
      if (le[a][c] && le[b][c] && le[c][best]) best = c;
    return best;
  }
  Element neg(Element a) const { return ng[a]; }

  bool central(Element z) const {
    for (Element a = 0; a < n; ++a)
      if (join(meet(a, z), meet(a, ng[z])) != a) return false;
    return true;
  }
  std::vector<Element> center() const {
    std::vector<Element> out;
    for (Element z = 0; z < n; ++z)
      if (central(z)) out.push_back(z);
    return out;
  }
  /// Greatest central element below a, found by scanning.
  Element dual_cover(Element a) const {
    Element best = bot;
    for (Element z = 0; z < n; ++z)
      if (central(z) && le[z][a] && le[best][z]) best = z;
    return best;
  }
  bool complement(Element a, Element c) const { return join(a, c) == top && meet(a, c) == bot; }
  bool perspective(Element a, Element b) const {
    for (Element c = 0; c < n; ++c)
      if (complement(a, c) && complement(b, c)) return true;
    return false;
  }
};

/// Recursive evaluator; w and w* read the raw tables of `s` when given.
inline Element eval(const lqf::Term& t, const Naive& l, const std::map<std::string, Element>& v,
                    const lqf::ExpandedStructure* s = nullptr) {
  using lqf::Op;
  switch (t.op()) {
    case Op::Zero: return l.bot;
    case Op::One: return l.top;
    case Op::Var: return v.at(t.name());
    case Op::Neg: return l.neg(eval(t.lhs(), l, v, s));
    case Op::Meet: return l.meet(eval(t.lhs(), l, v, s), eval(t.rhs(), l, v, s));
    case Op::Join: return l.join(eval(t.lhs(), l, v, s), eval(t.rhs(), l, v, s));
    case Op::W: return s->w(eval(t.lhs(), l, v, s), eval(t.rhs(), l, v, s));
    case Op::WStar: return s->wstar(eval(t.lhs(), l, v, s), eval(t.rhs(), l, v, s));
  }
  return l.bot;
}

/// True iff lhs and rhs agree under every valuation of `vars`.
inline bool holds(const lqf::Equation& e, const Naive& l, const std::vector<std::string>& vars,
                  const lqf::ExpandedStructure* s = nullptr) {
  std::vector<Element> idx(vars.size(), 0);
  while (true) {
    std::map<std::string, Element> v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = idx[i];
    if (eval(e.lhs, l, v, s) != eval(e.rhs, l, v, s)) return false;
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++idx[i] < l.n) break;
      idx[i] = 0;
      if (i == 0) return true;
    }
    if (vars.empty()) return true;
  }
}

/// Term classes over `vars` up to `depth`, one representative per distinct
/// signature. Children of a depth-k term are any depth<k terms, so closing the
/// class set level by level is exact.
class TermClasses {
 public:
  using Signature = std::vector<Element>;
  using SigFn = std::function<Signature(const lqf::Term&)>;

  TermClasses(const std::vector<std::string>& vars, std::size_t depth, SigFn sig) : sig_(std::move(sig)) {
    add(lqf::Term::zero());
    add(lqf::Term::one());
    for (const auto& x : vars) add(lqf::Term::var(x));
    for (std::size_t d = 1; d <= depth; ++d) {
      const std::vector<lqf::Term> prev = reps_;
      for (const auto& a : prev) add(lqf::Term::neg(a));
      for (const auto& a : prev)
        for (const auto& b : prev) {
          add(lqf::Term::meet(a, b));
          add(lqf::Term::join(a, b));
        }
    }
  }
  const std::vector<lqf::Term>& representatives() const { return reps_; }
  std::uint64_t terms_seen() const { return seen_; }

 private:
  void add(lqf::Term t) {
    ++seen_;
    if (seen_sigs_.insert(sig_(t)).second) reps_.push_back(std::move(t));
  }
  SigFn sig_;
  std::set<Signature> seen_sigs_;
  std::vector<lqf::Term> reps_;
  std::uint64_t seen_ = 0;
};

/// Value table of t over every valuation of `vars` in each lattice, concatenated.
inline std::vector<Element> signature(const lqf::Term& t, const std::vector<const Naive*>& ls,
                                      const std::vector<std::string>& vars) {
  std::vector<Element> out;
  for (const Naive* l : ls) {
    std::vector<Element> idx(vars.size(), 0);
    while (true) {
      std::map<std::string, Element> v;
      for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = idx[i];
      out.push_back(eval(t, *l, v));
      std::size_t i = vars.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < l->n) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

/// Uniformly random term of bounded depth over `vars`.
inline lqf::Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth,
                             bool with_w = false) {
  const int leaf = static_cast<int>(rng() % 4);
  if (depth == 0 || leaf == 0) {
    const auto k = rng() % (vars.size() + 2);
    if (k == 0) return lqf::Term::zero();
    if (k == 1) return lqf::Term::one();
    return lqf::Term::var(vars[k - 2]);
  }
  const int op = static_cast<int>(rng() % (with_w ? 5 : 3));
  auto sub = [&] { return random_term(rng, vars, depth - 1, with_w); };
  switch (op) {
    case 0: return lqf::Term::neg(sub());
    case 1: return lqf::Term::meet(sub(), sub());
    case 2: return lqf::Term::join(sub(), sub());
    case 3: return lqf::Term::w(sub(), sub());
    default: return lqf::Term::wstar(sub(), sub());
  }
}

}  // namespace oracle
