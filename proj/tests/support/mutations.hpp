#pragma once

// Single-step proof mutations with the index at which a correct checker must
// reject them. The expected index comes from the construction and from direct
// shape comparisons, not from check_proof.

#include <optional>
#include <string>
#include <vector>

#include "lqf/calculus.hpp"

namespace mutation {

struct Case {
  std::string label;
  lqf::Proof proof;
  std::size_t expected = 0;  // 1-based
};

inline const lqf::Term& term_at(const lqf::Proof& p, std::size_t ref) { return p.steps[ref - 1].term; }

/// Does step k (1-based) satisfy its own rule shape, given its references?
/// Only covers Hyp, DS and N; other kinds report nullopt.
inline std::optional<bool> shape_ok(const lqf::Proof& p, std::size_t k) {
  using K = lqf::Justification::Kind;
  const auto& s = p.steps[k - 1];
  auto valid_ref = [&](std::size_t r) { return r >= 1 && r < k; };
  switch (s.just.kind) {
    case K::Hyp:
      return s.just.index >= 1 && s.just.index <= p.theory.size() && p.theory[s.just.index - 1] == s.term;
    case K::DS:
      if (!valid_ref(s.just.minor) || !valid_ref(s.just.major)) return false;
      return term_at(p, s.just.major) == lqf::Term::join(lqf::Term::neg(term_at(p, s.just.minor)), s.term);
    case K::N:
      if (!valid_ref(s.just.index)) return false;
      return lqf::Term::ed(term_at(p, s.just.index)) == s.term;
    default: return std::nullopt;
  }
}

inline std::vector<std::size_t*> references(lqf::Step& s) {
  using K = lqf::Justification::Kind;
  std::vector<std::size_t*> out;
  if (s.just.kind == K::DS) {
    out.push_back(&s.just.minor);
    out.push_back(&s.just.major);
  } else if (s.just.kind == K::N) {
    out.push_back(&s.just.index);
  } else if (s.just.kind == K::Macro) {
    for (auto& i : s.just.inputs) out.push_back(&i);
  }
  return out;
}

inline std::vector<Case> single_step_mutations(const std::string& name, const lqf::Proof& p) {
  using K = lqf::Justification::Kind;
  std::vector<Case> out;
  const std::size_t n = p.steps.size();
  const lqf::Term junk = lqf::Term::var("q_mut");

  for (std::size_t k = 1; k <= n; ++k) {
    // Altered term: no rule can produce t & q_mut for a fresh variable.
    lqf::Proof m = p;
    m.steps[k - 1].term = lqf::Term::meet(m.steps[k - 1].term, junk);
    out.push_back({name + ": altered term at step " + std::to_string(k), std::move(m), k});

    // Wrong index: point one reference at a different earlier step (or a
    // different hypothesis) so that the shape breaks.
    const auto& just = p.steps[k - 1].just;
    if (just.kind == K::Hyp) {
      m = p;
      m.steps[k - 1].just.index = p.theory.size() + 1;
      out.push_back({name + ": hypothesis index out of range at step " + std::to_string(k), std::move(m), k});
    } else if (just.kind == K::DS || just.kind == K::N) {
      bool done = false;
      for (std::size_t slot = 0; slot < (just.kind == K::DS ? 2u : 1u) && !done; ++slot)
        for (std::size_t j = 1; j < k && !done; ++j) {
          m = p;
          auto refs = references(m.steps[k - 1]);
          if (*refs[slot] == j) continue;
          *refs[slot] = j;
          if (shape_ok(m, k) == false) {
            out.push_back({name + ": wrong rule index at step " + std::to_string(k), std::move(m), k});
            done = true;
          }
        }
      m = p;
      *references(m.steps[k - 1]).front() = k;
      out.push_back({name + ": self reference at step " + std::to_string(k), std::move(m), k});
    }

    // Deleted step: later references at or above k shift down by one, so a
    // reference to the deleted step lands on its predecessor.
    std::optional<std::size_t> first_user;
    for (std::size_t j = k + 1; j <= n && !first_user; ++j) {
      lqf::Step s = p.steps[j - 1];
      for (auto* r : references(s))
        if (*r == k) first_user = j;
    }
    if (!first_user) continue;
    m = p;
    m.steps.erase(m.steps.begin() + static_cast<std::ptrdiff_t>(k - 1));
    for (auto& s : m.steps)
      for (auto* r : references(s))
        if (*r >= k) *r -= 1;
    const std::size_t expected = *first_user - 1;
    if (shape_ok(m, expected) != false) continue;  // macro user, or coincidentally still valid
    out.push_back({name + ": deleted step " + std::to_string(k), std::move(m), expected});
  }
  return out;
}

}  // namespace mutation
