#include "lqf/filters.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lqf/error.hpp"

namespace lqf {

Subset make_subset(const FiniteOml& l, const std::vector<Element>& elements) {
  Subset s(l.size(), 0);
  for (Element e : elements) {
    if (!l.contains(e)) throw PreconditionError("subset element out of range");
    s[e] = 1;
  }
  return s;
}

std::vector<Element> members(const Subset& s) {
  std::vector<Element> out;
  for (Element i = 0; i < s.size(); ++i)
    if (s[i]) out.push_back(i);
  return out;
}

Subset principal_filter(const FiniteOml& l, Element a) {
  Subset s(l.size(), 0);
  for (Element x = 0; x < l.size(); ++x) s[x] = l.leq(a, x) ? 1 : 0;
  return s;
}

namespace {

bool subset_of(const Subset& a, const Subset& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

bool perspective_closed(const FiniteOml& l, const Subset& s) {
  for (Element x = 0; x < l.size(); ++x) {
    if (!s[x]) continue;
    for (Element y = 0; y < l.size(); ++y)
      if (!s[y] && perspective(l, x, y).perspective()) return false;
  }
  return true;
}

Element rel(const FiniteOml& l, Element x, Element y) {
  return l.join(l.meet(x, y), l.meet(l.neg(x), l.neg(y)));
}

// Union-find over the carrier.
struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  CongruencePartition partition() {
    std::vector<std::size_t> block(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) block[i] = find(i);
    return normalize(std::move(block));
  }
};

// Closes the relation in `d` under compatibility with the operations.
void close_congruence(const FiniteOml& l, Dsu& d) {
  const std::size_t n = l.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element x = 0; x < n; ++x)
      for (Element y = x + 1; y < n; ++y) {
        if (d.find(x) != d.find(y)) continue;
        changed |= d.unite(l.neg(x), l.neg(y));
        changed |= d.unite(l.dual_central_cover(x), l.dual_central_cover(y));
        for (Element c = 0; c < n; ++c) {
          changed |= d.unite(l.meet(x, c), l.meet(y, c));
          changed |= d.unite(l.join(x, c), l.join(y, c));
        }
      }
  }
}

CongruencePartition join_partitions(const CongruencePartition& a, const CongruencePartition& b) {
  const std::size_t n = a.block_of.size();
  Dsu d(n);
  std::vector<std::optional<std::size_t>> rep_a(a.block_count), rep_b(b.block_count);
  for (std::size_t i = 0; i < n; ++i) {
    auto& ra = rep_a[a.block_of[i]];
    if (ra) d.unite(*ra, i); else ra = i;
    auto& rb = rep_b[b.block_of[i]];
    if (rb) d.unite(*rb, i); else rb = i;
  }
  return d.partition();
}

bool refines(const CongruencePartition& a, const CongruencePartition& b) {
  for (std::size_t i = 0; i < a.block_of.size(); ++i)
    for (std::size_t j = i + 1; j < a.block_of.size(); ++j)
      if (a.related(static_cast<Element>(i), static_cast<Element>(j)) &&
          !b.related(static_cast<Element>(i), static_cast<Element>(j)))
        return false;
  return true;
}

}  // namespace

FilterFlags classify_filter(const FiniteOml& l, const Subset& s) {
  if (s.size() != l.size()) throw PreconditionError("subset must have one flag per element");
  const std::size_t n = l.size();
  FilterFlags f;
  f.contains_top = s[l.top()] != 0;
  f.increasing = true;
  f.meet_closed = true;
  f.ed_closed = true;
  for (Element x = 0; x < n; ++x) {
    if (!s[x]) continue;
    if (!s[l.dual_central_cover(x)]) f.ed_closed = false;
    for (Element y = 0; y < n; ++y) {
      if (l.leq(x, y) && !s[y]) f.increasing = false;
      if (s[y] && !s[l.meet(x, y)]) f.meet_closed = false;
    }
  }
  f.perspective_closed = perspective_closed(l, s);
  f.proper = std::find(s.begin(), s.end(), 0) != s.end();

  if (f.lqf_filter() && f.proper) {
    f.maximal = true;
    for (Element x = 0; x < n; ++x)
      if (!s[x] && !s[l.neg(l.dual_central_cover(x))]) f.maximal = false;
    f.maximal_by_inclusion = true;
    for (const auto& g : lqf_filters(l)) {
      const bool proper = std::find(g.begin(), g.end(), 0) != g.end();
      if (proper && g != s && subset_of(s, g)) f.maximal_by_inclusion = false;
    }
  }
  return f;
}

Subset generate_filter(const FiniteOml& l, const std::vector<Element>& m) {
  Element bound = l.top();
  for (Element x : m) {
    if (!l.contains(x)) throw PreconditionError("generator out of range");
    bound = l.meet(bound, x);
  }
  return principal_filter(l, l.dual_central_cover(bound));
}

std::vector<Subset> lqf_filters(const FiniteOml& l) {
  std::vector<Subset> out;
  for (Element z = 0; z < l.size(); ++z)
    if (l.is_central(z)) out.push_back(principal_filter(l, z));
  return out;
}

CongruencePartition principal_congruence(const FiniteOml& l, Element a, Element b) {
  Dsu d(l.size());
  d.unite(a, b);
  close_congruence(l, d);
  return d.partition();
}

std::vector<CongruencePartition> ed_congruences(const FiniteOml& l) {
  const std::size_t n = l.size();
  std::vector<CongruencePartition> principal;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) {
      auto p = principal_congruence(l, a, b);
      if (std::find(principal.begin(), principal.end(), p) == principal.end())
        principal.push_back(std::move(p));
    }
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<CongruencePartition> all{normalize(identity)};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& p : principal) {
      auto j = join_partitions(all[i], p);
      if (std::find(all.begin(), all.end(), j) == all.end()) all.push_back(std::move(j));
    }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.block_count != b.block_count) return a.block_count > b.block_count;
    return a.block_of < b.block_of;
  });
  return all;
}

Subset filter_of(const FiniteOml& l, const CongruencePartition& theta) {
  Subset s(l.size(), 0);
  for (Element x = 0; x < l.size(); ++x) s[x] = theta.related(x, l.top()) ? 1 : 0;
  return s;
}

CongruencePartition congruence_of(const FiniteOml& l, const Subset& filter) {
  std::vector<std::size_t> block(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    block[x] = x;
    for (Element y = 0; y < x; ++y)
      if (filter[rel(l, x, y)]) {
        block[x] = block[y];
        break;
      }
  }
  return normalize(std::move(block));
}

FilterCongruenceReport filter_congruence_maps(const FiniteOml& l) {
  FilterCongruenceReport r;
  const auto thetas = ed_congruences(l);
  const auto filters = lqf_filters(l);
  r.congruences = thetas.size();
  r.filters = filters.size();

  std::vector<Subset> images;
  for (const auto& theta : thetas) {
    Subset f = filter_of(l, theta);
    if (!classify_filter(l, f).lqf_filter() ||
        std::find(filters.begin(), filters.end(), f) == filters.end())
      r.filter_images_are_lqf_filters = false;
    if (!(congruence_of(l, f) == theta)) r.mutually_inverse = false;
    images.push_back(std::move(f));
  }
  for (const auto& f : filters) {
    auto theta = congruence_of(l, f);
    // The grouping above assumes R(x,y) in F is an equivalence; confirm it pairwise.
    bool faithful = true;
    for (Element x = 0; x < l.size() && faithful; ++x)
      for (Element y = 0; y < l.size(); ++y)
        if (theta.related(x, y) != (f[rel(l, x, y)] != 0)) {
          faithful = false;
          break;
        }
    if (!faithful || !is_congruence(l, theta, true) ||
        std::find(thetas.begin(), thetas.end(), theta) == thetas.end())
      r.congruence_images_are_congruences = false;
    if (filter_of(l, theta) != f) r.mutually_inverse = false;
  }
  for (std::size_t i = 0; i < thetas.size(); ++i)
    for (std::size_t j = 0; j < thetas.size(); ++j)
      if (refines(thetas[i], thetas[j]) != subset_of(images[i], images[j]))
        r.order_isomorphism = false;
  return r;
}

std::vector<Subset> center_filters(const FiniteOml& l) {
  std::vector<Subset> out;
  for (Element z = 0; z < l.size(); ++z) {
    if (!l.is_central(z)) continue;
    Subset s(l.size(), 0);
    for (Element c = 0; c < l.size(); ++c) s[c] = l.is_central(c) && l.leq(z, c) ? 1 : 0;
    out.push_back(std::move(s));
  }
  return out;
}

CenterCorrespondenceReport center_correspondence(const FiniteOml& l) {
  CenterCorrespondenceReport r;
  const auto gs = center_filters(l);
  const auto fs = lqf_filters(l);
  r.boolean_filters = gs.size();
  r.lqf_filters = fs.size();

  std::vector<Subset> image;
  for (const auto& g : gs) image.push_back(generate_filter(l, members(g)));
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (std::find(fs.begin(), fs.end(), image[i]) == fs.end()) r.bijective = false;
    for (std::size_t j = 0; j < i; ++j)
      if (image[i] == image[j]) r.bijective = false;
  }
  if (image.size() != fs.size()) r.bijective = false;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j)
      if (subset_of(gs[i], gs[j]) != subset_of(image[i], image[j])) r.preserves_inclusion = false;

  for (const auto& f : fs) {
    Subset g(l.size(), 0);
    for (Element x = 0; x < l.size(); ++x) g[x] = f[x] && l.is_central(x) ? 1 : 0;
    if (generate_filter(l, members(g)) != f) r.recovers_filters = false;
    if (std::find(gs.begin(), gs.end(), g) == gs.end()) r.bijective = false;
  }
  return r;
}

CepReport cep_probe(const FiniteOml& l, const std::vector<Element>& sub) {
  CepReport r;
  Subset in = make_subset(l, sub);
  bool ok = in[l.bottom()] && in[l.top()];
  for (Element a : sub) {
    ok = ok && in[l.neg(a)] && in[l.dual_central_cover(a)];
    for (Element b : sub) ok = ok && in[l.meet(a, b)] && in[l.join(a, b)];
  }
  r.subalgebra_ok = ok;
  if (!ok) return r;

  for (Element m : members(in)) {
    Subset f(l.size(), 0);
    for (Element b : members(in)) f[b] = l.leq(m, b) ? 1 : 0;
    bool ed_closed = true;
    for (Element b : members(f)) ed_closed = ed_closed && f[l.dual_central_cover(b)];
    if (!ed_closed) continue;
    ++r.filters_checked;
    Subset g = generate_filter(l, members(f));
    for (Element x = 0; x < l.size(); ++x) g[x] = g[x] && in[x] ? 1 : 0;
    if (g != f) ++r.violations;
  }
  return r;
}

std::vector<ClosureDiscrepancy> closure_discrepancies(const FiniteOml& l) {
  std::vector<ClosureDiscrepancy> out;
  for (Element a = 0; a < l.size(); ++a) {
    const Subset f = principal_filter(l, a);
    bool ed = true;
    for (Element x : members(f)) ed = ed && f[l.dual_central_cover(x)];
    const bool persp = perspective_closed(l, f);
    if (ed && !persp) out.push_back({a, ed, persp});
  }
  return out;
}

}  // namespace lqf
