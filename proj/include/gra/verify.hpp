#pragma once

// Exhaustive cross-checks of an algebra against the set-theoretic oracle.
// Shared by the `verify` command and the acceptance suite.

#include <cstddef>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gra/algebra.hpp"
#include "gra/frame_check.hpp"
#include "gra/oracle.hpp"

namespace gra {

struct CheckLine {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckLine> lines;

  bool passed() const {
    for (const auto& l : lines)
      if (!l.ok) return false;
    return true;
  }
  const CheckLine* find(const std::string& name) const {
    for (const auto& l : lines)
      if (l.name == name) return &l;
    return nullptr;
  }
  void print(std::ostream& out) const {
    for (const auto& l : lines)
      out << (l.ok ? "PASS " : "FAIL ") << l.name << ": " << l.detail << '\n';
  }
};

// Atom relations materialized once, compositions tabulated on demand.
class AtomCache {
 public:
  explicit AtomCache(const Algebra& alg) : alg_(alg) {
    rel_.reserve(alg.atom_count());
    for (AtomId a = 0; a < alg.atom_count(); ++a) rel_.push_back(alg.atom_relation(a));
  }

  const ConcreteRelation& relation(AtomId a) const { return rel_[a]; }

  ConcreteRelation materialize(const FrameElement& e) const {
    ConcreteRelation out(alg_.space().size());
    for (AtomId a : e.atoms()) out |= rel_[a];
    return out;
  }

  const FrameElement& compose(AtomId a, AtomId b) {
    if (table_.empty()) table_.resize(alg_.atom_count() * alg_.atom_count());
    auto& slot = table_[a * alg_.atom_count() + b];
    if (!slot) slot = alg_.compose_atoms(a, b);
    return *slot;
  }

  FrameElement compose(const FrameElement& l, const FrameElement& r) {
    FrameElement out = alg_.empty_element();
    const auto ra = r.atoms();
    for (AtomId a : l.atoms())
      for (AtomId b : ra) out = alg_.unite(out, compose(a, b));
    return out;
  }

 private:
  const Algebra& alg_;
  std::vector<ConcreteRelation> rel_;
  std::vector<std::optional<FrameElement>> table_;
};

struct VerifyOptions {
  // Exhaustive associativity up to this many atoms; sampled above it.
  std::size_t exhaustive_assoc_atoms = 30;
  std::size_t sampled_triples = 20000;
  std::size_t random_elements = 100;
  std::uint64_t seed = 20240517;
};

namespace detail {

inline std::string count_msg(std::size_t n, const char* what) {
  return std::to_string(n) + " " + what;
}

}  // namespace detail

inline CheckLine verify_frame_checks(const Frame& f) {
  const auto full = check_frame_full(f);
  const auto reduced = check_frame_reduced(f);
  CheckLine l{"frame conditions", full.passed() && reduced.passed(), ""};
  l.detail = std::string("full ") + (full.passed() ? "pass" : "fail") + ", reduced " +
             (reduced.passed() ? "pass" : "fail");
  return l;
}

// Atoms of each rectangle are non-empty, disjoint, cover G_x x G_y and have
// |G_x|*|K_xy| pairs.
inline CheckLine verify_partition(const Algebra& alg, const AtomCache& cache) {
  CheckLine l{"partition", true, ""};
  std::size_t rects = 0;
  const Frame& f = alg.frame();
  for (Index x = 0; x < f.size(); ++x)
    for (Index y = 0; y < f.size(); ++y) {
      if (!f.related(x, y)) continue;
      ++rects;
      ConcreteRelation all(alg.space().size());
      const auto ids = alg.atoms_of(x, y);
      const std::size_t card = f.group(x).order() * alg.record(x, y).k.subgroup().size();
      for (AtomId a : ids) {
        const auto& r = cache.relation(a);
        if (r.empty() || r.intersects(all) || r.size() != card) {
          l.ok = false;
          l.detail = "atom " + alg.format(a) + " is empty, overlaps, or has the wrong size";
          return l;
        }
        all |= r;
      }
      if (all != rectangle(alg.space(), x, y)) {
        l.ok = false;
        l.detail = "atoms of (" + f.label(x) + "," + f.label(y) + ") do not cover the rectangle";
        return l;
      }
    }
  l.detail = detail::count_msg(rects, "rectangles");
  return l;
}

inline CheckLine verify_converse_oracle(const Algebra& alg, const AtomCache& cache) {
  CheckLine l{"converse oracle", true, ""};
  for (AtomId a = 0; a < alg.atom_count(); ++a)
    if (cache.relation(alg.converse_atom(a)) != rel_converse(cache.relation(a))) {
      l.ok = false;
      l.detail = "converse of " + alg.format(a) + " is not " + alg.format(alg.converse_atom(a));
      return l;
    }
  l.detail = detail::count_msg(alg.atom_count(), "atoms");
  return l;
}

inline CheckLine verify_composition_oracle(const Algebra& alg, AtomCache& cache) {
  CheckLine l{"composition oracle", true, ""};
  std::size_t n = 0;
  for (AtomId a = 0; a < alg.atom_count(); ++a)
    for (AtomId b = 0; b < alg.atom_count(); ++b) {
      ++n;
      const ConcreteRelation expect = rel_compose(cache.relation(a), cache.relation(b));
      if (cache.materialize(cache.compose(a, b)) != expect) {
        l.ok = false;
        l.detail = alg.format(a) + " ; " + alg.format(b) + " gives " +
                   alg.format(cache.compose(a, b)) + ", oracle disagrees";
        return l;
      }
    }
  l.detail = detail::count_msg(n, "atom pairs");
  return l;
}

inline CheckLine verify_involutions(const Algebra& alg, AtomCache& cache) {
  CheckLine l{"involution laws", true, ""};
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    if (alg.converse_atom(alg.converse_atom(a)) != a) {
      l.ok = false;
      l.detail = "conv(conv(" + alg.format(a) + ")) differs";
      return l;
    }
    for (AtomId b = 0; b < alg.atom_count(); ++b) {
      const FrameElement lhs = alg.converse(cache.compose(a, b));
      const FrameElement& rhs = cache.compose(alg.converse_atom(b), alg.converse_atom(a));
      if (lhs != rhs) {
        l.ok = false;
        l.detail = "conv(" + alg.format(a) + ";" + alg.format(b) + ") differs";
        return l;
      }
    }
  }
  l.detail = detail::count_msg(alg.atom_count() * alg.atom_count(), "pairs");
  return l;
}

inline CheckLine verify_associativity(const Algebra& alg, AtomCache& cache,
                                      const VerifyOptions& opts) {
  CheckLine l{"associativity", true, ""};
  const std::size_t n = alg.atom_count();
  auto check = [&](AtomId a, AtomId b, AtomId c) {
    const FrameElement ea = alg.element({a});
    const FrameElement ec = alg.element({c});
    const FrameElement lhs = cache.compose(cache.compose(a, b), ec);
    const FrameElement rhs = cache.compose(ea, cache.compose(b, c));
    if (lhs != rhs) {
      l.ok = false;
      l.detail = "(" + alg.format(a) + ";" + alg.format(b) + ");" + alg.format(c) + " differs";
    }
    return l.ok;
  };
  if (n <= opts.exhaustive_assoc_atoms) {
    for (AtomId a = 0; a < n; ++a)
      for (AtomId b = 0; b < n; ++b)
        for (AtomId c = 0; c < n; ++c)
          if (!check(a, b, c)) return l;
    l.detail = detail::count_msg(n * n * n, "triples (exhaustive)");
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<AtomId> pick(0, n - 1);
    for (std::size_t i = 0; i < opts.sampled_triples; ++i)
      if (!check(pick(rng), pick(rng), pick(rng))) return l;
    l.detail = detail::count_msg(opts.sampled_triples, "triples (sampled)");
  }
  return l;
}

inline CheckLine verify_identity(const Algebra& alg, AtomCache& cache) {
  CheckLine l{"identity laws", true, ""};
  const FrameElement id = alg.identity_element();
  if (cache.materialize(id) != identity_on(alg.space())) {
    l.ok = false;
    l.detail = "identity element is not id_U";
    return l;
  }
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    const FrameElement e = alg.element({a});
    if (cache.compose(id, e) != e || cache.compose(e, id) != e) {
      l.ok = false;
      l.detail = "identity law fails at " + alg.format(a);
      return l;
    }
  }
  l.detail = detail::count_msg(alg.atom_count(), "atoms");
  return l;
}

inline CheckLine verify_fast_paths(const Algebra& alg, AtomCache& cache) {
  CheckLine l{"fast paths", true, ""};
  std::size_t n = 0;
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    if (alg.fast_converse_subidentity(a) != alg.converse_atom(a)) {
      l.ok = false;
      l.detail = "square converse of " + alg.format(a) + " differs";
      return l;
    }
    for (AtomId b = 0; b < alg.atom_count(); ++b) {
      if (alg.fast_path(a, b) == FastPath::none) continue;
      ++n;
      if (alg.fast_compose_subidentity(a, b) != cache.compose(a, b)) {
        l.ok = false;
        l.detail = "fast path " + alg.format(a) + ";" + alg.format(b) + " differs";
        return l;
      }
    }
  }
  l.detail = detail::count_msg(n, "applicable pairs");
  return l;
}

// For every related (x,y),(y,z):
//   phi_xy[H_xy*H_xz] = K_xy*H_yz, phi_yz[K_xy*H_yz] = K_xz*K_yz,
//   phi_xz[H_xy*H_xz] = K_xz*K_yz.
inline CheckLine verify_images(const Algebra& alg) {
  CheckLine l{"image equations", true, ""};
  const Frame& f = alg.frame();
  std::size_t n = 0;
  for (const auto& b : f.blocks())
    for (Index x : b)
      for (Index y : b)
        for (Index z : b) {
          ++n;
          const auto& xy = alg.record(x, y);
          const auto& yz = alg.record(y, z);
          const auto& xz = alg.record(x, z);
          const ElementSet hh = complex_product(f.group(x), xy.h.subgroup(), xz.h.subgroup());
          const ElementSet kh = complex_product(f.group(y), xy.k.subgroup(), yz.h.subgroup());
          const ElementSet kk = complex_product(f.group(z), xz.k.subgroup(), yz.k.subgroup());
          if (xy.image(hh) != kh || yz.image(kh) != kk || xz.image(hh) != kk) {
            l.ok = false;
            l.detail = "image equations fail at (" + f.label(x) + "," + f.label(y) + "," +
                       f.label(z) + ")";
            return l;
          }
        }
  l.detail = detail::count_msg(n, "triples");
  return l;
}

inline CheckLine verify_measure(const Algebra& alg) {
  CheckLine l{"measure", true, ""};
  const auto rep = alg.measure_report();
  for (const auto& e : rep.entries)
    if (!e.all_bijections || e.measure != alg.frame().group(e.x).order() ||
        e.functional_atoms != e.measure) {
      l.ok = false;
      l.detail = "subidentity atom of " + alg.frame().label(e.x) + " is not measured correctly";
      return l;
    }
  l.detail = detail::count_msg(rep.entries.size(), "subidentity atoms");
  return l;
}

// Boolean laws plus distributivity of ; and conv over +, on random elements.
inline CheckLine verify_boolean(const Algebra& alg, AtomCache& cache,
                                const VerifyOptions& opts) {
  CheckLine l{"boolean laws", true, ""};
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution coin(0.5);
  auto random_element = [&] {
    FrameElement e = alg.empty_element();
    for (AtomId a = 0; a < alg.atom_count(); ++a)
      if (coin(rng)) e.insert(a);
    return e;
  };
  const std::size_t rounds = alg.atom_count() ? opts.random_elements : 0;
  for (std::size_t i = 0; i < rounds; ++i) {
    const FrameElement a = random_element(), b = random_element(), c = random_element();
    const ConcreteRelation unit = cache.materialize(alg.unit());
    const ConcreteRelation ra = cache.materialize(a), rb = cache.materialize(b);
    bool ok = alg.complement(alg.unite(a, b)) ==
                  alg.intersect(alg.complement(a), alg.complement(b)) &&
              alg.complement(alg.intersect(a, b)) ==
                  alg.unite(alg.complement(a), alg.complement(b)) &&
              alg.complement(alg.complement(a)) == a &&
              alg.unite(a, alg.complement(a)) == alg.unit() &&
              alg.intersect(a, alg.complement(a)) == alg.empty_element() &&
              cache.materialize(alg.unite(a, b)) == rel_union(ra, rb) &&
              cache.materialize(alg.intersect(a, b)) == rel_intersect(ra, rb) &&
              cache.materialize(alg.complement(a)) == rel_complement_within(ra, unit) &&
              cache.compose(a, alg.unite(b, c)) ==
                  alg.unite(cache.compose(a, b), cache.compose(a, c)) &&
              alg.converse(alg.unite(a, b)) == alg.unite(alg.converse(a), alg.converse(b));
    if (!ok) {
      l.ok = false;
      l.detail = "boolean law fails on random element #" + std::to_string(i);
      return l;
    }
  }
  l.detail = detail::count_msg(rounds, "random triples");
  return l;
}

/// The whole suite: frame conditions, partition, oracle equivalence,
/// involution, associativity, identity, fast paths, image equations,
/// measure and Boolean laws.
inline VerifyReport verify_algebra(const Algebra& alg, const VerifyOptions& opts = {}) {
  VerifyReport rep;
  AtomCache cache(alg);
  rep.lines.push_back(verify_frame_checks(alg.frame()));
  rep.lines.push_back(verify_partition(alg, cache));
  rep.lines.push_back(verify_converse_oracle(alg, cache));
  rep.lines.push_back(verify_composition_oracle(alg, cache));
  rep.lines.push_back(verify_involutions(alg, cache));
  rep.lines.push_back(verify_associativity(alg, cache, opts));
  rep.lines.push_back(verify_identity(alg, cache));
  rep.lines.push_back(verify_fast_paths(alg, cache));
  rep.lines.push_back(verify_images(alg));
  rep.lines.push_back(verify_measure(alg));
  rep.lines.push_back(verify_boolean(alg, cache, opts));
  return rep;
}

/// Oracle-only closure test on an arbitrary group pair: is the set of unions
/// of atom relations closed under converse and composition, and does it
/// contain id_U? Independent of the frame-condition code paths.
inline bool atoms_closed_under_operations(const Frame& f) {
  const BaseSpace u = base_space(f);
  std::vector<ConcreteRelation> atoms;
  std::vector<std::pair<Index, Index>> rect;
  for (Index x = 0; x < f.size(); ++x)
    for (Index y = 0; y < f.size(); ++y) {
      if (!f.related(x, y)) continue;
      const IsoRecord r = resolve_iso(f, x, y);
      for (std::size_t a = 0; a < r.count(); ++a) {
        atoms.push_back(atom_relation(f, u, r, a));
        rect.emplace_back(x, y);
      }
    }
  // A relation inside the unit is a frame relation iff it is a union of atoms.
  auto is_union_of_atoms = [&](const ConcreteRelation& r) {
    for (const auto& at : atoms)
      if (at.intersects(r) && !at.subset_of(r)) return false;
    return true;
  };
  if (!is_union_of_atoms(identity_on(u))) return false;
  for (const auto& a : atoms)
    if (!is_union_of_atoms(rel_converse(a))) return false;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (rect[i].second == rect[j].first && !is_union_of_atoms(rel_compose(atoms[i], atoms[j])))
        return false;
  return true;
}

}  // namespace gra
