#pragma once

// Ground-truth binary relations over a finite base set, as explicit bit
// matrices. Nothing in here knows about cosets or isomorphisms: the symbolic
// engine is checked against these operations.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gra/error.hpp"
#include "gra/group.hpp"

namespace gra {

using GlobalId = std::size_t;

// U as the disjoint union of the groups, flattened by prefix sums: element e
// of group x has global id offset(x) + e.
class BaseSpace {
 public:
  BaseSpace() = default;
  // `block_of[x]` names the equivalence class of group x; the unit E is the
  // union of G_x x G_y over x,y in one class.
  BaseSpace(std::vector<std::size_t> orders, std::vector<std::size_t> block_of)
      : orders_(std::move(orders)), block_of_(std::move(block_of)) {
    if (orders_.size() != block_of_.size())
      throw Error(ErrorKind::invalid_frame, "base space needs one block id per group");
    offsets_.reserve(orders_.size());
    for (auto n : orders_) {
      offsets_.push_back(size_);
      size_ += n;
    }
  }

  std::size_t size() const { return size_; }
  std::size_t groups() const { return orders_.size(); }
  std::size_t order(std::size_t x) const { return orders_[x]; }
  std::size_t offset(std::size_t x) const { return offsets_[x]; }
  std::size_t block_of(std::size_t x) const { return block_of_[x]; }
  GlobalId id(std::size_t x, Element e) const { return offsets_[x] + e; }

  std::size_t group_of(GlobalId g) const {
    std::size_t x = 0;
    while (x + 1 < offsets_.size() && offsets_[x + 1] <= g) ++x;
    return x;
  }

  friend bool operator==(const BaseSpace& a, const BaseSpace& b) {
    return a.orders_ == b.orders_ && a.block_of_ == b.block_of_;
  }

 private:
  std::vector<std::size_t> orders_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

class ConcreteRelation {
 public:
  using Row = boost::dynamic_bitset<std::uint64_t>;

  ConcreteRelation() = default;
  explicit ConcreteRelation(std::size_t n) : rows_(n, Row(n)) {}

  std::size_t universe() const { return rows_.size(); }
  bool contains(GlobalId a, GlobalId b) const { return rows_[a].test(b); }
  void insert(GlobalId a, GlobalId b) { rows_[a].set(b); }
  void or_row(GlobalId a, const Row& r) { rows_[a] |= r; }
  const Row& row(GlobalId a) const { return rows_[a]; }
  bool empty() const {
    for (const auto& r : rows_)
      if (r.any()) return false;
    return true;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
  }

  // Sorted (a,b) pairs.
  std::vector<std::pair<GlobalId, GlobalId>> pairs() const {
    std::vector<std::pair<GlobalId, GlobalId>> out;
    for (GlobalId a = 0; a < rows_.size(); ++a)
      for (auto b = rows_[a].find_first(); b != Row::npos; b = rows_[a].find_next(b))
        out.emplace_back(a, b);
    return out;
  }

  bool subset_of(const ConcreteRelation& o) const {
    same_universe(o);
    for (std::size_t a = 0; a < rows_.size(); ++a)
      if (!rows_[a].is_subset_of(o.rows_[a])) return false;
    return true;
  }
  bool intersects(const ConcreteRelation& o) const {
    same_universe(o);
    for (std::size_t a = 0; a < rows_.size(); ++a)
      if (rows_[a].intersects(o.rows_[a])) return true;
    return false;
  }

  // Each a is related to exactly one b, and each b to exactly one a.
  bool is_bijection_between(const std::vector<GlobalId>& dom,
                            const std::vector<GlobalId>& cod) const {
    if (dom.size() != cod.size()) return false;
    Row seen(universe());
    Row cod_set(universe());
    for (auto b : cod) cod_set.set(b);
    std::size_t total = 0;
    for (auto a : dom) {
      if (rows_[a].count() != 1 || !rows_[a].is_subset_of(cod_set)) return false;
      seen |= rows_[a];
      ++total;
    }
    return seen.count() == cod.size() && total == size();
  }

  ConcreteRelation& operator|=(const ConcreteRelation& o) {
    same_universe(o);
    for (std::size_t a = 0; a < rows_.size(); ++a) rows_[a] |= o.rows_[a];
    return *this;
  }
  ConcreteRelation& operator&=(const ConcreteRelation& o) {
    same_universe(o);
    for (std::size_t a = 0; a < rows_.size(); ++a) rows_[a] &= o.rows_[a];
    return *this;
  }
  ConcreteRelation& operator-=(const ConcreteRelation& o) {
    same_universe(o);
    for (std::size_t a = 0; a < rows_.size(); ++a) rows_[a] -= o.rows_[a];
    return *this;
  }

  friend bool operator==(const ConcreteRelation& a, const ConcreteRelation& b) {
    return a.rows_ == b.rows_;
  }
  friend bool operator!=(const ConcreteRelation& a, const ConcreteRelation& b) {
    return !(a == b);
  }

  // Pair-list dump: one "a b" line per pair, sorted.
  void dump(std::ostream& out) const {
    for (auto [a, b] : pairs()) out << a << ' ' << b << '\n';
  }

 private:
  void same_universe(const ConcreteRelation& o) const {
    if (o.universe() != universe())
      throw Error(ErrorKind::frame_mismatch, "relations over different base sets");
  }

  std::vector<Row> rows_;
};

inline ConcreteRelation rel_union(ConcreteRelation r, const ConcreteRelation& s) { return r |= s; }
inline ConcreteRelation rel_intersect(ConcreteRelation r, const ConcreteRelation& s) {
  return r &= s;
}
// E - R: complements are taken inside the unit, not U x U.
inline ConcreteRelation rel_complement_within(const ConcreteRelation& r,
                                              ConcreteRelation e) {
  return e -= r;
}

inline ConcreteRelation rel_converse(const ConcreteRelation& r) {
  ConcreteRelation out(r.universe());
  for (auto [a, b] : r.pairs()) out.insert(b, a);
  return out;
}

// R|S = {(a,b) : exists c with (a,c) in R and (c,b) in S}.
inline ConcreteRelation rel_compose(const ConcreteRelation& r, const ConcreteRelation& s) {
  if (r.universe() != s.universe())
    throw Error(ErrorKind::frame_mismatch, "relations over different base sets");
  ConcreteRelation out(r.universe());
  for (auto [a, c] : r.pairs()) out.or_row(a, s.row(c));
  return out;
}

inline ConcreteRelation identity_on(const BaseSpace& u) {
  ConcreteRelation out(u.size());
  for (GlobalId a = 0; a < u.size(); ++a) out.insert(a, a);
  return out;
}

inline ConcreteRelation unit_of(const BaseSpace& u) {
  ConcreteRelation out(u.size());
  for (std::size_t x = 0; x < u.groups(); ++x)
    for (std::size_t y = 0; y < u.groups(); ++y) {
      if (u.block_of(x) != u.block_of(y)) continue;
      for (Element a = 0; a < u.order(x); ++a)
        for (Element b = 0; b < u.order(y); ++b) out.insert(u.id(x, a), u.id(y, b));
    }
  return out;
}

// G_x x G_y inside U.
inline ConcreteRelation rectangle(const BaseSpace& u, std::size_t x, std::size_t y) {
  ConcreteRelation out(u.size());
  for (Element a = 0; a < u.order(x); ++a)
    for (Element b = 0; b < u.order(y); ++b) out.insert(u.id(x, a), u.id(y, b));
  return out;
}

// R_g = {(h, h*g) : h in G}, over U = G.
inline ConcreteRelation cayley_relation(const FiniteGroup& g, Element elem) {
  ConcreteRelation out(g.order());
  for (Element h = 0; h < g.order(); ++h) out.insert(h, g.op(h, elem));
  return out;
}

// The same relation placed on group x of a larger base set.
inline ConcreteRelation cayley_relation(const BaseSpace& u, std::size_t x,
                                        const FiniteGroup& g, Element elem) {
  ConcreteRelation out(u.size());
  for (Element h = 0; h < g.order(); ++h) out.insert(u.id(x, h), u.id(x, g.op(h, elem)));
  return out;
}

}  // namespace gra
