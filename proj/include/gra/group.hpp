#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gra/element_set.hpp"
#include "gra/error.hpp"

namespace gra {

// A finite group given by its operation table. Elements are the dense
// indices 0..order()-1 and the identity is always element 0.
class FiniteGroup {
 public:
  static constexpr Element identity() { return 0; }

  std::size_t order() const { return order_; }
  Element op(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  const std::string& label() const { return label_; }
  std::span<const Element> table() const { return table_; }

  std::vector<std::vector<Element>> rows() const {
    std::vector<std::vector<Element>> out(order_);
    for (std::size_t i = 0; i < order_; ++i)
      out[i].assign(table_.begin() + i * order_, table_.begin() + (i + 1) * order_);
    return out;
  }

  // Cyclic groups are recognised by their table alone: op(i,j) = i+j mod n.
  bool is_standard_cyclic() const {
    for (std::size_t i = 0; i < order_; ++i)
      for (std::size_t j = 0; j < order_; ++j)
        if (op(i, j) != (i + j) % order_) return false;
    return true;
  }

  // Tables compare equal regardless of label.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

  friend FiniteGroup make_cyclic(std::size_t n);
  friend FiniteGroup validate_table(const std::vector<std::vector<Element>>& rows,
                                    std::string label);

 private:
  FiniteGroup(std::size_t order, std::vector<Element> table,
              std::vector<Element> inverse, std::string label)
      : order_(order), table_(std::move(table)), inverse_(std::move(inverse)),
        label_(std::move(label)) {}

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::string label_;
};

inline FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_order, "cyclic group order must be at least 1");
  std::vector<Element> table(n * n);
  std::vector<Element> inverse(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<Element>((i + j) % n);
    inverse[i] = static_cast<Element>((n - i) % n);
  }
  return FiniteGroup(n, std::move(table), std::move(inverse), "Z" + std::to_string(n));
}

/// Checks the group axioms exhaustively and returns the group with its
/// identity renumbered to 0 (by swapping it with element 0). Throws
/// ErrorKind::not_a_group naming the first failing closure entry, missing
/// identity, missing inverse, or non-associative triple (i,j,k).
inline FiniteGroup validate_table(const std::vector<std::vector<Element>>& rows,
                                  std::string label = {}) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::invalid_order, "group table is empty");
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      throw Error(ErrorKind::not_a_group, "row " + std::to_string(i) + " has " +
                                              std::to_string(rows[i].size()) +
                                              " entries, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i][j] >= n)
        throw Error(ErrorKind::not_a_group,
                    "closure fails: op(" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + std::to_string(rows[i][j]) + " is not an element");

  std::optional<Element> ident;
  for (std::size_t e = 0; e < n && !ident; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = rows[e][a] == a && rows[a][e] == a;
    if (ok) ident = static_cast<Element>(e);
  }
  if (!ident) throw Error(ErrorKind::not_a_group, "no two-sided identity element");

  std::vector<Element> inverse(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::optional<Element> inv;
    for (std::size_t b = 0; b < n && !inv; ++b)
      if (rows[a][b] == *ident && rows[b][a] == *ident) inv = static_cast<Element>(b);
    if (!inv)
      throw Error(ErrorKind::not_a_group,
                  "element " + std::to_string(a) + " has no two-sided inverse");
    inverse[a] = *inv;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rows[rows[i][j]][k] != rows[i][rows[j][k]])
          throw Error(ErrorKind::not_a_group,
                      "associativity fails at (" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) + ")");

  // Swap the identity into position 0.
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::swap(perm[0], perm[*ident]);
  std::vector<Element> table(n * n);
  std::vector<Element> inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[perm[i] * n + perm[j]] = perm[rows[i][j]];
    inv[perm[i]] = perm[inverse[i]];
  }
  if (label.empty()) label = "G" + std::to_string(n);
  return FiniteGroup(n, std::move(table), std::move(inv), std::move(label));
}

inline ElementSet complex_product(const FiniteGroup& g, const ElementSet& a,
                                  const ElementSet& b) {
  ElementSet out(g.order());
  a.for_each([&](Element x) { b.for_each([&](Element y) { out.insert(g.op(x, y)); }); });
  return out;
}

inline ElementSet complex_inverse(const FiniteGroup& g, const ElementSet& a) {
  ElementSet out(g.order());
  a.for_each([&](Element x) { out.insert(g.inverse(x)); });
  return out;
}

// Left translate g∘A.
inline ElementSet translate(const FiniteGroup& grp, Element g, const ElementSet& a) {
  ElementSet out(grp.order());
  a.for_each([&](Element x) { out.insert(grp.op(g, x)); });
  return out;
}

/// Throws ErrorKind::not_a_subgroup with a witness unless `h` contains the
/// identity and is closed under the operation and inverses.
inline void require_subgroup(const FiniteGroup& g, const ElementSet& h) {
  if (h.universe() != g.order())
    throw Error(ErrorKind::not_a_subgroup, "subset " + h.to_string() + " is over " +
                                               std::to_string(h.universe()) +
                                               " elements, group has " +
                                               std::to_string(g.order()));
  if (!h.contains(FiniteGroup::identity()))
    throw Error(ErrorKind::not_a_subgroup,
                h.to_string() + " does not contain the identity 0");
  h.for_each([&](Element a) {
    if (!h.contains(g.inverse(a)))
      throw Error(ErrorKind::not_a_subgroup,
                  h.to_string() + " lacks the inverse " + std::to_string(g.inverse(a)) +
                      " of " + std::to_string(a));
    h.for_each([&](Element b) {
      if (!h.contains(g.op(a, b)))
        throw Error(ErrorKind::not_a_subgroup,
                    h.to_string() + " is not closed: " + std::to_string(a) + "*" +
                        std::to_string(b) + " = " + std::to_string(g.op(a, b)));
    });
  });
}

inline bool is_subgroup(const FiniteGroup& g, const ElementSet& h) {
  try {
    require_subgroup(g, h);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline bool is_normal(const FiniteGroup& g, const ElementSet& h) {
  require_subgroup(g, h);
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    h.for_each([&](Element a) {
      if (!h.contains(g.op(g.op(x, a), g.inverse(x)))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// An enumeration of the cosets of a normal subgroup, subgroup first.
class CosetSystem {
 public:
  CosetSystem() = default;

  /// Validates the partition invariants: cosets[0] contains the identity,
  /// cosets are non-empty, equal-sized, pairwise disjoint and cover the group.
  static CosetSystem from_cosets(std::size_t group_order, std::vector<ElementSet> cosets) {
    if (cosets.empty())
      throw Error(ErrorKind::invalid_frame, "coset system must contain at least one coset");
    const std::size_t width = cosets[0].size();
    if (!cosets[0].contains(FiniteGroup::identity()))
      throw Error(ErrorKind::invalid_frame,
                  "first coset " + cosets[0].to_string() + " does not contain the identity");
    std::vector<std::size_t> index_of(group_order, group_order);
    for (std::size_t i = 0; i < cosets.size(); ++i) {
      const auto& c = cosets[i];
      if (c.universe() != group_order || c.size() != width || width == 0)
        throw Error(ErrorKind::invalid_frame,
                    "coset " + c.to_string() + " has the wrong size or universe");
      c.for_each([&](Element e) {
        if (index_of[e] != group_order)
          throw Error(ErrorKind::invalid_frame,
                      "cosets overlap in element " + std::to_string(e));
        index_of[e] = i;
      });
    }
    for (std::size_t e = 0; e < group_order; ++e)
      if (index_of[e] == group_order)
        throw Error(ErrorKind::invalid_frame,
                    "element " + std::to_string(e) + " lies in no coset");
    CosetSystem sys;
    sys.cosets_ = std::move(cosets);
    sys.index_of_ = std::move(index_of);
    return sys;
  }

  std::size_t group_order() const { return index_of_.size(); }
  std::size_t count() const { return cosets_.size(); }
  const ElementSet& subgroup() const { return cosets_.front(); }
  const ElementSet& coset(std::size_t i) const { return cosets_[i]; }
  std::span<const ElementSet> cosets() const { return cosets_; }
  std::size_t index_of(Element e) const { return index_of_[e]; }
  Element representative(std::size_t i) const { return cosets_[i].first(); }

  // Position of `s` in the enumeration, if it is one of the cosets.
  std::optional<std::size_t> find(const ElementSet& s) const {
    if (s.empty() || s.universe() != group_order()) return std::nullopt;
    std::size_t i = index_of(s.first());
    if (cosets_[i] == s) return i;
    return std::nullopt;
  }

  // The union of the cosets in `indices`.
  template <typename Range>
  ElementSet union_of(const Range& indices) const {
    ElementSet out(group_order());
    for (auto i : indices) out |= cosets_[i];
    return out;
  }

  // True iff `s` is a union of cosets of this system.
  bool is_union_of_cosets(const ElementSet& s) const {
    bool ok = true;
    s.for_each([&](Element e) {
      if (!cosets_[index_of(e)].subset_of(s)) ok = false;
    });
    return ok;
  }

  // Indices of the cosets contained in `s`, ascending.
  std::vector<std::size_t> cosets_within(const ElementSet& s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count(); ++i)
      if (cosets_[i].subset_of(s)) out.push_back(i);
    return out;
  }

  /// Re-enumerates the cosets: position i of the result is coset order[i].
  CosetSystem permuted(std::span<const std::size_t> order) const {
    if (order.size() != count() || order.empty() || order[0] != 0)
      throw Error(ErrorKind::invalid_frame, "coset permutation must keep the subgroup first");
    std::vector<ElementSet> cs;
    cs.reserve(count());
    for (auto i : order) cs.push_back(cosets_.at(i));
    return from_cosets(group_order(), std::move(cs));
  }

  friend bool operator==(const CosetSystem& a, const CosetSystem& b) {
    return a.cosets_ == b.cosets_;
  }

 private:
  std::vector<ElementSet> cosets_;
  std::vector<std::size_t> index_of_;
};

/// Canonical enumeration: the subgroup first, then the remaining left cosets
/// by ascending least element. Throws ErrorKind::not_normal for non-normal H.
inline CosetSystem enumerate_cosets(const FiniteGroup& g, const ElementSet& h) {
  if (!is_normal(g, h))
    throw Error(ErrorKind::not_normal, h.to_string() + " is not normal in " + g.label());
  std::vector<ElementSet> cosets{h};
  ElementSet seen = h;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen.contains(x)) continue;
    ElementSet c = translate(g, x, h);
    seen |= c;
    cosets.push_back(std::move(c));
  }
  return CosetSystem::from_cosets(g.order(), std::move(cosets));
}

inline FiniteGroup quotient_group(const FiniteGroup& g, const ElementSet& h) {
  CosetSystem sys = enumerate_cosets(g, h);
  const std::size_t k = sys.count();
  std::vector<std::vector<Element>> rows(k, std::vector<Element>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      rows[i][j] = static_cast<Element>(
          sys.index_of(g.op(sys.representative(i), sys.representative(j))));
  return validate_table(rows, g.label() + "/" + h.to_string());
}

struct IsoCheck {
  bool ok = true;
  std::string witness;
  // First pair of coset indices (i,j) with map(i*j) != map(i)*map(j).
  std::optional<std::pair<std::size_t, std::size_t>> hom_witness;

  explicit operator bool() const { return ok; }
};

/// Decides whether `map` (canonical H-coset index -> canonical K-coset index)
/// is an isomorphism Gx/H -> Gy/K. Throws ErrorKind::incompatible_quotients
/// when the quotients have different orders.
inline IsoCheck check_quotient_iso(const FiniteGroup& gx, const ElementSet& h,
                                   const FiniteGroup& gy, const ElementSet& k,
                                   std::span<const std::size_t> map) {
  CosetSystem hs = enumerate_cosets(gx, h);
  CosetSystem ks = enumerate_cosets(gy, k);
  if (hs.count() != ks.count())
    throw Error(ErrorKind::incompatible_quotients,
                "quotients have orders " + std::to_string(hs.count()) + " and " +
                    std::to_string(ks.count()));
  const std::size_t n = hs.count();
  IsoCheck res;
  if (map.size() != n) {
    res.ok = false;
    res.witness = "map has " + std::to_string(map.size()) + " entries, expected " +
                  std::to_string(n);
    return res;
  }
  std::vector<std::size_t> preimage(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (map[i] >= n) {
      res.ok = false;
      res.witness = "coset " + std::to_string(i) + " maps to out-of-range index " +
                    std::to_string(map[i]);
      return res;
    }
    if (preimage[map[i]] != n) {
      res.ok = false;
      res.witness = "not injective: cosets " + std::to_string(preimage[map[i]]) + " and " +
                    std::to_string(i) + " both map to " + std::to_string(map[i]);
      return res;
    }
    preimage[map[i]] = i;
  }
  if (map[0] != 0) {
    res.ok = false;
    res.witness = "identity coset maps to " + std::to_string(map[0]);
    return res;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t ij = hs.index_of(gx.op(hs.representative(i), hs.representative(j)));
      std::size_t img = ks.index_of(gy.op(ks.representative(map[i]), ks.representative(map[j])));
      if (map[ij] != img) {
        res.ok = false;
        res.hom_witness = std::make_pair(i, j);
        res.witness = "not a homomorphism at cosets (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        return res;
      }
    }
  return res;
}

}  // namespace gra
