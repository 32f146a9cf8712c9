#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gra/element_set.hpp"
#include "gra/error.hpp"
#include "gra/group.hpp"

namespace gra {

using Index = std::size_t;

// One quotient isomorphism phi_xy : G_x/H -> G_y/K. The K-system is stored in
// phi-image order, so k.coset(g) == phi(h.coset(g)) and the isomorphism is the
// identity on coset indices.
struct IsoRecord {
  Index x = 0;
  Index y = 0;
  CosetSystem h;
  CosetSystem k;

  std::size_t count() const { return h.count(); }

  // The same data read backwards: phi_yx = phi_xy^-1 with the enumeration
  // H_yx,g = K_xy,g and K_yx,g = H_xy,g.
  IsoRecord inverse() const { return IsoRecord{y, x, k, h}; }

  // phi[X] for X a union of H-cosets.
  std::optional<ElementSet> image(const ElementSet& xs) const {
    if (!h.is_union_of_cosets(xs)) return std::nullopt;
    ElementSet out(k.group_order());
    for (std::size_t g = 0; g < count(); ++g)
      if (h.coset(g).subset_of(xs)) out |= k.coset(g);
    return out;
  }

  // phi^-1[Y] for Y a union of K-cosets.
  std::optional<ElementSet> preimage(const ElementSet& ys) const {
    if (!k.is_union_of_cosets(ys)) return std::nullopt;
    ElementSet out(h.group_order());
    for (std::size_t g = 0; g < count(); ++g)
      if (k.coset(g).subset_of(ys)) out |= h.coset(g);
    return out;
  }

  friend bool operator==(const IsoRecord& a, const IsoRecord& b) {
    return a.x == b.x && a.y == b.y && a.h == b.h && a.k == b.k;
  }
};

/// Builds the record for phi : Gx/H -> Gy/K from a map between canonical
/// coset indices. Throws ErrorKind::not_an_isomorphism with the witness from
/// check_quotient_iso when the map is not a quotient isomorphism.
inline IsoRecord make_iso_record(Index x, const FiniteGroup& gx, const ElementSet& h, Index y,
                                 const FiniteGroup& gy, const ElementSet& k,
                                 std::span<const std::size_t> canonical_map) {
  IsoCheck chk = check_quotient_iso(gx, h, gy, k, canonical_map);
  if (!chk) throw Error(ErrorKind::not_an_isomorphism, chk.witness);
  return IsoRecord{x, y, enumerate_cosets(gx, h),
                   enumerate_cosets(gy, k).permuted(canonical_map)};
}

// phi_xx: the identity automorphism of G/{e}, one singleton coset per element.
inline IsoRecord identity_record(Index x, const FiniteGroup& g) {
  std::vector<ElementSet> singles;
  singles.reserve(g.order());
  for (Element e = 0; e < g.order(); ++e) singles.push_back(ElementSet(g.order(), {e}));
  CosetSystem sys = CosetSystem::from_cosets(g.order(), std::move(singles));
  return IsoRecord{x, x, sys, sys};
}

/// A group pair: disjoint groups indexed by 0..size()-1 (declaration order),
/// a partition of the indices into blocks, and one stored isomorphism per
/// pair x<y inside a block. Records for x>=y are derived unless an explicit
/// record has been attached with with_explicit_iso().
class Frame {
 public:
  Frame() = default;

  Frame(std::vector<FiniteGroup> groups, std::vector<std::string> labels,
        std::vector<std::vector<Index>> blocks, std::vector<IsoRecord> isos)
      : groups_(std::move(groups)), labels_(std::move(labels)) {
    const std::size_t m = groups_.size();
    if (labels_.empty()) {
      for (Index i = 0; i < m; ++i) labels_.push_back(std::to_string(i));
    }
    if (labels_.size() != m)
      throw Error(ErrorKind::invalid_frame, "label count does not match group count");
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != m)
      throw Error(ErrorKind::invalid_frame, "group labels must be distinct");

    block_of_.assign(m, m);
    for (auto& b : blocks) {
      if (b.empty()) throw Error(ErrorKind::invalid_frame, "empty block");
      std::sort(b.begin(), b.end());
      for (Index x : b) {
        if (x >= m) throw Error(ErrorKind::invalid_frame, "block names unknown index " + std::to_string(x));
        if (block_of_[x] != m)
          throw Error(ErrorKind::invalid_frame, "index " + labels_[x] + " is in two blocks");
        block_of_[x] = 0;
      }
    }
    for (Index x = 0; x < m; ++x)
      if (block_of_[x] == m)
        throw Error(ErrorKind::invalid_frame, "index " + labels_[x] + " is in no block");
    std::sort(blocks.begin(), blocks.end());
    blocks_ = std::move(blocks);
    for (Index b = 0; b < blocks_.size(); ++b)
      for (Index x : blocks_[b]) block_of_[x] = b;

    for (auto& rec : isos) {
      if (rec.x >= rec.y)
        throw Error(ErrorKind::invalid_frame, "stored isomorphisms need x < y, got (" +
                                                  std::to_string(rec.x) + "," +
                                                  std::to_string(rec.y) + ")");
      check_record_shape(rec);
      if (!stored_.emplace(std::make_pair(rec.x, rec.y), std::move(rec)).second)
        throw Error(ErrorKind::invalid_frame, "duplicate isomorphism");
    }
    for (const auto& b : blocks_)
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
          if (!stored_.count({b[i], b[j]}))
            throw Error(ErrorKind::invalid_frame, "missing isomorphism for (" + labels_[b[i]] +
                                                      "," + labels_[b[j]] + ")");
  }

  std::size_t size() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }
  const FiniteGroup& group(Index x) const { return groups_.at(x); }
  const std::vector<FiniteGroup>& groups() const { return groups_; }
  const std::string& label(Index x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<Index>>& blocks() const { return blocks_; }
  Index block_of(Index x) const { return block_of_.at(x); }
  bool related(Index x, Index y) const {
    return x < size() && y < size() && block_of_[x] == block_of_[y];
  }

  std::optional<Index> find_label(const std::string& s) const {
    auto it = std::find(labels_.begin(), labels_.end(), s);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<Index>(it - labels_.begin());
  }

  const std::map<std::pair<Index, Index>, IsoRecord>& stored() const { return stored_; }
  const std::map<std::pair<Index, Index>, IsoRecord>& explicit_records() const {
    return explicit_;
  }
  bool has_explicit_records() const { return !explicit_.empty(); }

  const IsoRecord* stored_record(Index x, Index y) const {
    auto it = stored_.find({x, y});
    return it == stored_.end() ? nullptr : &it->second;
  }
  const IsoRecord* explicit_record(Index x, Index y) const {
    auto it = explicit_.find({x, y});
    return it == explicit_.end() ? nullptr : &it->second;
  }

  /// Returns a copy in which the pair (rec.x, rec.y) resolves to `rec`.
  /// For x<y this replaces the stored record; for x>=y it overrides the
  /// derived one.
  Frame with_explicit_iso(IsoRecord rec) const {
    if (!related(rec.x, rec.y))
      throw Error(ErrorKind::not_related, "indices are not in one block");
    check_record_shape(rec);
    Frame out = *this;
    if (rec.x < rec.y)
      out.stored_[{rec.x, rec.y}] = std::move(rec);
    else
      out.explicit_[{rec.x, rec.y}] = std::move(rec);
    return out;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.groups_ == b.groups_ && a.labels_ == b.labels_ && a.blocks_ == b.blocks_ &&
           a.stored_ == b.stored_ && a.explicit_ == b.explicit_;
  }

 private:
  void check_record_shape(const IsoRecord& rec) const {
    if (rec.x >= size() || rec.y >= size())
      throw Error(ErrorKind::invalid_frame, "isomorphism names an unknown index");
    if (block_of_[rec.x] != block_of_[rec.y])
      throw Error(ErrorKind::invalid_frame, "isomorphism (" + labels_[rec.x] + "," +
                                                labels_[rec.y] + ") crosses blocks");
    if (rec.h.group_order() != groups_[rec.x].order() ||
        rec.k.group_order() != groups_[rec.y].order() || rec.h.count() != rec.k.count())
      throw Error(ErrorKind::invalid_frame, "isomorphism (" + labels_[rec.x] + "," +
                                                labels_[rec.y] + ") has mismatched coset systems");
  }

  std::vector<FiniteGroup> groups_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Index>> blocks_;
  std::vector<Index> block_of_;
  std::map<std::pair<Index, Index>, IsoRecord> stored_;
  std::map<std::pair<Index, Index>, IsoRecord> explicit_;
};

/// The isomorphism phi_xy of the pair: the stored record for x<y, the
/// identity of G_x/{e} for x=y, the inverse of phi_yx for y<x, unless an
/// explicit record overrides the derived one.
inline IsoRecord resolve_iso(const Frame& f, Index x, Index y) {
  if (!f.related(x, y))
    throw Error(ErrorKind::not_related,
                "(" + (x < f.size() ? f.label(x) : std::to_string(x)) + "," +
                    (y < f.size() ? f.label(y) : std::to_string(y)) + ") is not related");
  if (const IsoRecord* r = f.explicit_record(x, y)) return *r;
  if (x == y) return identity_record(x, f.group(x));
  if (x < y) return *f.stored_record(x, y);
  return f.stored_record(y, x)->inverse();
}

// The isomorphisms induced on the coarse quotients for a pair of pairs
// (x,y),(y,z). All three coset systems are aligned with the canonical
// enumeration of P0 = K_xy * H_yz in G_y:
//   m.coset(i) = phi_xy^-1[p.coset(i)],  n.coset(i) = phi_yz[p.coset(i)],
// so the induced maps phi^_xy and phi^_yz are the identity on indices.
struct InducedIso {
  Index x = 0, y = 0, z = 0;
  CosetSystem m;  // over G_x, subgroup M0
  CosetSystem p;  // over G_y, subgroup P0
  CosetSystem n;  // over G_z, subgroup N0
  // xz_map[i] = j iff phi_xz[m.coset(i)] == n.coset(j). Empty when phi_xz
  // does not induce a map G_x/M0 -> G_z/N0 (H_xz is not inside M0, or some
  // image is not a coset of N0).
  std::optional<std::vector<std::size_t>> xz_map;

  bool composition_matches() const {
    if (!xz_map) return false;
    for (std::size_t i = 0; i < xz_map->size(); ++i)
      if ((*xz_map)[i] != i) return false;
    return true;
  }
};

inline InducedIso induced_iso(const Frame& f, Index x, Index y, Index z) {
  const IsoRecord xy = resolve_iso(f, x, y);
  const IsoRecord yz = resolve_iso(f, y, z);
  const IsoRecord xz = resolve_iso(f, x, z);
  const FiniteGroup& gy = f.group(y);

  InducedIso out;
  out.x = x;
  out.y = y;
  out.z = z;
  out.p = enumerate_cosets(gy, complex_product(gy, xy.k.subgroup(), yz.h.subgroup()));

  std::vector<ElementSet> ms, ns;
  for (const ElementSet& pc : out.p.cosets()) {
    auto pre = xy.preimage(pc);
    auto img = yz.image(pc);
    if (!pre || !img)
      throw Error(ErrorKind::invalid_frame, "coarse coset is not a union of finer cosets");
    ms.push_back(*pre);
    ns.push_back(*img);
  }
  out.m = CosetSystem::from_cosets(f.group(x).order(), std::move(ms));
  out.n = CosetSystem::from_cosets(f.group(z).order(), std::move(ns));

  std::vector<std::size_t> map;
  for (const ElementSet& mc : out.m.cosets()) {
    auto img = xz.image(mc);
    if (!img) return out;
    auto j = out.n.find(*img);
    if (!j) return out;
    map.push_back(*j);
  }
  out.xz_map = std::move(map);
  return out;
}

/// The component of `f` on one block: its groups renumbered 0..k-1 in
/// declaration order, and every record between them carried over.
inline Frame restrict_to_block(const Frame& f, std::span<const Index> block) {
  std::vector<Index> members(block.begin(), block.end());
  std::sort(members.begin(), members.end());
  std::map<Index, Index> renum;
  std::vector<FiniteGroup> groups;
  std::vector<std::string> labels;
  for (Index x : members) {
    renum[x] = groups.size();
    groups.push_back(f.group(x));
    labels.push_back(f.label(x));
  }
  std::vector<IsoRecord> isos;
  for (const auto& [key, rec] : f.stored())
    if (renum.count(key.first) && renum.count(key.second)) {
      IsoRecord r = rec;
      r.x = renum[key.first];
      r.y = renum[key.second];
      isos.push_back(std::move(r));
    }
  std::vector<std::vector<Index>> blocks;
  if (!groups.empty()) {
    blocks.emplace_back();
    for (Index i = 0; i < groups.size(); ++i) blocks.back().push_back(i);
  }
  Frame out(std::move(groups), std::move(labels), std::move(blocks), std::move(isos));
  for (const auto& [key, rec] : f.explicit_records())
    if (renum.count(key.first) && renum.count(key.second)) {
      IsoRecord r = rec;
      r.x = renum[key.first];
      r.y = renum[key.second];
      out = out.with_explicit_iso(std::move(r));
    }
  return out;
}

}  // namespace gra
