#pragma once

#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gra/error.hpp"
#include "gra/frame.hpp"
#include "gra/frame_check.hpp"
#include "gra/group.hpp"
#include "gra/oracle.hpp"

namespace gra {

// An atom ((x,y),alpha): the relation R_xy,alpha.
struct AtomIndex {
  Index x = 0;
  Index y = 0;
  std::size_t alpha = 0;

  friend auto operator<=>(const AtomIndex&, const AtomIndex&) = default;
  friend bool operator==(const AtomIndex&, const AtomIndex&) = default;
};

using AtomId = std::size_t;

inline BaseSpace base_space(const Frame& f) {
  std::vector<std::size_t> orders, blocks;
  for (Index x = 0; x < f.size(); ++x) {
    orders.push_back(f.group(x).order());
    blocks.push_back(f.block_of(x));
  }
  return BaseSpace(std::move(orders), std::move(blocks));
}

/// R_xy,alpha = U_g H_g x (K_g * K_alpha), materialized from a resolved
/// record. Works on any group pair, framed or not.
inline ConcreteRelation atom_relation(const Frame& f, const BaseSpace& u, const IsoRecord& rec,
                                      std::size_t alpha) {
  const FiniteGroup& gy = f.group(rec.y);
  ConcreteRelation out(u.size());
  for (std::size_t g = 0; g < rec.count(); ++g) {
    const ElementSet targets = complex_product(gy, rec.k.coset(g), rec.k.coset(alpha));
    rec.h.coset(g).for_each([&](Element a) {
      targets.for_each([&](Element b) { out.insert(u.id(rec.x, a), u.id(rec.y, b)); });
    });
  }
  return out;
}

inline ConcreteRelation atom_relation(const Frame& f, const BaseSpace& u, AtomIndex a) {
  return atom_relation(f, u, resolve_iso(f, a.x, a.y), a.alpha);
}

// A set of atoms of one algebra, standing for the union of their relations.
class FrameElement {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  FrameElement() = default;
  FrameElement(std::uint64_t owner, std::size_t atom_count) : owner_(owner), bits_(atom_count) {}

  std::uint64_t owner() const { return owner_; }
  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(AtomId a) const { return a < bits_.size() && bits_.test(a); }
  void insert(AtomId a) { bits_.set(a); }
  const Bits& bits() const { return bits_; }

  std::vector<AtomId> atoms() const {
    std::vector<AtomId> out;
    for (auto p = bits_.find_first(); p != Bits::npos; p = bits_.find_next(p)) out.push_back(p);
    return out;
  }

  friend bool operator==(const FrameElement& a, const FrameElement& b) {
    return a.owner_ == b.owner_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const FrameElement& a, const FrameElement& b) { return !(a == b); }

 private:
  friend class Algebra;
  std::uint64_t owner_ = 0;
  Bits bits_;
};

enum class FastPath { none, left_square, right_square, round_trip };

struct MeasureEntry {
  Index x = 0;
  AtomId subidentity = 0;
  std::size_t measure = 0;
  std::size_t functional_atoms = 0;
  bool all_bijections = false;
};

struct MeasureReport {
  std::vector<MeasureEntry> entries;
  bool pair_dense = false;
  bool singleton_dense = false;
};

/// The full group relation algebra of a group frame. Elements are atom-index
/// sets; converse and composition are computed by coset arithmetic.
class Algebra {
 public:
  /// Runs the reduced frame check and throws ErrorKind::not_a_frame (with
  /// the report in the message) if `f` is not a group frame.
  static Algebra from_frame(const Frame& f) {
    FrameReport rep = check_frame_reduced(f);
    if (!rep.passed()) {
      std::ostringstream msg;
      msg << "frame must pass the frame check first\n";
      rep.print(msg, f);
      throw Error(ErrorKind::not_a_frame, msg.str());
    }
    return Algebra(f, std::move(rep));
  }

  const Frame& frame() const { return s_->frame; }
  const FrameReport& report() const { return s_->report; }
  const BaseSpace& space() const { return s_->space; }

  std::size_t atom_count() const { return s_->atoms.size(); }
  const std::vector<AtomIndex>& atoms() const { return s_->atoms; }
  const AtomIndex& atom(AtomId id) const { return s_->atoms.at(id); }

  AtomId id_of(AtomIndex a) const {
    if (!frame().related(a.x, a.y))
      throw Error(ErrorKind::invalid_atom, "atom indices are not related");
    const IsoRecord& r = record(a.x, a.y);
    if (a.alpha >= r.count())
      throw Error(ErrorKind::invalid_atom, "coset index " + std::to_string(a.alpha) +
                                               " out of range (kappa = " +
                                               std::to_string(r.count()) + ")");
    return s_->first_atom[a.x * frame().size() + a.y] + a.alpha;
  }

  // Resolved phi_xy for a related pair.
  const IsoRecord& record(Index x, Index y) const {
    if (!frame().related(x, y)) throw Error(ErrorKind::not_related, "indices are not related");
    return *s_->records[x * frame().size() + y];
  }

  std::size_t kappa(Index x, Index y) const { return record(x, y).count(); }

  // Atoms of the block-rectangle G_x x G_y.
  std::vector<AtomId> atoms_of(Index x, Index y) const {
    std::vector<AtomId> out;
    const AtomId first = id_of({x, y, 0});
    for (std::size_t a = 0; a < kappa(x, y); ++a) out.push_back(first + a);
    return out;
  }

  // --- Boolean structure ---------------------------------------------------

  FrameElement empty_element() const { return FrameElement(s_->id, atom_count()); }
  FrameElement unit() const {
    FrameElement e = empty_element();
    e.bits_.set();
    return e;
  }
  FrameElement element(std::initializer_list<AtomId> ids) const {
    FrameElement e = empty_element();
    for (auto a : ids) e.insert(checked(a));
    return e;
  }
  template <typename Range>
  FrameElement element_of(const Range& ids) const {
    FrameElement e = empty_element();
    for (auto a : ids) e.insert(checked(a));
    return e;
  }

  FrameElement unite(const FrameElement& a, const FrameElement& b) const {
    mine(a);
    mine(b);
    FrameElement out = a;
    out.bits_ |= b.bits_;
    return out;
  }
  FrameElement intersect(const FrameElement& a, const FrameElement& b) const {
    mine(a);
    mine(b);
    FrameElement out = a;
    out.bits_ &= b.bits_;
    return out;
  }
  FrameElement complement(const FrameElement& a) const {
    mine(a);
    FrameElement out = a;
    out.bits_.flip();
    return out;
  }

  FrameElement identity_element() const {
    FrameElement e = empty_element();
    for (Index x = 0; x < frame().size(); ++x) e.insert(id_of({x, x, 0}));
    return e;
  }

  // --- Symbolic operations on atoms ---------------------------------------

  /// The converse of R_xy,alpha is R_yx,beta with H_xy,alpha^-1 = H_xy,beta
  /// (= K_yx,beta).
  AtomId converse_atom(AtomId a) const { return s_->converse.at(a); }

  /// R_xy,alpha ; R_wz,beta: empty unless y == w, otherwise the atoms
  /// R_xz,g with H_xz,g inside phi_xy^-1[K_xy,alpha * H_yz,beta].
  FrameElement compose_atoms(AtomId a, AtomId b) const {
    const AtomIndex& l = atom(a);
    const AtomIndex& r = atom(b);
    FrameElement out = empty_element();
    if (l.y != r.x) return out;
    const IsoRecord& xy = record(l.x, l.y);
    const IsoRecord& yz = record(r.x, r.y);
    const IsoRecord& xz = record(l.x, r.y);
    const ElementSet prod =
        complex_product(frame().group(l.y), xy.k.coset(l.alpha), yz.h.coset(r.alpha));
    ElementSet pre(frame().group(l.x).order());
    for (std::size_t d = 0; d < xy.count(); ++d)
      if (prod.contains(xy.k.representative(d))) pre |= xy.h.coset(d);
    const AtomId first = id_of({l.x, r.y, 0});
    for (std::size_t g = 0; g < xz.count(); ++g)
      if (xz.h.coset(g).subset_of(pre)) out.insert(first + g);
    return out;
  }

  FastPath fast_path(AtomId a, AtomId b) const {
    const AtomIndex& l = atom(a);
    const AtomIndex& r = atom(b);
    if (l.y != r.x) return FastPath::none;
    if (l.x == l.y) return FastPath::left_square;
    if (r.x == r.y) return FastPath::right_square;
    if (r.y == l.x) return FastPath::round_trip;
    return FastPath::none;
  }

  /// Closed forms for compositions that involve a square pair (x,x) or the
  /// round trip (x,y),(y,x). Falls back to compose_atoms otherwise.
  FrameElement fast_compose_subidentity(AtomId a, AtomId b) const {
    const AtomIndex& l = atom(a);
    const AtomIndex& r = atom(b);
    FrameElement out = empty_element();
    switch (fast_path(a, b)) {
      case FastPath::left_square: {
        // R_xx,f ; R_xy,beta = R_xy,g with H_xy,g = f * H_xy,beta
        const IsoRecord& xy = record(r.x, r.y);
        const Element f = record(l.x, l.x).h.representative(l.alpha);
        const Element h = frame().group(l.x).op(f, xy.h.representative(r.alpha));
        out.insert(id_of({r.x, r.y, xy.h.index_of(h)}));
        return out;
      }
      case FastPath::right_square: {
        // R_xy,alpha ; R_yy,g = R_xy,c with K_xy,c = K_xy,alpha * g
        const IsoRecord& xy = record(l.x, l.y);
        const Element g = record(r.x, r.x).h.representative(r.alpha);
        const Element k = frame().group(l.y).op(xy.k.representative(l.alpha), g);
        out.insert(id_of({l.x, l.y, xy.k.index_of(k)}));
        return out;
      }
      case FastPath::round_trip: {
        // R_xy,alpha ; R_yx,beta = U { R_xx,f : f in H_xy,alpha * H_xy,beta }
        // (K_yx,beta is H_xy,beta under the usual enumeration.)
        const IsoRecord& xy = record(l.x, l.y);
        const IsoRecord& yx = record(r.x, r.y);
        const IsoRecord& xx = record(l.x, l.x);
        const ElementSet prod =
            complex_product(frame().group(l.x), xy.h.coset(l.alpha), yx.k.coset(r.alpha));
        prod.for_each([&](Element f) { out.insert(id_of({l.x, l.x, xx.h.index_of(f)})); });
        return out;
      }
      case FastPath::none:
        break;
    }
    return compose_atoms(a, b);
  }

  // R_xx,f^-1 = R_xx,f^-1 for square atoms; general rule otherwise.
  AtomId fast_converse_subidentity(AtomId a) const {
    const AtomIndex& at = atom(a);
    if (at.x != at.y) return converse_atom(a);
    const IsoRecord& xx = record(at.x, at.x);
    const Element f = xx.h.representative(at.alpha);
    return id_of({at.x, at.x, xx.h.index_of(frame().group(at.x).inverse(f))});
  }

  // --- Operations on elements ----------------------------------------------

  FrameElement converse(const FrameElement& e) const {
    mine(e);
    FrameElement out = empty_element();
    for (AtomId a : e.atoms()) out.insert(converse_atom(a));
    return out;
  }

  FrameElement compose(const FrameElement& l, const FrameElement& r) const {
    mine(l);
    mine(r);
    FrameElement out = empty_element();
    const auto ra = r.atoms();
    for (AtomId a : l.atoms())
      for (AtomId b : ra) out.bits_ |= compose_atoms(a, b).bits_;
    return out;
  }

  // --- Concrete relations ---------------------------------------------------

  ConcreteRelation atom_relation(AtomId a) const {
    const AtomIndex& at = atom(a);
    return gra::atom_relation(frame(), space(), record(at.x, at.y), at.alpha);
  }

  ConcreteRelation materialize(const FrameElement& e) const {
    mine(e);
    ConcreteRelation out(space().size());
    for (AtomId a : e.atoms()) out |= atom_relation(a);
    return out;
  }

  // --- Measure, simplicity, decomposition ----------------------------------

  MeasureReport measure_report() const {
    MeasureReport rep;
    rep.pair_dense = true;
    rep.singleton_dense = true;
    for (Index x = 0; x < frame().size(); ++x) {
      MeasureEntry m;
      m.x = x;
      m.subidentity = id_of({x, x, 0});
      const std::size_t order = frame().group(x).order();
      m.measure = order;
      m.functional_atoms = kappa(x, x);
      std::vector<GlobalId> dom;
      for (Element e = 0; e < order; ++e) dom.push_back(space().id(x, e));
      m.all_bijections = true;
      for (AtomId a : atoms_of(x, x))
        if (!atom_relation(a).is_bijection_between(dom, dom)) m.all_bijections = false;
      rep.pair_dense = rep.pair_dense && order <= 2;
      rep.singleton_dense = rep.singleton_dense && order == 1;
      rep.entries.push_back(m);
    }
    return rep;
  }

  bool is_simple() const { return !frame().empty() && frame().blocks().size() == 1; }

  std::vector<Frame> decompose() const {
    std::vector<Frame> out;
    for (const auto& b : frame().blocks()) out.push_back(restrict_to_block(frame(), b));
    return out;
  }

  // --- Formatting -----------------------------------------------------------

  std::string format(AtomId a) const {
    const AtomIndex& at = atom(a);
    std::ostringstream out;
    out << "((" << frame().label(at.x) << "," << frame().label(at.y) << ")," << at.alpha << ")";
    return out.str();
  }

  // Space-separated atoms, or "{}" for the empty element.
  std::string format(const FrameElement& e) const {
    mine(e);
    if (e.empty()) return "{}";
    std::string out;
    for (AtomId a : e.atoms()) {
      if (!out.empty()) out += ' ';
      out += format(a);
    }
    return out;
  }

 private:
  struct State {
    std::uint64_t id = 0;
    Frame frame;
    FrameReport report;
    BaseSpace space;
    std::vector<std::optional<IsoRecord>> records;  // m*m, related pairs only
    std::vector<AtomIndex> atoms;
    std::vector<AtomId> first_atom;  // m*m
    std::vector<AtomId> converse;
  };

  Algebra(const Frame& f, FrameReport rep) {
    static std::atomic<std::uint64_t> next_id{1};
    auto s = std::make_shared<State>();
    s->id = next_id++;
    s->frame = f;
    s->report = std::move(rep);
    s->space = base_space(f);
    const std::size_t m = f.size();
    s->records.resize(m * m);
    s->first_atom.assign(m * m, 0);
    for (Index x = 0; x < m; ++x)
      for (Index y = 0; y < m; ++y) {
        if (!f.related(x, y)) continue;
        s->records[x * m + y] = resolve_iso(f, x, y);
        s->first_atom[x * m + y] = s->atoms.size();
        for (std::size_t a = 0; a < s->records[x * m + y]->count(); ++a)
          s->atoms.push_back({x, y, a});
      }
    s_ = std::move(s);

    std::vector<AtomId> conv(atom_count());
    for (AtomId a = 0; a < atom_count(); ++a) {
      const AtomIndex& at = atom(a);
      const IsoRecord& xy = record(at.x, at.y);
      // R_xy,a^-1 = R_yx,b where K_yx,b = H_xy,a^-1.
      auto beta = record(at.y, at.x).k.find(
          complex_inverse(frame().group(at.x), xy.h.coset(at.alpha)));
      if (!beta) throw Error(ErrorKind::not_a_frame, "inverse of a coset is not a coset");
      conv[a] = id_of({at.y, at.x, *beta});
    }
    std::const_pointer_cast<State>(s_)->converse = std::move(conv);
  }

  AtomId checked(AtomId a) const {
    if (a >= atom_count()) throw Error(ErrorKind::invalid_atom, "atom id out of range");
    return a;
  }

  void mine(const FrameElement& e) const {
    if (e.owner_ != s_->id || e.universe() != atom_count())
      throw Error(ErrorKind::frame_mismatch, "element belongs to a different algebra");
  }

  std::shared_ptr<const State> s_;
};

}  // namespace gra
