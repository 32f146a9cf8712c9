#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gra/frame.hpp"

namespace gra {

// One failed frame condition with its witness indices (1, 2 or 3 of them)
// and the differing sets or coset images.
struct Violation {
  int condition = 0;  // 1..4
  std::vector<Index> where;
  std::string detail;

  friend bool operator<(const Violation& a, const Violation& b) {
    return std::tie(a.where, a.condition, a.detail) < std::tie(b.where, b.condition, b.detail);
  }
  friend bool operator==(const Violation& a, const Violation& b) {
    return a.condition == b.condition && a.where == b.where && a.detail == b.detail;
  }
};

inline std::string_view roman(int condition) {
  switch (condition) {
    case 1: return "i";
    case 2: return "ii";
    case 3: return "iii";
    case 4: return "iv";
  }
  return "?";
}

enum class CheckMode { full, reduced };

struct FrameReport {
  CheckMode mode = CheckMode::full;
  std::vector<Violation> violations;
  std::size_t checks = 0;

  bool passed() const { return violations.empty(); }

  void print(std::ostream& out, const Frame& f) const {
    out << (mode == CheckMode::full ? "full" : "reduced") << " frame check: "
        << (passed() ? "PASS" : "FAIL") << " (" << checks << " checks, "
        << violations.size() << " violations)\n";
    for (const auto& v : violations) {
      out << "condition (" << roman(v.condition) << ") at (";
      for (std::size_t i = 0; i < v.where.size(); ++i)
        out << (i ? "," : "") << f.label(v.where[i]);
      out << "): " << v.detail << "\n";
    }
  }
};

namespace detail {

inline void check_identity_condition(const Frame& f, Index x, FrameReport& rep) {
  ++rep.checks;
  const IsoRecord r = resolve_iso(f, x, x);
  const std::size_t order = f.group(x).order();
  std::ostringstream msg;
  if (r.count() != order) {
    msg << "kappa_xx = " << r.count() << " differs from the order " << order;
  } else if (r.h.subgroup().size() != 1 || r.k.subgroup().size() != 1) {
    msg << "phi_xx is defined modulo " << r.h.subgroup() << " and " << r.k.subgroup()
        << ", not {0}";
  } else {
    for (std::size_t g = 0; g < r.count(); ++g)
      if (r.h.coset(g) != r.k.coset(g)) {
        msg << "phi_xx maps " << r.h.coset(g) << " to " << r.k.coset(g);
        break;
      }
  }
  if (!msg.str().empty()) rep.violations.push_back({1, {x}, msg.str()});
}

inline void check_converse_condition(const Frame& f, Index x, Index y, FrameReport& rep) {
  ++rep.checks;
  const IsoRecord fwd = resolve_iso(f, x, y);
  const IsoRecord back = resolve_iso(f, y, x);
  std::ostringstream msg;
  if (back.h.subgroup() != fwd.k.subgroup() || back.k.subgroup() != fwd.h.subgroup()) {
    msg << "phi_yx is a map G_y/" << back.h.subgroup() << " -> G_x/" << back.k.subgroup()
        << " but phi_xy^-1 is G_y/" << fwd.k.subgroup() << " -> G_x/" << fwd.h.subgroup();
  } else {
    for (std::size_t g = 0; g < back.count(); ++g) {
      auto d = fwd.k.find(back.h.coset(g));
      if (!d || fwd.h.coset(*d) != back.k.coset(g)) {
        msg << "phi_yx maps " << back.h.coset(g) << " to " << back.k.coset(g)
            << " but phi_xy^-1 maps it to " << (d ? fwd.h.coset(*d).to_string() : "?");
        break;
      }
    }
  }
  if (!msg.str().empty()) rep.violations.push_back({2, {x, y}, msg.str()});
}

// phi_xy[H_xy * H_xz] == K_xy * H_yz
inline void check_image_condition(const Frame& f, Index x, Index y, Index z,
                                  FrameReport& rep) {
  ++rep.checks;
  const IsoRecord xy = resolve_iso(f, x, y);
  const IsoRecord xz = resolve_iso(f, x, z);
  const IsoRecord yz = resolve_iso(f, y, z);
  const ElementSet lhs_arg = complex_product(f.group(x), xy.h.subgroup(), xz.h.subgroup());
  const ElementSet rhs = complex_product(f.group(y), xy.k.subgroup(), yz.h.subgroup());
  auto lhs = xy.image(lhs_arg);
  if (!lhs || *lhs != rhs) {
    std::ostringstream msg;
    msg << "phi_xy[H_xy*H_xz] = " << (lhs ? lhs->to_string() : "undefined")
        << " but K_xy*H_yz = " << rhs;
    rep.violations.push_back({3, {x, y, z}, msg.str()});
  }
}

// phi_yz[K_xy * H_yz] == K_xz * K_yz  (second equation of the reduced form)
inline void check_second_image_condition(const Frame& f, Index x, Index y, Index z,
                                         FrameReport& rep) {
  ++rep.checks;
  const IsoRecord xy = resolve_iso(f, x, y);
  const IsoRecord xz = resolve_iso(f, x, z);
  const IsoRecord yz = resolve_iso(f, y, z);
  const ElementSet arg = complex_product(f.group(y), xy.k.subgroup(), yz.h.subgroup());
  const ElementSet rhs = complex_product(f.group(z), xz.k.subgroup(), yz.k.subgroup());
  auto lhs = yz.image(arg);
  if (!lhs || *lhs != rhs) {
    std::ostringstream msg;
    msg << "phi_yz[K_xy*H_yz] = " << (lhs ? lhs->to_string() : "undefined")
        << " but K_xz*K_yz = " << rhs;
    rep.violations.push_back({3, {x, y, z}, msg.str()});
  }
}

inline void check_induced_condition(const Frame& f, Index x, Index y, Index z,
                                    FrameReport& rep) {
  ++rep.checks;
  const InducedIso ind = induced_iso(f, x, y, z);
  if (ind.composition_matches()) return;
  std::ostringstream msg;
  if (!ind.xz_map) {
    msg << "phi_xz induces no map G_x/" << ind.m.subgroup() << " -> G_z/" << ind.n.subgroup();
  } else {
    const IsoRecord xz = resolve_iso(f, x, z);
    for (std::size_t i = 0; i < ind.xz_map->size(); ++i)
      if ((*ind.xz_map)[i] != i) {
        msg << "on coset " << ind.m.coset(i) << " the composite gives " << ind.n.coset(i)
            << " but phi_xz gives " << ind.n.coset((*ind.xz_map)[i]);
        break;
      }
  }
  rep.violations.push_back({4, {x, y, z}, msg.str()});
}

inline void finish(FrameReport& rep) {
  std::sort(rep.violations.begin(), rep.violations.end());
}

}  // namespace detail

/// Checks every frame condition over all related pairs and triples.
inline FrameReport check_frame_full(const Frame& f) {
  FrameReport rep;
  rep.mode = CheckMode::full;
  for (Index x = 0; x < f.size(); ++x) detail::check_identity_condition(f, x, rep);
  for (const auto& b : f.blocks())
    for (Index x : b)
      for (Index y : b) detail::check_converse_condition(f, x, y, rep);
  for (const auto& b : f.blocks())
    for (Index x : b)
      for (Index y : b)
        for (Index z : b) {
          detail::check_image_condition(f, x, y, z, rep);
          detail::check_induced_condition(f, x, y, z, rep);
        }
  detail::finish(rep);
  return rep;
}

/// The reduced check: (i) for every index, (ii) for x<y, and the two image
/// equations plus (iv) only for x<y<z. Agrees with check_frame_full.
inline FrameReport check_frame_reduced(const Frame& f) {
  FrameReport rep;
  rep.mode = CheckMode::reduced;
  for (Index x = 0; x < f.size(); ++x) detail::check_identity_condition(f, x, rep);
  for (const auto& b : f.blocks())
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        detail::check_converse_condition(f, b[i], b[j], rep);
  for (const auto& b : f.blocks())
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        for (std::size_t k = j + 1; k < b.size(); ++k) {
          detail::check_image_condition(f, b[i], b[j], b[k], rep);
          detail::check_second_image_condition(f, b[i], b[j], b[k], rep);
          detail::check_induced_condition(f, b[i], b[j], b[k], rep);
        }
  detail::finish(rep);
  return rep;
}

}  // namespace gra
