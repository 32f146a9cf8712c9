#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gra/error.hpp"
#include "gra/frame.hpp"
#include "gra/frame_check.hpp"
#include "gra/group.hpp"

namespace gra {

namespace detail {

inline void require_frame(const Frame& f, const char* what) {
  FrameReport rep = check_frame_reduced(f);
  if (!rep.passed()) {
    std::ostringstream msg;
    msg << what << " produced a group pair that is not a frame\n";
    rep.print(msg, f);
    throw Error(ErrorKind::not_a_frame, msg.str());
  }
}

inline std::vector<Index> identity_map(std::size_t n) {
  std::vector<Index> m(n);
  std::iota(m.begin(), m.end(), Index{0});
  return m;
}

}  // namespace detail

// The complex algebra of G as a one-index frame: phi_00 is the identity of
// G/{e}, so the atoms are the Cayley relations R_g.
inline Frame build_complex_algebra_frame(const FiniteGroup& g, std::string label = "0") {
  return Frame({g}, {std::move(label)}, {{0}}, {});
}

// One equivalence class of a power frame: `copies` disjoint copies of M,
// related by the natural isomorphisms between the copies of M/N.
struct PowerBlock {
  FiniteGroup group;
  ElementSet normal;
  std::size_t copies = 1;
};

/// Power frame with a group and normal subgroup per block. Indices are
/// numbered consecutively block by block. The result is checked.
inline Frame build_power_frame(const std::vector<PowerBlock>& parts) {
  std::vector<FiniteGroup> groups;
  std::vector<std::vector<Index>> blocks;
  std::vector<IsoRecord> isos;
  for (const auto& b : parts) {
    if (b.copies == 0) throw Error(ErrorKind::invalid_frame, "power block needs at least one copy");
    if (!is_normal(b.group, b.normal))
      throw Error(ErrorKind::not_normal,
                  b.normal.to_string() + " is not normal in " + b.group.label());
    const std::size_t kappa = enumerate_cosets(b.group, b.normal).count();
    const auto map = detail::identity_map(kappa);
    std::vector<Index> members;
    for (std::size_t c = 0; c < b.copies; ++c) {
      members.push_back(groups.size());
      groups.push_back(b.group);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        isos.push_back(make_iso_record(members[i], b.group, b.normal, members[j], b.group,
                                       b.normal, map));
    blocks.push_back(std::move(members));
  }
  Frame f(std::move(groups), {}, std::move(blocks), std::move(isos));
  detail::require_frame(f, "power construction");
  return f;
}

/// Power frame on indices 0..index_count-1 with the given partition, every
/// copy of M related by the natural isomorphism of M/N.
inline Frame build_power_frame(const FiniteGroup& m, const ElementSet& n,
                               std::size_t index_count, std::vector<std::vector<Index>> blocks) {
  if (!is_normal(m, n))
    throw Error(ErrorKind::not_normal, n.to_string() + " is not normal in " + m.label());
  std::vector<FiniteGroup> groups(index_count, m);
  const std::size_t kappa = enumerate_cosets(m, n).count();
  const auto map = detail::identity_map(kappa);
  std::vector<IsoRecord> isos;
  for (auto& b : blocks) {
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        isos.push_back(make_iso_record(b[i], m, n, b[j], m, n, map));
  }
  Frame f(std::move(groups), {}, std::move(blocks), std::move(isos));
  detail::require_frame(f, "power construction");
  return f;
}

// A kappa matrix: kappa[x][y] = 0 means x and y are unrelated.
using KappaMatrix = std::vector<std::vector<std::size_t>>;

struct KappaViolation {
  int condition = 0;  // 1..4, or 0 for a malformed relation
  std::vector<Index> where;
  std::string message;
};

/// The divisor conditions on kappa for cyclic groups of the given orders:
/// (i) kappa_xy divides both orders, (ii) kappa_xx is the order of G_x,
/// (iii) symmetry, (iv) gcd(k_xy,k_yz) = gcd(k_xy,k_xz) = gcd(k_xz,k_yz).
/// Returns the first violation found, conditions in that order.
inline std::optional<KappaViolation> check_cyclic_conditions(
    const std::vector<std::size_t>& orders, const KappaMatrix& kappa) {
  const std::size_t m = orders.size();
  if (kappa.size() != m)
    return KappaViolation{0, {}, "kappa matrix has " + std::to_string(kappa.size()) +
                                     " rows, expected " + std::to_string(m)};
  for (Index x = 0; x < m; ++x)
    if (kappa[x].size() != m)
      return KappaViolation{0, {x}, "kappa row " + std::to_string(x) + " has " +
                                        std::to_string(kappa[x].size()) + " entries"};
  for (Index x = 0; x < m; ++x)
    if (orders[x] == 0) return KappaViolation{0, {x}, "group order must be positive"};

  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y) {
      const auto k = kappa[x][y];
      if (k == 0) continue;
      if (orders[x] % k != 0)
        return KappaViolation{1, {x, y}, std::to_string(k) + " does not divide " +
                                             std::to_string(orders[x])};
      if (orders[y] % k != 0)
        return KappaViolation{1, {x, y}, std::to_string(k) + " does not divide " +
                                             std::to_string(orders[y])};
    }
  for (Index x = 0; x < m; ++x)
    if (kappa[x][x] != orders[x])
      return KappaViolation{2, {x}, "kappa_xx = " + std::to_string(kappa[x][x]) +
                                        " is not the order " + std::to_string(orders[x])};
  for (Index x = 0; x < m; ++x)
    for (Index y = x + 1; y < m; ++y)
      if (kappa[x][y] != kappa[y][x])
        return KappaViolation{3, {x, y}, "kappa_xy = " + std::to_string(kappa[x][y]) +
                                             " but kappa_yx = " + std::to_string(kappa[y][x])};
  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y)
      for (Index z = 0; z < m; ++z)
        if (kappa[x][y] && kappa[y][z] && !kappa[x][z])
          return KappaViolation{0, {x, y, z}, "related pairs are not transitive"};
  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y)
      for (Index z = 0; z < m; ++z) {
        if (!kappa[x][y] || !kappa[y][z]) continue;
        const auto a = std::gcd(kappa[x][y], kappa[y][z]);
        const auto b = std::gcd(kappa[x][y], kappa[x][z]);
        const auto c = std::gcd(kappa[x][z], kappa[y][z]);
        if (a != b || b != c)
          return KappaViolation{4, {x, y, z}, "gcds " + std::to_string(a) + ", " +
                                                  std::to_string(b) + ", " + std::to_string(c) +
                                                  " are not all equal"};
      }
  return std::nullopt;
}

inline std::string describe(const KappaViolation& v) {
  static const char* names[] = {"relation", "condition (i)", "condition (ii)", "condition (iii)",
                                "condition (iv)"};
  return std::string(names[v.condition]) + ": " + v.message;
}

// The subgroup of index k in Z_n: the multiples of k.
inline ElementSet cyclic_subgroup_of_index(std::size_t n, std::size_t k) {
  ElementSet s(n);
  for (std::size_t e = 0; e < n; e += k) s.insert(static_cast<Element>(e));
  return s;
}

struct CyclicOptions {
  // When false, only divisibility of the stored kappa_xy (x<y) is required
  // and the result is not frame-checked. Used to build corrupted inputs.
  bool validate = true;
};

/// Cyclic groups Z_{orders[x]} related wherever kappa is nonzero; phi_xy
/// maps the generator 1 of G_x/H_xy to the generator 1 of G_y/K_xy.
/// Throws ErrorKind::condition_violation naming the failing condition.
inline Frame build_cyclic_frame(const std::vector<std::size_t>& orders, const KappaMatrix& kappa,
                                CyclicOptions opts = {}) {
  const std::size_t m = orders.size();
  if (opts.validate) {
    if (auto v = check_cyclic_conditions(orders, kappa))
      throw Error(ErrorKind::condition_violation, describe(*v));
  } else if (kappa.size() != m) {
    throw Error(ErrorKind::condition_violation, "kappa matrix has the wrong size");
  }

  std::vector<FiniteGroup> groups;
  for (auto n : orders) groups.push_back(make_cyclic(n));

  std::vector<Index> block_of(m, m);
  std::vector<std::vector<Index>> blocks;
  for (Index x = 0; x < m; ++x) {
    if (block_of[x] != m) continue;
    block_of[x] = blocks.size();
    blocks.push_back({x});
    for (Index y = x + 1; y < m; ++y)
      if (kappa[x][y] && block_of[y] == m) {
        block_of[y] = block_of[x];
        blocks.back().push_back(y);
      }
  }

  std::vector<IsoRecord> isos;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        const Index x = b[i], y = b[j];
        const std::size_t k = kappa[x][y];
        if (k == 0 || orders[x] % k || orders[y] % k)
          throw Error(ErrorKind::condition_violation,
                      "kappa_" + std::to_string(x) + std::to_string(y) + " = " +
                          std::to_string(k) + " cannot index a subgroup of both groups");
        // Canonical coset c of either subgroup has least element c, so
        // generator-to-generator is the identity on coset indices.
        isos.push_back(make_iso_record(x, groups[x], cyclic_subgroup_of_index(orders[x], k), y,
                                       groups[y], cyclic_subgroup_of_index(orders[y], k),
                                       detail::identity_map(k)));
      }
  Frame f(std::move(groups), {}, std::move(blocks), std::move(isos));
  if (opts.validate) detail::require_frame(f, "cyclic construction");
  return f;
}

}  // namespace gra
