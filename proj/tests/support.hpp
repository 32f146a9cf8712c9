#pragma once

// Frame generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gra/gra.hpp"

namespace gra::testing {

using Rng = std::mt19937_64;

inline std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct CyclicInput {
  std::vector<std::size_t> orders;
  KappaMatrix kappa;
};

struct RandomCyclicOptions {
  std::size_t max_groups = 4;
  std::size_t max_order = 24;
  std::size_t min_blocks = 1;  // forced when there are enough groups
};

/// Random orders, a random partition and a kappa matrix drawn by rejection
/// until the divisor conditions hold. Falls back to one common divisor per
/// block, which satisfies them trivially.
inline CyclicInput random_cyclic_input(Rng& rng, const RandomCyclicOptions& o = {}) {
  CyclicInput s;
  const std::size_t m = uniform(rng, std::max<std::size_t>(1, o.min_blocks), o.max_groups);
  for (std::size_t x = 0; x < m; ++x) s.orders.push_back(uniform(rng, 1, o.max_order));

  std::vector<std::size_t> block(m);
  const std::size_t nblocks = uniform(rng, std::min(o.min_blocks, m), m);
  for (std::size_t x = 0; x < m; ++x) block[x] = x < nblocks ? x : uniform(rng, 0, nblocks - 1);
  std::shuffle(block.begin(), block.end(), rng);

  s.kappa.assign(m, std::vector<std::size_t>(m, 0));
  for (std::size_t x = 0; x < m; ++x) s.kappa[x][x] = s.orders[x];
  for (int attempt = 0; attempt < 200; ++attempt) {
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = x + 1; y < m; ++y) {
        const std::size_t k =
            block[x] == block[y] ? pick(rng, divisors(std::gcd(s.orders[x], s.orders[y]))) : 0;
        s.kappa[x][y] = s.kappa[y][x] = k;
      }
    if (!check_cyclic_conditions(s.orders, s.kappa)) return s;
  }
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::size_t g = 0;
    for (std::size_t x = 0; x < m; ++x)
      if (block[x] == b) g = std::gcd(g, s.orders[x]);
    const std::size_t k = pick(rng, divisors(g));
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = x + 1; y < m; ++y)
        if (block[x] == b && block[y] == b) s.kappa[x][y] = s.kappa[y][x] = k;
  }
  return s;
}

inline Frame random_cyclic_frame(Rng& rng, const RandomCyclicOptions& o = {}) {
  const CyclicInput s = random_cyclic_input(rng, o);
  return build_cyclic_frame(s.orders, s.kappa);
}

// S3 as permutations of {0,1,2} composed left to right; 1,2 are the
// rotations and 3,4,5 the reflections.
inline FiniteGroup s3_group() {
  const std::vector<std::array<int, 3>> p{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                          {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::vector<Element>> r(6, std::vector<Element>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = p[j][p[i][k]];
      r[i][j] = static_cast<Element>(std::find(p.begin(), p.end(), c) - p.begin());
    }
  return validate_table(r, "S3");
}

inline FiniteGroup klein_group() {
  std::vector<std::vector<Element>> r(4, std::vector<Element>(4));
  for (Element i = 0; i < 4; ++i)
    for (Element j = 0; j < 4; ++j) r[i][j] = i ^ j;
  return validate_table(r, "V");
}

inline Frame running_example() { return build_cyclic_frame({6, 9}, {{6, 3}, {3, 9}}); }

// Replace the stored phi_xy of a cyclic pair by c -> u*c on coset indices.
inline Frame twist_cyclic_map(const Frame& f, Index x, Index y, std::size_t u) {
  const IsoRecord& old = *f.stored_record(x, y);
  const std::size_t k = old.count();
  std::vector<Index> map(k);
  for (std::size_t c = 0; c < k; ++c) map[c] = (u * c) % k;
  return f.with_explicit_iso(make_iso_record(x, f.group(x), old.h.subgroup(), y, f.group(y),
                                             old.k.subgroup(), map));
}

// Three or four cyclic groups sharing one kappa k >= 3, with phi_01 twisted by
// a unit u != 1: a pair of quotient isomorphisms that cannot compose right.
inline Frame corrupt_by_twist(Rng& rng) {
  const std::size_t k = pick(rng, std::vector<std::size_t>{3, 4, 5, 6});
  const std::size_t m = uniform(rng, 3, 4);
  std::vector<std::size_t> orders;
  for (std::size_t x = 0; x < m; ++x) orders.push_back(k * uniform(rng, 1, 3));
  KappaMatrix kappa(m, std::vector<std::size_t>(m, k));
  for (std::size_t x = 0; x < m; ++x) kappa[x][x] = orders[x];
  const Frame f = build_cyclic_frame(orders, kappa);
  std::vector<std::size_t> units;
  for (std::size_t u = 2; u < k; ++u)
    if (std::gcd(u, k) == 1) units.push_back(u);
  return twist_cyclic_map(f, 0, 1, pick(rng, units));
}

// A kappa matrix breaking the gcd condition, built without validation.
inline Frame corrupt_by_kappa(Rng& rng) {
  // gcd(k01,k12)=gcd(2,6)=2 but gcd(k01,k02)=gcd(2,3)=1
  const std::size_t scale = uniform(rng, 1, 2);
  const std::vector<std::size_t> orders{6 * scale, 6, 6 * uniform(rng, 1, 2)};
  const KappaMatrix kappa{{orders[0], 2, 3}, {2, orders[1], 6}, {3, 6, orders[2]}};
  return build_cyclic_frame(orders, kappa, {.validate = false});
}

// phi_xx replaced by the identity of a proper quotient.
inline Frame corrupt_square(Rng& rng) {
  const std::size_t n = pick(rng, std::vector<std::size_t>{4, 6, 8, 9});
  std::vector<std::size_t> proper;
  for (std::size_t d : divisors(n))
    if (d > 1 && d < n) proper.push_back(d);
  const std::size_t d = pick(rng, proper);
  const Frame f = build_cyclic_frame({n, n}, {{n, n}, {n, n}});
  const FiniteGroup g = make_cyclic(n);
  const ElementSet h = cyclic_subgroup_of_index(n, d);
  return f.with_explicit_iso(make_iso_record(1, g, h, 1, g, h, detail::identity_map(d)));
}

// phi_yx that is not the inverse of phi_xy.
inline Frame corrupt_converse(Rng& rng) {
  const std::size_t k = pick(rng, std::vector<std::size_t>{3, 4, 5, 6});
  const std::size_t n = k * uniform(rng, 1, 2);
  const Frame f = build_cyclic_frame({n, n}, {{n, k}, {k, n}});
  const IsoRecord& r = *f.stored_record(0, 1);
  std::vector<Index> map(k);
  for (std::size_t c = 0; c < k; ++c) map[c] = (c * (k - 1)) % k;
  return f.with_explicit_iso(
      make_iso_record(1, f.group(1), r.k.subgroup(), 0, f.group(0), r.h.subgroup(), map));
}

inline Frame random_corruption(Rng& rng, std::size_t which) {
  switch (which % 4) {
    case 0: return corrupt_by_twist(rng);
    case 1: return corrupt_by_kappa(rng);
    case 2: return corrupt_square(rng);
    default: return corrupt_converse(rng);
  }
}

inline std::size_t count_atoms_of(const Frame& f) {
  std::size_t n = 0;
  for (Index x = 0; x < f.size(); ++x)
    for (Index y = 0; y < f.size(); ++y)
      if (f.related(x, y)) n += resolve_iso(f, x, y).count();
  return n;
}

}  // namespace gra::testing
