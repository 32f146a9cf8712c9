#pragma once

// Line-oriented frame files:
//
//   group <id> cyclic <n>
//   group <id> table <n>        followed by n rows of n element indices
//   block <id> <id> ...         blocks partition the declared ids
//   iso <x> <y>                 x declared before y, then:
//     H <elems...>              normal subgroup of G_x
//     K <elems...>              normal subgroup of G_y
//     map <h>:<k> ...           one h per H-coset, k any element of its image
//   end
//
// '#' starts a comment. Errors carry the 1-based line number.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gra/error.hpp"
#include "gra/frame.hpp"
#include "gra/group.hpp"

namespace gra {

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    Line l{number, {}};
    for (std::string tok; in >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + msg);
}

inline std::size_t parse_number(std::size_t line, const std::string& tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(line, "expected a non-negative integer, got '" + tok + "'");
  return v;
}

struct PendingIso {
  std::size_t line = 0;
  Index x = 0, y = 0;
  IsoRecord rec;
};

}  // namespace detail

/// Parses a frame file. Throws ErrorKind::parse_error; the message names the
/// line and the witness (unknown id, non-normal subgroup, non-isomorphic
/// map, missing isomorphism for a pair inside a block, ...).
inline Frame parse_frame(std::string_view text) {
  using detail::fail;
  using detail::parse_number;
  const auto lines = detail::tokenize(text);

  std::vector<FiniteGroup> groups;
  std::vector<std::string> labels;
  std::map<std::string, Index> ids;
  std::vector<std::vector<Index>> blocks;
  std::vector<std::size_t> block_lines;
  std::vector<std::size_t> block_of;
  std::vector<detail::PendingIso> isos;

  auto lookup = [&](std::size_t line, const std::string& id) {
    auto it = ids.find(id);
    if (it == ids.end()) fail(line, "unknown group id '" + id + "'");
    return it->second;
  };
  auto elements = [&](const detail::Line& l, const FiniteGroup& g) {
    ElementSet s(g.order());
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      auto e = parse_number(l.number, l.tokens[i]);
      if (e >= g.order())
        fail(l.number, "element " + l.tokens[i] + " is not in a group of order " +
                           std::to_string(g.order()));
      s.insert(static_cast<Element>(e));
    }
    return s;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto& kw = l.tokens[0];
    if (kw == "group") {
      if (l.tokens.size() != 4) fail(l.number, "expected 'group <id> cyclic|table <n>'");
      const auto& id = l.tokens[1];
      if (ids.count(id)) fail(l.number, "duplicate group id '" + id + "'");
      const std::size_t n = parse_number(l.number, l.tokens[3]);
      if (n == 0) fail(l.number, "group order must be at least 1");
      if (l.tokens[2] == "cyclic") {
        groups.push_back(make_cyclic(n));
      } else if (l.tokens[2] == "table") {
        std::vector<std::vector<Element>> rows;
        for (std::size_t r = 0; r < n; ++r) {
          if (++i >= lines.size()) fail(l.number, "table ends after " + std::to_string(r) + " rows");
          const auto& row = lines[i];
          if (row.tokens.size() != n)
            fail(row.number, "table row needs " + std::to_string(n) + " entries");
          std::vector<Element> vals;
          for (const auto& t : row.tokens)
            vals.push_back(static_cast<Element>(parse_number(row.number, t)));
          rows.push_back(std::move(vals));
        }
        try {
          groups.push_back(validate_table(rows, "G" + id));
        } catch (const Error& e) {
          fail(l.number, std::string("group '") + id + "': " + e.what());
        }
        if (groups.back().rows() != rows)
          fail(l.number, "group '" + id + "': the identity must be element 0");
      } else {
        fail(l.number, "unknown group kind '" + l.tokens[2] + "'");
      }
      ids[id] = labels.size();
      labels.push_back(id);
    } else if (kw == "block") {
      if (l.tokens.size() < 2) fail(l.number, "empty block");
      std::vector<Index> b;
      for (std::size_t t = 1; t < l.tokens.size(); ++t) {
        Index x = lookup(l.number, l.tokens[t]);
        if (std::find(b.begin(), b.end(), x) != b.end())
          fail(l.number, "id '" + l.tokens[t] + "' repeated in block");
        b.push_back(x);
      }
      blocks.push_back(std::move(b));
      block_lines.push_back(l.number);
    } else if (kw == "iso") {
      if (l.tokens.size() != 3) fail(l.number, "expected 'iso <x> <y>'");
      const Index x = lookup(l.number, l.tokens[1]);
      const Index y = lookup(l.number, l.tokens[2]);
      if (y <= x)
        fail(l.number, "iso '" + l.tokens[1] + "' '" + l.tokens[2] +
                           "': the first id must be declared before the second");
      for (const auto& p : isos)
        if (p.x == x && p.y == y)
          fail(l.number, "duplicate iso for (" + l.tokens[1] + "," + l.tokens[2] +
                             "), first given on line " + std::to_string(p.line));
      std::optional<ElementSet> h, k;
      std::optional<std::vector<std::pair<Element, Element>>> map;
      std::size_t map_line = l.number;
      bool ended = false;
      while (!ended) {
        if (++i >= lines.size()) fail(l.number, "iso block is missing 'end'");
        const auto& s = lines[i];
        const auto& skw = s.tokens[0];
        if (skw == "H") {
          h = elements(s, groups[x]);
        } else if (skw == "K") {
          k = elements(s, groups[y]);
        } else if (skw == "map") {
          map_line = s.number;
          map.emplace();
          for (std::size_t t = 1; t < s.tokens.size(); ++t) {
            const auto& tok = s.tokens[t];
            auto colon = tok.find(':');
            if (colon == std::string::npos) fail(s.number, "map entry '" + tok + "' needs h:k");
            auto a = parse_number(s.number, tok.substr(0, colon));
            auto b = parse_number(s.number, tok.substr(colon + 1));
            if (a >= groups[x].order() || b >= groups[y].order())
              fail(s.number, "map entry '" + tok + "' names a non-element");
            map->emplace_back(static_cast<Element>(a), static_cast<Element>(b));
          }
        } else if (skw == "end") {
          ended = true;
        } else {
          fail(s.number, "unexpected '" + skw + "' inside iso block");
        }
      }
      if (!h || !k || !map) fail(l.number, "iso block needs H, K and map lines");
      CosetSystem hs, ks;
      try {
        hs = enumerate_cosets(groups[x], *h);
      } catch (const Error& e) {
        fail(l.number, std::string("H: ") + e.what());
      }
      try {
        ks = enumerate_cosets(groups[y], *k);
      } catch (const Error& e) {
        fail(l.number, std::string("K: ") + e.what());
      }
      if (hs.count() != ks.count())
        fail(l.number, "quotients have orders " + std::to_string(hs.count()) + " and " +
                           std::to_string(ks.count()));
      std::vector<std::size_t> canon(hs.count(), hs.count());
      for (auto [a, b] : *map) {
        const auto hi = hs.index_of(a);
        if (canon[hi] != hs.count())
          fail(map_line, "coset " + hs.coset(hi).to_string() + " of H is mapped twice");
        canon[hi] = ks.index_of(b);
      }
      for (std::size_t c = 0; c < canon.size(); ++c)
        if (canon[c] == hs.count())
          fail(map_line, "coset " + hs.coset(c).to_string() + " of H is not mapped");
      IsoCheck chk = check_quotient_iso(groups[x], *h, groups[y], *k, canon);
      if (!chk) fail(map_line, "map is not a quotient isomorphism: " + chk.witness);
      isos.push_back({l.number, x, y, IsoRecord{x, y, hs, ks.permuted(canon)}});
    } else {
      fail(l.number, "unknown directive '" + kw + "'");
    }
  }

  const std::size_t m = groups.size();
  block_of.assign(m, m);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Index x : blocks[b]) {
      if (block_of[x] != m) fail(block_lines[b], "id '" + labels[x] + "' is already in a block");
      block_of[x] = b;
    }
  for (Index x = 0; x < m; ++x)
    if (block_of[x] == m) fail(lines.empty() ? 0 : lines.back().number,
                               "group '" + labels[x] + "' is in no block");
  for (const auto& p : isos)
    if (block_of[p.x] != block_of[p.y])
      fail(p.line, "iso (" + labels[p.x] + "," + labels[p.y] + ") crosses blocks");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto members = blocks[b];
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        bool found = std::any_of(isos.begin(), isos.end(), [&](const auto& p) {
          return p.x == members[i] && p.y == members[j];
        });
        if (!found)
          fail(block_lines[b], "missing iso for (" + labels[members[i]] + "," +
                                   labels[members[j]] + ")");
      }
  }

  std::vector<IsoRecord> recs;
  for (auto& p : isos) recs.push_back(std::move(p.rec));
  try {
    return Frame(std::move(groups), std::move(labels), std::move(blocks), std::move(recs));
  } catch (const Error& e) {
    fail(0, e.what());
  }
}

/// Writes `f` in the frame file grammar. Comment lines in `header` are
/// prefixed with "# ". Frames carrying explicit records for x>=y cannot be
/// written (the format only has x<y isomorphisms).
inline std::string emit_frame(const Frame& f, const std::vector<std::string>& header = {}) {
  if (f.has_explicit_records())
    throw Error(ErrorKind::invalid_frame,
                "frames with explicit x>=y isomorphisms have no file representation");
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  for (Index x = 0; x < f.size(); ++x) {
    const FiniteGroup& g = f.group(x);
    if (g.is_standard_cyclic()) {
      out << "group " << f.label(x) << " cyclic " << g.order() << '\n';
    } else {
      out << "group " << f.label(x) << " table " << g.order() << '\n';
      for (const auto& row : g.rows()) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << '\n';
      }
    }
  }
  for (const auto& b : f.blocks()) {
    out << "block";
    for (Index x : b) out << ' ' << f.label(x);
    out << '\n';
  }
  for (const auto& [key, rec] : f.stored()) {
    out << "iso " << f.label(key.first) << ' ' << f.label(key.second) << '\n';
    out << 'H';
    rec.h.subgroup().for_each([&](Element e) { out << ' ' << e; });
    out << "\nK";
    rec.k.subgroup().for_each([&](Element e) { out << ' ' << e; });
    out << "\nmap";
    const CosetSystem canon = enumerate_cosets(f.group(key.first), rec.h.subgroup());
    for (const ElementSet& c : canon.cosets()) {
      const auto i = rec.h.index_of(c.first());
      out << ' ' << c.first() << ':' << rec.k.representative(i);
    }
    out << "\nend\n";
  }
  return out.str();
}

}  // namespace gra
