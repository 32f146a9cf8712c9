// gra: command-line front end for group frames and their relation algebras.
//
// Exit codes: 0 success / pass, 1 check failure or refused input, 2 unreadable
// or unparsable input.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gra/gra.hpp"

namespace {

using namespace gra;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

// Thrown for bad files and arguments; carries the exit code.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kInput, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Frame load_frame(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_frame(text);
  } catch (const Error& e) {
    throw Exit{kInput, path + ": " + e.what()};
  }
}

Algebra load_algebra(const std::string& path) {
  Frame f = load_frame(path);
  try {
    return Algebra::from_frame(f);
  } catch (const Error& e) {
    throw Exit{kFail, e.what()};
  }
}

Index index_of_label(const Frame& f, const std::string& s) {
  if (auto x = f.find_label(s)) return *x;
  throw Exit{kInput, "unknown group id '" + s + "'"};
}

AtomId atom_arg(const Algebra& alg, const std::string& x, const std::string& y, std::size_t alpha) {
  const Frame& f = alg.frame();
  try {
    return alg.id_of({index_of_label(f, x), index_of_label(f, y), alpha});
  } catch (const Error& e) {
    throw Exit{kInput, e.what()};
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t to_number(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s[0] == '-') throw Exit{kInput, "not a number: '" + s + "'"};
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> number_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& t : split(s, ',')) out.push_back(to_number(t));
  return out;
}

std::vector<std::size_t> read_numbers(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  for (std::string tok; in >> tok;) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    out.push_back(to_number(tok));
  }
  return out;
}

std::string element_list(const ElementSet& s) {
  std::string out;
  s.for_each([&](Element e) { out += (out.empty() ? "" : ",") + std::to_string(e); });
  return "{" + out + "}";
}

// --- commands --------------------------------------------------------------

int cmd_validate(const std::string& path, bool reduced) {
  const Frame f = load_frame(path);
  const FrameReport rep = reduced ? check_frame_reduced(f) : check_frame_full(f);
  rep.print(std::cout, f);
  return rep.passed() ? kPass : kFail;
}

int cmd_atoms(const std::string& path, bool pairs, bool cosets) {
  const Algebra alg = load_algebra(path);
  const Frame& f = alg.frame();
  std::cout << "id atom cardinality\n";
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    const AtomIndex& at = alg.atom(a);
    const IsoRecord& r = alg.record(at.x, at.y);
    std::cout << a << ' ' << alg.format(a) << ' '
              << f.group(at.x).order() * r.k.subgroup().size();
    if (cosets)
      std::cout << " H=" << element_list(r.h.coset(at.alpha))
                << " K=" << element_list(r.k.coset(at.alpha));
    std::cout << '\n';
  }
  if (pairs)
    for (AtomId a = 0; a < alg.atom_count(); ++a) {
      std::cout << "pairs " << alg.format(a) << '\n';
      alg.atom_relation(a).dump(std::cout);
    }
  return kPass;
}

int cmd_conv(const std::string& path, const std::vector<std::string>& args, bool check) {
  if (args.size() != 3) throw Exit{kInput, "conv needs <x> <y> <alpha>"};
  const Algebra alg = load_algebra(path);
  const AtomId a = atom_arg(alg, args[0], args[1], to_number(args[2]));
  const AtomId c = alg.converse_atom(a);
  std::cout << alg.format(c) << '\n';
  if (!check) return kPass;
  const bool ok = alg.atom_relation(c) == rel_converse(alg.atom_relation(a));
  std::cout << (ok ? "MATCH" : "MISMATCH") << '\n';
  return ok ? kPass : kFail;
}

int cmd_comp(const std::string& path, const std::vector<std::string>& args, bool check) {
  if (args.size() != 5) throw Exit{kInput, "comp needs <x> <y> <alpha> <z> <beta>"};
  const Algebra alg = load_algebra(path);
  const AtomId a = atom_arg(alg, args[0], args[1], to_number(args[2]));
  const AtomId b = atom_arg(alg, args[1], args[3], to_number(args[4]));
  const FrameElement r = alg.compose_atoms(a, b);
  std::cout << alg.format(r) << '\n';
  if (!check) return kPass;
  const bool ok = alg.materialize(r) == rel_compose(alg.atom_relation(a), alg.atom_relation(b));
  std::cout << (ok ? "MATCH" : "MISMATCH") << '\n';
  return ok ? kPass : kFail;
}

std::string id_set(const FrameElement& e) {
  if (e.empty()) return "-";
  std::string out;
  for (AtomId a : e.atoms()) out += (out.empty() ? "" : ",") + std::to_string(a);
  return out;
}

int cmd_table(const std::string& path) {
  const Algebra alg = load_algebra(path);
  const std::size_t n = alg.atom_count();
  for (AtomId a = 0; a < n; ++a) std::cout << "atom " << a << ' ' << alg.format(a) << '\n';

  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  std::size_t width = 1;
  for (AtomId a = 0; a < n; ++a)
    for (AtomId b = 0; b < n; ++b) {
      cells[a][b] = id_set(alg.compose_atoms(a, b));
      width = std::max(width, cells[a][b].size());
    }
  width = std::max(width, std::to_string(n).size());
  const int w = static_cast<int>(width);

  std::cout << std::setw(w) << ";" << " | " << std::setw(std::max(w, 4)) << "conv" << " |";
  for (AtomId b = 0; b < n; ++b) std::cout << ' ' << std::setw(w) << b;
  std::cout << '\n';
  for (AtomId a = 0; a < n; ++a) {
    std::cout << std::setw(w) << a << " | " << std::setw(std::max(w, 4)) << alg.converse_atom(a)
              << " |";
    for (AtomId b = 0; b < n; ++b) std::cout << ' ' << std::setw(w) << cells[a][b];
    std::cout << '\n';
  }
  return kPass;
}

int cmd_measure(const std::string& path) {
  const Algebra alg = load_algebra(path);
  const MeasureReport rep = alg.measure_report();
  bool ok = true;
  for (const auto& e : rep.entries) {
    std::cout << "group " << alg.frame().label(e.x) << ": subidentity " << alg.format(e.subidentity)
              << " measure " << e.measure << ", " << e.functional_atoms << " functional atoms, "
              << (e.all_bijections ? "all bijections" : "NOT all bijections") << '\n';
    ok = ok && e.all_bijections;
  }
  std::cout << "pair-dense: " << (rep.pair_dense ? "yes" : "no") << '\n';
  std::cout << "singleton-dense: " << (rep.singleton_dense ? "yes" : "no") << '\n';
  return ok ? kPass : kFail;
}

int cmd_decompose(const std::string& path) {
  const Algebra alg = load_algebra(path);
  const auto parts = alg.decompose();
  std::size_t total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Algebra c = Algebra::from_frame(parts[i]);
    std::cout << "component " << i << ": indices";
    for (Index x : alg.frame().blocks()[i]) std::cout << ' ' << alg.frame().label(x);
    std::cout << ", atoms " << c.atom_count() << ", simple=" << (c.is_simple() ? "yes" : "no")
              << '\n';
    total += c.atom_count();
  }
  std::cout << "components " << parts.size() << ", atoms " << total << " of "
            << alg.atom_count() << ", simple=" << (alg.is_simple() ? "yes" : "no") << '\n';
  return kPass;
}

int cmd_verify(const std::string& path) {
  const Frame f = load_frame(path);
  const FrameReport rep = check_frame_reduced(f);
  if (!rep.passed()) {
    rep.print(std::cout, f);
    return kFail;
  }
  const VerifyReport v = verify_algebra(Algebra::from_frame(f));
  v.print(std::cout);
  std::cout << (v.passed() ? "verify: PASS" : "verify: FAIL") << '\n';
  return v.passed() ? kPass : kFail;
}

int cmd_gen_cyclic(const std::string& orders_arg, const std::string& kappa_path) {
  const auto orders = number_list(orders_arg);
  const auto flat = read_numbers(read_file(kappa_path));
  const std::size_t m = orders.size();
  if (flat.size() != m * m)
    throw Exit{kInput, "kappa file has " + std::to_string(flat.size()) + " entries, expected " +
                           std::to_string(m * m)};
  KappaMatrix kappa(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m * m; ++i) kappa[i / m][i % m] = flat[i];
  if (auto v = check_cyclic_conditions(orders, kappa)) {
    std::cout << describe(*v) << '\n';
    return kFail;
  }
  const Frame f = build_cyclic_frame(orders, kappa);
  std::cout << emit_frame(f, {"cyclic construction: orders " + orders_arg,
                              "each phi_xy maps generator 1 of G_x/H_xy to generator 1 of "
                              "G_y/K_xy"});
  return kPass;
}

int cmd_gen_power(const std::string& table_path, const std::string& normal_arg,
                  const std::string& size_arg, const std::string& blocks_arg) {
  const auto flat = read_numbers(read_file(table_path));
  std::size_t n = 0;
  while (n * n < flat.size()) ++n;
  if (n == 0 || n * n != flat.size()) throw Exit{kInput, "group table is not square"};
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < flat.size(); ++i) rows[i / n][i % n] = static_cast<Element>(flat[i]);

  const std::size_t count = to_number(size_arg);
  std::vector<std::vector<Index>> blocks;
  for (const auto& b : split(blocks_arg, '/')) blocks.push_back(number_list(b));
  try {
    const FiniteGroup m = validate_table(rows);
    const ElementSet normal = ElementSet::of(m.order(), number_list(normal_arg));
    const Frame f = build_power_frame(m, normal, count, blocks);
    std::cout << emit_frame(f, {"power construction: " + std::to_string(count) +
                                    " copies of a group of order " + std::to_string(n) +
                                    ", N = " + element_list(normal)});
  } catch (const Error& e) {
    std::cout << e.what() << '\n';
    return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group relation algebras: frame checks, atom arithmetic, oracle verification"};
  app.require_subcommand(1);
  int code = kPass;

  std::string file;
  bool full = false, reduced = false, pairs = false, cosets = false, check = false;
  std::vector<std::string> rest;

  auto* validate = app.add_subcommand("validate", "check the frame conditions");
  validate->add_option("file", file)->required();
  auto* full_flag = validate->add_flag("--full", full, "check every triple (default)");
  validate->add_flag("--reduced", reduced, "check only x<y<z triples")->excludes(full_flag);
  validate->callback([&] { code = cmd_validate(file, reduced); });

  auto* atoms = app.add_subcommand("atoms", "list atoms with their cardinalities");
  atoms->add_option("file", file)->required();
  atoms->add_flag("--pairs", pairs, "dump the global-id pairs of each atom");
  atoms->add_flag("--cosets", cosets, "show the H and K cosets behind each index");
  atoms->callback([&] { code = cmd_atoms(file, pairs, cosets); });

  auto* op = app.add_subcommand("op", "converse or composition of atoms");
  op->add_option("file", file)->required();
  std::string which;
  op->add_option("operation", which)->required()->check(CLI::IsMember({"conv", "comp"}));
  op->add_option("args", rest, "x y alpha [z beta]")->required();
  op->add_flag("--check", check, "compare against the explicit relations");
  op->callback([&] { code = which == "conv" ? cmd_conv(file, rest, check) : cmd_comp(file, rest, check); });

  auto* table = app.add_subcommand("table", "full composition table with converses");
  table->add_option("file", file)->required();
  table->callback([&] { code = cmd_table(file); });

  auto* measure = app.add_subcommand("measure", "measures of the subidentity atoms");
  measure->add_option("file", file)->required();
  measure->callback([&] { code = cmd_measure(file); });

  auto* decompose = app.add_subcommand("decompose", "split into simple components");
  decompose->add_option("file", file)->required();
  decompose->callback([&] { code = cmd_decompose(file); });

  auto* verify = app.add_subcommand("verify", "run every law and oracle check");
  verify->add_option("file", file)->required();
  verify->callback([&] { code = cmd_verify(file); });

  auto* gen = app.add_subcommand("gen", "emit a frame file from a construction");
  gen->require_subcommand(1);
  auto* cyclic = gen->add_subcommand("cyclic", "cyclic groups with a kappa matrix");
  std::string orders, kappa_file;
  cyclic->add_option("orders", orders, "comma-separated orders, e.g. 6,9")->required();
  cyclic->add_option("kappa", kappa_file, "file with the kappa matrix, row by row")->required();
  cyclic->callback([&] { code = cmd_gen_cyclic(orders, kappa_file); });

  auto* pw = gen->add_subcommand("power", "copies of one group related through M/N");
  std::string table_file, normal, count, blocks;
  pw->add_option("table", table_file, "file with the Cayley table of M")->required();
  pw->add_option("normal", normal, "elements of N, comma-separated")->required();
  pw->add_option("count", count, "number of copies")->required();
  pw->add_option("blocks", blocks, "partition like 0,1/2")->required();
  pw->callback([&] { code = cmd_gen_power(table_file, normal, count, blocks); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  } catch (const Exit& e) {
    std::cerr << "gra: " << e.message << '\n';
    return e.code;
  } catch (const Error& e) {
    std::cerr << "gra: " << e.what() << '\n';
    return kFail;
  }
  return code;
}
