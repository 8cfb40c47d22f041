// opchris: exact enumeration, kernel, character, and verification tool for
// the Christoffel-tree calculus.
#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "opchris/dimcount.hpp"
#include "opchris/exactla.hpp"
#include "opchris/geoderiv.hpp"
#include "opchris/operad.hpp"
#include "opchris/symfunc.hpp"
#include "opchris/trees.hpp"
#include "opchris/twist.hpp"
#include "opchris/upsilon.hpp"

using namespace opchris;
using nlohmann::json;

namespace {

// ---- shared option plumbing -------------------------------------------------

struct OutputOpts {
  std::string format = "text";  // text | json | csv
  std::string out_path;         // empty = stdout
};

void add_output_opts(CLI::App* cmd, OutputOpts* o, bool csv_ok = true) {
  auto formats = csv_ok ? std::vector<std::string>{"text", "json", "csv"}
                        : std::vector<std::string>{"text", "json"};
  cmd->add_option("--format", o->format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_option("--out", o->out_path, "Write the report to this file");
}

void emit(const OutputOpts& o, const std::string& payload) {
  if (o.out_path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + o.out_path);
  f << payload;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

MultiDegree parse_multidegree(const std::string& s) {
  MultiDegree md;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string item = s.substr(pos, comma - pos);
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("multidegree entry needs key:count, got '" +
                                  item + "'");
    const std::string key = item.substr(0, colon);
    const int count = std::stoi(item.substr(colon + 1));
    int k;
    if (key == "D" || key == "d") k = 0;
    else if (key == "A" || key == "a") k = -1;
    else k = std::stoi(key);
    md[k] += count;
    pos = comma + 1;
  }
  if (md.empty()) throw std::invalid_argument("empty multidegree");
  return md;
}

std::vector<std::vector<int>> parse_blocks(const std::string& s) {
  std::vector<std::vector<int>> blocks;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t semi = s.find(';', pos);
    if (semi == std::string::npos) semi = s.size();
    std::vector<int> block;
    size_t p = pos;
    while (p < semi) {
      size_t comma = s.find(',', p);
      if (comma == std::string::npos || comma > semi) comma = semi;
      block.push_back(std::stoi(s.substr(p, comma - p)));
      p = comma + 1;
    }
    if (!block.empty()) blocks.push_back(std::move(block));
    pos = semi + 1;
  }
  return blocks;
}

json lincomb_json(const LinComb& x) { return json::parse(x.json()); }

// ---- trees ------------------------------------------------------------------

struct TreesOpts {
  std::string multidegree;
  std::string blocks;
  int gaussian_noises = 0;
  bool negative_only = false;
  long long max_trees = 5'000'000;
  OutputOpts out;
};

int run_trees(const TreesOpts& o) {
  EnumBounds b;
  b.max_trees = o.max_trees;
  b.negative_only = o.negative_only;

  std::vector<TreePtr> trees;
  std::string label;
  if (o.gaussian_noises > 0) {
    trees = gaussian_trees_upto(o.gaussian_noises, b);
    label = fmt::format("gaussian<= {}", o.gaussian_noises);
  } else {
    const MultiDegree md = parse_multidegree(o.multidegree);
    if (o.blocks.empty()) {
      trees = enumerate_trees(md, b);
    } else {
      trees = enumerate_orbit_reps(md, parse_blocks(o.blocks), b);
    }
    label = md_str(md);
  }

  if (o.out.format == "json") {
    json rows = json::array();
    for (const auto& t : trees) {
      const auto d = degree(t);
      rows.push_back({{"code", t->code},
                      {"symmetry", symmetry_factor(t).str()},
                      {"degree", {{"x", rat_str(d.first)}, {"kappa", rat_str(d.second)}}}});
    }
    emit(o.out, dump({{"multidegree", label}, {"count", trees.size()}, {"trees", rows}}));
  } else if (o.out.format == "csv") {
    std::string s = "code,symmetry,degree_x,degree_kappa\n";
    for (const auto& t : trees) {
      const auto d = degree(t);
      s += fmt::format("{},{},{},{}\n", t->code, symmetry_factor(t).str(),
                       rat_str(d.first), rat_str(d.second));
    }
    emit(o.out, s);
  } else {
    std::string s = fmt::format("# {} trees with content {}\n", trees.size(), label);
    for (const auto& t : trees)
      s += fmt::format("{}  (sym {})\n", t->code, symmetry_factor(t).str());
    emit(o.out, s);
  }
  return 0;
}

// ---- dims -------------------------------------------------------------------

int run_dims(const std::string& mode, int n, const OutputOpts& o) {
  std::vector<DimRow> table;
  const Int total = mode == "gaussian" ? gaussian_total(n, &table)
                                       : cumulant_total(n, &table);
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& r : table)
      rows.push_back({{"spec", r.spec.str()}, {"dim", r.dim.str()}});
    emit(o, dump({{"mode", mode},
                  {"n", n},
                  {"components", rows},
                  {"total", total.str()}}));
  } else if (o.format == "csv") {
    std::string s = "spec,dim\n";
    for (const auto& r : table)
      s += fmt::format("{},{}\n", r.spec.str(), r.dim.str());
    s += fmt::format("total,{}\n", total.str());
    emit(o, s);
  } else {
    std::string s = fmt::format("# {} components, n = {}\n", mode, n);
    for (const auto& r : table)
      s += fmt::format("{:<14} {}\n", r.spec.str(), r.dim.str());
    s += fmt::format("{:<14} {}\n", "total", total.str());
    emit(o, s);
  }
  return 0;
}

// ---- kernel -----------------------------------------------------------------

struct KernelOpts {
  std::string multidegree;
  std::string blocks;
  bool with_basis = false;
  long long max_trees = 5'000'000;
  OutputOpts out;
};

int run_kernel(const KernelOpts& o) {
  const MultiDegree md = parse_multidegree(o.multidegree);
  const auto blocks = parse_blocks(o.blocks);
  EnumBounds b;
  b.max_trees = o.max_trees;
  std::fprintf(stderr, "kernel: multidegree %s, %zu block(s)\n",
               md_str(md).c_str(), blocks.size());
  const KernelResult res = kernel_basis_geo(md, blocks, b);

  if (o.out.format == "json") {
    json j{{"multidegree", md_str(md)},
           {"blocks", blocks},
           {"domain_orbits", res.domain_orbits},
           {"codomain_orbits", res.codomain_orbits},
           {"dim", res.dim}};
    if (o.with_basis) {
      json basis = json::array();
      for (const auto& v : res.basis) basis.push_back(lincomb_json(v));
      j["basis"] = std::move(basis);
    }
    emit(o.out, dump(j));
  } else {
    std::string s =
        fmt::format("kernel dimension {}  (domain orbits {}, codomain orbits {})\n",
                    res.dim, res.domain_orbits, res.codomain_orbits);
    if (o.with_basis) {
      int i = 0;
      for (const auto& v : res.basis) s += fmt::format("[{}] {}\n", i++, v.str());
    }
    emit(o.out, s);
  }
  return 0;
}

// ---- covariant basis ----------------------------------------------------------

int run_covariant(const OutputOpts& o) {
  const auto words = covariant_catalogue_two_colors();
  std::vector<LinComb> symmetrized;
  symmetrized.reserve(words.size());
  for (const auto& w : words) symmetrized.push_back(symmetrize_colors(w, {{1, 2}}));

  std::vector<SparseVec> coords;
  std::map<std::string, int> row_of;
  for (const auto& s : symmetrized) {
    SparseVec v;
    for (const auto& [t, c] : s.terms) {
      auto [it, ignore] = row_of.try_emplace(t->code, static_cast<int>(row_of.size()));
      (void)ignore;
      v[it->second] = c;
    }
    coords.push_back(std::move(v));
  }
  const int span = span_dim(coords);

  if (o.format == "json") {
    json entries = json::array();
    for (size_t i = 0; i < words.size(); ++i)
      entries.push_back({{"index", i}, {"expansion", lincomb_json(words[i])}});
    emit(o, dump({{"words", words.size()}, {"span", span}, {"entries", entries}}));
  } else {
    std::string s = fmt::format("# {} words, symmetrized span {}\n",
                                words.size(), span);
    for (size_t i = 0; i < words.size(); ++i)
      s += fmt::format("[{:>2}] {}\n", i, words[i].str());
    emit(o, s);
  }
  return 0;
}

// ---- character series ---------------------------------------------------------

int run_fla(int degree, const std::string& basis, const OutputOpts& o) {
  SymFunc f = f_la(degree);
  if (basis == "p") f = convert(f, SFBasis::p);

  if (o.format == "json") {
    json pieces = json::array();
    for (int dgr = 1; dgr <= degree; ++dgr) {
      const SymFunc piece = f.piece(dgr);
      json terms = json::array();
      for (const auto& [lam, c] : piece.terms)
        terms.push_back({{"partition", lam.parts}, {"coeff", rat_str(c)}});
      pieces.push_back({{"degree", dgr},
                        {"expression", piece.str()},
                        {"terms", std::move(terms)}});
    }
    emit(o, dump({{"degree", degree}, {"basis", basis}, {"pieces", pieces}}));
  } else {
    std::string s;
    for (int dgr = 1; dgr <= degree; ++dgr)
      s += fmt::format("deg {}: {}\n", dgr, f.piece(dgr).str());
    emit(o, s);
  }
  return 0;
}

// ---- verify -------------------------------------------------------------------

struct VerifyOutcome {
  std::string suite;
  json params;
  long long checks = 0;
  long long failures = 0;
  std::string detail;
};

int emit_verify(const VerifyOutcome& v, const OutputOpts& o) {
  const bool ok = v.failures == 0;
  if (o.format == "json") {
    json j{{"suite", v.suite},
           {"params", v.params},
           {"checks", v.checks},
           {"failures", v.failures},
           {"ok", ok}};
    if (!v.detail.empty()) j["detail"] = v.detail;
    emit(o, dump(j));
  } else {
    std::string s = fmt::format("{}: {} checks, {} failures -> {}\n", v.suite,
                                v.checks, v.failures, ok ? "OK" : "FAIL");
    if (!v.detail.empty()) s += v.detail + "\n";
    emit(o, s);
  }
  return ok ? 0 : 1;
}

std::vector<TreePtr> labeled_trees(int n, int max_vertices) {
  MultiDegree md;
  for (int i = 1; i <= n; ++i) md[i] = 1;
  std::vector<TreePtr> out;
  for (const auto& t : enumerate_trees(md))
    if (t->nvertices <= max_vertices) out.push_back(t);
  return out;
}

VerifyOutcome verify_operad_axioms(int max_vertices) {
  VerifyOutcome v{"operad-axioms", {{"max_vertices", max_vertices}}, 0, 0, ""};
  const auto t2 = labeled_trees(2, max_vertices);
  const auto t3 = labeled_trees(3, max_vertices);

  auto nested = [&](const std::vector<TreePtr>& xs, int n,
                    const std::vector<TreePtr>& ys, int m,
                    const std::vector<TreePtr>& zs) {
    for (const auto& x : xs)
      for (const auto& y : ys)
        for (const auto& z : zs)
          for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j) {
              ++v.checks;
              const LinComb lhs =
                  compose_lin(compose_labeled(x, i, y), i - 1 + j, LinComb(z));
              const LinComb rhs =
                  compose_lin(LinComb(x), i, compose_labeled(y, j, z));
              if (!(lhs == rhs)) {
                ++v.failures;
                if (v.detail.empty())
                  v.detail = fmt::format("nested: x={} y={} z={} i={} j={}",
                                         x->code, y->code, z->code, i, j);
              }
            }
  };
  auto disjoint = [&](const std::vector<TreePtr>& xs, int n,
                      const std::vector<TreePtr>& ys, int m,
                      const std::vector<TreePtr>& zs) {
    for (const auto& x : xs)
      for (const auto& y : ys)
        for (const auto& z : zs)
          for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
              ++v.checks;
              const LinComb lhs =
                  compose_lin(compose_labeled(x, i, y), j + m - 1, LinComb(z));
              const LinComb rhs =
                  compose_lin(compose_labeled(x, j, z), i, LinComb(y));
              if (!(lhs == rhs)) {
                ++v.failures;
                if (v.detail.empty())
                  v.detail = fmt::format("disjoint: x={} y={} z={} i={} j={}",
                                         x->code, y->code, z->code, i, j);
              }
            }
  };
  nested(t2, 2, t2, 2, t2);
  nested(t3, 3, t2, 2, t2);
  nested(t2, 2, t3, 3, t2);
  disjoint(t3, 3, t2, 2, t2);
  disjoint(t3, 3, t3, 3, t2);
  for (const auto& x : t3)
    for (int i = 1; i <= 3; ++i) {
      ++v.checks;
      const LinComb r = compose_labeled(x, i, noise(1));
      if (!(r == LinComb(x))) ++v.failures;
    }
  return v;
}

VerifyOutcome verify_d_squared(int max_vertices, int max_alphas) {
  VerifyOutcome v{"d-squared",
                  {{"max_vertices", max_vertices}, {"max_alphas", max_alphas}},
                  0, 0, ""};
  std::vector<MultiDegree> mds;
  for (int n = 1; n <= 3; ++n)
    for (int a = 0; a <= max_alphas; ++a) {
      MultiDegree md;
      for (int c = 1; c <= n; ++c) md[c] = 1;
      if (a > 0) md[-1] = a;
      mds.push_back(md);
    }
  mds.push_back({{1, 2}, {-1, 1}});
  mds.push_back({{1, 2}, {-1, 2}});
  mds.push_back({{1, 4}});
  for (const auto& md : mds) {
    for (const auto& t : enumerate_trees(md)) {
      if (t->nvertices > max_vertices) continue;
      ++v.checks;
      if (!d_full(d_full(LinComb(t))).is_zero()) {
        ++v.failures;
        if (v.detail.empty()) v.detail = "d^2 != 0 at " + t->code;
      }
    }
  }
  return v;
}

VerifyOutcome verify_correspondence(int max_vertices) {
  const auto rep = verify_degree0_correspondence(max_vertices);
  VerifyOutcome v{"correspondence", {{"max_vertices", max_vertices}},
                  rep.trees_checked, rep.ok ? 0 : 1, ""};
  if (!rep.ok) v.detail = "first mismatch at " + rep.first_mismatch;
  return v;
}

struct ChainRuleOpts {
  int noises = 2;
  int d = 4;
  int m = 3;
  int order = 2;
  unsigned long long seed = 1;
  bool bare = false;  // drop the Christoffel correction from the word
};

VerifyOutcome verify_chain_rule(const ChainRuleOpts& c) {
  VerifyOutcome v{"chain-rule",
                  {{"noises", c.noises}, {"d", c.d}, {"m", c.m},
                   {"order", c.order}, {"seed", c.seed}, {"bare", c.bare}},
                  0, 0, ""};
  LinComb word;
  int reserve;  // orders spent by the pushforward plus the bushiest vertex
  if (c.noises == 2) {
    word = LinComb(tree_parse("N1(tN1)"));
    if (!c.bare) word.add(tree_parse("G(kN1,kN1)"), Rational(1) / 2);
    reserve = 2;
  } else if (c.noises == 4) {
    const LinComb a(noise(1)), b(noise(2));
    word = nabla(b, nabla(a, nabla(b, a)));
    reserve = 4;
  } else {
    throw std::invalid_argument("chain-rule: --noises must be 2 or 4");
  }
  const int R = c.order + reserve;
  const FieldData F = random_field_data(c.d, c.m, R, c.seed);
  const auto phi = random_diffeo(c.d, R, c.seed + 1);
  const auto res = chain_rule_check(word, F, phi, c.order);
  ++v.checks;
  if (!res.ok || res.order < c.order) {
    ++v.failures;
    v.detail = res.witness.empty()
                   ? fmt::format("comparison only reached order {}", res.order)
                   : res.witness;
  }
  return v;
}

VerifyOutcome verify_infinitesimal(int d, int m, unsigned long long seed, int seeds) {
  VerifyOutcome v{"infinitesimal",
                  {{"d", d}, {"m", m}, {"seed", seed}, {"seeds", seeds}},
                  0, 0, ""};
  const LinComb a(noise(1)), b(noise(2));
  LinComb gen2(tree_parse("N1(tN1)"));
  gen2.add(tree_parse("G(kN1,kN1)"), Rational(1) / 2);
  const LinComb gen4 = nabla(b, nabla(a, nabla(b, a)));
  const LinComb off(tree_parse("N1(tN1)"));
  for (int i = 0; i < seeds; ++i) {
    const FieldData F = random_field_data(d, m, 3, seed + i);
    ++v.checks;
    if (!infinitesimal_check(gen2, F, 1)) {
      ++v.failures;
      if (v.detail.empty()) v.detail = fmt::format("two-noise generator failed at seed {}", seed + i);
    }
    ++v.checks;
    if (!infinitesimal_check(gen4, F, 1)) {
      ++v.failures;
      if (v.detail.empty()) v.detail = fmt::format("four-noise word failed at seed {}", seed + i);
    }
    ++v.checks;
    if (infinitesimal_check(off, F, 1)) {
      ++v.failures;
      if (v.detail.empty())
        v.detail = fmt::format("bare chain passed unexpectedly at seed {}", seed + i);
    }
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of Christoffel trees: enumeration, geometric "
               "kernels, character dimensions, and verification suites"};
  app.require_subcommand(1);

  // trees
  auto* trees_cmd = app.add_subcommand("trees", "Enumerate decorated trees");
  trees_cmd->require_subcommand(1);
  TreesOpts topts;
  auto* tenum = trees_cmd->add_subcommand("enumerate", "All trees with a given content");
  tenum->add_option("--multidegree", topts.multidegree,
                    "Content, e.g. 1:2,2:2 (D:= one Delta, A:= Alphas)")
      ->required();
  tenum->add_option("--blocks", topts.blocks,
                    "Interchangeable color blocks, e.g. 1,2;3 (keeps orbit representatives)");
  tenum->add_flag("--negative-only", topts.negative_only,
                  "Keep only negative-degree trees");
  tenum->add_option("--max-trees", topts.max_trees, "Enumeration cap")
      ->capture_default_str();
  add_output_opts(tenum, &topts.out);
  auto* tgauss = trees_cmd->add_subcommand(
      "gaussian", "Catalogue of paired-noise trees up to a noise bound");
  tgauss->add_option("--max-noises", topts.gaussian_noises, "Even noise bound")
      ->required();
  add_output_opts(tgauss, &topts.out);

  // dims
  auto* dims_cmd = app.add_subcommand("dims", "Invariant dimension tables");
  dims_cmd->require_subcommand(1);
  int dims_n = 2;
  OutputOpts dims_out;
  auto* dg = dims_cmd->add_subcommand("gaussian", "Identified noise pairs up to n pairs");
  dg->add_option("--n", dims_n, "Number of pairs")->required();
  add_output_opts(dg, &dims_out);
  auto* dc = dims_cmd->add_subcommand("cumulant", "All block shapes of total degree <= n");
  dc->add_option("--n", dims_n, "Total degree bound")->required();
  add_output_opts(dc, &dims_out);

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Kernel of the geometric derivation");
  KernelOpts kopts;
  kernel_cmd->add_option("--multidegree", kopts.multidegree, "Noise content, e.g. 1:2,2:2")
      ->required();
  kernel_cmd->add_option("--blocks", kopts.blocks, "Interchangeable color blocks");
  kernel_cmd->add_flag("--basis", kopts.with_basis, "Print a kernel basis");
  kernel_cmd->add_option("--max-trees", kopts.max_trees, "Enumeration cap")
      ->capture_default_str();
  add_output_opts(kernel_cmd, &kopts.out, /*csv_ok=*/false);

  // basis covariant
  auto* basis_cmd = app.add_subcommand("basis", "Distinguished spanning sets");
  basis_cmd->require_subcommand(1);
  OutputOpts cov_out;
  auto* cov = basis_cmd->add_subcommand(
      "covariant", "Iterated covariant-derivative words on two colors");
  add_output_opts(cov, &cov_out, /*csv_ok=*/false);

  // fla
  auto* fla_cmd = app.add_subcommand("fla", "Character series of the kernel suboperad");
  int fla_degree = 6;
  std::string fla_basis = "e";
  OutputOpts fla_out;
  fla_cmd->add_option("--degree", fla_degree, "Truncation degree")->required();
  fla_cmd->add_option("--basis", fla_basis, "Basis to print")
      ->check(CLI::IsMember({"e", "p"}))
      ->capture_default_str();
  add_output_opts(fla_cmd, &fla_out, /*csv_ok=*/false);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Verification suites (exit 1 on failure)");
  verify_cmd->require_subcommand(1);
  OutputOpts ver_out;
  int ax_vertices = 4;
  auto* vax = verify_cmd->add_subcommand("operad-axioms", "Composition axioms on small trees");
  vax->add_option("--max-vertices", ax_vertices, "Vertex bound per factor")
      ->capture_default_str();
  add_output_opts(vax, &ver_out, /*csv_ok=*/false);

  int dsq_vertices = 6, dsq_alphas = 2;
  auto* vds = verify_cmd->add_subcommand("d-squared", "The differential squares to zero");
  vds->add_option("--max-vertices", dsq_vertices, "Vertex bound")->capture_default_str();
  vds->add_option("--max-alphas", dsq_alphas, "Alpha bound")->capture_default_str();
  add_output_opts(vds, &ver_out, /*csv_ok=*/false);

  int cor_vertices = 4;
  auto* vco = verify_cmd->add_subcommand(
      "correspondence", "Degree-zero differential vs the geometric derivation");
  vco->add_option("--max-vertices", cor_vertices, "Vertex bound")->capture_default_str();
  add_output_opts(vco, &ver_out, /*csv_ok=*/false);

  ChainRuleOpts cr;
  auto* vcr = verify_cmd->add_subcommand(
      "chain-rule", "Transformation rule of the evaluation map under seeded changes of variables");
  vcr->add_option("--noises", cr.noises, "Word size: 2 or 4")->capture_default_str();
  vcr->add_option("--d", cr.d, "Manifold dimension")->capture_default_str();
  vcr->add_option("--m", cr.m, "Number of noise fields")->capture_default_str();
  vcr->add_option("--order", cr.order, "Comparison order")->capture_default_str();
  vcr->add_option("--seed", cr.seed, "RNG seed")->capture_default_str();
  vcr->add_flag("--bare", cr.bare,
                "Drop the Christoffel correction (the check is then expected to fail)");
  add_output_opts(vcr, &ver_out, /*csv_ok=*/false);

  int inf_d = 3, inf_m = 2, inf_runs = 5;
  unsigned long long inf_seed = 11;
  auto* vin = verify_cmd->add_subcommand(
      "infinitesimal", "Kernel words evaluate to symmetries; off-kernel words do not");
  vin->add_option("--d", inf_d, "Manifold dimension")->capture_default_str();
  vin->add_option("--m", inf_m, "Number of noise fields")->capture_default_str();
  vin->add_option("--seed", inf_seed, "First RNG seed")->capture_default_str();
  vin->add_option("--seeds", inf_runs, "Number of seeds")->capture_default_str();
  add_output_opts(vin, &ver_out, /*csv_ok=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (tenum->parsed()) return run_trees(topts);
    if (tgauss->parsed()) return run_trees(topts);
    if (dg->parsed()) return run_dims("gaussian", dims_n, dims_out);
    if (dc->parsed()) return run_dims("cumulant", dims_n, dims_out);
    if (kernel_cmd->parsed()) return run_kernel(kopts);
    if (cov->parsed()) return run_covariant(cov_out);
    if (fla_cmd->parsed()) return run_fla(fla_degree, fla_basis, fla_out);
    if (vax->parsed()) return emit_verify(verify_operad_axioms(ax_vertices), ver_out);
    if (vds->parsed()) return emit_verify(verify_d_squared(dsq_vertices, dsq_alphas), ver_out);
    if (vco->parsed()) return emit_verify(verify_correspondence(cor_vertices), ver_out);
    if (vcr->parsed()) return emit_verify(verify_chain_rule(cr), ver_out);
    if (vin->parsed()) return emit_verify(verify_infinitesimal(inf_d, inf_m, inf_seed, inf_runs), ver_out);
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "bound exceeded: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
