#pragma once

// Command-line front end.  run() takes the argument vector (without the
// program name), executes one subcommand, writes the payload to `out` and
// diagnostics to `err`, and returns the exit code: 0 on success, 1 when a
// mathematical hypothesis fails or an input is structurally rejected, 2 for
// unparseable input or bad usage.  With --json every payload (and every
// error) is exactly one structured JSON object on `out`.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccgp/cycle.hpp"
#include "ccgp/decomp.hpp"
#include "ccgp/errors.hpp"
#include "ccgp/graph.hpp"
#include "ccgp/group.hpp"
#include "ccgp/morphisms.hpp"
#include "ccgp/oracle.hpp"
#include "ccgp/suites.hpp"
#include "ccgp/textio.hpp"
#include "ccgp/word.hpp"

namespace ccgp::cli {

using Json = nlohmann::ordered_json;

namespace detail {

struct Io {
  // Bound to the --json flag variable, which CLI11 fills during parsing —
  // after this struct is built but before any command callback runs.
  const bool& json;
  std::ostream& out;
  std::ostream& err;
};

inline void emit(const Io& io, const Json& payload, const std::string& plain) {
  if (io.json)
    io.out << payload.dump(2) << "\n";
  else
    io.out << plain;
}

inline std::vector<std::string> set_names(const Graph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (int v : s.values()) out.push_back(g.vertex_name(v));
  return out;
}

inline std::string set_text(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.values()) {
    if (!first) out += ", ";
    out += g.vertex_name(v);
    first = false;
  }
  return out + "}";
}

inline int resolve_vertex(const Graph& g, const std::string& name) {
  if (!g.has_vertex(name))
    throw ParseError("unknown vertex '" + name + "' in graph '" + g.name() +
                     "'");
  return g.index_of(name);
}

inline VertexSet resolve_set(const Graph& g,
                             const std::vector<std::string>& names) {
  VertexSet s;
  for (const std::string& n : names) s.insert(resolve_vertex(g, n));
  return s;
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Command implementations.  Each returns the exit code and emits exactly one
// payload.

inline int cmd_cliques(const Io& io, const std::string& file) {
  const Presentation p = read_graph_file(file);
  const Graph& g = p.graph();
  const std::vector<VertexSet> cliques = g.maximal_cliques();
  Json j;
  j["command"] = "cliques";
  j["graph"] = g.name();
  j["count"] = cliques.size();
  j["cliques"] = Json::array();
  std::string plain = "graph: " + g.name() + "\ncliques: " +
                      std::to_string(cliques.size()) + "\n";
  for (const VertexSet& c : cliques) {
    j["cliques"].push_back(set_names(g, c));
    plain += set_text(g, c) + "\n";
  }
  emit(io, j, plain);
  return 0;
}

inline int cmd_cc1(const Io& io, const std::string& file) {
  const Presentation p = read_graph_file(file);
  const Graph& g = p.graph();
  const Cc1Result res = recognize_cc1(g);
  Json j;
  j["command"] = "cc1";
  j["graph"] = g.name();
  if (const auto* rej = std::get_if<Cc1Rejection>(&res)) {
    j["accepted"] = false;
    j["reason"] = to_string(rej->reason);
    j["index"] = rej->index;
    j["detail"] = rej->detail;
    emit(io, j,
         "graph: " + g.name() + "\ncycle-of-cliques: no\nreason: " +
             to_string(rej->reason) + "\nindex: " +
             std::to_string(rej->index) + "\ndetail: " + rej->detail + "\n");
    return 1;
  }
  const auto& d = std::get<CliqueDecomposition>(res);
  j["accepted"] = true;
  j["count"] = d.count();
  j["cliques"] = Json::array();
  std::string plain = "graph: " + g.name() + "\ncycle-of-cliques: yes\ncliques: " +
                      std::to_string(d.count()) + "\n";
  for (int i = 1; i <= d.count(); ++i) {
    Json c;
    c["index"] = i;
    c["vertices"] = set_names(g, d.clique(i));
    c["intersection"] = set_names(g, d.intersection(i));
    c["interior"] = set_names(g, d.interior(i));
    j["cliques"].push_back(c);
    plain += "clique " + std::to_string(i) + ": " + set_text(g, d.clique(i)) +
             "  intersection: " + set_text(g, d.intersection(i)) +
             "  interior: " + set_text(g, d.interior(i)) + "\n";
  }
  emit(io, j, plain);
  return 0;
}

inline const CliqueDecomposition& require_cc1(const Cc1Result& res,
                                              const std::string& graph_name) {
  if (const auto* rej = std::get_if<Cc1Rejection>(&res))
    throw Error("graph '" + graph_name +
                "' is not a cycle of cliques: " + rej->detail);
  return std::get<CliqueDecomposition>(res);
}

inline int cmd_retract(const Io& io, const std::string& file) {
  const Presentation p = read_graph_file(file);
  const Graph& g = p.graph();
  const Cc1Result res = recognize_cc1(g);
  const FlowerRetraction ret = retract_to_flower(require_cc1(res, g.name()));
  Json j;
  j["command"] = "retract";
  j["graph"] = g.name();
  j["petals"] = ret.flower.size() / 2;
  j["fibers"] = Json::object();
  std::string plain = "graph: " + g.name() + "\npetals: " +
                      std::to_string(ret.flower.size() / 2) + "\n";
  for (int t = 0; t < ret.flower.size(); ++t) {
    VertexSet fiber;
    for (int v = 0; v < g.size(); ++v)
      if (ret.fiber_of[v] == t) fiber.insert(v);
    j["fibers"][ret.flower.vertex_name(t)] = set_names(g, fiber);
    plain += "fiber " + ret.flower.vertex_name(t) + ": " +
             set_text(g, fiber) + "\n";
  }
  emit(io, j, plain);
  return 0;
}

inline int cmd_isometries(const Io& io, const std::string& file_a,
                          const std::string& file_b) {
  const Presentation pa = read_graph_file(file_a);
  const Presentation pb = read_graph_file(file_b);
  const std::vector<GraphIsometry> all =
      isometries(pa.graph(), pb.graph());
  Json j;
  j["command"] = "isometries";
  j["source"] = pa.graph().name();
  j["target"] = pb.graph().name();
  j["count"] = all.size();
  j["maps"] = Json::array();
  std::string plain = "source: " + pa.graph().name() + "\ntarget: " +
                      pb.graph().name() + "\nisometries: " +
                      std::to_string(all.size()) + "\n";
  for (const GraphIsometry& iso : all) {
    Json m = Json::object();
    std::string line;
    for (int v = 0; v < pa.graph().size(); ++v) {
      const std::string from = pa.graph().vertex_name(v);
      const std::string to = pb.graph().vertex_name(iso.apply(v));
      m[from] = to;
      if (v) line += ", ";
      line += from + "->" + to;
    }
    j["maps"].push_back(m);
    plain += line + "\n";
  }
  emit(io, j, plain);
  return 0;
}

inline int cmd_link_star(const Io& io, const std::string& file,
                         const std::vector<std::string>& names, bool star) {
  const Presentation p = read_graph_file(file);
  const Graph& g = p.graph();
  const VertexSet of = resolve_set(g, names);
  const VertexSet result = star ? g.star(of) : g.link(of);
  const std::string op = star ? "star" : "link";
  Json j;
  j["command"] = op;
  j["graph"] = g.name();
  j["of"] = set_names(g, of);
  j["result"] = set_names(g, result);
  emit(io, j,
       op + " of " + set_text(g, of) + ": " + set_text(g, result) + "\n");
  return 0;
}

inline int cmd_word_unary(const Io& io, const std::string& command,
                          const std::string& file, const std::string& text) {
  const Presentation p = read_graph_file(file);
  const Word w = parse_word(p, text);
  Json j;
  j["command"] = command;
  j["graph"] = p.graph().name();
  j["input"] = text;
  std::string plain;
  if (command == "normalize") {
    const NormalWord nf = normalize(p, w);
    j["result"] = format_word(p, nf);
    plain = format_word(p, nf) + "\n";
  } else if (command == "canonical") {
    const CanonicalWord cw = canonicalize(p, w);
    j["result"] = format_word(p, cw);
    plain = format_word(p, cw) + "\n";
  } else if (command == "support") {
    const VertexSet s = support(p, w);
    j["result"] = set_names(p.graph(), s);
    plain = set_text(p.graph(), s) + "\n";
  } else {  // length
    const std::size_t n = syllable_length(p, w);
    j["result"] = n;
    plain = std::to_string(n) + "\n";
  }
  emit(io, j, plain);
  return 0;
}

inline int cmd_eq(const Io& io, const std::string& file,
                  const std::string& left, const std::string& right) {
  const Presentation p = read_graph_file(file);
  const bool same = equal(p, parse_word(p, left), parse_word(p, right));
  Json j;
  j["command"] = "eq";
  j["graph"] = p.graph().name();
  j["left"] = left;
  j["right"] = right;
  j["equal"] = same;
  emit(io, j, std::string(bool_text(same)) + "\n");
  return 0;
}

inline int cmd_normalizer(const Io& io, const std::string& file,
                          const std::vector<std::string>& names) {
  const Presentation p = read_graph_file(file);
  const VertexSet of = resolve_set(p.graph(), names);
  const VertexSet result = normalizer_of_full(p, of);
  Json j;
  j["command"] = "normalizer";
  j["graph"] = p.graph().name();
  j["of"] = set_names(p.graph(), of);
  j["result"] = set_names(p.graph(), result);
  emit(io, j,
       "normalizer of " + set_text(p.graph(), of) + ": " +
           set_text(p.graph(), result) + "\n");
  return 0;
}

inline int cmd_amalgam(const Io& io, const std::string& file,
                       const std::string& vertex) {
  const Presentation p = read_graph_file(file);
  const Graph& g = p.graph();
  const AmalgamSplit s = amalgam_split(p, resolve_vertex(g, vertex));
  Json j;
  j["command"] = "amalgam";
  j["graph"] = g.name();
  j["removed"] = g.vertex_name(s.removed);
  j["left"] = set_names(g, s.left);
  j["edge"] = set_names(g, s.edge);
  j["right"] = set_names(g, s.right);
  j["degenerate"] = s.degenerate;
  emit(io, j,
       "removed: " + g.vertex_name(s.removed) + "\nleft: " +
           set_text(g, s.left) + "\nedge: " + set_text(g, s.edge) +
           "\nright: " + set_text(g, s.right) + "\ndegenerate: " +
           bool_text(s.degenerate) + "\n");
  return 0;
}

inline int cmd_qn_witness(const Io& io, const std::string& file, int i,
                          const std::string& text) {
  const Presentation p = read_graph_file(file);
  const Cc1Result res = recognize_cc1(p.graph());
  const CliqueDecomposition& d = require_cc1(res, p.graph().name());
  const Word g = parse_word(p, text);
  const QuasinormalizerProbe probe =
      clique_quasinormalizer_witness(p, d, i, g);
  Json j;
  j["command"] = "qn-witness";
  j["graph"] = p.graph().name();
  j["clique"] = i;
  j["input"] = text;
  if (const auto* member = std::get_if<CliqueMembership>(&probe)) {
    j["member"] = true;
    j["element"] = format_word(p, member->element);
    emit(io, j,
         "member: true\nelement: " + format_word(p, member->element) + "\n");
    return 0;
  }
  const auto& w = std::get<EscapeWitness>(probe);
  const std::string gen = format_word(p, Word{w.generator});
  j["member"] = false;
  j["generator"] = gen;
  j["conjugate"] = format_word(p, w.conjugate);
  j["escaped"] = set_names(p.graph(), w.escaped);
  emit(io, j,
       "member: false\ngenerator: " + gen + "\nconjugate: " +
           format_word(p, w.conjugate) + "\nescaped: " +
           set_text(p.graph(), w.escaped) + "\n");
  return 0;
}

inline int cmd_decompose(const Io& io, const std::string& command,
                         const std::string& file, int i,
                         const std::vector<std::string>& words) {
  const Presentation p = read_graph_file(file);
  const Cc1Result res = recognize_cc1(p.graph());
  const CliqueDecomposition& d = require_cc1(res, p.graph().name());
  const Graph& g = p.graph();
  TriDecomposition t;
  if (command == "decompose1")
    t = prop42_part1(p, d, i, parse_word(p, words[0]),
                     parse_word(p, words[1]));
  else
    t = prop42_part2(p, d, i, parse_word(p, words[0]),
                     parse_word(p, words[1]), parse_word(p, words[2]));
  Json j;
  j["command"] = command;
  j["graph"] = g.name();
  j["clique"] = i;
  j["inputs"] = words;
  j["a"] = format_word(p, t.a);
  j["s"] = format_word(p, t.s);
  j["b"] = format_word(p, t.b);
  j["a_set"] = set_names(g, t.a_set);
  j["s_set"] = set_names(g, t.s_set);
  j["b_set"] = set_names(g, t.b_set);
  emit(io, j,
       "a: " + format_word(p, t.a) + "\ns: " + format_word(p, t.s) +
           "\nb: " + format_word(p, t.b) + "\na-set: " +
           set_text(g, t.a_set) + "\ns-set: " + set_text(g, t.s_set) +
           "\nb-set: " + set_text(g, t.b_set) + "\n");
  return 0;
}

inline int cmd_cycle(const Io& io, const std::string& file,
                     const std::vector<std::string>& words) {
  const Presentation p = read_graph_file(file);
  const Cc1Result res = recognize_cc1(p.graph());
  const CliqueDecomposition& d = require_cc1(res, p.graph().name());
  std::vector<Word> xs;
  for (const std::string& text : words) xs.push_back(parse_word(p, text));
  const CyclicBlocks blocks = cyclic_decompose(p, d, xs);
  Json j;
  j["command"] = "cycle";
  j["graph"] = p.graph().name();
  j["inputs"] = words;
  j["blocks"] = Json::array();
  std::string plain;
  for (std::size_t k = 0; k < blocks.a.size(); ++k) {
    Json b;
    b["index"] = k + 1;
    b["a"] = format_word(p, blocks.a[k]);
    b["b"] = format_word(p, blocks.b[k]);
    b["c"] = format_word(p, blocks.c[k]);
    j["blocks"].push_back(b);
    plain += "x" + std::to_string(k + 1) + ": a=" +
             format_word(p, blocks.a[k]) + " b=" +
             format_word(p, blocks.b[k]) + " c=" +
             format_word(p, blocks.c[k]) + "\n";
  }
  emit(io, j, plain);
  return 0;
}

inline int cmd_sixblock(const Io& io, const std::string& file, int i,
                        const std::string& text) {
  const Presentation p = read_graph_file(file);
  const Cc1Result res = recognize_cc1(p.graph());
  const CliqueDecomposition& d = require_cc1(res, p.graph().name());
  const SixBlockSplit s = six_block_split(p, d, i, parse_word(p, text));
  Json j;
  j["command"] = "sixblock";
  j["graph"] = p.graph().name();
  j["clique"] = i;
  j["input"] = text;
  j["left_edge"] = format_word(p, s.left_edge);
  j["left_interior"] = format_word(p, s.left_interior);
  j["central"] = format_word(p, s.central);
  j["right_interior"] = format_word(p, s.right_interior);
  j["right_edge"] = format_word(p, s.right_edge);
  j["residue"] = format_word(p, s.residue);
  emit(io, j,
       "left-edge: " + format_word(p, s.left_edge) + "\nleft-interior: " +
           format_word(p, s.left_interior) + "\ncentral: " +
           format_word(p, s.central) + "\nright-interior: " +
           format_word(p, s.right_interior) + "\nright-edge: " +
           format_word(p, s.right_edge) + "\nresidue: " +
           format_word(p, s.residue) + "\n");
  return 0;
}

inline int cmd_apply(const Io& io, const std::string& command,
                     const std::string& file, const std::string& text) {
  const AutomorphismFile aut = read_automorphism_file(file);
  const Presentation& src = aut.map.source();
  const Presentation& dst = aut.map.target();
  const Word u = parse_word(src, text);
  Json j;
  j["command"] = command;
  j["automorphism"] = file;
  j["source"] = src.graph().name();
  j["target"] = dst.graph().name();
  j["input"] = text;
  if (command == "apply") {
    const CanonicalWord image = aut.map.apply(u);
    j["result"] = format_word(dst, image);
    emit(io, j, format_word(dst, image) + "\n");
    return 0;
  }
  if (command == "char") {
    const Phase value = character_eval(aut.character, u);
    j["value"] = value.to_text();
    emit(io, j, value.to_text() + "\n");
    return 0;
  }
  const PhasedWord tw = twisted_apply(aut.character, aut.map, u);
  j["phase"] = tw.phase.to_text();
  j["result"] = format_word(dst, tw.word);
  emit(io, j,
       "phase: " + tw.phase.to_text() + "\nword: " + format_word(dst, tw.word) +
           "\n");
  return 0;
}

inline int cmd_out_report(const Io& io, const std::string& file) {
  const Presentation p = read_graph_file(file);
  const OutStructureReport rep = out_structure_report(p);
  Json j;
  j["command"] = "out-report";
  j["graph"] = rep.graph_name;
  j["cliques"] = rep.clique_count;
  j["center_trivial"] = rep.center_trivial;
  j["local_order_known"] = rep.local_order_known;
  if (rep.local_order_known) j["local_order"] = rep.local_order.str();
  j["sym"] = rep.sym;
  j["sym_detail"] = rep.sym_detail;
  j["lines"] = rep.lines();
  std::string plain;
  for (const std::string& line : rep.lines()) plain += line + "\n";
  emit(io, j, plain);
  return 0;
}

inline int cmd_wreath_demo(const Io& io, const std::string& spec_text) {
  const VertexGroupSpec spec = parse_spec(spec_text);
  const WreathReport rep = wreath_summand_conjugation_check(spec);
  Json j;
  j["command"] = "wreath-demo";
  j["spec"] = spec.to_text();
  j["order"] = rep.order_total.str();
  j["expected_order"] = rep.order_expected.str();
  j["projection_homomorphism"] = rep.projection_is_homomorphism;
  j["projection_onto"] = rep.projection_onto;
  j["kernel_is_base_sum"] = rep.kernel_is_base_sum;
  j["summand_checks"] = rep.summand_checks;
  j["summand_failures"] = rep.summand_failures;
  j["all_pass"] = rep.all_pass();
  emit(io, j,
       "spec: " + spec.to_text() + "\norder: " + rep.order_total.str() +
           "\nexpected-order: " + rep.order_expected.str() +
           "\nprojection-homomorphism: " +
           bool_text(rep.projection_is_homomorphism) + "\nprojection-onto: " +
           bool_text(rep.projection_onto) + "\nkernel-is-base-sum: " +
           bool_text(rep.kernel_is_base_sum) + "\nsummand-checks: " +
           std::to_string(rep.summand_checks) + "\nsummand-failures: " +
           std::to_string(rep.summand_failures) + "\nall-pass: " +
           bool_text(rep.all_pass()) + "\n");
  return rep.all_pass() ? 0 : 1;
}

inline int cmd_verify(const Io& io, const std::string& suite,
                      const Budget& budget) {
  const SuiteReport rep = verify_suite(suite, budget);
  Json j;
  j["command"] = "verify";
  j["suite"] = rep.suite;
  j["tested"] = rep.tested;
  j["passed"] = rep.passed;
  j["failed"] = rep.failed;
  j["skipped"] = rep.skipped;
  j["seed"] = rep.seed;
  j["vacuous"] = rep.vacuous();
  if (rep.counterexample.empty())
    j["counterexample"] = nullptr;
  else
    j["counterexample"] = rep.counterexample;
  j["line"] = rep.line();
  std::string plain = rep.line() + "\n";
  if (!rep.counterexample.empty())
    plain += "counterexample: " + rep.counterexample + "\n";
  emit(io, j, plain);
  return rep.failed > 0 ? 1 : 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dispatch

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"cycle-of-cliques graph products: words, decompositions, "
               "automorphisms, verification suites"};
  app.name("ccgp");
  app.require_subcommand(1);
  app.fallthrough(true);

  bool json = false;
  app.add_flag("--json", json, "emit one structured JSON object");

  std::string graph_file, graph_file2, word_text, word_text2, word_text3;
  std::string vertex_name, aut_file, suite_name;
  std::string spec_text = "wreath(Z/2, Z/3)";
  std::vector<std::string> vertex_names, word_texts;
  int clique_index = 1;
  Budget budget;
  int rc = 0;

  const auto graph_arg = [&](CLI::App* cmd) {
    cmd->add_option("graph", graph_file, "graph file")->required();
  };

  CLI::App* cliques = app.add_subcommand("cliques", "list maximal cliques");
  graph_arg(cliques);
  CLI::App* cc1 = app.add_subcommand(
      "cc1", "recognize a cycle-of-cliques graph and list its blocks");
  graph_arg(cc1);
  CLI::App* retract = app.add_subcommand(
      "retract", "retract a recognized graph onto its flower");
  graph_arg(retract);
  CLI::App* isom = app.add_subcommand(
      "isometries", "list all structure-preserving vertex bijections");
  graph_arg(isom);
  isom->add_option("other", graph_file2, "second graph file")->required();
  CLI::App* link = app.add_subcommand("link", "common neighbors of a set");
  graph_arg(link);
  link->add_option("vertices", vertex_names, "vertex names")
      ->required()
      ->expected(-1);
  CLI::App* star = app.add_subcommand("star", "a set joined with its link");
  graph_arg(star);
  star->add_option("vertices", vertex_names, "vertex names")
      ->required()
      ->expected(-1);

  const auto word_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    graph_arg(cmd);
    cmd->add_option("word", word_text, "word literal")->required();
    return cmd;
  };
  word_cmd("normalize", "rewrite a word into its normal form");
  word_cmd("canonical", "rewrite a word into its canonical shuffle");
  word_cmd("support", "vertices appearing in the normal form");
  word_cmd("length", "syllable length of the normal form");

  CLI::App* eq = app.add_subcommand("eq", "decide equality of two words");
  graph_arg(eq);
  eq->add_option("left", word_text, "first word")->required();
  eq->add_option("right", word_text2, "second word")->required();

  CLI::App* normalizer = app.add_subcommand(
      "normalizer", "support of the normalizer of a full subgroup");
  graph_arg(normalizer);
  normalizer->add_option("vertices", vertex_names, "vertex names")
      ->required()
      ->expected(-1);

  CLI::App* amalgam = app.add_subcommand(
      "amalgam", "splitting induced by removing one vertex");
  graph_arg(amalgam);
  amalgam->add_option("vertex", vertex_name, "vertex name")->required();

  CLI::App* qn = app.add_subcommand(
      "qn-witness", "clique membership or a conjugation escape witness");
  graph_arg(qn);
  qn->add_option("clique", clique_index, "clique index (1-based)")
      ->required();
  qn->add_option("word", word_text, "word literal")->required();

  CLI::App* dec1 = app.add_subcommand(
      "decompose1", "cancel a pair across one clique: g = a*s, h = s^-1*b");
  graph_arg(dec1);
  dec1->add_option("clique", clique_index, "clique index (1-based)")
      ->required();
  dec1->add_option("word-g", word_text, "the word g")->required();
  dec1->add_option("word-h", word_text2, "the word h")->required();

  CLI::App* dec2 = app.add_subcommand(
      "decompose2", "cancel a triple across two cliques: g = a*s, k = s^-1*b");
  graph_arg(dec2);
  dec2->add_option("clique", clique_index, "clique index (1-based)")
      ->required();
  dec2->add_option("word-g", word_text, "the word g")->required();
  dec2->add_option("word-h", word_text2, "the word h")->required();
  dec2->add_option("word-k", word_text3, "the word k")->required();

  CLI::App* cycle = app.add_subcommand(
      "cycle", "block-decompose a tuple whose cyclic product is 1");
  graph_arg(cycle);
  cycle->add_option("words", word_texts, "one word per clique pair")
      ->required()
      ->expected(-1);

  CLI::App* sixblock = app.add_subcommand(
      "sixblock", "six-block factorization over two consecutive cliques");
  graph_arg(sixblock);
  sixblock->add_option("clique", clique_index, "clique index (1-based)")
      ->required();
  sixblock->add_option("word", word_text, "word literal")->required();

  const auto aut_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("automorphism", aut_file, "automorphism file")
        ->required();
    cmd->add_option("word", word_text, "word literal")->required();
    return cmd;
  };
  aut_cmd("apply", "image of a word under a local automorphism");
  aut_cmd("char", "character value of a word");
  aut_cmd("twist", "character value and image together");

  CLI::App* outrep = app.add_subcommand(
      "out-report", "structure report for the outer symmetries");
  graph_arg(outrep);

  CLI::App* wreath = app.add_subcommand(
      "wreath-demo", "audit the summand conjugation axioms of a wreath spec");
  wreath->add_option("spec", spec_text, "wreath group spec");

  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and print its report line");
  verify->add_option("suite", suite_name, "suite name")->required();
  verify->add_option("--budget", budget.max_count,
                     "cap on enumerated instances (0 skips everything)");
  verify->add_option("--seed", budget.seed, "random seed");
  verify->add_option("--trials", budget.trials, "sampled trials");
  verify->add_option("--max-syllables", budget.max_syllables,
                     "ball radius for enumerated inputs");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ccgp");
  for (const std::string& a : args) argv.push_back(a.c_str());

  const detail::Io io{json, out, err};
  const auto fail = [&](int code, const std::string& kind,
                        const std::string& message,
                        const std::string& which = "") {
    if (json) {
      Json j;
      j["error"]["exit"] = code;
      j["error"]["kind"] = kind;
      if (!which.empty()) j["error"]["which"] = which;
      j["error"]["message"] = message;
      out << j.dump(2) << "\n";
    } else {
      err << kind << ": " << message << "\n";
    }
    return code;
  };

  try {
    cliques->callback([&] { rc = detail::cmd_cliques(io, graph_file); });
    cc1->callback([&] { rc = detail::cmd_cc1(io, graph_file); });
    retract->callback([&] { rc = detail::cmd_retract(io, graph_file); });
    isom->callback(
        [&] { rc = detail::cmd_isometries(io, graph_file, graph_file2); });
    link->callback([&] {
      rc = detail::cmd_link_star(io, graph_file, vertex_names, false);
    });
    star->callback([&] {
      rc = detail::cmd_link_star(io, graph_file, vertex_names, true);
    });
    for (const std::string name :
         {"normalize", "canonical", "support", "length"})
      app.get_subcommand(name)->callback([&, name] {
        rc = detail::cmd_word_unary(io, name, graph_file, word_text);
      });
    eq->callback(
        [&] { rc = detail::cmd_eq(io, graph_file, word_text, word_text2); });
    normalizer->callback(
        [&] { rc = detail::cmd_normalizer(io, graph_file, vertex_names); });
    amalgam->callback(
        [&] { rc = detail::cmd_amalgam(io, graph_file, vertex_name); });
    qn->callback([&] {
      rc = detail::cmd_qn_witness(io, graph_file, clique_index, word_text);
    });
    dec1->callback([&] {
      rc = detail::cmd_decompose(io, "decompose1", graph_file, clique_index,
                                 {word_text, word_text2});
    });
    dec2->callback([&] {
      rc = detail::cmd_decompose(io, "decompose2", graph_file, clique_index,
                                 {word_text, word_text2, word_text3});
    });
    cycle->callback(
        [&] { rc = detail::cmd_cycle(io, graph_file, word_texts); });
    sixblock->callback([&] {
      rc = detail::cmd_sixblock(io, graph_file, clique_index, word_text);
    });
    for (const std::string name : {"apply", "char", "twist"})
      app.get_subcommand(name)->callback([&, name] {
        rc = detail::cmd_apply(io, name, aut_file, word_text);
      });
    outrep->callback([&] { rc = detail::cmd_out_report(io, graph_file); });
    wreath->callback([&] { rc = detail::cmd_wreath_demo(io, spec_text); });
    verify->callback(
        [&] { rc = detail::cmd_verify(io, suite_name, budget); });

    app.parse(static_cast<int>(argv.size()), argv.data());
    return rc;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const HypothesisViolation& e) {
    return fail(1, "hypothesis-violation", e.what(), to_string(e.which));
  } catch (const ParseError& e) {
    return fail(2, "parse-error", e.what());
  } catch (const Error& e) {
    return fail(1, "error", e.what());
  }
}

}  // namespace ccgp::cli
