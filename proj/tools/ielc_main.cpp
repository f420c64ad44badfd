// ielc: proof kernel and toolchain for the intuitionistic logic of belief.
//
// Exit codes: 0 success with an affirmative answer; 2 well-formed input with
// a negative answer (type error in a checked artifact, invalid model, no
// countermodel); 1 malformed input or an exhausted internal budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ielc/errors.hpp"
#include "ielc/gen.hpp"
#include "ielc/hilbert.hpp"
#include "ielc/kripke.hpp"
#include "ielc/metaprops.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/selftest.hpp"
#include "ielc/stlc.hpp"
#include "ielc/typecheck.hpp"
#include "json.hpp"

using namespace ielc;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBad = 1;
constexpr int kExitNegative = 2;

struct Output {
  bool as_json = false;
  json doc = {{"schema", 1},
              {"status", "ok"},
              {"result", nullptr},
              {"diagnostics", json::array()}};
  std::ostringstream text;

  void diagnostic(const std::string& msg) {
    doc["diagnostics"].push_back(msg);
    bool color = false;
    if (const char* c = std::getenv("IELC_COLOR")) color = std::string(c) == "1";
    if (color)
      std::cerr << "\x1b[31merror:\x1b[0m " << msg << "\n";
    else
      std::cerr << "error: " << msg << "\n";
  }

  int finish(int code) {
    if (code == kExitNegative) doc["status"] = "negative";
    if (code == kExitBad) doc["status"] = "error";
    if (as_json)
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << text.str();
    return code;
  }
};

std::string read_input(const std::string& path_or_text) {
  std::ifstream in(path_or_text, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  // Not a readable file: treat the argument as inline text.
  return path_or_text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RewriteMode mode_from(const std::string& name) {
  if (name == "perm") return RewriteMode::Perm;
  if (name == "eta") return RewriteMode::Eta;
  if (name != "default") throw Error("unknown --mode '" + name + "'");
  return RewriteMode::Default;
}

FrameMode frame_from(const std::string& name) {
  if (name == "paper-literal") return FrameMode::PaperLiteral;
  if (name != "default") throw Error("unknown --frame '" + name + "'");
  return FrameMode::Default;
}

json trace_json(const ReductionTrace& trace) {
  json steps = json::array();
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    steps.push_back({{"step", i + 1},
                     {"tag", rule_tag_name(s.tag)},
                     {"path", path_to_string(s.path)},
                     {"term", print_term(s.term)}});
  }
  return steps;
}

int cmd_parse(Output& out, const std::string& kind, const std::string& file) {
  std::string src = read_file(file);
  std::string printed;
  if (kind == "formula")
    printed = print_formula(parse_formula(src)) + "\n";
  else if (kind == "term")
    printed = print_term(parse_term(src)) + "\n";
  else if (kind == "hilbert")
    printed = print_hilbert(parse_hilbert(src));
  else if (kind == "model")
    printed = print_model(parse_model(src));
  else
    throw Error("unknown --kind '" + kind + "'");
  out.doc["result"] = printed;
  out.text << printed;
  return kExitOk;
}

int cmd_check(Output& out, const std::string& file, const std::string& ctx_str) {
  TermPtr t = parse_term(read_file(file));
  Context ctx = parse_context(ctx_str);
  try {
    FormulaPtr a = infer(ctx, t);
    out.doc["result"] = print_formula(a);
    out.text << print_formula(a) << "\n";
    return kExitOk;
  } catch (const TypeError& e) {
    out.diagnostic(e.what());
    return kExitNegative;
  }
}

int cmd_normalize(Output& out, const std::string& file,
                  const std::string& ctx_str, bool with_trace, int max_steps,
                  const std::string& mode_name) {
  TermPtr t = parse_term(read_file(file));
  Context ctx = parse_context(ctx_str);
  try {
    infer(ctx, t);
  } catch (const TypeError& e) {
    out.diagnostic(e.what());
    return kExitNegative;
  }
  std::set<std::string> scope;
  for (const auto& [name, f] : ctx.entries()) scope.insert(name);
  auto [nf, trace] = normalize(t, max_steps, mode_from(mode_name),
                               Strategy::LeftmostOutermost, scope);
  if (with_trace) {
    out.text << print_trace(trace);
    out.doc["trace"] = trace_json(trace);
  }
  out.doc["result"] = print_term(nf);
  out.text << print_term(nf) << "\n";
  return kExitOk;
}

int cmd_erase(Output& out, const std::string& file, bool formula, bool term,
              const std::string& ctx_str) {
  std::string src = read_file(file);
  if (formula == term) throw Error("pass exactly one of --formula/--term");
  if (formula) {
    StlcTypePtr ty = erase_formula(parse_formula(src));
    out.doc["result"] = print_stlc_type(ty);
    out.text << print_stlc_type(ty) << "\n";
    return kExitOk;
  }
  TermPtr t = parse_term(src);
  Context ctx = parse_context(ctx_str);
  try {
    infer(ctx, t);
  } catch (const TypeError& e) {
    out.diagnostic(e.what());
    return kExitNegative;
  }
  StlcTermPtr e = erase_term(ctx, t);
  out.doc["result"] = print_stlc_term(e);
  out.text << print_stlc_term(e) << "\n";
  return kExitOk;
}

int cmd_translate(Output& out, const std::string& to_nd,
                  const std::string& to_hilbert, const std::string& ctx_str) {
  if (to_nd.empty() == to_hilbert.empty())
    throw Error("pass exactly one of --to-nd/--to-hilbert");
  if (!to_nd.empty()) {
    HilbertProof p = parse_hilbert(read_file(to_nd));
    try {
      check_hilbert(p);
    } catch (const HilbertError& e) {
      out.diagnostic(e.what());
      return kExitNegative;
    }
    Context ctx;
    TermPtr t = hilbert_to_nd(p, &ctx);
    FormulaPtr a = infer(ctx, t);
    if (!ctx.empty()) out.text << "context: " << print_context(ctx) << "\n";
    out.text << "term: " << print_term(t) << "\n";
    out.text << "type: " << print_formula(a) << "\n";
    out.doc["result"] = {{"context", print_context(ctx)},
                         {"term", print_term(t)},
                         {"type", print_formula(a)}};
    return kExitOk;
  }
  TermPtr t = parse_term(read_file(to_hilbert));
  Context ctx = parse_context(ctx_str);
  try {
    infer(ctx, t);
  } catch (const TypeError& e) {
    out.diagnostic(e.what());
    return kExitNegative;
  }
  HilbertProof p = nd_to_hilbert(t, ctx);
  std::string printed = print_hilbert(p);
  out.doc["result"] = printed;
  out.text << printed;
  return kExitOk;
}

int cmd_kripke(Output& out, const std::string& model_file,
               const std::string& formula_arg, const std::string& world,
               const std::string& frame_name) {
  KripkeModel m = parse_model(read_file(model_file));
  FormulaPtr f = parse_formula(read_input(formula_arg));
  FrameMode frame = frame_from(frame_name);
  auto violations = validate_model(m, frame);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      out.text << "violation: " << v.describe(m) << "\n";
      out.doc["diagnostics"].push_back(v.describe(m));
    }
    out.doc["result"] = "invalid model";
    return kExitNegative;
  }
  if (!world.empty()) {
    bool forced = forces(m, world, f);
    out.doc["result"] = forced;
    out.text << (forced ? "true" : "false") << "\n";
    return forced ? kExitOk : kExitNegative;
  }
  for (size_t w = 0; w < m.worlds.size(); ++w) {
    if (!forces(m, static_cast<int>(w), f)) {
      out.doc["result"] = "invalid at " + m.worlds[w];
      out.text << "invalid at " << m.worlds[w] << "\n";
      return kExitNegative;
    }
  }
  out.doc["result"] = "valid";
  out.text << "valid\n";
  return kExitOk;
}

int cmd_countermodel(Output& out, const std::string& formula_arg,
                     int max_worlds, const std::string& frame_name) {
  FormulaPtr f = parse_formula(read_input(formula_arg));
  auto found = countermodel_search(f, max_worlds, frame_from(frame_name));
  if (!found) {
    out.text << "no countermodel with <= " << max_worlds << " worlds\n";
    out.doc["result"] = nullptr;
    return kExitNegative;
  }
  out.text << print_model(found->first);
  out.text << "refuted at: " << found->first.worlds[found->second] << "\n";
  out.doc["result"] = {{"model", print_model(found->first)},
                       {"world", found->first.worlds[found->second]}};
  return kExitOk;
}

int cmd_props(Output& out, const std::string& file, bool dp, bool reflect,
              bool weak) {
  if (static_cast<int>(dp) + reflect + weak != 1)
    throw Error("pass exactly one of --dp/--reflect/--weak-dp");
  TermPtr t = parse_term(read_file(file));
  try {
    if (reflect) {
      TermPtr u = reflection_extract(t);
      FormulaPtr a = infer(Context{}, u);
      out.text << "witness: " << print_term(u) << "\n";
      out.text << "type: " << print_formula(a) << "\n";
      out.doc["result"] = {{"witness", print_term(u)},
                           {"type", print_formula(a)}};
      return kExitOk;
    }
    auto [side, w] = dp ? disjunction_split(t) : weak_dp(t);
    FormulaPtr a = infer(Context{}, w);
    std::string side_name = side == Side::Left ? "left" : "right";
    out.text << "side: " << side_name << "\n";
    out.text << "witness: " << print_term(w) << "\n";
    out.text << "type: " << print_formula(a) << "\n";
    out.doc["result"] = {{"side", side_name},
                         {"witness", print_term(w)},
                         {"type", print_formula(a)}};
    return kExitOk;
  } catch (const PreconditionError& e) {
    out.diagnostic(e.what());
    return kExitNegative;
  }
}

int cmd_selftest(Output& out, uint64_t seed, int count) {
  std::ostringstream report;
  int failures = run_selftest(seed, count, report);
  out.text << report.str();
  out.text << (failures == 0 ? "selftest: all suites passed"
                             : "selftest: FAILED")
           << " (seed=" << seed << ", count=" << count << ")\n";
  out.doc["result"] = {{"failures", failures}, {"report", report.str()}};
  return failures == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof kernel for the intuitionistic logic of belief"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "structured output");

  std::string kind, file, ctx_str, mode_name = "default", world,
                                   frame_name = "default", formula_arg, to_nd,
                                   to_hilbert;
  bool with_trace = false, erase_f = false, erase_t = false, dp = false,
       reflect = false, weak = false;
  int max_steps = 10000, max_worlds = 3, count = 100;
  uint64_t seed = 1;

  auto* parse_cmd = app.add_subcommand("parse", "parse and reprint a file");
  parse_cmd->add_option("--kind", kind, "formula|term|hilbert|model")
      ->required();
  parse_cmd->add_option("file", file)->required();

  auto* check_cmd = app.add_subcommand("check", "typecheck a term file");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--ctx", ctx_str, "typing context: \"x:F, y:G\"");

  auto* norm_cmd =
      app.add_subcommand("normalize", "reduce a term to normal form");
  norm_cmd->add_option("file", file)->required();
  norm_cmd->add_flag("--trace", with_trace, "print each reduction step");
  norm_cmd->add_option("--max-steps", max_steps);
  norm_cmd->add_option("--mode", mode_name, "default|perm|eta");
  norm_cmd->add_option("--ctx", ctx_str);

  auto* erase_cmd =
      app.add_subcommand("erase", "translate into the simply typed calculus");
  erase_cmd->add_option("file", file)->required();
  erase_cmd->add_flag("--formula", erase_f);
  erase_cmd->add_flag("--term", erase_t);
  erase_cmd->add_option("--ctx", ctx_str);

  auto* trans_cmd =
      app.add_subcommand("translate", "move between the two proof systems");
  trans_cmd->add_option("--to-nd", to_nd, "axiomatic proof file (.ielh)");
  trans_cmd->add_option("--to-hilbert", to_hilbert, "term file (.ielt)");
  trans_cmd->add_option("--ctx", ctx_str);

  auto* kripke_cmd =
      app.add_subcommand("kripke", "evaluate a formula over a finite model");
  kripke_cmd->add_option("--model", file)->required();
  kripke_cmd->add_option("--formula", formula_arg)->required();
  kripke_cmd->add_option("--world", world, "check one world only");
  kripke_cmd->add_option("--frame", frame_name, "default|paper-literal");

  auto* counter_cmd =
      app.add_subcommand("countermodel", "search for a refuting model");
  counter_cmd->add_option("--formula", formula_arg)->required();
  counter_cmd->add_option("--max-worlds", max_worlds);
  counter_cmd->add_option("--frame", frame_name, "default|paper-literal");

  auto* props_cmd = app.add_subcommand(
      "props", "run a metatheoretic extraction on a closed proof term");
  props_cmd->add_flag("--dp", dp, "disjunction property");
  props_cmd->add_flag("--reflect", reflect, "reflection extraction");
  props_cmd->add_flag("--weak-dp", weak, "weak disjunction property");
  props_cmd->add_option("file", file)->required();

  auto* self_cmd =
      app.add_subcommand("selftest", "run the randomized property suites");
  self_cmd->add_option("--seed", seed);
  self_cmd->add_option("--count", count);

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.as_json = as_json;
  try {
    int code = kExitBad;
    if (*parse_cmd) code = cmd_parse(out, kind, file);
    if (*check_cmd) code = cmd_check(out, file, ctx_str);
    if (*norm_cmd)
      code =
          cmd_normalize(out, file, ctx_str, with_trace, max_steps, mode_name);
    if (*erase_cmd) code = cmd_erase(out, file, erase_f, erase_t, ctx_str);
    if (*trans_cmd) code = cmd_translate(out, to_nd, to_hilbert, ctx_str);
    if (*kripke_cmd)
      code = cmd_kripke(out, file, formula_arg, world, frame_name);
    if (*counter_cmd)
      code = cmd_countermodel(out, formula_arg, max_worlds, frame_name);
    if (*props_cmd) code = cmd_props(out, file, dp, reflect, weak);
    if (*self_cmd) code = cmd_selftest(out, seed, count);
    return out.finish(code);
  } catch (const StepBudgetExceeded& e) {
    out.diagnostic(e.what());
    return out.finish(kExitBad);
  } catch (const std::exception& e) {
    out.diagnostic(e.what());
    return out.finish(kExitBad);
  }
}
