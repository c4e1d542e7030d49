#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tik/io.hpp"
#include "tik/reductions.hpp"
#include "tik/s2d.hpp"
#include "tik/selftest.hpp"

using namespace tik;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kEquivalent = 0;
constexpr int kNotEquivalent = 1;
constexpr int kUsage = 2;

// Only the failures a caller can act on by changing the inputs map to 1; everything else is misuse.
int exit_code_for(ErrorKind k) {
  return k == ErrorKind::RecoveryUnsupported || k == ErrorKind::WitnessInvalid ? kNotEquivalent : kUsage;
}

void print(const Json& j) { std::cout << j.dump() << "\n"; }

Instance read_instance(Problem problem, const std::string& path) {
  return instance_from_object(problem, read_object_file(path));
}

Witness read_witness(const std::string& path) {
  Object obj = read_object_file(path);
  if (!std::holds_alternative<Witness>(obj)) fail(ErrorKind::Parse, path + ": expected a witness file");
  return std::get<Witness>(obj);
}

std::string header_of(const Object& obj) {
  const std::string text = emit_object(obj);
  return text.substr(0, text.find('\n'));
}

struct Options {
  std::string problem, reduction, in, a, b, out, witness, oracle = "structural", level = "quick", log;
  std::vector<std::size_t> dims;
  u32 p = 2;
  std::size_t degree = 4;
  u64 seed = 0;
  bool noniso = false;

  ReductionParams params() const { return ReductionParams{p, degree}; }
};

int cmd_gen(const Options& o) {
  const Problem problem = problem_from_name(o.problem);
  const InstancePair pair = gen_pair(problem, o.dims, o.p, o.seed, !o.noniso, default_budget());
  write_object_file(o.a, object_from_instance(problem, pair.a));
  write_object_file(o.b, object_from_instance(problem, pair.b));
  if (pair.witness && !o.witness.empty()) write_object_file(o.witness, *pair.witness);
  print(Json{{"command", "gen"}, {"problem", o.problem}, {"seed", o.seed}, {"isomorphic", !o.noniso},
             {"a", o.a}, {"b", o.b}, {"header", header_of(object_from_instance(problem, pair.a))}});
  return kEquivalent;
}

// Group -> Lie algebra through matrix_log and lie_closure. Deciding Lie algebra isomorphism
// through 3-tensor isomorphism is a separate construction that is not implemented here.
int cmd_lazard(const Options& o) {
  const Object obj = read_object_file(o.in);
  if (!std::holds_alternative<MatrixGroup>(obj)) fail(ErrorKind::Parse, o.in + ": expected a group file");
  std::vector<Mat> logs;
  for (const Mat& g : std::get<MatrixGroup>(obj).gens) logs.push_back(matrix_log(g));
  const LieAlgebra lie = lie_closure(logs);
  write_object_file(o.out, lie.sc);
  print(Json{{"command", "reduce"}, {"reduction", "lazard"}, {"out", o.out}, {"header", header_of(lie.sc)},
             {"note", "stops at Lie algebra structure constants; the Lie algebra to 3-tensor step is not implemented"}});
  return kEquivalent;
}

int cmd_reduce(const Options& o) {
  if (o.reduction == "lazard") return cmd_lazard(o);
  const Reduction& red = find_reduction(o.reduction);
  const Instance target = red.construct(read_instance(red.source, o.in), o.params());
  const Object obj = object_from_instance(red.target, target);
  write_object_file(o.out, obj);
  print(Json{{"command", "reduce"}, {"reduction", red.name}, {"source", problem_name(red.source)},
             {"target", problem_name(red.target)}, {"out", o.out}, {"header", header_of(obj)}});
  return kEquivalent;
}

int cmd_decide(const Options& o) {
  const Problem problem = problem_from_name(o.problem);
  const Instance a = read_instance(problem, o.a), b = read_instance(problem, o.b);
  const auto w = decide(problem, a, b, default_budget());
  Json j{{"command", "decide"}, {"problem", o.problem}, {"equivalent", w.has_value()}};
  if (w) {
    if (!o.out.empty()) write_object_file(o.out, *w);
    j["witness"] = emit_object(*w);
  }
  print(j);
  return w ? kEquivalent : kNotEquivalent;
}

int cmd_verify(const Options& o) {
  const Problem problem = problem_from_name(o.problem);
  const bool ok = verify_witness(problem, read_instance(problem, o.a), read_instance(problem, o.b), read_witness(o.witness));
  print(Json{{"command", "verify"}, {"problem", o.problem}, {"valid", ok}});
  return ok ? kEquivalent : kNotEquivalent;
}

// forward = true maps a source witness to the target; false recovers a source witness.
int cmd_witness(const Options& o, bool forward) {
  const Reduction& red = find_reduction(o.reduction);
  const Instance a = read_instance(red.source, o.a), b = read_instance(red.source, o.b);
  const Witness w = read_witness(o.witness);
  const Witness out = forward ? red.forward(a, b, w, o.params()) : red.recover(a, b, w, o.params());
  // the maps promise a valid witness for a valid input; check it here so a caller never gets one silently wrong
  const bool ok = forward ? verify_witness(red.target, red.construct(a, o.params()), red.construct(b, o.params()), out)
                          : verify_witness(red.source, a, b, out);
  if (ok) write_object_file(o.out, out);
  print(Json{{"command", forward ? "witness-map" : "witness-recover"}, {"reduction", red.name}, {"valid", ok},
             {"out", ok ? o.out : ""}});
  return ok ? kEquivalent : kNotEquivalent;
}

Json stats_json(const SearchStats& s) {
  return Json{{"guesses", s.guesses}, {"guess_bounds", s.guess_bounds}, {"queries", s.queries},
              {"monomials", s.monomials}, {"max_query_side", s.max_query_side},
              {"query_side_bound", s.query_side_bound}};
}

int cmd_s2d(const Options& o) {
  if (o.oracle != "structural" && o.oracle != "brute") fail(ErrorKind::Parse, "unknown oracle '" + o.oracle + "'");
  const u64 budget = default_budget();
  const DecisionOracle oracle = o.oracle == "structural" ? structural_oracle(budget) : brute_oracle(budget);
  const Object a = read_object_file(o.a), b = read_object_file(o.b);
  SearchStats stats;
  Json j{{"command", "s2d"}, {"oracle", o.oracle}};
  bool found = false;
  if (std::holds_alternative<MatrixGroup>(a)) {
    if (!std::holds_alternative<MatrixGroup>(b)) fail(ErrorKind::Parse, o.b + ": expected a group file");
    const MatrixGroup& g = std::get<MatrixGroup>(a);
    const auto images = find_group_isomorphism(g, std::get<MatrixGroup>(b), oracle, budget, &stats);
    found = images.has_value();
    if (found && !o.out.empty()) write_object_file(o.out, MatrixGroup{g.field, g.n, *images});
  } else {
    const MatrixTuple ta = std::get<Tensor3>(instance_from_object(Problem::Isometry, a)).frontal();
    const MatrixTuple tb = std::get<Tensor3>(instance_from_object(Problem::Isometry, b)).frontal();
    const auto w = find_isometry(ta, tb, oracle, budget, &stats);
    found = w.has_value();
    if (found && !o.out.empty()) write_object_file(o.out, *w);
  }
  j["found"] = found;
  j["stats"] = stats_json(stats);
  print(j);
  return found ? kEquivalent : kNotEquivalent;
}

int cmd_selftest(const Options& o) {
  std::ofstream file;
  if (!o.log.empty()) {
    file.open(o.log, std::ios::binary);
    if (!file) fail(ErrorKind::Parse, "cannot write " + o.log);
  }
  std::ostringstream discard;
  std::ostream& log = o.log.empty() ? static_cast<std::ostream&>(discard) : file;
  Json criteria = Json::array();
  int failed = 0;
  run_selftest(level_from_name(o.level), log, [&](const CriterionResult& r) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << "\n";
    criteria.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}});
    failed += r.pass ? 0 : 1;
  });
  print(Json{{"command", "selftest"}, {"level", o.level}, {"passed", kCriterionCount - failed}, {"failed", failed},
             {"criteria", criteria}});
  return failed ? kNotEquivalent : kEquivalent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor isomorphism reductions, oracles and witness maps over prime fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  double budget = 0;
  app.add_option("--budget", budget, "enumeration budget (default from TIK_BUDGET, else 1e8)")->check(CLI::Range(1.0, 1e19));
  app.add_option("--seed", o.seed, "seed for generated instances");

  auto* gen = app.add_subcommand("gen", "write a random instance pair");
  gen->add_option("--problem", o.problem)->required();
  gen->add_option("--dims", o.dims, "shape, comma separated")->required()->delimiter(',');
  gen->add_option("--p", o.p, "field size")->check(CLI::PositiveNumber);
  gen->add_flag("--noniso", o.noniso, "certified non-isomorphic pair");
  gen->add_option("--a", o.a)->required();
  gen->add_option("--b", o.b)->required();
  gen->add_option("--witness", o.witness, "where to write the a -> b witness");

  auto* reduce = app.add_subcommand("reduce", "apply a registered reduction (or lazard) to an instance");
  auto* map = app.add_subcommand("witness-map", "map a source witness to the reduced instances");
  auto* recover = app.add_subcommand("witness-recover", "recover a source witness from a target witness");
  for (auto* sub : {reduce, map, recover}) {
    sub->add_option("--reduction", o.reduction)->required();
    sub->add_option("--p", o.p, "field for graph inputs");
    sub->add_option("--degree", o.degree, "target degree or order");
    sub->add_option("--out", o.out)->required();
  }
  reduce->add_option("--in", o.in)->required();
  for (auto* sub : {map, recover}) {
    sub->add_option("--a", o.a)->required();
    sub->add_option("--b", o.b)->required();
    sub->add_option("--witness", o.witness)->required();
  }

  auto* decide_cmd = app.add_subcommand("decide", "decide equivalence by search");
  auto* verify = app.add_subcommand("verify", "check a witness");
  for (auto* sub : {decide_cmd, verify}) {
    sub->add_option("--problem", o.problem)->required();
    sub->add_option("--a", o.a)->required();
    sub->add_option("--b", o.b)->required();
  }
  decide_cmd->add_option("--out", o.out, "where to write the witness");
  verify->add_option("--witness", o.witness)->required();

  auto* s2d = app.add_subcommand("s2d", "find an isometry (or group isomorphism) from decision queries");
  s2d->add_option("--a", o.a)->required();
  s2d->add_option("--b", o.b)->required();
  s2d->add_option("--oracle", o.oracle, "structural or brute");
  s2d->add_option("--out", o.out, "where to write the witness");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--level", o.level, "quick or full");
  selftest->add_option("--log", o.log, "deterministic log file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }
  if (app.count("--budget")) set_default_budget(static_cast<u64>(std::llround(budget)));

  try {
    if (*gen) return cmd_gen(o);
    if (*reduce) return cmd_reduce(o);
    if (*map) return cmd_witness(o, true);
    if (*recover) return cmd_witness(o, false);
    if (*decide_cmd) return cmd_decide(o);
    if (*verify) return cmd_verify(o);
    if (*s2d) return cmd_s2d(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const Error& e) {
    print(Json{{"error", error_kind_name(e.kind())}, {"message", e.detail()}});
    return exit_code_for(e.kind());
  }
  return kUsage;
}
