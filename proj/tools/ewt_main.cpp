// Command-line front end: tree, conditions, polar, verify, corpus.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ewt/corpus.hpp"
#include "ewt/oracle.hpp"
#include "ewt/polar.hpp"
#include "json.hpp"

namespace {

using namespace ewt;

enum Exit { kOk = 0, kError = 1, kMathFail = 2 };

struct Job {
  std::string field = "GF(5)";
  std::string expr;
  std::string file;
  std::string params;  // "x=t^2, y=t^3; x=t, y=t^2"
  std::int64_t precision = kDefaultPrecision;
  std::string format = "text";
  bool with_oracles = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);)
    if (part.find_first_not_of(" \t\r") != std::string::npos) out.push_back(part);
  return out;
}

BivarPoly load(const Job& job, const Field& F) {
  int sources = !job.expr.empty() + !job.file.empty() + !job.params.empty();
  if (sources != 1) fail(ErrorKind::InvalidArgument, "give exactly one of POLY, --file or --param");
  if (!job.expr.empty()) return BivarPoly::parse(F, job.expr);
  if (!job.params.empty()) {
    BivarPoly f = BivarPoly::constant(F, 1);
    for (const auto& p : split(job.params, ';')) f = f * oracle::implicitize(Parametrization::parse(F, p));
    return f;
  }
  std::ifstream in(job.file);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + job.file);
  // one factor per line, '#' starts a comment; the product is the input
  BivarPoly f = BivarPoly::constant(F, 1);
  int lineno = 0, factors = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      f = f * BivarPoly::parse(F, line);
      ++factors;
    } catch (const Error& e) {
      throw Error(e.kind(), job.file + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!factors) fail(ErrorKind::ParseError, job.file + ": no polynomial found");
  return f;
}

void need_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (fmt == a) return;
  fail(ErrorKind::InvalidArgument, "format '" + fmt + "' is not available for this command");
}

int cmd_tree(const Job& job) {
  Field F = Field::parse(job.field);
  PolarAnalysis A = analyze(load(job, F), false, job.precision);
  need_format(job.format, {"text", "json", "dot"});
  if (job.format == "json")
    std::cout << A.tree.to_json() << "\n";
  else if (job.format == "dot")
    std::cout << A.tree.to_dot();
  else
    std::cout << "field " << A.field.spec() << "\n" << A.tree.to_ascii();
  return kOk;
}

int cmd_conditions(const Job& job) {
  Field F = Field::parse(job.field);
  PolarAnalysis A = analyze(load(job, F), false, job.precision);
  Conditions C = check_conditions(A);
  need_format(job.format, {"text", "json"});
  if (job.format == "json") {
    nlohmann::ordered_json j;
    j["field"] = A.field.spec();
    j["eggers"] = C.eggers;
    j["i_condition"] = C.i_cond;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& c : C.points) {
      const TreeNode& n = A.tree.node(c.node);
      j["points"].push_back({{"point", n.label}, {"c", n.c.str()}, {"i", n.i}, {"e", n.e.str()}, {"f_degree", c.f_degree},
                             {"eggers", c.eggers}, {"i_condition", c.i_cond}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "field " << A.field.spec() << "\n" << A.tree.to_ascii();
    for (const auto& c : C.points) {
      const TreeNode& n = A.tree.node(c.node);
      std::cout << n.label << ": i0(f_P,x)=" << c.f_degree << " i(P)=" << c.index << "  Eggers "
                << (c.eggers ? "holds" : "fails") << ", i-condition " << (c.i_cond ? "holds" : "fails") << "\n";
    }
    std::cout << "Eggers condition " << (C.eggers ? "holds" : "fails") << ", i-condition " << (C.i_cond ? "holds" : "fails") << "\n";
  }
  return C.eggers ? kOk : kMathFail;
}

int cmd_polar(const Job& job) {
  Field F = Field::parse(job.field);
  PolarAnalysis A = analyze(load(job, F), false, job.precision);
  DecompositionReport R = predicted_decomposition(A);
  need_format(job.format, {"text", "json"});
  std::cout << (job.format == "json" ? report_json(A, R) + "\n" : report_text(A, R));
  return kOk;
}

nlohmann::ordered_json oracle_checks(const PolarAnalysis& A) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (int k : A.f_factors) {
    const LocalFactor& lf = A.factors[static_cast<std::size_t>(k)];
    if (!lf.branch.param || !lf.branch.semigroup) continue;
    nlohmann::ordered_json o;
    o["factor"] = lf.label;
    const SemigroupData& S = *lf.branch.semigroup;
    std::int64_t bound = S.conductor() + S.gens[0];
    if (lf.branch.param->prec > bound) {
      auto gens = oracle::semigroup_oracle(*lf.branch.param, bound);
      o["semigroup"] = oracle::minimal_generators(S.gens) == gens;
    }
    for (int m : A.f_factors) {
      if (m == k) continue;
      const LocalFactor& other = A.factors[static_cast<std::size_t>(m)];
      try {
        std::int64_t v = oracle::i0_oracle(other.branch.w, *lf.branch.param);
        o["i0_" + other.label] = Rational(v) == A.i0[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
      } catch (const Error&) {
        o["i0_" + other.label] = "undecided";
      }
    }
    out.push_back(o);
  }
  return out;
}

int cmd_verify(const Job& job) {
  Field F = Field::parse(job.field);
  PolarAnalysis A = analyze(load(job, F), true, job.precision);
  DecompositionReport R = verify_decomposition(A);
  need_format(job.format, {"text", "json"});
  if (job.format == "json") {
    auto j = nlohmann::ordered_json::parse(report_json(A, R));
    if (job.with_oracles) j["oracles"] = oracle_checks(A);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_text(A, R);
    if (job.with_oracles) std::cout << "oracles: " << oracle_checks(A).dump() << "\n";
  }
  if (R.verdict == "fail") return kMathFail;
  return kOk;
}

int cmd_corpus(const CorpusOptions& opt, const std::string& format, const std::string& dump) {
  CorpusReport rep = run_corpus(opt);
  if (!dump.empty()) {
    std::filesystem::create_directories(dump);
    for (const auto& r : rep.results) {
      if (r.problems.empty() && r.error.empty()) continue;
      nlohmann::ordered_json j;
      j["index"] = r.index;
      j["field"] = r.field;
      j["f"] = r.poly;
      j["problems"] = r.problems;
      if (!r.error.empty()) j["error"] = r.error;
      std::ofstream(std::filesystem::path(dump) / ("instance_" + std::to_string(r.index) + ".json")) << j.dump(2) << "\n";
    }
  }
  if (format == "json") {
    std::cout << rep.to_json() << "\n";
  } else {
    need_format(format, {"text", "json"});
    std::cout << "instances " << rep.results.size() << ", E2 pass " << rep.e2_pass << ", E2 fail " << rep.e2_fail
              << ", counterexamples " << rep.counterexamples << ", errors " << rep.errors << "\n";
    std::cout << "i-condition true with E2 failing: " << rep.i_true_e2_fail.size() << " instances\n";
    for (const auto& r : rep.results) {
      if (!r.error.empty()) std::cout << "  #" << r.index << " " << r.field << " " << r.poly << ": " << r.error << "\n";
      for (const auto& p : r.problems) std::cout << "  #" << r.index << " " << r.field << " " << r.poly << ": " << p << "\n";
    }
  }
  if (rep.errors) return kError;
  return rep.counterexamples ? kMathFail : kOk;
}

void add_common(CLI::App* sub, Job& job) {
  sub->add_option("poly", job.expr, "polynomial in x and y, e.g. \"y*(y^2+x^3)\"");
  sub->add_option("--field", job.field, "GF(p), GF(p^k) or GF(p^k)[modulus=...]")->capture_default_str();
  sub->add_option("--file", job.file, "file with one factor per line");
  sub->add_option("--param", job.params, "parametrizations \"x=t^2, y=t^3; ...\", one branch each");
  sub->add_option("--precision", job.precision, "initial working precision in powers of x")->capture_default_str();
  sub->add_option("--format", job.format, "text, json or dot")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eggers-Wall trees and polar decompositions over finite fields"};
  app.require_subcommand(1);
  Job job;
  CorpusOptions copt;
  std::string cformat = "text", dump;
  std::string primes = "2,3,5";

  auto* tree = app.add_subcommand("tree", "build the Eggers-Wall tree");
  add_common(tree, job);
  auto* cond = app.add_subcommand("conditions", "Eggers and i-condition at every marked point");
  add_common(cond, job);
  auto* polar = app.add_subcommand("polar", "predicted decomposition of the polar");
  add_common(polar, job);
  auto* verify = app.add_subcommand("verify", "factor the polar and check the prediction");
  add_common(verify, job);
  verify->add_flag("--with-oracles", job.with_oracles, "cross-check branches against the brute-force oracles");
  auto* corpus = app.add_subcommand("corpus", "randomized sweep over generated instances");
  corpus->add_option("--seed", copt.seed)->capture_default_str();
  corpus->add_option("--count", copt.count)->capture_default_str();
  corpus->add_option("--primes", primes, "comma separated characteristics")->capture_default_str();
  corpus->add_option("--max-degree", copt.max_degree)->capture_default_str();
  corpus->add_option("--jobs", copt.jobs)->capture_default_str();
  corpus->add_option("--format", cformat, "text or json")->capture_default_str();
  corpus->add_option("--dump-counterexamples", dump, "directory for failing instances");
  corpus->add_flag("--no-identities", [&](std::int64_t) { copt.identities = false; }, "skip the identity suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }
  try {
    if (*tree) return cmd_tree(job);
    if (*cond) return cmd_conditions(job);
    if (*polar) return cmd_polar(job);
    if (*verify) return cmd_verify(job);
    if (*corpus) {
      copt.primes.clear();
      for (const auto& p : split(primes, ',')) copt.primes.push_back(std::stoull(p));
      if (copt.primes.empty()) fail(ErrorKind::InvalidArgument, "no primes given");
      return cmd_corpus(copt, cformat, dump);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
