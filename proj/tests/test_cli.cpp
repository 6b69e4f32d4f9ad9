#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cwb/cli.hpp"
#include "cwb/kernel.hpp"
#include "oracles/naive_holog.hpp"

using namespace cwb;
using cli::Exit;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cwb");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return std::string(CWB_CORPUS_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Line {
  std::string label, harness;
  bool expected;
  std::optional<pca::Nat> cutoff;
  std::string formula, env;
};

std::vector<Line> agree_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("assert-agree ", 0) != 0) continue;
    auto colon = line.find(" : ");
    std::istringstream head(line.substr(0, colon));
    std::string directive, truth, word;
    Line l;
    head >> directive >> l.label >> l.harness >> truth;
    l.expected = truth == "true";
    while (head >> word)
      if (word.rfind("cutoff=", 0) == 0) l.cutoff = std::stoull(word.substr(7));
    std::string body = line.substr(colon + 3);
    auto with = body.find(" with ");
    l.formula = body.substr(0, with);
    if (with != std::string::npos) l.env = body.substr(with + 6);
    out.push_back(l);
  }
  return out;
}

oracle::Assignment assignment(const holog::Env& env) {
  oracle::Assignment as;
  for (auto& [name, v] : env) {
    if (v.sort == 0) as.nats[name] = *pca::as_num(v.code);
    else as.sets[name] = v.set.nats;
  }
  return as;
}

}  // namespace

TEST_CASE("evaluation and exit codes") {
  auto r = invoke({"eval", "(\\x. suc x) 4"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");
  CHECK(invoke({}).code == static_cast<int>(Exit::Usage));
  CHECK(invoke({"no-such-command"}).code == static_cast<int>(Exit::Usage));
  auto bad = invoke({"eval", "(\\x. "});
  CHECK(bad.code == static_cast<int>(Exit::Parse));
  CHECK_FALSE(bad.err.empty());
  CHECK(invoke({"check", "/no/such/path"}).code == static_cast<int>(Exit::Io));
  CHECK(invoke({"thm1", "R(0, 1)"}).code == static_cast<int>(Exit::Unsupported));
}

TEST_CASE("harness commands") {
  auto t1 = invoke({"--cutoff", "3", "thm1", "x in Y:1", "--let", "x=1, Y={1}"});
  CHECK(t1.code == 0);
  CHECK(t1.out.find("agree-true") != std::string::npos);
  auto t5 = invoke({"--cutoff", "16", "realize", "exists y. S y = 0"});
  CHECK(t5.code == 0);
  CHECK(t5.out.find("agree-false") != std::string::npos);
  auto tr = invoke({"translate", "0 = 0 \\/ 0 = 1", "--mode", "irrelevant"});
  CHECK(tr.code == 0);
  CHECK(tr.out.find("Trunc") != std::string::npos);
  auto fo = invoke({"force", "R(x, y)", "--domain", "2", "--condition-size", "1"});
  CHECK(fo.code == 0);
  CHECK(fo.out.find("mem(x, y,") != std::string::npos);
  CHECK(invoke({"force", "Q(0)"}).code == static_cast<int>(Exit::Forcing));
}

TEST_CASE("reports are sorted and byte-stable") {
  std::vector<cli::Entry> entries{{"b", "thm5", "agree-true", ""}, {"a", "thm1", "disagree", "x"},
                                  {"a", "check", "accepted", ""}};
  cli::sort_report(entries);
  CHECK(entries[0].entry == "a");
  CHECK(entries[0].command == "check");
  CHECK(entries[2].entry == "b");
  auto once = cli::report_json(entries), twice = cli::report_json(entries);
  CHECK(once == twice);
  CHECK(once.find("\"entry\": \"a\"") != std::string::npos);
  CHECK(cli::report_text(entries).find("3 entries, 1 failed") != std::string::npos);

  auto j1 = invoke({"--json", "--threads", "1", "corpus", corpus("harness/thm1.manifest")});
  auto j2 = invoke({"--json", "--threads", "2", "corpus", corpus("harness/thm1.manifest")});
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
}

TEST_CASE("verdict classes") {
  for (auto v : {"disagree", "unexpected-accept", "unexpected-unknown", "error:parse", "counterexample"})
    CHECK(cli::is_failure(v));
  for (auto v : {"agree-true", "agree-false", "accepted", "rejected", "holds", "unknown"})
    CHECK_FALSE(cli::is_failure(v));
  CHECK(cli::classify(holog::syntax_error("x")) == Exit::Parse);
  CHECK(cli::classify(std::runtime_error("x")) == Exit::Internal);
  CHECK(cli::category_name(Exit::Type) == "type");
}

TEST_CASE("environments") {
  auto f = holog::parse("x in Y:1 /\\ z = z");
  auto env = cli::parse_env("x=1, Y={0,2}, z=7", f);
  REQUIRE(env.size() == 3);
  CHECK(pca::as_num(env.at("x").code) == std::optional<pca::Nat>(1));
  CHECK(env.at("Y").set.nats == std::set<pca::Nat>{0, 2});
  CHECK(pca::as_num(env.at("z").code) == std::optional<pca::Nat>(7));
  CHECK(cli::parse_env("x=1, unused=4", f).count("unused") == 0);
  CHECK_THROWS_AS(cli::parse_env("Y=3", f), holog::syntax_error);
  CHECK_THROWS_AS(cli::parse_env("x={1}", f), holog::syntax_error);
  CHECK_THROWS_AS(cli::parse_env("x", f), holog::syntax_error);
}

TEST_CASE("manifest directives") {
  cli::RunConfig cfg;
  cfg.threads = 1;
  auto entries = cli::run_manifest(
      "# comment\n"
      "assert-agree a thm5 true cutoff=8 : forall x. 0 + x = x\n"
      "assert-agree b thm5 true cutoff=8 : 0 = 1\n"
      "assert-realized c : exists y. y = 2\n"
      "assert-agree d thm5 maybe bogus : 0 = 0\n"
      "assert-type e : Nat : Set @ type_var\n"
      "frobnicate f : 0 = 0\n",
      "inline", cfg);
  cli::sort_report(entries);
  REQUIRE(entries.size() == 6);
  CHECK(entries[0].verdict == "agree-true");
  CHECK(entries[1].verdict == "unexpected-agree-false");
  CHECK(entries[2].verdict == "realized");
  CHECK(entries[3].verdict == "error:parse");
  CHECK(entries[5].verdict == "error:parse");
}

TEST_CASE("frozen truth values agree with the reference evaluator") {
  std::size_t checked = 0;
  for (auto name : {"harness/thm5.manifest", "harness/thm1.manifest"}) {
    for (auto& l : agree_lines(slurp(corpus(name)))) {
      INFO(l.label);
      auto f = holog::parse(l.formula);
      bool higher = false;
      for (auto& [x, sort] : holog::free_vars(f)) higher = higher || sort > 1;
      if (l.formula.find(":2") != std::string::npos || higher) continue;
      pca::Nat cutoff = l.cutoff.value_or(64);
      oracle::World w;
      if (l.harness == "thm5") w = {cutoff, cutoff + 1, cutoff + 1};
      else w = {cutoff, cutoff, cutoff + 1};
      auto env = cli::parse_env(l.env, f);
      CHECK(oracle::truth(f, assignment(env), w) == l.expected);
      ++checked;
    }
  }
  CHECK(checked >= 70);
}

TEST_CASE("kernel corpus through the command line") {
  auto r = invoke({"check", corpus("kernel")});
  CHECK(r.code == 0);
  CHECK(r.out.find(", 0 failed") != std::string::npos);
}
