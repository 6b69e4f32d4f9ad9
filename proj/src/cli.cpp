#include "cwb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "cwb/forcing.hpp"
#include "cwb/kernel.hpp"
#include "cwb/model.hpp"
#include "cwb/pca.hpp"
#include "cwb/realize.hpp"

namespace cwb::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

// ---------------------------------------------------------------- reports

bool is_failure(const std::string& verdict) {
  return verdict == "disagree" || verdict.rfind("unexpected", 0) == 0 || verdict.rfind("error", 0) == 0 ||
         verdict == "counterexample";
}

void sort_report(std::vector<Entry>& entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.entry, a.command) < std::tie(b.entry, b.command);
  });
}

std::string report_json(const std::vector<Entry>& entries) {
  json arr = json::array();
  for (auto& e : entries)
    arr.push_back({{"entry", e.entry}, {"command", e.command}, {"verdict", e.verdict}, {"detail", e.detail}});
  return arr.dump(2) + "\n";
}

std::string report_text(const std::vector<Entry>& entries) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (auto& e : entries) {
    out << e.entry << "  " << e.command << "  " << e.verdict;
    if (!e.detail.empty()) out << "  " << e.detail;
    out << "\n";
    failed += is_failure(e.verdict);
  }
  out << entries.size() << " entries, " << failed << " failed\n";
  return out.str();
}

Exit classify(const std::exception& e) {
  if (dynamic_cast<const pca::parse_error*>(&e) || dynamic_cast<const kernel::parse_error*>(&e) ||
      dynamic_cast<const holog::syntax_error*>(&e))
    return Exit::Parse;
  if (dynamic_cast<const kernel::type_error*>(&e)) return Exit::Type;
  if (dynamic_cast<const translate::unsupported*>(&e) || dynamic_cast<const model::unsupported*>(&e) ||
      dynamic_cast<const realize::unsupported*>(&e) || dynamic_cast<const holog::unbound_variable*>(&e) ||
      dynamic_cast<const pca::unbound_variable*>(&e))
    return Exit::Unsupported;
  if (dynamic_cast<const model::resource_error*>(&e) || dynamic_cast<const holog::resource_error*>(&e) ||
      dynamic_cast<const forcing::resource_error*>(&e) || dynamic_cast<const pca::overflow*>(&e))
    return Exit::Resource;
  if (dynamic_cast<const forcing::forcing_error*>(&e)) return Exit::Forcing;
  return Exit::Internal;
}

std::string category_name(Exit code) {
  switch (code) {
    case Exit::Ok: return "ok";
    case Exit::Failed: return "failed";
    case Exit::Usage: return "usage";
    case Exit::Parse: return "parse";
    case Exit::Type: return "type";
    case Exit::Unsupported: return "unsupported";
    case Exit::Resource: return "resource";
    case Exit::Io: return "io";
    case Exit::Forcing: return "forcing";
    case Exit::Internal: return "internal";
  }
  return "internal";
}

namespace {

std::string describe(const std::exception& e) {
  if (auto* p = dynamic_cast<const pca::parse_error*>(&e))
    return std::string(e.what()) + " at line " + std::to_string(p->line) + ", column " + std::to_string(p->col);
  if (auto* p = dynamic_cast<const kernel::parse_error*>(&e))
    return std::string(e.what()) + " at line " + std::to_string(p->line) + ", column " + std::to_string(p->col);
  if (auto* p = dynamic_cast<const kernel::type_error*>(&e))
    return p->rule + ": " + e.what() + " in " + p->location;
  return e.what();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::ios_base::failure("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path to an existing file is read; anything else is literal text.
std::string input_text(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return trim(read_file(arg));
  return arg;
}

holog::EvalConfig eval_config(const RunConfig& cfg) {
  holog::EvalConfig e;
  e.budget = cfg.budget;
  e.cutoff = cfg.cutoff;
  return e;
}

void run_parallel(std::vector<std::function<Entry()>>& tasks, std::vector<Entry>& out, std::size_t threads) {
  out.resize(tasks.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(tasks.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) out[i] = tasks[i]();
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

Entry guarded(const std::string& entry, const std::string& command, const std::function<Entry()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {entry, command, "error:" + category_name(classify(e)), describe(e)};
  }
}

Entry judgment_entry(const kernel::Judgment& j, const std::string& source) {
  return guarded(j.label, "check", [&] {
    auto r = kernel::run_judgment(j);
    std::string verdict;
    if (r.matches) verdict = j.expect_accept ? "accepted" : "rejected";
    else if (r.verdict.accepted != j.expect_accept) verdict = r.verdict.accepted ? "unexpected-accept" : "unexpected-reject";
    else verdict = "unexpected-rules";
    std::string detail = r.detail;
    if (detail.empty() && !r.verdict.accepted) detail = r.verdict.rule + ": " + r.verdict.reason;
    return Entry{j.label, "check", verdict, source + ":" + std::to_string(j.line) + (detail.empty() ? "" : " " + detail)};
  });
}

// Splits "<formula> with <env>".
std::pair<std::string, std::string> split_env(const std::string& text) {
  auto pos = text.find(" with ");
  if (pos == std::string::npos) return {trim(text), ""};
  return {trim(text.substr(0, pos)), trim(text.substr(pos + 6))};
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

holog::Env parse_env(const std::string& text, const holog::FormulaP& f) {
  holog::Env env;
  auto sorts = holog::free_vars(f);
  std::string rest = trim(text);
  while (!rest.empty()) {
    auto eq = rest.find('=');
    if (eq == std::string::npos) throw holog::syntax_error("expected name=value in '" + rest + "'");
    std::string name = trim(rest.substr(0, eq));
    rest = trim(rest.substr(eq + 1));
    // names not free in the formula are parsed and dropped
    int sort = -1;
    for (auto& [x, s] : sorts)
      if (x == name) sort = s;
    bool used = sort >= 0;
    if (!rest.empty() && rest[0] == '{') {
      auto close = rest.find('}');
      if (close == std::string::npos) throw holog::syntax_error("unclosed set in environment");
      if (used && sort != 1) throw holog::syntax_error("set value for " + name + " of sort " + std::to_string(sort));
      std::set<pca::Nat> xs;
      std::string body = rest.substr(1, close - 1);
      std::replace(body.begin(), body.end(), ',', ' ');
      for (auto& w : split_words(body)) xs.insert(std::stoull(w));
      if (used) env[name] = holog::set_value(holog::nat_set(xs));
      rest = trim(rest.substr(close + 1));
    } else {
      auto comma = rest.find(',');
      std::string value = trim(rest.substr(0, comma));
      if (used && sort != 0) throw holog::syntax_error("numeral value for " + name + " of sort " + std::to_string(sort));
      if (value.empty() || !std::all_of(value.begin(), value.end(), ::isdigit))
        throw holog::syntax_error("expected a numeral for " + name);
      if (used) env[name] = holog::nat_value(std::stoull(value));
      rest = comma == std::string::npos ? "" : rest.substr(comma);
    }
    if (!rest.empty() && rest[0] == ',') rest = trim(rest.substr(1));
  }
  return env;
}

std::vector<Entry> run_manifest(const std::string& text, const std::string& source, const RunConfig& cfg) {
  std::vector<std::function<Entry()>> tasks;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::string where = source + ":" + std::to_string(lineno);
    auto words = split_words(t);
    const std::string& directive = words[0];
    if (directive == "assert-type" || directive == "assert-fail") {
      try {
        auto js = kernel::parse_corpus(t);
        for (auto j : js) {
          j.line = lineno;
          tasks.push_back([j, source] { return judgment_entry(j, source); });
        }
      } catch (const std::exception& e) {
        std::string label = words.size() > 1 ? words[1] : where;
        tasks.push_back([label, where, msg = describe(e)] { return Entry{label, "check", "error:parse", where + " " + msg}; });
      }
      continue;
    }
    auto colon = t.find(" : ");
    std::string label = words.size() > 1 ? words[1] : where;
    if ((directive != "assert-agree" && directive != "assert-realized") || colon == std::string::npos) {
      tasks.push_back([label, where, directive] { return Entry{label, "corpus", "error:parse", where + " unknown or malformed directive " + directive}; });
      continue;
    }
    auto head = split_words(t.substr(0, colon));
    std::string body = t.substr(colon + 3);
    if (directive == "assert-agree") {
      if (head.size() < 4) {
        tasks.push_back([label, where] { return Entry{label, "corpus", "error:parse", where + " expected harness and truth value"}; });
        continue;
      }
      std::string harness = head[2];
      std::string expected = head[3];
      bool flagged = false;
      RunConfig line_cfg = cfg;
      bool bad_option = false;
      for (std::size_t i = 4; i < head.size(); ++i) {
        if (head[i] == "budget-sensitive") flagged = true;
        else if (head[i].rfind("cutoff=", 0) == 0 && head[i].size() > 7 &&
                 std::all_of(head[i].begin() + 7, head[i].end(), ::isdigit))
          line_cfg.cutoff = std::stoull(head[i].substr(7));
        else bad_option = true;
      }
      if (bad_option) {
        tasks.push_back([label, where] { return Entry{label, "corpus", "error:parse", where + " unknown option"}; });
        continue;
      }
      tasks.push_back([=] {
        return guarded(label, harness, [&] {
          auto [ftext, etext] = split_env(body);
          auto f = holog::parse(ftext);
          auto env = parse_env(etext, f);
          realize::Config rc;
          rc.eval = eval_config(line_cfg);
          realize::Report r;
          if (harness == "thm5") r = realize::check_relevant_soundness(f, env, rc);
          else if (harness == "thm1") r = realize::check_irrelevant_equiv(f, env, rc);
          else return Entry{label, harness, "error:parse", where + " unknown harness " + harness};
          std::string verdict = realize::to_string(r.verdict);
          if (r.verdict == realize::Agreement::Unknown && !flagged) verdict = "unexpected-unknown";
          if ((r.verdict == realize::Agreement::AgreeTrue && expected != "true") ||
              (r.verdict == realize::Agreement::AgreeFalse && expected != "false"))
            verdict = "unexpected-" + verdict;
          return Entry{label, harness, verdict, r.detail};
        });
      });
    } else {
      tasks.push_back([=] {
        return guarded(label, "realize", [&] {
          auto [ftext, etext] = split_env(body);
          auto f = holog::parse(ftext);
          auto env = parse_env(etext, f);
          realize::Config rc;
          rc.eval = eval_config(cfg);
          auto r = realize::check_relevant_soundness(f, env, rc);
          std::string verdict = r.model_side == Tri::True ? "realized"
                                : r.model_side == Tri::False ? "unexpected-unrealized"
                                                             : "unexpected-unknown";
          return Entry{label, "realize", verdict, r.realizer};
        });
      });
    }
  }
  std::vector<Entry> out;
  run_parallel(tasks, out, cfg.threads);
  return out;
}

// ---------------------------------------------------------------- commands

namespace {

std::vector<fs::path> collect(const std::vector<std::string>& args, const std::vector<std::string>& exts) {
  std::vector<fs::path> files;
  for (auto& a : args) {
    fs::path p(a);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (auto& e : fs::recursive_directory_iterator(p))
        if (e.is_regular_file() && std::find(exts.begin(), exts.end(), e.path().extension().string()) != exts.end())
          found.push_back(e.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw std::ios_base::failure("no such file or directory: " + a);
    }
  }
  return files;
}

int finish(std::vector<Entry> entries, const RunConfig& cfg, std::ostream& out) {
  sort_report(entries);
  out << (cfg.json ? report_json(entries) : report_text(entries));
  bool failed = std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return is_failure(e.verdict); });
  return static_cast<int>(failed ? Exit::Failed : Exit::Ok);
}

json summary(const model::AssemblyP& a, std::size_t limit) {
  json j;
  j["name"] = a->name;
  j["level"] = a->level;
  j["category"] = model::to_string(a->category);
  j["complete"] = a->complete;
  const auto& xs = a->enumerate();
  j["enumerated"] = xs.size();
  json elems = json::array(), reals = json::array();
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) {
    elems.push_back(model::show(xs[i]));
    auto r = a->find_realizer(xs[i]);
    reals.push_back(r ? pca::show(*r) : std::string("none"));
  }
  j["elements"] = elems;
  j["realizers"] = reals;
  return j;
}

int cmd_denote(const std::string& input, const RunConfig& cfg, std::ostream& out) {
  std::string text = input_text(input);
  std::string ctx_text, term_text = text;
  if (auto pos = text.find("|-"); pos != std::string::npos) {
    ctx_text = trim(text.substr(0, pos));
    term_text = trim(text.substr(pos + 2));
  }
  kernel::Context ctx;
  auto built = kernel::build_context(kernel::parse_context(ctx_text), ctx);
  if (!built.accepted) throw kernel::type_error(built.rule, built.location, built.reason);
  auto term = kernel::parse_term(term_text, ctx.names());
  auto v = kernel::infer(ctx, term);
  if (!v.accepted) throw kernel::type_error(v.rule, v.location, v.reason);
  model::World w;
  w.budget = cfg.budget;
  w.nat_bound = cfg.cutoff;
  json j;
  j["term"] = kernel::show(term, ctx.names());
  j["type"] = kernel::show(v.type, ctx.names());
  auto points = model::denote_context(ctx, w);
  const auto& ps = points->enumerate();
  if (ps.empty()) throw model::unsupported("the context has no enumerated point");
  auto type_whnf = kernel::whnf(ctx, v.type);
  if (type_whnf->kind == kernel::Term::Kind::Sort) {
    json pts = json::array();
    for (std::size_t i = 0; i < ps.size() && i < 4; ++i) {
      model::Env env;
      for (model::ElemP cur = ps[i]; cur->kind == model::Elem::Kind::Pair; cur = cur->a) env.insert(env.begin(), cur->b);
      json s = summary(model::denote_type(ctx, env, term, w), 8);
      s["point"] = model::show(ps[i]);
      pts.push_back(s);
    }
    j["denotation"] = pts;
  } else {
    auto m = model::denote_morphism(ctx, term, v.type, w);
    json pts = json::array();
    for (std::size_t i = 0; i < ps.size() && i < 8; ++i) {
      auto value = m.map(ps[i]);
      json p;
      p["point"] = model::show(ps[i]);
      p["value"] = model::show(value);
      auto r = m.cod(ps[i])->find_realizer(value);
      p["realizer"] = r ? pca::show(*r) : std::string("none");
      pts.push_back(p);
    }
    j["level"] = m.cod(ps.front())->level;
    j["points"] = pts;
    j["tracker"] = m.tracker ? pca::show(*m.tracker) : std::string("none");
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_realize(const std::string& input, const std::string& env_text, const RunConfig& cfg, std::ostream& out,
                bool thm1) {
  auto f = holog::parse(input_text(input));
  auto env = parse_env(env_text, f);
  realize::Config rc;
  rc.eval = eval_config(cfg);
  auto r = thm1 ? realize::check_irrelevant_equiv(f, env, rc) : realize::check_relevant_soundness(f, env, rc);
  if (cfg.json) {
    json j{{"formula", holog::show(f)}, {"verdict", realize::to_string(r.verdict)}, {"detail", r.detail},
           {thm1 ? "translation" : "realizer", r.realizer}, {"trace", r.trace}};
    out << j.dump(2) << "\n";
  } else {
    for (auto& l : r.trace) out << l << "\n";
    out << realize::to_string(r.verdict) << " (" << r.detail << ")\n";
  }
  return static_cast<int>(r.verdict == realize::Agreement::Disagree ? Exit::Failed : Exit::Ok);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for conservativity checks: kernel, translations, realizability, forcing"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--budget", cfg.budget, "step budget per evaluation")->default_val(100000)->check(CLI::PositiveNumber);
  app.add_option("--cutoff", cfg.cutoff, "bound of sort-0 quantifiers")->default_val(64)->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)");

  std::vector<std::string> paths;
  auto* check = app.add_subcommand("check", "check kernel judgment files or directories");
  check->add_option("paths", paths, "files or directories (*.judg)")->required();

  std::string text, env_text, mode = "irrelevant", govern = "x = x /\\ y = y";
  auto* eval = app.add_subcommand("eval", "evaluate a combinator term");
  eval->add_option("term", text, "term or file")->required();

  auto* tr = app.add_subcommand("translate", "translate a formula into a type");
  tr->add_option("formula", text, "formula or file")->required();
  tr->add_option("--mode", mode, "relevant or irrelevant")->check(CLI::IsMember({"relevant", "irrelevant"}));

  auto* denote = app.add_subcommand("denote", "summarize the denotation of a kernel term");
  denote->add_option("judgment", text, "[ctx |-] term, or file")->required();

  auto* real = app.add_subcommand("realize", "canonical realizer and soundness verdict");
  real->add_option("formula", text, "formula or file")->required();
  real->add_option("--let", env_text, "values of free variables, e.g. x=1, Y={0,2}");

  auto* thm1 = app.add_subcommand("thm1", "irrelevant-translation equivalence check");
  thm1->add_option("formula", text, "formula or file")->required();
  thm1->add_option("--let", env_text, "values of free variables");

  std::size_t count = 50;
  std::uint32_t seed = 20240601;
  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain, "objects range over 0..domain-1")->check(CLI::PositiveNumber);
    sub->add_option("--condition-size", cfg.condition_size, "largest condition")->check(CLI::PositiveNumber);
    sub->add_option("--govern", govern, "formula in x, y that every pair must satisfy");
  };
  auto* force = app.add_subcommand("force", "print the forcing translation");
  force->add_option("formula", text, "formula or file")->required();
  add_space(force);

  auto* fcheck = app.add_subcommand("force-check", "check the forcing meta-lemmas");
  fcheck->add_option("formulas", paths, "file with one formula per line (default: generated suite)");
  fcheck->add_option("--count", count, "size of the generated suite")->check(CLI::PositiveNumber);
  fcheck->add_option("--seed", seed, "seed of the generated suite");
  add_space(fcheck);

  auto* corpus = app.add_subcommand("corpus", "run corpus manifests");
  corpus->add_option("paths", paths, "manifest files or directories (*.manifest, *.judg)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(Exit::Usage);
  }
  cfg.mode = mode == "relevant" ? translate::Mode::Relevant : translate::Mode::Irrelevant;

  try {
    if (*check) {
      std::vector<std::function<Entry()>> tasks;
      for (auto& f : collect(paths, {".judg"})) {
        auto js = kernel::parse_corpus(read_file(f));
        for (auto& j : js) tasks.push_back([j, src = f.string()] { return judgment_entry(j, src); });
      }
      std::vector<Entry> entries;
      run_parallel(tasks, entries, cfg.threads);
      return finish(entries, cfg, out);
    }
    if (*eval) {
      auto o = pca::eval(pca::parse(input_text(text)), cfg.budget);
      if (cfg.json) out << json{{"outcome", pca::show(o)}, {"steps", o.steps}}.dump(2) << "\n";
      else out << (o.ok() ? pca::show(o.value) : pca::show(o)) << "\n";
      return 0;
    }
    if (*tr) {
      auto f = holog::parse(input_text(text));
      auto ty = translate::translate(f, cfg.mode);
      auto ctx = translate::ctx_of(f);
      auto v = kernel::infer(ctx, ty);
      std::string sort = v.accepted ? kernel::show(v.type) : "rejected: " + v.rule + ": " + v.reason;
      if (cfg.json) {
        out << json{{"context", kernel::show(ctx)}, {"type", kernel::show(ty, ctx.names())}, {"sort", sort}}.dump(2) << "\n";
      } else {
        out << kernel::show(ctx) << " |- " << kernel::show(ty, ctx.names()) << " : " << sort << "\n";
      }
      return static_cast<int>(v.accepted ? Exit::Ok : Exit::Type);
    }
    if (*denote) return cmd_denote(text, cfg, out);
    if (*real) return cmd_realize(text, env_text, cfg, out, false);
    if (*thm1) return cmd_realize(text, env_text, cfg, out, true);
    if (*force || *fcheck) {
      holog::EvalConfig base = eval_config(cfg);
      auto space = forcing::ConditionSpace::build(cfg.domain, cfg.condition_size, holog::parse(govern), base);
      if (*force) {
        auto f = holog::parse(input_text(text));
        out << holog::show(forcing::force("P", f, space.conditions.size() - 1)) << "\n";
        return 0;
      }
      std::vector<holog::FormulaP> suite;
      if (paths.empty()) {
        suite = forcing::generate_suite(count, cfg.domain, seed);
      } else {
        std::istringstream in(read_file(paths.front()));
        for (std::string line; std::getline(in, line);)
          if (!trim(line).empty() && trim(line)[0] != '#') suite.push_back(holog::parse(trim(line)));
      }
      std::vector<std::function<Entry()>> tasks;
      for (std::size_t i = 0; i < suite.size(); ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "f%03zu", i);
        tasks.push_back([f = suite[i], label = std::string(name), &space, base] {
          return guarded(label, "force-check", [&] {
            auto r = forcing::check_meta_lemmas(f, space, base);
            std::string verdict = r.counterexample ? "counterexample" : (r.unknown ? "unexpected-unknown" : "holds");
            std::string detail = holog::show(f) + " [" + std::to_string(r.checks) + " checks" +
                                 (r.base_applicable ? ", base" : "") + "]";
            if (r.counterexample) detail += " " + *r.counterexample;
            return Entry{label, "force-check", verdict, detail};
          });
        });
      }
      std::vector<Entry> entries;
      run_parallel(tasks, entries, cfg.threads);
      return finish(entries, cfg, out);
    }
    if (*corpus) {
      std::vector<Entry> entries;
      for (auto& f : collect(paths, {".manifest", ".judg"})) {
        auto part = run_manifest(read_file(f), f.string(), cfg);
        entries.insert(entries.end(), part.begin(), part.end());
      }
      return finish(entries, cfg, out);
    }
  } catch (const std::ios_base::failure& e) {
    err << "io: " << e.what() << "\n";
    return static_cast<int>(Exit::Io);
  } catch (const std::exception& e) {
    Exit code = classify(e);
    err << category_name(code) << ": " << describe(e) << "\n";
    return static_cast<int>(code);
  }
  return static_cast<int>(Exit::Usage);
}

}  // namespace cwb::cli
