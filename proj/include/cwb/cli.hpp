#pragma once
// Command-line front end: subcommands, manifest runner and reports.
#include <iosfwd>
#include <string>
#include <vector>

#include "cwb/holog.hpp"
#include "cwb/translate.hpp"

namespace cwb::cli {

// Process exit codes, one per error category.
enum class Exit : int {
  Ok = 0,
  Failed = 1,       // some disagree or unexpected verdict
  Usage = 2,
  Parse = 3,
  Type = 4,         // ill-typed kernel input
  Unsupported = 5,  // outside a supported fragment
  Resource = 6,     // a bound or budget was exceeded
  Io = 7,
  Forcing = 8,
  Internal = 9,
};

struct RunConfig {
  pca::Nat budget = 100000;
  pca::Nat cutoff = 64;
  pca::Nat domain = 4;
  std::size_t condition_size = 2;
  translate::Mode mode = translate::Mode::Irrelevant;
  bool json = false;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct Entry {
  std::string entry, command, verdict, detail;
};

// Verdicts that make the run fail.
bool is_failure(const std::string& verdict);
// Sorted by entry, then command; stable otherwise.
void sort_report(std::vector<Entry>& entries);
std::string report_json(const std::vector<Entry>& entries);
std::string report_text(const std::vector<Entry>& entries);

// Category of an exception thrown by the library, and its name.
Exit classify(const std::exception& e);
std::string category_name(Exit code);

// One directive per line:
//   assert-type / assert-fail  (kernel judgments)
//   assert-agree <label> <thm1|thm5> <true|false> [budget-sensitive] [cutoff=N] : <formula> [with x=1, Y={0,2}]
//   assert-realized <label> : <formula> [with ...]
// Blank lines and lines starting with # are skipped.
std::vector<Entry> run_manifest(const std::string& text, const std::string& source, const RunConfig& cfg);

// `x=1, Y={0,2}` with sorts taken from the formula's free variables.
holog::Env parse_env(const std::string& text, const holog::FormulaP& f);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cwb::cli
