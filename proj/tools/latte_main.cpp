// Command-line front end: `latte check`, `latte run`, `latte corpus`.
#include <CLI11.hpp>
#include <iostream>

#include "latte/cli/driver.hpp"
#include "latte/corpus/corpus.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Type checker and reference interpreter for the Latte core language"};
  app.require_subcommand(1);

  std::string check_path;
  latte::CheckFlags check_flags;
  auto* check = app.add_subcommand("check", "Type-check a program");
  check->add_option("file", check_path, "Latte source file")->required();
  check->add_flag("--json", check_flags.json, "Print diagnostics as JSON");
  check->add_flag("--dump-env", check_flags.dump_env, "Print the typing environment after every statement");

  std::string run_path;
  latte::RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Type-check, then execute a script under the uniqueness oracle");
  run->add_option("file", run_path, "Latte source file")->required();
  run->add_option("--script", run_flags.script, "JSON script of constructions and calls")->required();
  run->add_flag("--json", run_flags.json, "Print the outcome as JSON");
  run->add_flag("--no-check", run_flags.no_check, "Execute even if the program does not type-check");
  run->add_option("--step-limit", run_flags.step_limit, "Maximum number of executed statements");

  std::string corpus_dir;
  auto* corpus = app.add_subcommand("corpus", "Run every case of a corpus directory");
  corpus->add_option("dir", corpus_dir, "Corpus root (with accept/, reject/, dynamic/)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : latte::kExitIoError;
  }

  if (*check) {
    check_flags.color = latte::color_from_env();
    return latte::check_file(check_path, check_flags, std::cout, std::cerr);
  }
  if (*run) return latte::run_file(run_path, run_flags, std::cout, std::cerr);

  try {
    latte::CorpusReport report = latte::run_corpus(corpus_dir);
    std::cout << report.str();
    return report.all_passed() ? latte::kExitOk : latte::kExitTypeErrors;
  } catch (const latte::CorpusError& e) {
    std::cerr << "latte: " << e.what() << "\n";
    return latte::kExitIoError;
  }
}
