// Command-line driver: validate, run and replicate over JSON workspaces.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "catsite/commands.hpp"

namespace {

int emit(const catsite::CommandResult& result, const std::string& output) {
  const std::string text = result.report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write '" << output << "'\n";
      return catsite::kExitUsage;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite sites, sheaves, adhesive functors, Galois groups and Witt vectors"};
  app.require_subcommand(1);

  std::string input, task, output;
  std::size_t bound = 0;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check every entity of a workspace");
  validate->add_option("--input", input, "Workspace file")->required();
  validate->add_option("--output", output, "Report file (default: stdout)");

  auto* run = app.add_subcommand("run", "Run one task over a workspace");
  run->add_option("--input", input, "Workspace file")->required();
  run->add_option("--task", task, "Task name")->required();
  auto* bound_opt = run->add_option("--bound", bound, "Size bound for the task");
  run->add_option("--seed", seed, "Seed for order-independence checks");
  run->add_option("--output", output, "Report file (default: stdout)");

  std::string case_name;
  auto* rep = app.add_subcommand("replicate", "Reproduce a separation example");
  rep->add_option("case", case_name, "Case name");
  rep->add_option("--task", task, "Case name (alternative to the positional argument)");
  rep->add_option("--input", input, "Workspace file (default: the shipped fixture)");
  rep->add_option("--output", output, "Report file (default: stdout)");
  rep->add_option("--seed", seed, "Unused; accepted for uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return catsite::kExitUsage;
  }

  catsite::RunOptions options;
  options.seed = seed;
  if (bound_opt->count() > 0) options.bound = bound;

  if (*validate) return emit(catsite::cmd_validate(input), output);
  if (*run) return emit(catsite::cmd_run(input, task, options), output);

  if (case_name.empty()) case_name = task;
  if (case_name.empty()) {
    std::cerr << "replicate: name a case, one of:";
    for (const auto& c : catsite::replicate_cases()) std::cerr << ' ' << c;
    std::cerr << '\n';
    return catsite::kExitUsage;
  }
  return emit(catsite::cmd_replicate(case_name, input, options), output);
}
