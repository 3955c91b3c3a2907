#include "qbcurv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  using namespace qbcurv;
  CLI::App app{"Curvature tables, exact certificates and sampling checks for the (B3, alpha2) space"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  RunConfig cfg;
  std::map<std::string, Command> commands(command_names().begin(), command_names().end());
  std::map<std::string, Format> formats{{"json", Format::kJson}, {"csv", Format::kCsv}};
  std::string out_path, command, format = "json";
  std::vector<std::string> command_list;
  for (const auto& [name, c] : command_names()) command_list.push_back(name);

  app.add_option("command", command, "Subcommand to run")->required()->check(CLI::IsMember(command_list));
  app.add_option("--format", format, "json (default) or csv; csv applies to table only")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "64-bit seed (default 0)");
  app.add_option("--count", cfg.count, "number of samples for verify-sample (default 100000)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "write the report to this file instead of stdout");
  app.add_option("--steps", cfg.steps, "descent steps per start for minimize (default 5000)")->check(CLI::NonNegativeNumber);
  app.add_option("--starts", cfg.starts, "random starts for minimize (default 20)")->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "threads for verify-sample (default 1); output does not depend on it")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }
  cfg.command = commands.at(command);
  cfg.format = formats.at(format);

  try {
    if (out_path.empty()) return run(cfg, std::cout);
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot open " << out_path << " for writing\n";
      return 2;
    }
    return run(cfg, f);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
