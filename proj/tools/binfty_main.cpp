#include <fstream>
#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include "binfty/driver.hpp"

namespace {

std::string commands_line() {
  std::string s;
  for (const auto& c : binfty::command_names()) s += (s.empty() ? "" : ", ") + c;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for B-infinity structures on Hochschild complexes.\ncommands: " + commands_line()};
  std::string cmd;
  std::vector<std::string> files;
  std::string degrees = "0..2";
  std::string format = "text";
  std::string out_path;
  std::string suite = "all";
  std::string catalog = BINFTY_CATALOG_DIR;
  binfty::RunConfig cfg;
  app.add_option("command", cmd, "command to run")->required();
  app.add_option("files", files, "algebra or morphism JSON files");
  app.add_option("--arity", cfg.cut.arity, "arity cutoff N")->capture_default_str();
  app.add_option("--weight", cfg.cut.weight, "cobar weight cutoff P")->capture_default_str();
  app.add_option("--filtration", cfg.cut.filtration, "filtration cutoff F")->capture_default_str();
  app.add_option("--degrees", degrees, "Hochschild degree window a..b")->capture_default_str();
  app.add_option("--samples", cfg.samples, "probe tuples per sampled length")->capture_default_str();
  app.add_option("--budget", cfg.budget, "largest probe count enumerated exhaustively")->capture_default_str();
  app.add_option("--seed", cfg.seed, "probe and property-test seed")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--suite", suite, "proptest suite, or all")->capture_default_str();
  app.add_option("--catalog", catalog, "catalog directory for proptest")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  bool known = false;
  for (const auto& c : binfty::command_names()) known = known || c == cmd;
  if (!known) {
    std::cerr << "unknown command '" << cmd << "'\n" << app.help();
    return 2;
  }
  std::smatch m;
  if (!std::regex_match(degrees, m, std::regex(R"((\d+)\.\.(\d+))"))) {
    std::cerr << "--degrees expects a..b\n" << app.help();
    return 2;
  }
  cfg.degrees = {std::stoi(m[1]), std::stoi(m[2])};
  cfg.catalog = catalog;

  auto result = binfty::run_command(cmd, files, suite, cfg);
  auto fmt = format == "machine" ? binfty::ReportFormat::machine : binfty::ReportFormat::text;
  std::string text = binfty::emit_report(result.report, fmt);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  if (result.exit_code == 2 && result.report.error) std::cerr << *result.report.error << "\n";
  return result.exit_code;
}
