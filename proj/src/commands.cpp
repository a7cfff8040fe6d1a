#include <map>

#include "binfty/driver.hpp"

namespace binfty {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate",   "hochschild", "diagram",
                                              "tau-check",  "mc-check",   "extend-check",
                                              "cobar-check", "cohomology-compare", "proptest"};
  return names;
}

namespace {

using MorphismCheck = void (*)(Report&, const AlgebraMorphism&, const RunConfig&, const std::string&);

const std::map<std::string, MorphismCheck>& morphism_commands() {
  static const std::map<std::string, MorphismCheck> m{
      {"diagram", diagram_checks},        {"tau-check", tau_checks},
      {"mc-check", mc_checks},            {"extend-check", extend_checks},
      {"cobar-check", cobar_checks},      {"cohomology-compare", cohomology_compare_checks},
  };
  return m;
}

void usage_error(CommandResult& out, const std::string& msg) {
  out.report.error = "usage: " + msg;
  out.exit_code = 2;
}

void require_files(const std::vector<std::string>& files, std::size_t n, const std::string& cmd) {
  if (files.size() != n)
    throw Error(ErrorKind::InvalidInput, cmd + " expects " + std::to_string(n) + " input file" + (n == 1 ? "" : "s"));
}

}  // namespace

CommandResult run_command(const std::string& cmd, const std::vector<std::string>& files, const std::string& suite,
                          const RunConfig& cfg) {
  CommandResult out;
  Report& r = out.report;
  r.suite = cmd == "proptest" ? "proptest:" + suite : cmd;
  r.cutoffs = cfg.cut;
  r.seed = cfg.seed;
  r.samples = cfg.samples;
  r.inputs = files;
  r.note("degrees", std::to_string(cfg.degrees.first) + ".." + std::to_string(cfg.degrees.second));
  r.note("exhaustive_budget", std::to_string(cfg.budget));
  if (cfg.cut.arity < 1 || cfg.cut.weight < 1 || cfg.cut.filtration < 1 || cfg.samples < 1 ||
      cfg.degrees.first < 0 || cfg.degrees.first > cfg.degrees.second) {
    usage_error(out, "cutoffs and samples must be positive and degrees a..b with 0 <= a <= b");
    return out;
  }
  try {
    if (cmd == "validate") {
      require_files(files, 1, cmd);
      Json j = read_json_file(files[0]);
      try {
        if (is_morphism_json(j)) {
          auto f = morphism_from_json(j, std::filesystem::path(files[0]).parent_path());
          r.add(validation_checks(f));
          CheckResult inj(f.name + ".injective", "Injectivity");
          inj.probes = 1;
          inj.note("injective", is_injective(f) ? "yes" : "no");
          r.add(inj);
        } else {
          r.add(validation_checks(algebra_from_json(j)));
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ParseError) throw;
        throw Error(ErrorKind::ParseError, files[0] + ": " + e.message());
      }
    } else if (cmd == "hochschild") {
      require_files(files, 1, cmd);
      hochschild_checks(r, load_algebra(files[0]), cfg);
    } else if (auto it = morphism_commands().find(cmd); it != morphism_commands().end()) {
      require_files(files, 1, cmd);
      it->second(r, load_morphism(files[0]), cfg, "");
    } else if (cmd == "proptest") {
      require_files(files, 0, cmd);
      bool known = suite == "all";
      for (const auto& s : suite_names()) known = known || s == suite;
      if (!known) {
        usage_error(out, "unknown suite '" + suite + "'");
        return out;
      }
      Catalog cat = load_catalog(cfg.catalog);
      run_suite(r, suite, cat, cfg);
    } else {
      usage_error(out, "unknown command '" + cmd + "'");
      return out;
    }
  } catch (const ValidationError& e) {
    r.add(e.checks());
    r.error = e.what();
    out.exit_code = 2;
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidInput) {
      r.error = e.what();
      out.exit_code = 2;
      return out;
    }
    CheckResult c(cmd, "Error");
    c.note("error", e.what());
    c.fail({cmd, std::string("raised ") + error_name(e.kind()), "completed", e.what()});
    r.add(c);
  }
  out.exit_code = r.passed() ? 0 : 1;
  return out;
}

}  // namespace binfty
