#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cybelab/dsl.hpp"
#include "cybelab/errors.hpp"
#include "cybelab/report.hpp"
#include "cybelab/suites.hpp"

using namespace cybelab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for rational r-matrix pencils"};
  std::string suite;
  std::optional<std::string> window, pencil, seed, format, out, expr, z;
  app.add_option("suite", suite, "suite name")->required();
  app.add_option("--window", window, "window size N");
  app.add_option("--pencil", pencil, "pencil coefficients a1,a2,a3 or 'symbolic'");
  app.add_option("--seed", seed, "pseudo-random seed");
  app.add_option("--format", format, "text or machine");
  app.add_option("--out", out, "write the report to FILE");
  app.add_option("--expr", expr, "DSL expression checked by the cybe suite");
  app.add_option("--z", z, "explore-z points z1,z2");
  app.footer("Suites: cybe compat shift stolin lemma3 gram calibrate manin decompose explore-z\n"
             "CYBELAB_CONFIG names a key = value config file; flags override it.\n"
             "Exit codes: 0 all checks pass, 1 a check fails, 2 configuration or parse error.");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  SuiteConfig cfg;
  try {
    bool known = false;
    for (const auto& n : suite_names()) known = known || n == suite;
    if (!known) throw ConfigError("unknown suite '" + suite + "'");
    if (const char* path = std::getenv("CYBELAB_CONFIG"); path && *path)
      for (const auto& [k, v] : parse_config_text(read_file(path))) apply_config(cfg, k, v);
    const std::pair<const char*, std::optional<std::string>*> flags[] = {
        {"window", &window}, {"pencil", &pencil}, {"seed", &seed}, {"format", &format},
        {"out", &out},       {"expr", &expr},     {"z", &z}};
    for (const auto& [key, value] : flags)
      if (*value) apply_config(cfg, key, **value);
    if (!cfg.expr.empty()) parse_tensor(cfg.expr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const AtomEscape& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return kExitConfig;
  }

  const Report report = run_suite(suite, cfg);
  const std::string text = cfg.format == "machine" ? serialize_report(report) : format_text(report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(cfg.out);
    if (!os) {
      std::cerr << "cannot write '" << cfg.out << "'\n";
      return kExitConfig;
    }
    os << text;
  }
  return report.all_pass() ? kExitPass : kExitFail;
}
