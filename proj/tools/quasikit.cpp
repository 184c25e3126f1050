#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "quasikit/report.hpp"

using namespace quasikit;

namespace {

int exit_for(const Error& e) { return e.kind() == ErrorKind::Config ? 1 : 2; }

Json load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open report " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Config, path + " is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faber, Grunsky, Schiffer and transmission computations for Jordan curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::string config_path, out_dir = "quasikit_out";
  std::vector<std::string> sets;
  for (const auto& name : commands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " computation");
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "override a config key, key=value (dotted keys for nested objects)");
    sub->add_option("--out", out_dir, "output directory for report.json and CSV tables");
  }
  std::string diff_a, diff_b;
  CLI::App* diff = app.add_subcommand("diff", "compare two report.json files");
  diff->add_option("a", diff_a, "first report")->required()->check(CLI::ExistingFile);
  diff->add_option("b", diff_b, "second report")->required()->check(CLI::ExistingFile);
  diff->add_option("--out", out_dir, "output directory for diff.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (diff->parsed()) {
      Json d = diff_reports(load_report(diff_a), load_report(diff_b));
      if (diff->count("--out")) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "diff.json") << d.dump(2) << '\n';
      }
      std::cout << d.dump(2) << '\n';
      return 0;
    }
    std::string command = app.get_subcommands().front()->get_name();
    ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
    for (const auto& s : sets) cfg.set(s);
    RunReport rep = run(command, cfg);
    rep.write(out_dir);
    for (const auto& r : rep.residuals)
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " [" << to_string(r.suite) << "] " << r.value
                << " (tol " << r.tolerance << ")\n";
    std::cout << "report: " << (std::filesystem::path(out_dir) / "report.json").string() << '\n';
    return rep.exit_code();
  } catch (const Error& e) {
    std::cerr << "quasikit: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "quasikit: " << e.what() << '\n';
    return 1;
  }
}
