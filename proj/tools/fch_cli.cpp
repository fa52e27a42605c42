#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "experiments.h"

int main(int argc, char** argv) {
  CLI::App app{"forced Cahn-Hilliard / Mullins-Sekerka experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<double> eps_list;
  int markers = 0, grid = -1;
  unsigned seed = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--eps-list", eps_list, "eps values, largest first")->delimiter(',');
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--markers", markers, "markers on the sharp curve")->check(CLI::Range(16, 4096));
    sub->add_option("--grid", grid, "grid size for the CH and residual runs (0 = automatic)")->check(CLI::Range(0, 4096));
    sub->add_option("--seed", seed, "seed for randomized checks");
  };
  auto* unit = app.add_subcommand("unit", "criteria 1, 2, 3, 6");
  auto* ident = app.add_subcommand("identities", "criteria 4, 5, 9");
  auto* conv = app.add_subcommand("converge", "criteria 7, 8");
  auto* tables = app.add_subcommand("profile-tables", "write the 1D profile tables");
  for (auto* s : {unit, ident, conv, tables}) common(s);
  CLI11_PARSE(app, argc, argv);

  harness::Settings s;
  try {
    if (!config_path.empty()) s = harness::settings_from_json(fch::read_json(config_path), s);
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << '\n';
    return 2;
  }
  // flags override the file
  if (!eps_list.empty()) s.eps_list = eps_list;
  if (!out_dir.empty()) s.out = out_dir;
  if (markers > 0) s.markers = markers;
  if (grid >= 0) s.grid = grid;
  if (seed > 0) s.seed = seed;

  if (tables->parsed()) {
    std::string dir = s.out.empty() ? "." : s.out;
    harness::write_profile_tables(dir);
    std::cout << "wrote " << dir << "/profile.csv and " << dir << "/surface_tension.csv\n";
    return 0;
  }

  std::string suite = unit->parsed() ? "unit" : ident->parsed() ? "identities" : "converge";
  std::vector<harness::Criterion> cs;
  try {
    cs = unit->parsed() ? harness::run_unit(s) : ident->parsed() ? harness::run_identities(s) : harness::run_converge(s);
  } catch (const std::exception& e) {
    std::cerr << suite << ": " << e.what() << '\n';
    return 3;
  }
  bool ok = true;
  for (const auto& c : cs) {
    std::cout << c.line() << '\n';
    ok = ok && c.pass();
  }
  fch::json rep = harness::report_of(suite, cs);
  if (!s.out.empty()) {
    std::filesystem::create_directories(s.out);
    fch::write_json(s.out + "/" + suite + "_report.json", rep);
  }
  auto problems = fch::validate_report(rep);
  for (const auto& p : problems) std::cerr << "report: " << p << '\n';
  return ok && problems.empty() ? 0 : 1;
}
