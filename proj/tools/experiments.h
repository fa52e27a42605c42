#pragma once

#include <string>
#include <vector>

#include "fch/io.h"

namespace harness {

struct Settings {
  std::vector<double> eps_list{0.04, 0.02, 0.01};
  int markers = 64;
  int grid = 0;  // 0: 5.12/eps for the CH runs, 512 for the residual study
  unsigned seed = 1;
  std::string out;  // empty: no files
  fch::json config = fch::json::object();
};

// overlay of a JSON config, keys as in the CLI flags
Settings settings_from_json(const fch::json& j, Settings base = {});

struct Criterion {
  int id = 0;
  std::string name;
  std::vector<fch::ReportEntry> entries;
  double seconds = 0.0, budget = 0.0;
  bool pass() const;
  std::string line() const;  // one summary line
};

Criterion surface_tension_criterion(const Settings& s);  // 1
Criterion operator_criterion(const Settings& s);         // 2
Criterion potential_criterion(const Settings& s);        // 3
Criterion unforced_flow_criterion(const Settings& s);    // 4
Criterion identities_criterion(const Settings& s);       // 5
Criterion ch_invariants_criterion(const Settings& s);    // 6
Criterion residual_criterion(const Settings& s);         // 7
Criterion convergence_criterion(const Settings& s);      // 8
Criterion cross_validation_criterion(const Settings& s); // 9

// subcommand groups
std::vector<Criterion> run_unit(const Settings& s);        // 1, 2, 3, 6
std::vector<Criterion> run_identities(const Settings& s);  // 4, 5, 9
std::vector<Criterion> run_converge(const Settings& s);    // 7, 8
void write_profile_tables(const std::string& dir);

fch::json report_of(const std::string& suite, const std::vector<Criterion>& cs);

}  // namespace harness
