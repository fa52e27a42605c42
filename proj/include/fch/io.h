#pragma once

#include <string>
#include <vector>

#include "fch/field.h"
#include "fch/forcing.h"
#include "fch/geometry.h"
#include "fch/hilbert.h"
#include "json.hpp"

namespace fch {

using json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curve: "x,y" rows in marker order, plus <path>.json with
// {"markers", "orientation": "ccw", "domain": [x0, y0, x1, y1]}
void write_curve(const std::string& path, const Curve& c);
Curve read_curve(const std::string& path);

// Snapshot: <base>.bin holds nx*ny little-endian doubles, index i + nx*j,
// <base>.json holds {"nx", "ny", "eps", "t", "dtype": "f64le", "layout": "i+nx*j"}
void write_snapshot(const std::string& base, const ScalarField2D& m, double eps, double t);
ScalarField2D read_snapshot(const std::string& base, double* eps = nullptr, double* t = nullptr);

// per-order constants and norms; field dumps mu_j / phi_j next to it when dir is given
json expansion_manifest(const ExpansionState& s);
void write_expansion(const std::string& dir, const ExpansionState& s);

// named analytic fields: {"type": "constant"|"cosine"|"gaussian", ...}, or a list summed
ForcingField forcing_from_json(const json& j);
// {"G1": [order 0, order 1, ...], "G2": [...]}
ForcingExpansion expansion_from_json(const json& j);
// {"type": "circle"|"ellipse"|"perturbed_circle", "center": [x, y], ...}
Curve curve_from_json(const json& j, int markers);

// Report: {"suite", "all_pass", "results": [{"name", "pass", "value", "tolerance", "detail"}]}
struct ReportEntry {
  std::string name;
  bool pass = false;
  double value = 0.0, tolerance = 0.0;
  std::string detail;
};
json make_report(const std::string& suite, const std::vector<ReportEntry>& entries);
// empty when the document matches the schema
std::vector<std::string> validate_report(const json& j);

json read_json(const std::string& path);
void write_json(const std::string& path, const json& j);

}  // namespace fch
