#include "fch/io.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fch {

namespace {
std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw IoError("cannot write " + path);
  return os;
}
std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw IoError("cannot read " + path);
  return is;
}
}  // namespace

json read_json(const std::string& path) {
  auto is = open_in(path);
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

void write_curve(const std::string& path, const Curve& c) {
  auto os = open_out(path);
  os.precision(17);
  for (const Vec2& p : c.points()) os << p[0] << ',' << p[1] << '\n';
  const Box& b = c.domain();
  write_json(path + ".json", {{"markers", c.size()},
                              {"orientation", c.enclosed_area() > 0 ? "ccw" : "cw"},
                              {"domain", {b.x0, b.y0, b.x1, b.y1}},
                              {"columns", {"x", "y"}}});
}

Curve read_curve(const std::string& path) {
  json side = read_json(path + ".json");
  auto is = open_in(path);
  std::vector<Vec2> pts;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double x, y;
    char comma;
    std::istringstream ls(line);
    if (!(ls >> x >> comma >> y) || comma != ',') throw IoError(path + ": bad row '" + line + "'");
    pts.push_back({x, y});
  }
  if (static_cast<int>(pts.size()) != side.at("markers").get<int>())
    throw IoError(path + ": marker count does not match the sidecar");
  auto d = side.at("domain").get<std::vector<double>>();
  if (side.value("orientation", "ccw") != "ccw") std::reverse(pts.begin(), pts.end());
  return Curve(std::move(pts), Box{d.at(0), d.at(1), d.at(2), d.at(3)});
}

void write_snapshot(const std::string& base, const ScalarField2D& m, double eps, double t) {
  static_assert(std::endian::native == std::endian::little, "snapshot writer assumes little-endian");
  auto os = open_out(base + ".bin", std::ios::binary);
  os.write(reinterpret_cast<const char*>(m.data.data()), static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  write_json(base + ".json",
             {{"nx", m.nx}, {"ny", m.ny}, {"eps", eps}, {"t", t}, {"dtype", "f64le"}, {"layout", "i+nx*j"}});
}

ScalarField2D read_snapshot(const std::string& base, double* eps, double* t) {
  json h = read_json(base + ".json");
  if (h.value("dtype", "") != "f64le") throw IoError(base + ": unsupported dtype");
  ScalarField2D m(h.at("nx").get<int>(), h.at("ny").get<int>());
  auto is = open_in(base + ".bin", std::ios::binary);
  is.read(reinterpret_cast<char*>(m.data.data()), static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  if (is.gcount() != static_cast<std::streamsize>(m.data.size() * sizeof(double)))
    throw IoError(base + ".bin: truncated");
  if (eps) *eps = h.at("eps").get<double>();
  if (t) *t = h.at("t").get<double>();
  return m;
}

json expansion_manifest(const ExpansionState& s) {
  json orders = json::array();
  for (int j = 0; j < static_cast<int>(s.orders.size()); ++j) {
    const OrderData& o = s.orders[j];
    double hmax = 0.0;
    for (const auto& h : o.h)
      for (double x : h.v) hmax = std::max(hmax, std::abs(x));
    orders.push_back({{"j", j},
                      {"mean_velocity", o.mean_v},
                      {"c", o.c},
                      {"b", o.b},
                      {"compat", o.compat},
                      {"v_orth_sup", o.v_orth.size() ? o.v_orth.cwiseAbs().maxCoeff() : 0.0},
                      {"alpha_sup", o.alpha.size() ? o.alpha.cwiseAbs().maxCoeff() : 0.0},
                      {"h_sup", hmax},
                      {"h_tail", o.h_tail},
                      {"h_even_defect", o.h_even_defect}});
  }
  return {{"eps", s.opt.eps}, {"eps0", s.opt.eps0},     {"grid", {s.opt.nx, s.opt.ny}},
          {"z_max", s.opt.z_max}, {"nz", s.opt.nz},     {"use_c0", s.opt.use_c0},
          {"c0", c0_eps(s.opt.eps, s.opt.eps0)},         {"markers", s.curve.size()},
          {"built", s.built},   {"orders", orders}};
}

void write_expansion(const std::string& dir, const ExpansionState& s) {
  std::filesystem::create_directories(dir);
  write_json(dir + "/manifest.json", expansion_manifest(s));
  for (int j = 0; j < static_cast<int>(s.orders.size()); ++j) {
    const OrderData& o = s.orders[j];
    if (!o.mu.data.empty()) write_snapshot(dir + "/mu_" + std::to_string(j), o.mu, s.opt.eps, 0.0);
    if (!o.phi.data.empty()) write_snapshot(dir + "/phi_" + std::to_string(j + 1), o.phi, s.opt.eps, 0.0);
  }
}

ForcingField forcing_from_json(const json& j) {
  if (j.is_null()) return ForcingField();
  if (j.is_array()) {
    ForcingField f;
    for (const auto& e : j) f += forcing_from_json(e);
    return f;
  }
  std::string type = j.at("type").get<std::string>();
  double amp = j.value("amp", 1.0);
  if (type == "zero") return ForcingField();
  if (type == "constant") return ForcingField::constant(amp);
  if (type == "cosine") return ForcingField::cosine(amp, j.at("k").get<int>(), j.at("l").get<int>());
  if (type == "gaussian") {
    auto c = j.at("center").get<std::vector<double>>();
    return ForcingField::gaussian(amp, {c.at(0), c.at(1)}, j.at("sigma").get<double>(), j.value("modes", 64));
  }
  throw IoError("unknown forcing type '" + type + "'");
}

ForcingExpansion expansion_from_json(const json& j) {
  ForcingExpansion e;
  if (j.is_null()) return e;
  for (const char* key : {"G1", "G2"}) {
    auto& out = std::string(key) == "G1" ? e.G1 : e.G2;
    if (!j.contains(key)) continue;
    for (const auto& order : j.at(key)) out.push_back(forcing_from_json(order));
  }
  e.remainder_bound = j.value("remainder_bound", 0.0);
  return e;
}

Curve curve_from_json(const json& j, int markers) {
  std::string type = j.at("type").get<std::string>();
  auto c = j.value("center", std::vector<double>{0.5, 0.5});
  Vec2 x0{c.at(0), c.at(1)};
  if (type == "circle") return Curve::circle(x0, j.at("R").get<double>(), markers);
  if (type == "ellipse") return Curve::ellipse(x0, j.at("a").get<double>(), j.at("b").get<double>(), markers);
  if (type == "perturbed_circle")
    return Curve::perturbed_circle(x0, j.at("R").get<double>(), j.at("amp").get<double>(), j.at("k").get<int>(),
                                   markers);
  throw IoError("unknown curve type '" + type + "'");
}

json make_report(const std::string& suite, const std::vector<ReportEntry>& entries) {
  json res = json::array();
  bool all = true;
  for (const auto& e : entries) {
    all = all && e.pass;
    // NaN is not representable in JSON
    json v = std::isfinite(e.value) ? json(e.value) : json(nullptr);
    res.push_back({{"name", e.name}, {"pass", e.pass}, {"value", v}, {"tolerance", e.tolerance}, {"detail", e.detail}});
  }
  return {{"suite", suite}, {"all_pass", all}, {"results", res}};
}

std::vector<std::string> validate_report(const json& j) {
  std::vector<std::string> err;
  if (!j.is_object()) return {"report is not an object"};
  if (!j.contains("suite") || !j["suite"].is_string()) err.push_back("suite: missing or not a string");
  if (!j.contains("all_pass") || !j["all_pass"].is_boolean()) err.push_back("all_pass: missing or not a boolean");
  if (!j.contains("results") || !j["results"].is_array()) {
    err.push_back("results: missing or not an array");
    return err;
  }
  bool all = true;
  for (size_t k = 0; k < j["results"].size(); ++k) {
    const json& r = j["results"][k];
    std::string at = "results[" + std::to_string(k) + "]";
    if (!r.is_object()) {
      err.push_back(at + ": not an object");
      continue;
    }
    if (!r.contains("name") || !r["name"].is_string()) err.push_back(at + ".name: missing or not a string");
    if (!r.contains("pass") || !r["pass"].is_boolean()) err.push_back(at + ".pass: missing or not a boolean");
    else all = all && r["pass"].get<bool>();
    if (!r.contains("value") || !(r["value"].is_number() || r["value"].is_null()))
      err.push_back(at + ".value: missing or not a number");
    if (!r.contains("tolerance") || !r["tolerance"].is_number()) err.push_back(at + ".tolerance: missing or not a number");
    if (r.contains("detail") && !r["detail"].is_string()) err.push_back(at + ".detail: not a string");
  }
  if (err.empty() && j["all_pass"].get<bool>() != all) err.push_back("all_pass disagrees with results");
  return err;
}

}  // namespace fch
