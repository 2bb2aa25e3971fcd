#pragma once
// JSON wire formats. Complexes: {"name","dim","cells":[counts],
// "incidence":{"k": [[[face,coeff],...] per cell]}}. Cochains:
// {"degree","coeff","values":[[cell,[residues]],...]}. Reports always use
// ordered serialization so identical runs produce identical bytes.

#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/group.hpp"
#include "cobex/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace cobex {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(const CellComplex& X) {
  Json j;
  j["name"] = X.name();
  j["dim"] = X.dim();
  Json cells = Json::array();
  for (int k = 0; k <= X.dim(); ++k) cells.push_back(X.cells(k));
  j["cells"] = std::move(cells);
  Json inc = Json::object();
  for (int k = 1; k <= X.dim(); ++k) {
    Json level = Json::array();
    for (int c = 0; c < X.cells(k); ++c) {
      Json fl = Json::array();
      for (auto& [f, coeff] : X.faces(k, c)) fl.push_back(Json::array({f, coeff}));
      level.push_back(std::move(fl));
    }
    inc[std::to_string(k)] = std::move(level);
  }
  j["incidence"] = std::move(inc);
  return j;
}

inline CellComplex complex_from_json(const Json& j) {
  require(j.is_object() && j.contains("dim") && j.contains("cells"),
          errc::bad_parameters, "complex JSON needs 'dim' and 'cells'");
  std::string name = j.value("name", std::string("unnamed"));
  int dim = j.at("dim").get<int>();
  std::vector<int> counts = j.at("cells").get<std::vector<int>>();
  std::vector<std::vector<FaceList>> inc(std::size_t(dim) + 1);
  if (!counts.empty() && counts.size() == std::size_t(dim) + 1)
    for (int k = 0; k <= dim; ++k)
      inc[std::size_t(k)].resize(std::size_t(std::max(0, counts[std::size_t(k)])));
  if (j.contains("incidence")) {
    for (auto& [key, level] : j.at("incidence").items()) {
      int k = std::stoi(key);
      require(k >= 1 && k <= dim, errc::bad_parameters,
              "incidence key '" + key + "' out of range");
      inc[std::size_t(k)].clear();
      for (auto& row : level) {
        FaceList fl;
        for (auto& e : row)
          fl.emplace_back(e.at(0).get<int>(), e.at(1).get<std::int64_t>());
        inc[std::size_t(k)].push_back(std::move(fl));
      }
    }
  }
  return CellComplex(name, dim, std::move(counts), std::move(inc));
}

inline Json cochain_to_json(const Cochain& c) {
  Json j;
  j["degree"] = c.degree();
  j["coeff"] = c.group().name();
  Json vals = Json::array();
  for (auto& [cell, v] : c.entries())
    vals.push_back(Json::array({cell, c.group().decode(v)}));
  j["values"] = std::move(vals);
  return j;
}

inline Cochain cochain_from_json(const Json& j, const CellComplex& X) {
  require(j.is_object() && j.contains("degree") && j.contains("coeff"),
          errc::bad_parameters, "cochain JSON needs 'degree' and 'coeff'");
  CoefficientGroup A = CoefficientGroup::parse(j.at("coeff").get<std::string>());
  Cochain c(X, j.at("degree").get<int>(), A);
  if (j.contains("values")) {
    for (auto& e : j.at("values")) {
      int cell = e.at(0).get<int>();
      auto residues = e.at(1).get<std::vector<std::int64_t>>();
      c.set(cell, A.encode(residues));
    }
  }
  return c;
}

inline Json rational_to_json(const Rational& r) {
  return Json::array({r.numerator(), r.denominator()});
}

// extended value: [num, den] or "inf"
inline Json ext_rational_to_json(const ExtRational& r) {
  if (!r) return Json("inf");
  return rational_to_json(*r);
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), errc::bad_parameters, "cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  require(bool(out), errc::bad_parameters, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

inline CellComplex load_complex_file(const std::string& path) {
  return complex_from_json(load_json_file(path));
}

}  // namespace cobex
