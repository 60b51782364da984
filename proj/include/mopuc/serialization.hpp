// JSON (and minimal CSV) serialization for the public data types.
//
// Complex scalars are [re, im] pairs; a matrix is an array of rows of such
// pairs. The measure schemas are documented in README.md and kept stable.

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mopuc/measures.hpp"
#include "mopuc/rates.hpp"
#include "mopuc/verblunsky.hpp"

namespace mopuc {

using Json = nlohmann::json;

inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix_from_json: expected a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols)
      throw std::invalid_argument("matrix_from_json: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix_from_json: entry is not an [re, im] pair");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline Json to_json(const AtomicMatrixMeasure& mu) {
  Json j;
  j["type"] = "atomic";
  j["p"] = mu.p;
  j["atoms"] = mu.atoms;
  Json w = Json::array();
  for (const auto& m : mu.weights) w.push_back(to_json(m));
  j["weights"] = std::move(w);
  return j;
}

inline AtomicMatrixMeasure atomic_measure_from_json(const Json& j) {
  AtomicMatrixMeasure mu;
  mu.p = j.at("p").get<Eigen::Index>();
  mu.atoms = j.at("atoms").get<std::vector<double>>();
  for (const auto& w : j.at("weights")) mu.weights.push_back(matrix_from_json(w));
  mu.validate(false);
  return mu;
}

inline Json to_json(const GridDensityMeasure& mu) {
  Json j;
  j["type"] = "grid";
  j["p"] = mu.p;
  j["grid_size"] = mu.grid_size();
  Json d = Json::array();
  for (const auto& m : mu.densities) d.push_back(to_json(m));
  j["densities"] = std::move(d);
  j["singular"] = mu.singular ? to_json(*mu.singular) : Json(nullptr);
  return j;
}

inline GridDensityMeasure grid_measure_from_json(const Json& j) {
  GridDensityMeasure mu;
  mu.p = j.at("p").get<Eigen::Index>();
  for (const auto& d : j.at("densities")) mu.densities.push_back(matrix_from_json(d));
  if (j.contains("singular") && !j["singular"].is_null())
    mu.singular = atomic_measure_from_json(j["singular"]);
  return mu;
}

inline Json to_json(const VerblunskySeq& seq) {
  Json j;
  j["p"] = seq.p;
  Json c = Json::array();
  for (const auto& a : seq.coeffs) c.push_back(to_json(a));
  j["coeffs"] = std::move(c);
  return j;
}

inline VerblunskySeq verblunsky_from_json(const Json& j) {
  const Eigen::Index p = j.at("p").get<Eigen::Index>();
  std::vector<ComplexMatrix> coeffs;
  for (const auto& a : j.at("coeffs")) coeffs.push_back(matrix_from_json(a));
  return VerblunskySeq::from_coefficients(p, std::move(coeffs));
}

inline Json to_json(const RateValue& r) {
  Json j;
  j["infinite"] = r.infinite;
  if (r.infinite)
    j["value"] = "infinity";  // tagged marker, never an IEEE infinity
  else
    j["value"] = r.value;
  j["breakdown"] = r.breakdown;
  j["divergent_index"] = r.divergent_index;
  j["singular_mass"] = r.singular_mass;
  return j;
}

// CSV: one matrix row per line, entries as re,im pairs flattened.
inline void write_csv(std::ostream& os, const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).real() << ',' << m(i, j).imag();
    }
    os << '\n';
  }
}

}  // namespace mopuc
