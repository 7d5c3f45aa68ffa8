#pragma once

// JSON holonomy mini-language shared by the command-line front end and its
// tests:
//   {"type":"u1","theta":3.14159}
//   {"type":"file","path":"Q.json","layout":"row-major re,im pairs"}
//   {"type":"haar","n":2,"seed":11}
//   {"type":"so","n":3,"seed":7}
// A matrix file is JSON of the form {"n":2,"entries":[[re,im], ...]} with
// n*n entries in row-major order.

#include <complex>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fermisum/errors.hpp"
#include "fermisum/linalg.hpp"
#include "fermisum/statesum.hpp"

namespace fermisum::cli {

using nlohmann::json;

struct Holonomy {
  std::string type;
  std::size_t fibre_dim = 1;
  linalg::ComplexMatrix matrix;
  double theta = 0.0;  // meaningful for type == "u1"
  json echo;           // parsed spec, for provenance headers
};

namespace detail {

inline double require_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number())
    throw ArgumentError("holonomy spec: missing or non-numeric field '" + field + "'");
  return j[field].get<double>();
}

inline std::int64_t require_integer(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw ArgumentError("holonomy spec: missing or non-integer field '" + field + "'");
  return j[field].get<std::int64_t>();
}

inline std::string require_string(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_string())
    throw ArgumentError("holonomy spec: missing or non-string field '" + field + "'");
  return j[field].get<std::string>();
}

inline linalg::ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("holonomy file: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw ArgumentError("holonomy file: invalid JSON in '" + path + "': " + err.what());
  }
  const auto n = require_integer(j, "n");
  if (n < 1) throw ArgumentError("holonomy file: field 'n' must be positive");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(n * n))
    throw ArgumentError("holonomy file: field 'entries' must hold n*n [re,im] pairs");
  linalg::ComplexMatrix q(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < j["entries"].size(); ++idx) {
    const auto& pair = j["entries"][idx];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw ArgumentError("holonomy file: field 'entries' must hold n*n [re,im] pairs");
    q(idx / static_cast<std::size_t>(n), idx % static_cast<std::size_t>(n)) =
        Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return q;
}

}  // namespace detail

inline Holonomy parse_holonomy(const json& spec) {
  if (!spec.is_object()) throw ArgumentError("holonomy spec: expected a JSON object");
  Holonomy h;
  h.echo = spec;
  h.type = detail::require_string(spec, "type");

  if (h.type == "u1") {
    h.theta = detail::require_number(spec, "theta");
    h.fibre_dim = 1;
    h.matrix = linalg::ComplexMatrix::scalar(std::polar(1.0, -h.theta));
  } else if (h.type == "file") {
    const std::string path = detail::require_string(spec, "path");
    if (spec.contains("layout") &&
        spec["layout"].get<std::string>() != "row-major re,im pairs")
      throw ArgumentError("holonomy spec: unsupported field 'layout'");
    h.matrix = detail::read_matrix_file(path);
    h.fibre_dim = h.matrix.rows();
  } else if (h.type == "haar") {
    const auto n = detail::require_integer(spec, "n");
    const auto seed = detail::require_integer(spec, "seed");
    if (n < 1) throw ArgumentError("holonomy spec: field 'n' must be positive");
    h.fibre_dim = static_cast<std::size_t>(n);
    h.matrix = linalg::haar_unitary(h.fibre_dim, static_cast<std::uint64_t>(seed));
  } else if (h.type == "so") {
    const auto n = detail::require_integer(spec, "n");
    const auto seed = detail::require_integer(spec, "seed");
    if (n < 1) throw ArgumentError("holonomy spec: field 'n' must be positive");
    h.fibre_dim = static_cast<std::size_t>(n);
    h.matrix =
        linalg::random_special_orthogonal(h.fibre_dim, static_cast<std::uint64_t>(seed));
  } else {
    throw ArgumentError("holonomy spec: unknown field value type='" + h.type + "'");
  }
  return h;
}

inline Holonomy parse_holonomy(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ArgumentError(std::string("holonomy spec: invalid JSON: ") + err.what());
  }
  return parse_holonomy(spec);
}

/// Triangulated circle carrying the given holonomy on N edges. U(1) holonomy
/// spreads its phase evenly; other types place the matrix on edge 1 and
/// identities elsewhere (the partition function depends only on the product).
inline statesum::TriangulatedCircle circle_from(const Holonomy& h, std::size_t n_edges,
                                                double circumference) {
  if (n_edges < 1) throw ArgumentError("circle: N must be positive");
  if (h.type == "u1") return statesum::u1_circle(h.theta, n_edges, circumference);
  std::vector<linalg::ComplexMatrix> edges;
  edges.push_back(h.matrix);
  for (std::size_t j = 1; j < n_edges; ++j)
    edges.push_back(linalg::ComplexMatrix::identity(h.fibre_dim));
  return statesum::make_circle(h.fibre_dim, edges, circumference);
}

}  // namespace fermisum::cli
