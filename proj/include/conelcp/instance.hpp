#pragma once

// Instance files. JSON documents look like
//
//   {"matrix": {"m": 2, "rows": [[1, 0], [0, 1]]},
//    "q": {"values": [-1, -2]},
//    "cone": {"generators": [[1, 1], [0, 1]]},
//    "seed": 0, "samples": 200, "tol": 1e-9}
//
// where only "matrix" is required and cone generators are the columns of the
// listed rows. A file whose first non-blank character is not '{' is read as
// CSV: m lines of m comma-separated decimals, matrix only.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "conelcp/linalg.hpp"

namespace conelcp {

struct InstanceFile {
  Matrix matrix;
  std::optional<Vector> q;
  std::optional<Matrix> cone;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
};

/// Throws Error(InvalidInput) on malformed, non-conformal or non-finite data.
InstanceFile parse_instance(std::string_view text);

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& a);
Json vector_to_json(const Vector& v);
Json cone_to_json(const Matrix& generators);
Json instance_to_json(const InstanceFile& inst);

/// FNV-1a 64-bit hash of the raw bytes, as "fnv1a64:<16 hex digits>".
std::string input_digest(std::string_view bytes);

}  // namespace conelcp
