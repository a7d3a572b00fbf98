#include "conelcp/instance.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace conelcp {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

double finite_number(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + ": non-finite number");
  return d;
}

std::vector<std::vector<double>> parse_rows(const Json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) fail(where + ": expected a non-empty array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    if (!row.is_array()) fail(where + ": row " + std::to_string(i) + " is not an array");
    std::vector<double> r;
    for (const Json& v : row) r.push_back(finite_number(v, where));
    out.push_back(std::move(r));
  }
  return out;
}

Matrix parse_matrix(const Json& j) {
  if (!j.is_object()) fail("matrix: expected an object with \"m\" and \"rows\"");
  if (!j.contains("m") || !j["m"].is_number_integer() || j["m"].get<std::int64_t>() < 1)
    fail("matrix: \"m\" must be a positive integer");
  if (!j.contains("rows")) fail("matrix: missing \"rows\"");
  const auto m = static_cast<std::size_t>(j["m"].get<std::int64_t>());
  auto rows = parse_rows(j["rows"], "matrix");
  if (rows.size() != m) fail("matrix: \"m\" disagrees with the number of rows");
  return Matrix::from_rows(rows);
}

InstanceFile parse_json_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("instance must be a JSON object");
  if (!doc.contains("matrix")) fail("instance has no \"matrix\"");

  InstanceFile inst{parse_matrix(doc["matrix"]), {}, {}, {}, {}, {}};
  const std::size_t m = inst.matrix.dim();

  if (doc.contains("q")) {
    const Json& q = doc["q"];
    if (!q.is_object() || !q.contains("values") || !q["values"].is_array())
      fail("q: expected {\"values\": [...]}");
    Vector v;
    for (const Json& x : q["values"]) v.push_back(finite_number(x, "q"));
    if (v.size() != m) fail("q: length differs from the matrix dimension");
    inst.q = std::move(v);
  }
  if (doc.contains("cone")) {
    const Json& c = doc["cone"];
    if (!c.is_object() || !c.contains("generators")) fail("cone: expected {\"generators\": [...]}");
    Matrix g = Matrix::from_rows(parse_rows(c["generators"], "cone"));
    if (g.dim() != m) fail("cone: generator dimension differs from the matrix dimension");
    inst.cone = std::move(g);
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed: expected a non-negative integer");
    inst.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("samples")) {
    if (!doc["samples"].is_number_unsigned()) fail("samples: expected a non-negative integer");
    inst.samples = doc["samples"].get<std::size_t>();
  }
  if (doc.contains("tol")) {
    const double t = finite_number(doc["tol"], "tol");
    if (t <= 0.0) fail("tol: must be positive");
    inst.tol = t;
  }
  return inst;
}

double parse_csv_cell(std::string cell, std::size_t line) {
  const auto b = cell.find_first_not_of(" \t\r");
  const auto e = cell.find_last_not_of(" \t\r");
  if (b == std::string::npos) fail("csv line " + std::to_string(line) + ": empty cell");
  cell = cell.substr(b, e - b + 1);
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) fail("csv line " + std::to_string(line) + ": bad number '" + cell + "'");
  if (!std::isfinite(v)) fail("csv line " + std::to_string(line) + ": non-finite number");
  return v;
}

InstanceFile parse_csv_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_csv_cell(cell, lineno));
    rows.push_back(std::move(row));
  }
  return InstanceFile{Matrix::from_rows(rows), {}, {}, {}, {}, {}};
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) fail("empty instance file");
  if (text[first] == '{' || text[first] == '[') return parse_json_instance(text);
  return parse_csv_instance(text);
}

Json matrix_to_json(const Matrix& a) {
  Json j;
  j["m"] = a.dim();
  j["rows"] = a.rows();
  return j;
}

Json vector_to_json(const Vector& v) {
  Json j;
  j["values"] = v;
  return j;
}

Json cone_to_json(const Matrix& generators) {
  Json j;
  j["generators"] = generators.rows();
  return j;
}

Json instance_to_json(const InstanceFile& inst) {
  Json j;
  j["matrix"] = matrix_to_json(inst.matrix);
  if (inst.q) j["q"] = vector_to_json(*inst.q);
  if (inst.cone) j["cone"] = cone_to_json(*inst.cone);
  if (inst.seed) j["seed"] = *inst.seed;
  if (inst.samples) j["samples"] = *inst.samples;
  if (inst.tol) j["tol"] = *inst.tol;
  return j;
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace conelcp
