#include "cosetlab/matrix_io.hpp"

#include "cosetlab/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cosetlab {

namespace {

using nlohmann::json;

RealMatrix read_rows(const json& rows, int dim, const char* field) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw InvalidArgument(std::string("matrix JSON: '") + field + "' must have " + std::to_string(dim) + " rows");
  }
  RealMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InvalidArgument(std::string("matrix JSON: row ") + std::to_string(i + 1) + " of '" + field + "' must have " +
                            std::to_string(dim) + " entries");
    }
    for (int j = 0; j < dim; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw InvalidArgument(std::string("matrix JSON: non-numeric entry in '") + field + "'");
      out(i, j) = v.get<double>();
    }
  }
  return out;
}

json rows_of(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

BlockMatrix matrix_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("matrix JSON: expected an object");
  if (doc.contains("perm")) {
    const auto& perm = doc["perm"];
    if (!perm.is_array()) throw InvalidArgument("matrix JSON: 'perm' must be an array");
    std::vector<int> images;
    for (const auto& v : perm) {
      if (!v.is_number_integer()) throw InvalidArgument("matrix JSON: 'perm' entries must be integers");
      images.push_back(v.get<int>());
    }
    return BlockMatrix(Permutation::from_images(images));
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw InvalidArgument("matrix JSON: need an integer 'dim' or a 'perm' array");
  }
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw InvalidArgument("matrix JSON: 'dim' must be positive");
  if (!doc.contains("re")) throw InvalidArgument("matrix JSON: missing 're'");
  const RealMatrix re = read_rows(doc["re"], dim, "re");
  const RealMatrix im = doc.contains("im") ? read_rows(doc["im"], dim, "im") : RealMatrix::Zero(dim, dim);
  Matrix m(dim, dim);
  m.real() = re;
  m.imag() = im;
  return BlockMatrix(std::move(m));
}

std::string matrix_to_json(const BlockMatrix& m, int indent) {
  nlohmann::ordered_json doc;
  if (const auto& p = m.permutation()) {
    doc["perm"] = p->images();
    doc["cycles"] = p->cycles();
  } else {
    doc["dim"] = m.dim();
    doc["re"] = rows_of(m.entries().real());
    doc["im"] = rows_of(m.entries().imag());
  }
  return doc.dump(indent);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error while writing '" + path + "'");
}

BlockMatrix read_matrix_file(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    return matrix_from_json(text);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

}  // namespace cosetlab
