// Copyright 2026 The stochlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stochlift::cli {

namespace {

const json& rows_of(const json& matrix) {
  if (matrix.is_object()) {
    if (!matrix.contains("rows")) throw UsageError("matrix object has no \"rows\"");
    const json& rows = matrix.at("rows");
    if (matrix.contains("n") && (!rows.is_array() || matrix.at("n").get<std::size_t>() != rows.size())) {
      throw UsageError("\"n\" does not match the number of rows");
    }
    return rows;
  }
  return matrix;
}

template <typename Entry>
Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> parse_rows(const json& matrix,
                                                                Entry (*entry)(const json&)) {
  const json& rows = rows_of(matrix);
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    throw UsageError("matrix rows must be a non-empty array of arrays");
  }
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows.front().size());
  Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> m(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw UsageError("matrix rows have unequal lengths");
    }
    for (Eigen::Index j = 0; j < n_cols; ++j) m(i, j) = entry(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

double real_entry(const json& x) {
  if (!x.is_number()) throw UsageError("expected a real number");
  return x.get<double>();
}

cplx complex_entry(const json& x) {
  if (x.is_number()) return {x.get<double>(), 0.0};
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
    return {x[0].get<double>(), x[1].get<double>()};
  }
  throw UsageError("expected a complex entry [re, im]");
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

LoadedFile load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  LoadedFile f{path, fnv1a64_hex(text), {}};
  try {
    f.doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return f;
}

bool has_complex_entries(const json& matrix) {
  const json& rows = rows_of(matrix);
  if (!rows.is_array()) return false;
  for (const json& row : rows) {
    if (!row.is_array()) return false;
    for (const json& x : row) {
      if (x.is_array()) return true;
    }
  }
  return false;
}

RMat parse_real_matrix(const json& matrix) { return parse_rows<double>(matrix, real_entry); }

CMat parse_complex_matrix(const json& matrix) { return parse_rows<cplx>(matrix, complex_entry); }

RVec parse_real_vector(const json& vector) {
  const json& rows = rows_of(vector);
  if (rows.is_array() && !rows.empty() && rows.front().is_number()) {
    RVec v(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) v(static_cast<Eigen::Index>(i)) = real_entry(rows[i]);
    return v;
  }
  const RMat m = parse_real_matrix(vector);
  if (m.cols() != 1) throw UsageError("expected a column vector");
  return m.col(0);
}

KrausMap parse_kraus(const json& doc) {
  if (!doc.is_object() || !doc.contains("ops") || !doc.at("ops").is_array() || doc.at("ops").empty()) {
    throw UsageError("Kraus file needs a non-empty \"ops\" array");
  }
  std::vector<CMat> ops;
  for (const json& op : doc.at("ops")) ops.push_back(parse_complex_matrix(op));
  try {
    return KrausMap(std::move(ops));
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
}

SuperOperator parse_map(const json& doc) {
  if (doc.is_object() && doc.contains("ops")) return to_superoperator(parse_kraus(doc));
  try {
    return SuperOperator(parse_complex_matrix(doc));
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
}

GkslGenerator parse_generator(const json& doc) {
  if (!doc.is_object() || !doc.contains("h")) throw UsageError("generator file needs \"h\"");
  std::vector<CMat> jumps;
  if (doc.contains("jumps")) {
    for (const json& l : doc.at("jumps")) jumps.push_back(parse_complex_matrix(l));
  }
  try {
    return GkslGenerator(parse_complex_matrix(doc.at("h")), std::move(jumps));
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
}

json to_json(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"rows", std::move(rows)}};
}

json to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"rows", std::move(rows)}};
}

json to_json(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const KrausMap& map) {
  json ops = json::array();
  for (const CMat& k : map.operators()) ops.push_back(to_json(k));
  return {{"ops", std::move(ops)}};
}

}  // namespace stochlift::cli
