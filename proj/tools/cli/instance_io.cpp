// Copyright 2026 The qpkkt Authors
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

#include "instance_io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qpkkt::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorKind::kParse, what);
}

Json Parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    Malformed(std::string("invalid JSON: ") + e.what());
  }
}

const Json& Field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    Malformed(std::string("missing field '") + name + "'");
  }
  return obj.at(name);
}

std::size_t CountField(const Json& obj, const char* name) {
  const Json& v = Field(obj, name);
  if (!v.is_number_unsigned()) {
    Malformed(std::string("field '") + name +
              "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Rational NumberFrom(const Json& v, const char* where) {
  if (!v.is_string()) {
    Malformed(std::string(where) + ": numbers must be written as strings");
  }
  return ParseRational(v.get<std::string>());
}

Rational NumberField(const Json& obj, const char* name) {
  return NumberFrom(Field(obj, name), name);
}

Vec<Rational> VectorFrom(const Json& v, const char* where) {
  if (!v.is_array()) Malformed(std::string(where) + " must be an array");
  Vec<Rational> out;
  out.reserve(v.size());
  for (const Json& e : v) out.push_back(NumberFrom(e, where));
  return out;
}

Matrix<Rational> MatrixFrom(const Json& v, const char* where) {
  if (!v.is_array()) Malformed(std::string(where) + " must be an array");
  std::vector<std::vector<Rational>> rows;
  for (const Json& r : v) rows.push_back(VectorFrom(r, where));
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      Malformed(std::string(where) + " is not rectangular");
    }
  }
  return Matrix<Rational>(rows);
}

Json ToJson(const Rational& q) { return FormatRational(q); }

Json ToJson(const Vec<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(FormatRational(q));
  return out;
}

Json ToJson(const Matrix<Rational>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& q : m.row(i)) row.push_back(FormatRational(q));
    out.push_back(std::move(row));
  }
  return out;
}

void RequireShape(const Matrix<Rational>& m, std::size_t rows,
                  std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    Malformed(std::string(name) + " does not match the declared dimensions");
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

const char* KindName(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kBoxQp: return "box_qp";
    case InstanceKind::kSimplexQp: return "simplex_qp";
    case InstanceKind::kBimatrixGame: return "bimatrix_game";
  }
  return "unknown";
}

InstanceKind ParseKind(std::string_view name) {
  if (name == "box_qp") return InstanceKind::kBoxQp;
  if (name == "simplex_qp") return InstanceKind::kSimplexQp;
  if (name == "bimatrix_game") return InstanceKind::kBimatrixGame;
  Malformed("unknown instance kind '" + std::string(name) + "'");
}

InstanceFile ParseInstance(std::string_view text) {
  const Json root = Parse(text);
  if (!root.is_object()) Malformed("instance must be a JSON object");
  const Json& kind = Field(root, "kind");
  if (!kind.is_string()) Malformed("field 'kind' must be a string");

  InstanceFile file;
  file.kind = ParseKind(kind.get<std::string>());
  file.n = CountField(root, "n");
  file.a = MatrixFrom(Field(root, "A"), "A");
  if (file.kind == InstanceKind::kBimatrixGame) {
    file.m = CountField(root, "m");
    file.b_matrix = MatrixFrom(Field(root, "B"), "B");
    RequireShape(file.a, file.n, file.m, "A");
    RequireShape(file.b_matrix, file.n, file.m, "B");
  } else {
    file.m = file.n;
    RequireShape(file.a, file.n, file.n, "A");
    file.b = VectorFrom(Field(root, "b"), "b");
    if (file.b.size() != file.n) Malformed("b does not match n");
  }
  if (root.contains("scale") && !root.at("scale").is_null()) {
    file.scale = NumberField(root, "scale");
  }
  if (file.kind == InstanceKind::kSimplexQp && !file.scale) {
    Malformed("simplex_qp needs a 'scale' field");
  }
  if (root.contains("metadata")) {
    const Json& meta = root.at("metadata");
    if (!meta.is_object()) Malformed("metadata must be an object");
    for (const auto& [key, value] : meta.items()) {
      if (!value.is_string()) Malformed("metadata values must be strings");
      file.metadata[key] = value.get<std::string>();
    }
  }
  return file;
}

std::string SerializeInstance(const InstanceFile& file) {
  Json root;
  root["kind"] = KindName(file.kind);
  root["n"] = file.n;
  if (file.kind == InstanceKind::kBimatrixGame) {
    root["m"] = file.m;
    root["A"] = ToJson(file.a);
    root["B"] = ToJson(file.b_matrix);
  } else {
    root["A"] = ToJson(file.a);
    root["b"] = ToJson(file.b);
  }
  if (file.scale) root["scale"] = ToJson(*file.scale);
  Json meta = Json::object();
  for (const auto& [key, value] : file.metadata) meta[key] = value;
  root["metadata"] = std::move(meta);
  return Dump(root);
}

BoxQP<Rational> ToBoxQp(const InstanceFile& file) {
  if (file.kind != InstanceKind::kBoxQp) Malformed("expected a box_qp");
  return BoxQP<Rational>(SymMatrix<Rational>(file.a), file.b);
}

SimplexQP<Rational> ToSimplexQp(const InstanceFile& file) {
  if (file.kind != InstanceKind::kSimplexQp) {
    Malformed("expected a simplex_qp");
  }
  return SimplexQP<Rational>(SymMatrix<Rational>(file.a), file.b,
                             file.scale.value_or(Rational(1)));
}

BimatrixGame<Rational> ToGame(const InstanceFile& file) {
  if (file.kind != InstanceKind::kBimatrixGame) {
    Malformed("expected a bimatrix_game");
  }
  return BimatrixGame<Rational>(file.a, file.b_matrix);
}

InstanceFile FromBoxQp(const BoxQP<Rational>& qp,
                       std::map<std::string, std::string> metadata) {
  InstanceFile file;
  file.kind = InstanceKind::kBoxQp;
  file.n = file.m = qp.size();
  file.a = qp.quadratic().matrix();
  file.b = qp.linear();
  file.metadata = std::move(metadata);
  return file;
}

InstanceFile FromSimplexQp(const SimplexQP<Rational>& qp,
                           std::map<std::string, std::string> metadata) {
  InstanceFile file;
  file.kind = InstanceKind::kSimplexQp;
  file.n = file.m = qp.size();
  file.a = qp.quadratic().matrix();
  file.b = qp.linear();
  file.scale = qp.scale();
  file.metadata = std::move(metadata);
  return file;
}

InstanceFile FromGame(const BimatrixGame<Rational>& game,
                      std::map<std::string, std::string> metadata) {
  InstanceFile file;
  file.kind = InstanceKind::kBimatrixGame;
  file.n = game.rows();
  file.m = game.cols();
  file.a = game.row_payoffs();
  file.b_matrix = game.col_payoffs();
  file.metadata = std::move(metadata);
  return file;
}

PointFile ParsePoint(std::string_view text) {
  const Json root = Parse(text);
  if (!root.is_object()) Malformed("point file must be a JSON object");
  PointFile file;
  file.point = VectorFrom(Field(root, "point"), "point");
  if (root.contains("y") && !root.at("y").is_null()) {
    file.y = VectorFrom(root.at("y"), "y");
  }
  if (root.contains("dual") && !root.at("dual").is_null()) {
    file.dual = NumberField(root, "dual");
  }
  return file;
}

std::string SerializePoint(const PointFile& file) {
  Json root;
  root["point"] = ToJson(file.point);
  if (file.y) root["y"] = ToJson(*file.y);
  if (file.dual) root["dual"] = ToJson(*file.dual);
  return Dump(root);
}

MixedProfile<Rational> ToProfile(const PointFile& file) {
  return MixedProfile<Rational>{file.point, file.y.value_or(file.point)};
}

std::string SerializeCertificate(const ReductionCertificate& cert) {
  Json root;
  root["kind"] = "reduction_certificate";
  root["n"] = cert.n;
  root["eps"] = ToJson(cert.eps);
  root["M"] = ToJson(cert.big_m);
  root["delta"] = ToJson(cert.delta);
  root["scale"] = ToJson(cert.scale);
  Json idx;
  idx["x_begin"] = cert.index_map.x(0);
  idx["y_begin"] = cert.index_map.y(0);
  idx["z"] = cert.index_map.z();
  root["index_map"] = std::move(idx);
  Json source;
  source["A"] = ToJson(cert.source.quadratic().matrix());
  source["b"] = ToJson(cert.source.linear());
  root["source"] = std::move(source);
  return Dump(root);
}

ReductionCertificate ParseCertificate(std::string_view text) {
  const Json root = Parse(text);
  const Json& kind = Field(root, "kind");
  if (!kind.is_string() || kind.get<std::string>() != "reduction_certificate") {
    Malformed("expected a reduction_certificate");
  }
  const Json& source = Field(root, "source");
  BoxQP<Rational> box(SymMatrix<Rational>(MatrixFrom(Field(source, "A"), "A")),
                      VectorFrom(Field(source, "b"), "b"));
  const Json& idx = Field(root, "index_map");
  const std::size_t y_begin = CountField(idx, "y_begin");
  if (CountField(idx, "x_begin") != 0 || CountField(idx, "z") != 2 * y_begin) {
    Malformed("index_map must be x block, then y block, then z");
  }
  return ReductionCertificate{CountField(root, "n"),
                              NumberField(root, "eps"),
                              NumberField(root, "M"),
                              NumberField(root, "delta"),
                              NumberField(root, "scale"),
                              IndexMap{y_begin},
                              std::move(box)};
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Malformed("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Malformed("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) Malformed("failed writing '" + path.string() + "'");
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(),
             nullptr);
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace qpkkt::cli
