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

#ifndef QPKKT_CLI_INSTANCE_IO_HPP_
#define QPKKT_CLI_INSTANCE_IO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qpkkt/games.hpp"
#include "qpkkt/qp.hpp"
#include "qpkkt/reductions.hpp"

namespace qpkkt::cli {

enum class InstanceKind { kBoxQp, kSimplexQp, kBimatrixGame };

const char* KindName(InstanceKind kind);
InstanceKind ParseKind(std::string_view name);

// On-disk instance. Every number is a string ("p/q", integer, or decimal) so
// rational payloads survive exactly. Games carry "m" and "B"; QPs carry "b";
// simplex QPs carry "scale".
struct InstanceFile {
  InstanceKind kind = InstanceKind::kBoxQp;
  std::size_t n = 0;
  std::size_t m = 0;
  Matrix<Rational> a;
  Matrix<Rational> b_matrix;
  Vec<Rational> b;
  std::optional<Rational> scale;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

// Throws Error(kParse) on malformed JSON, wrong field types, unknown kinds,
// ragged matrices, or declared dimensions that disagree with the payload.
InstanceFile ParseInstance(std::string_view text);
std::string SerializeInstance(const InstanceFile& file);

BoxQP<Rational> ToBoxQp(const InstanceFile& file);
SimplexQP<Rational> ToSimplexQp(const InstanceFile& file);
BimatrixGame<Rational> ToGame(const InstanceFile& file);

InstanceFile FromBoxQp(const BoxQP<Rational>& qp,
                       std::map<std::string, std::string> metadata = {});
InstanceFile FromSimplexQp(const SimplexQP<Rational>& qp,
                           std::map<std::string, std::string> metadata = {});
InstanceFile FromGame(const BimatrixGame<Rational>& game,
                      std::map<std::string, std::string> metadata = {});

// Point file: "point" (for games the row strategy), optional "y" (column
// strategy; absent means y = point) and optional "dual".
struct PointFile {
  Vec<Rational> point;
  std::optional<Vec<Rational>> y;
  std::optional<Rational> dual;

  friend bool operator==(const PointFile&, const PointFile&) = default;
};

PointFile ParsePoint(std::string_view text);
std::string SerializePoint(const PointFile& file);
MixedProfile<Rational> ToProfile(const PointFile& file);

std::string SerializeCertificate(const ReductionCertificate& cert);
// Parses the fields as written; consistency is checked separately with
// CertificateProblems.
ReductionCertificate ParseCertificate(std::string_view text);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// Lowercase hex SHA-256 of the bytes.
std::string Sha256Hex(std::string_view bytes);

}  // namespace qpkkt::cli

#endif  // QPKKT_CLI_INSTANCE_IO_HPP_
