// Copyright 2026 The W1KP Kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Embedding and judgment file formats.
//
// W1KPEMB1 layout (all integers and floats little-endian):
//
//   offset 0   "W1KPEMB1"            8 ASCII bytes
//   offset 8   u32 n                 number of rows
//   offset 12  u32 dim               row dimension
//   offset 16  n * dim f32           row-major values
//   ...        u32 m                 metadata byte length
//   ...        m bytes UTF-8 JSON    {"ids":[...],"provenance":"..."}
//
// CSV alternative: header `id,v0,...,v{dim-1}`, one row per image.

#pragma once

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "w1kp/errors.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

inline constexpr std::string_view kEmbeddingMagic = "W1KPEMB1";

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return bytes;
}

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8)
    out.push_back(static_cast<char>((v >> shift) & 0xFFu));
}

inline std::uint32_t get_u32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + k]))
         << (8 * k);
  return v;
}

inline std::string format_float(float v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline EmbeddingSet parse_embeddings_binary(std::string_view bytes) {
  if (bytes.size() < 16)
    throw FormatError("truncated W1KPEMB1 header at byte offset " +
                      std::to_string(bytes.size()));
  const std::uint32_t n = get_u32(bytes, 8);
  const std::uint32_t dim = get_u32(bytes, 12);
  if (n == 0) throw FormatError("row count is zero at byte offset 8");
  if (dim == 0) throw FormatError("dimension is zero at byte offset 12");
  const std::uint64_t count = std::uint64_t{n} * dim;
  const std::uint64_t payload_end = 16 + count * 4;
  if (bytes.size() < payload_end + 4)
    throw FormatError("file ends at byte offset " + std::to_string(bytes.size()) +
                      " before the " + std::to_string(count) +
                      " float payload and metadata length");
  std::vector<float> values(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint32_t raw = get_u32(bytes, 16 + 4 * k);
    values[k] = std::bit_cast<float>(raw);
    if (!std::isfinite(values[k]))
      throw ValidationError("non-finite value at byte offset " +
                            std::to_string(16 + 4 * k));
  }
  const std::uint32_t meta_len = get_u32(bytes, payload_end);
  const std::uint64_t meta_start = payload_end + 4;
  if (bytes.size() != meta_start + meta_len)
    throw FormatError("metadata length " + std::to_string(meta_len) +
                      " at byte offset " + std::to_string(payload_end) +
                      " does not match file size " + std::to_string(bytes.size()));
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(bytes.substr(meta_start, meta_len));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("metadata JSON at byte offset " + std::to_string(meta_start) +
                      ": " + e.what());
  }
  if (!meta.is_object() || !meta.contains("ids") || !meta["ids"].is_array())
    throw FormatError("metadata at byte offset " + std::to_string(meta_start) +
                      " lacks an \"ids\" array");
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& id : meta["ids"]) {
    if (!id.is_string())
      throw FormatError("non-string id in metadata at byte offset " +
                        std::to_string(meta_start));
    ids.push_back(id.get<std::string>());
  }
  if (ids.size() != n)
    throw FormatError("metadata lists " + std::to_string(ids.size()) +
                      " ids but header declares " + std::to_string(n) + " rows");
  std::string provenance;
  if (meta.contains("provenance")) {
    if (!meta["provenance"].is_string())
      throw FormatError("\"provenance\" must be a string");
    provenance = meta["provenance"].get<std::string>();
  }
  return EmbeddingSet(std::move(ids), dim, std::move(values), std::move(provenance));
}

inline EmbeddingSet parse_embeddings_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<std::string> ids;
  std::vector<float> values;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (line_no > 1 && trim(view).empty()) continue;
    const auto fields = split_csv_line(view);
    if (line_no == 1) {
      if (fields.size() < 2 || trim(fields[0]) != "id")
        throw FormatError("line 1: CSV header must be id,v0,...");
      for (std::size_t c = 1; c < fields.size(); ++c) {
        if (trim(fields[c]) != "v" + std::to_string(c - 1))
          throw FormatError("line 1: expected column v" + std::to_string(c - 1));
      }
      dim = fields.size() - 1;
      continue;
    }
    if (fields.size() != dim + 1)
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(dim + 1) + " fields, found " +
                        std::to_string(fields.size()));
    ids.emplace_back(trim(fields[0]));
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto field = trim(fields[c]);
      float v = 0.0f;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size())
        throw FormatError("line " + std::to_string(line_no) + ", column " +
                          std::to_string(c) + ": cannot parse '" +
                          std::string(field) + "' as a float");
      if (!std::isfinite(v))
        throw ValidationError("line " + std::to_string(line_no) + ", column " +
                              std::to_string(c) + ": non-finite value");
      values.push_back(v);
    }
  }
  if (line_no == 0) throw FormatError("empty CSV file");
  if (ids.empty()) throw ValidationError("CSV contains no data rows");
  return EmbeddingSet(std::move(ids), dim, std::move(values));
}

inline bool has_csv_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".csv";
}

}  // namespace detail

/// Reads a W1KPEMB1 or CSV embedding file. The format is chosen by the
/// leading magic bytes, so the extension does not matter.
inline EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file(path);
  if (bytes.compare(0, kEmbeddingMagic.size(), kEmbeddingMagic) == 0)
    return detail::parse_embeddings_binary(bytes);
  if (bytes.compare(0, 3, "id,") == 0) return detail::parse_embeddings_csv(bytes);
  throw FormatError("'" + path.string() +
                    "': bad magic at byte offset 0 (expected W1KPEMB1 or a CSV id header)");
}

inline std::string encode_embeddings(const EmbeddingSet& set) {
  std::string out(kEmbeddingMagic);
  detail::put_u32(out, static_cast<std::uint32_t>(set.size()));
  detail::put_u32(out, static_cast<std::uint32_t>(set.dim()));
  out.reserve(out.size() + set.values().size() * 4);
  for (float v : set.values()) detail::put_u32(out, std::bit_cast<std::uint32_t>(v));
  nlohmann::json meta = {{"ids", set.ids()}, {"provenance", set.provenance()}};
  const std::string meta_text = meta.dump();
  detail::put_u32(out, static_cast<std::uint32_t>(meta_text.size()));
  out += meta_text;
  return out;
}

inline std::string encode_embeddings_csv(const EmbeddingSet& set) {
  std::string out = "id";
  for (std::size_t c = 0; c < set.dim(); ++c) out += ",v" + std::to_string(c);
  out += '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    out += set.ids()[i];
    for (float v : set.row(i)) {
      out += ',';
      out += detail::format_float(v);
    }
    out += '\n';
  }
  return out;
}

/// Writes W1KPEMB1, or CSV when the path ends in `.csv`. CSV drops the
/// provenance tag.
inline void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
  if (detail::has_csv_extension(path)) {
    for (const auto& id : set.ids())
      detail::require(id.find_first_of(",\n\r") == std::string::npos,
                      "id '" + id + "' cannot be written to CSV");
    detail::write_file(path, encode_embeddings_csv(set));
  } else {
    detail::write_file(path, encode_embeddings(set));
  }
}

enum class JudgmentKind { kGraded, kTriplet };

struct JudgmentRecords {
  std::vector<GradedJudgment> graded;
  std::vector<TripletJudgment> triplets;
};

namespace detail {

inline std::string json_string_field(const nlohmann::json& obj, const char* key,
                                     std::size_t line_no) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw FormatError("line " + std::to_string(line_no) + ": missing string field \"" +
                      key + "\"");
  return obj[key].get<std::string>();
}

inline int json_int_field(const nlohmann::json& obj, const char* key,
                          std::size_t line_no) {
  if (!obj.contains(key) || !obj[key].is_number_integer())
    throw FormatError("line " + std::to_string(line_no) + ": missing integer field \"" +
                      key + "\"");
  return obj[key].get<int>();
}

}  // namespace detail

inline JudgmentRecords parse_judgments(std::string_view text, JudgmentKind kind) {
  JudgmentRecords records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object())
      throw FormatError("line " + std::to_string(line_no) + ": expected a JSON object");
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (kind == JudgmentKind::kGraded) {
      GradedJudgment g;
      g.pair_id = detail::json_string_field(obj, "pair_id", line_no);
      g.a = detail::json_string_field(obj, "a", line_no);
      g.b = detail::json_string_field(obj, "b", line_no);
      const auto label = detail::json_string_field(obj, "label", line_no);
      const auto level = parse_level(label);
      if (!level) throw ValidationError(where + "unknown label '" + label + "'");
      if (g.a == g.b) throw ValidationError(where + "pair compares an image with itself");
      g.label = *level;
      g.line = line_no;
      records.graded.push_back(std::move(g));
    } else {
      TripletJudgment t;
      t.ref = detail::json_string_field(obj, "ref", line_no);
      t.a = detail::json_string_field(obj, "a", line_no);
      t.b = detail::json_string_field(obj, "b", line_no);
      t.votes_a = detail::json_int_field(obj, "votes_a", line_no);
      t.votes_total = detail::json_int_field(obj, "votes_total", line_no);
      if (t.votes_total < 1)
        throw ValidationError(where + "votes_total must be at least 1");
      if (t.votes_a < 0 || t.votes_a > t.votes_total)
        throw ValidationError(where + "votes_a must lie in [0, votes_total]");
      t.line = line_no;
      records.triplets.push_back(std::move(t));
    }
  }
  return records;
}

inline JudgmentRecords read_judgments(const std::filesystem::path& path,
                                      JudgmentKind kind) {
  return parse_judgments(detail::read_file(path), kind);
}

}  // namespace w1kp
