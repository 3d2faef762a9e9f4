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

#include <cmath>
#include <cstring>
#include <limits>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace w1kp {
namespace {

using testing::TempDir;

TEST(EmbeddingSet, RejectsBrokenInvariants) {
  EXPECT_THROW(EmbeddingSet({}, 1, {}), ValidationError);
  EXPECT_THROW(EmbeddingSet({"a"}, 0, {}), ValidationError);
  EXPECT_THROW(EmbeddingSet({"a", "a"}, 1, {0.0f, 1.0f}), ValidationError);
  EXPECT_THROW(EmbeddingSet({"a"}, 2, {0.0f}), ValidationError);
  EXPECT_THROW(EmbeddingSet({"a"}, 1, {std::numeric_limits<float>::quiet_NaN()}),
               ValidationError);
  EXPECT_THROW(EmbeddingSet({"a"}, 1, {std::numeric_limits<float>::infinity()}),
               ValidationError);
}

TEST(EmbeddingIo, ReadsTwoRowBinary) {
  TempDir dir;
  const EmbeddingSet set({"x", "y"}, 3, {0, 0, 0, 1, 1, 1}, "test");
  write_embeddings(set, dir / "two.w1kpemb");
  const auto back = read_embeddings(dir / "two.w1kpemb");
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(back.dim(), 3u);
  EXPECT_EQ(back.row(1)[2], 1.0f);
  EXPECT_EQ(back.provenance(), "test");
}

TEST(EmbeddingIo, BinaryLayoutIsExact) {
  const EmbeddingSet set({"a"}, 1, {1.0f}, "p");
  const auto bytes = encode_embeddings(set);
  ASSERT_EQ(bytes.substr(0, 8), "W1KPEMB1");
  const unsigned char expected_header[] = {1, 0, 0, 0, 1, 0, 0, 0, 0x00, 0x00, 0x80, 0x3F};
  EXPECT_EQ(std::memcmp(bytes.data() + 8, expected_header, sizeof expected_header), 0);
  const std::string meta = R"({"ids":["a"],"provenance":"p"})";
  EXPECT_EQ(static_cast<unsigned char>(bytes[20]), meta.size());
  EXPECT_EQ(bytes.substr(24), meta);
}

TEST(EmbeddingIo, SingleZeroRow) {
  TempDir dir;
  const EmbeddingSet set({"only"}, 1, {0.0f});
  write_embeddings(set, dir / "one.w1kpemb");
  EXPECT_EQ(read_embeddings(dir / "one.w1kpemb"), set);
}

TEST(EmbeddingIo, LargeRandomRoundTripIsBitExact) {
  TempDir dir;
  const auto set = testing::random_embeddings(1000, 768, 42, -10.0f, 10.0f);
  write_embeddings(set, dir / "big.w1kpemb");
  const auto back = read_embeddings(dir / "big.w1kpemb");
  EXPECT_EQ(back.ids(), set.ids());
  ASSERT_EQ(back.values().size(), set.values().size());
  EXPECT_EQ(std::memcmp(back.values().data(), set.values().data(),
                        set.values().size() * sizeof(float)),
            0);
  EXPECT_EQ(encode_embeddings(back), encode_embeddings(set));
}

TEST(EmbeddingIo, CsvRoundTripIsBitExact) {
  TempDir dir;
  const auto set = testing::random_embeddings(50, 17, 3);
  write_embeddings(set, dir / "set.csv");
  const auto back = read_embeddings(dir / "set.csv");
  EXPECT_EQ(back.ids(), set.ids());
  EXPECT_EQ(std::memcmp(back.values().data(), set.values().data(),
                        set.values().size() * sizeof(float)),
            0);
}

TEST(EmbeddingIo, ParsesHandWrittenCsv) {
  TempDir dir;
  detail::write_file(dir / "hand.csv", "id,v0,v1\na,1,2\nb,3.5,-4\nc,0,0\n");
  const auto set = read_embeddings(dir / "hand.csv");
  EXPECT_EQ(set.size(), 3u);
  EXPECT_EQ(set.dim(), 2u);
  EXPECT_EQ(set.row(1)[0], 3.5f);
  EXPECT_EQ(set.ids()[2], "c");
}

TEST(EmbeddingIo, RejectsMalformedFiles) {
  TempDir dir;
  detail::write_file(dir / "bad_magic", "W1KPEMB2........");
  EXPECT_THROW(read_embeddings(dir / "bad_magic"), FormatError);

  detail::write_file(dir / "short", "W1KPEMB1\x01");
  EXPECT_THROW(read_embeddings(dir / "short"), FormatError);

  auto bytes = encode_embeddings(EmbeddingSet({"a"}, 1, {1.0f}));
  const float nan = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(bytes.data() + 16, &nan, 4);
  detail::write_file(dir / "nan", bytes);
  try {
    read_embeddings(dir / "nan");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("byte offset 16"), std::string::npos);
  }

  detail::write_file(dir / "dup.csv", "id,v0\na,1\na,2\n");
  EXPECT_THROW(read_embeddings(dir / "dup.csv"), ValidationError);

  detail::write_file(dir / "ragged.csv", "id,v0,v1\na,1\n");
  try {
    read_embeddings(dir / "ragged.csv");
    FAIL() << "expected a format error";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }

  EXPECT_THROW(read_embeddings(dir / "missing"), IoError);
}

TEST(EmbeddingIo, UnwritablePathIsIoError) {
  const EmbeddingSet set({"a"}, 1, {0.0f});
  EXPECT_THROW(write_embeddings(set, "/nonexistent-dir/x.w1kpemb"), IoError);
}

TEST(Judgments, ReadsGradedAndTriplets) {
  const auto graded = parse_judgments(
      R"({"pair_id":"p1","a":"x","b":"y","label":"mid"})", JudgmentKind::kGraded);
  ASSERT_EQ(graded.graded.size(), 1u);
  EXPECT_EQ(graded.graded[0].label, Level::kMid);
  EXPECT_EQ(graded.graded[0].line, 1u);

  const auto triplets = parse_judgments(
      R"({"ref":"r","a":"x","b":"y","votes_a":3,"votes_total":5})", JudgmentKind::kTriplet);
  ASSERT_EQ(triplets.triplets.size(), 1u);
  EXPECT_EQ(triplets.triplets[0].votes_a, 3);
  EXPECT_EQ(triplets.triplets[0].votes_total, 5);
}

TEST(Judgments, UnknownLabelNamesTheLine) {
  try {
    parse_judgments(R"({"pair_id":"p1","a":"x","b":"y","label":"medium"})",
                    JudgmentKind::kGraded);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
}

TEST(Judgments, RejectsImpossibleVotes) {
  EXPECT_THROW(parse_judgments(R"({"ref":"r","a":"x","b":"y","votes_a":6,"votes_total":5})",
                               JudgmentKind::kTriplet),
               ValidationError);
  EXPECT_THROW(parse_judgments(R"({"ref":"r","a":"x","b":"y","votes_a":0,"votes_total":0})",
                               JudgmentKind::kTriplet),
               ValidationError);
  EXPECT_THROW(parse_judgments(R"({"pair_id":"p","a":"x","b":"x","label":"low"})",
                               JudgmentKind::kGraded),
               ValidationError);
  EXPECT_THROW(parse_judgments("{not json", JudgmentKind::kGraded), FormatError);
  EXPECT_THROW(parse_judgments("\n\n{\"ref\":\"r\"}", JudgmentKind::kTriplet), FormatError);
}

TEST(DistanceMatrix, SymmetricLookupWithZeroDiagonal) {
  const DistanceMatrix m(4, {1, 2, 3, 4, 5, 6}, DistanceKind::kRaw);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(m(i, i), 0.0);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), m(j, i));
  }
  EXPECT_EQ(m(0, 3), 3.0);
  EXPECT_EQ(m(2, 3), 6.0);
  for (std::size_t p = 0; p < 6; ++p) {
    const auto [i, j] = DistanceMatrix::pair_at(4, p);
    EXPECT_EQ(DistanceMatrix::pair_index(4, i, j), p);
  }
}

TEST(DistanceMatrix, EnforcesKindRange) {
  EXPECT_THROW(DistanceMatrix(2, {1.5}, DistanceKind::kNormalized), ValidationError);
  EXPECT_THROW(DistanceMatrix(2, {-0.1}, DistanceKind::kRaw), ValidationError);
  EXPECT_THROW(DistanceMatrix(3, {0.1}, DistanceKind::kRaw), ValidationError);
}

}  // namespace
}  // namespace w1kp
