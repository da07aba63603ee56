//
// Copyright 2026 The tukeydp Authors
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
//

#include "tukeydp/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "tukeydp/geometry.hpp"

namespace tdp {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Csv, SquareWithHeaderAndComments) {
  PointSet p = ParsePointsCsv("x,y\n# corners\n0,0\n1;0\n1\t1\n0, 1\n\n", 0, 8);
  ASSERT_EQ(p.dim, 2);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.points[1], (Vec{1, 0}));
  EXPECT_EQ(p.points[3], (Vec{0, 1}));
}

TEST(Csv, Errors) {
  EXPECT_EQ(CodeOf([] { ParsePointsCsv("0,0\n1.5,0\n0,1\n", 2, 8); }), ErrorCode::kOffGridPoint);
  EXPECT_EQ(CodeOf([] { ParsePointsCsv("0,0\n0.001,0\n0,1\n", 2, 8); }), ErrorCode::kOffGridPoint);
  EXPECT_EQ(CodeOf([] { ParsePointsCsv("0,0\n1,0,1\n0,1\n", 2, 8); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParsePointsCsv("0,0\n1,abc\n0,1\n", 2, 8); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParsePointsCsv("", 2, 8); }), ErrorCode::kParseError);
  // Too few points for the dimension.
  EXPECT_ANY_THROW(ParsePointsCsv("0,0\n1,1\n", 2, 8));
}

TEST(Csv, OffGridMessageNamesRow) {
  try {
    ParsePointsCsv("0,0\n0.3,0\n0,1\n", 2, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOffGridPoint);
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
}

TEST(Json, BothShapesAndRoundTrip) {
  PointSet a = ParsePointsJson("[[0,0],[1,0],[0.5,1]]", 0, 8);
  PointSet b = ParsePointsJson("{\"points\": [[0,0],[1,0],[0.5,1]]}", 2, 8);
  EXPECT_EQ(a.points, b.points);
  PointSet c = ParsePointsJson(PointsToJson(a), 0, 8);
  EXPECT_EQ(a.points, c.points);
  PointSet d = ParsePointsCsv(PointsToCsv(a), 0, 8);
  EXPECT_EQ(a.points, d.points);
  EXPECT_EQ(CodeOf([] { ParsePointsJson("[[0,0],[1,", 0, 8); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ParsePointsJson("[[0,0],[1],[0,1]]", 0, 8); }), ErrorCode::kParseError);
}

TEST(Files, LoadDetectsFormat) {
  auto dir = std::filesystem::temp_directory_path();
  std::string csv = (dir / "tukeydp_io_test.csv").string(), js = (dir / "tukeydp_io_test.json").string();
  WriteTextFile(csv, "0,0\n1,0\n0,1\n");
  WriteTextFile(js, "[[0,0],[1,0],[0,1]]");
  EXPECT_EQ(LoadPoints(csv, 0, 8).points, LoadPoints(js, 0, 8).points);
  std::remove(csv.c_str());
  std::remove(js.c_str());
  EXPECT_EQ(CodeOf([&] { LoadPoints((dir / "tukeydp_missing.csv").string(), 0, 8); }), ErrorCode::kIOError);
}

TEST(Synthetic, ReproducibleAndOnGrid) {
  for (auto fam : {SyntheticFamily::kUniform, SyntheticFamily::kGaussianClipped, SyntheticFamily::kRing,
                   SyntheticFamily::kVolatileDepth}) {
    for (int d : {2, 3}) {
      SyntheticSet a = GenerateSynthetic(fam, 60, d, 11), b = GenerateSynthetic(fam, 60, d, 11);
      SyntheticSet c = GenerateSynthetic(fam, 60, d, 12);
      EXPECT_EQ(a.points.points, b.points.points) << SyntheticFamilyName(fam);
      EXPECT_NE(a.points.points, c.points.points) << SyntheticFamilyName(fam);
      // Make() validates range and grid; re-parsing the CSV must agree.
      EXPECT_EQ(ParsePointsCsv(PointsToCsv(a.points), d, 8).points, a.points.points);
    }
    EXPECT_EQ(ParseSyntheticFamily(SyntheticFamilyName(fam)), fam);
  }
  EXPECT_EQ(CodeOf([] { ParseSyntheticFamily("plaid"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { GenerateSynthetic(SyntheticFamily::kUniform, 2, 2, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { GenerateSynthetic(SyntheticFamily::kUniform, 20, 4, 0); }),
            ErrorCode::kUnsupportedDimension);
}

TEST(Synthetic, VolatileDepthCollapsesWithoutPivot) {
  for (int d : {2, 3}) {
    SyntheticSet s = GenerateSynthetic(SyntheticFamily::kVolatileDepth, d == 2 ? 80 : 48, d, 3);
    ASSERT_TRUE(s.pivot.has_value());
    std::vector<Vec> rest = s.points.points;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(*s.pivot));
    PointSet without = PointSet::Make(rest, 8);
    auto full = TukeyRegion(s.points, s.pivot_kappa);
    ASSERT_TRUE(full.has_value());
    const double w_full = WidthExact(*full).value;
    auto cut = TukeyRegion(without, s.pivot_kappa);
    const double w_cut = cut ? WidthExact(*cut).value : 0.0;
    EXPECT_GT(w_full, 0.0);
    EXPECT_GE(w_full, 5.0 * w_cut) << "d=" << d;
  }
}

}  // namespace
}  // namespace tdp
