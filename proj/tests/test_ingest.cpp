// Copyright 2026 The taskaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <json.hpp>

#include "support.hpp"
#include "taskaug/common/csv.hpp"
#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/core/validate.hpp"
#include "taskaug/ingest/annotation_job.hpp"
#include "taskaug/ingest/coco.hpp"
#include "taskaug/ingest/depth.hpp"
#include "taskaug/ingest/rle.hpp"
#include "taskaug/io/image_io.hpp"

namespace taskaug {
namespace {

using testing::TempDir;

// 4x4 square at (2,1) in an 8x6 image, column-major runs counted by hand.
const std::vector<std::uint32_t> kSquareCounts{13, 4, 2, 4, 2, 4, 2, 4, 13};

TEST(Rle, DecodesHandCountedSquare) {
  const auto m = ingest::decode_rle_counts(kSquareCounts, 8, 6);
  EXPECT_EQ(m.count(), 16);
  EXPECT_EQ(*tight_bbox(m), (BBox{2, 1, 6, 5}));
  EXPECT_TRUE(m.at(2, 1));
  EXPECT_FALSE(m.at(1, 1));
  EXPECT_EQ(ingest::encode_rle_counts(m), kSquareCounts);
}

TEST(Rle, CompressedStringKnownVectors) {
  EXPECT_EQ(ingest::encode_rle_string(kSquareCounts), "=4200000;");
  EXPECT_EQ(ingest::decode_rle_string("=4200000;"), kSquareCounts);
  const std::vector<std::uint32_t> big{0, 5, 100, 3, 40000, 2};
  EXPECT_EQ(ingest::encode_rle_string(big), "05T3NlnV1O");
  EXPECT_EQ(ingest::decode_rle_string("05T3NlnV1O"), big);
}

TEST(Rle, RandomMasksRoundTrip) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = static_cast<int>(rng.uniform_int(1, 40)), h = static_cast<int>(rng.uniform_int(1, 40));
    Mask m(w, h);
    const double p = rng.uniform01();
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) m.set(x, y, rng.uniform01() < p);
    const auto counts = ingest::encode_rle_counts(m);
    EXPECT_EQ(ingest::decode_rle_counts(counts, w, h), m);
    EXPECT_EQ(ingest::decode_rle_string(ingest::encode_rle_string(counts)), counts);
  }
}

TEST(Rle, CountsMustCoverTheImage) {
  EXPECT_THROW(ingest::decode_rle_counts({3, 2}, 4, 4), Error);
}

TEST(Polygon, PixelCentresInsideAreFilled) {
  const auto m = ingest::rasterize_polygons({{2, 1, 6, 1, 6, 5, 2, 5}}, 8, 6);
  EXPECT_EQ(m.count(), 16);
  EXPECT_EQ(*tight_bbox(m), (BBox{2, 1, 6, 5}));
}

nlohmann::json coco_doc() {
  nlohmann::json j;
  j["images"] = {{{"id", 1}, {"file_name", "a.png"}, {"width", 8}, {"height", 6}},
                 {{"id", 2}, {"file_name", "b.png"}, {"width", 8}, {"height", 6}}};
  j["categories"] = {{{"id", 1}, {"name", "cat"}}, {{"id", 2}, {"name", "dog"}}};
  j["annotations"] = {
      {{"id", 10}, {"image_id", 1}, {"category_id", 1}, {"segmentation", {{"size", {6, 8}}, {"counts", kSquareCounts}}}},
      {{"id", 11}, {"image_id", 1}, {"category_id", 2}, {"segmentation", {{0, 0, 2, 0, 2, 2, 0, 2}}}},
      {{"id", 12}, {"image_id", 2}, {"category_id", 1}, {"segmentation", {{"size", {6, 8}}, {"counts", "=4200000;"}}}},
  };
  return j;
}

TEST(Coco, ParsesImagesObjectsAndMasks) {
  TempDir dir("coco");
  io::write_png(dir.path() / "a.png", RgbImage(8, 6, {10, 20, 30}));
  io::write_png(dir.path() / "b.png", RgbImage(8, 6, {1, 2, 3}));
  const auto r = ingest::parse_coco(coco_doc().dump(), dir.path(), {"street", true});
  EXPECT_TRUE(r.errors.empty());
  ASSERT_EQ(r.images.size(), 2u);
  EXPECT_EQ(r.images[0].objects.size(), 2u);
  EXPECT_EQ(r.images[1].objects.size(), 1u);
  EXPECT_EQ(r.images[0].domain_tag, "street");
  EXPECT_EQ(r.images[0].pixels.at(0, 0), (Rgb{10, 20, 30}));
  const auto& sq = r.images[0].objects[0];
  EXPECT_EQ(sq.class_name, "cat");
  EXPECT_EQ(sq.mask.count(), 16);
  EXPECT_EQ(sq.bbox, (BBox{2, 1, 6, 5}));
  EXPECT_EQ(r.images[1].objects[0].mask, sq.mask);
  EXPECT_TRUE(validate_dataset(r.images).ok());
}

TEST(Coco, UnknownCategoryIsAnItemError) {
  auto j = coco_doc();
  j["annotations"][1]["category_id"] = 99;
  const auto r = ingest::parse_coco(j.dump(), ".", {"", false});
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, "unknown category");
  EXPECT_EQ(r.errors[0].item, "11");
  EXPECT_EQ(r.images[0].objects.size(), 1u);
}

TEST(Coco, MalformedJsonReportsOffset) {
  try {
    ingest::parse_coco("{\"images\": [", ".", {"", false});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
  EXPECT_THROW(ingest::parse_coco("{}", ".", {"", false}), ParseError);
}

TEST(Coco, CrowdSkippedAndMissingImageReported) {
  auto j = coco_doc();
  j["annotations"][0]["iscrowd"] = 1;
  j["annotations"][2]["image_id"] = 77;
  const auto r = ingest::parse_coco(j.dump(), ".", {"", false});
  EXPECT_EQ(r.warnings.size(), 1u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, "unknown image");
}

TEST(Coco, UnreadableImageIsAnItemError) {
  TempDir dir("coco_missing");
  const auto r = ingest::parse_coco(coco_doc().dump(), dir.path(), {"", true});
  EXPECT_FALSE(r.errors.empty());
  EXPECT_EQ(r.errors[0].kind, "image load");
}

TEST(Depth, LoadsAndNormalises) {
  TempDir dir("depth");
  Gray16Image g(4, 3, 0);
  g.set(1, 1, 65535);
  io::write_gray16_png(dir.path() / "a.png", g);
  write_file(dir.path() / "m.tsv", "a\ta.png\n");
  const auto maps = ingest::load_depth_maps(dir.path(), dir.path() / "m.tsv", {{"a", {4, 3}}});
  ASSERT_EQ(maps.size(), 1u);
  EXPECT_DOUBLE_EQ(maps.at("a").at(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(maps.at("a").at(0, 0), 0.0);
}

TEST(Depth, DimensionMismatchNamesTheImage) {
  TempDir dir("depth_dims");
  io::write_gray16_png(dir.path() / "a.png", Gray16Image(100, 50));
  write_file(dir.path() / "m.tsv", "a\ta.png\n");
  try {
    ingest::load_depth_maps(dir.path(), dir.path() / "m.tsv", {{"a", {200, 100}}});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("a"), std::string::npos);
  }
  write_file(dir.path() / "m2.tsv", "b\tb.png\n");
  EXPECT_THROW(ingest::load_depth_maps(dir.path(), dir.path() / "m2.tsv", {{"b", {1, 1}}}), IoError);
}

TEST(Gray16Png, RoundTrips) {
  TempDir dir("g16");
  Gray16Image g(7, 5);
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] = static_cast<std::uint16_t>(i * 1234);
  io::write_gray16_png(dir.path() / "g.png", g);
  EXPECT_EQ(io::read_gray16_png(dir.path() / "g.png"), g);
}

TEST(RgbPng, RoundTripsAndEncodesDeterministically) {
  TempDir dir("rgb");
  RgbImage img(9, 4);
  Rng rng(2);
  for (auto& b : img.data) b = static_cast<std::uint8_t>(rng.uniform_index(256));
  io::write_png(dir.path() / "x.png", img);
  EXPECT_EQ(io::read_rgb(dir.path() / "x.png"), img);
  EXPECT_EQ(io::encode_png(img), io::encode_png(img));
}

AnnotatedImage two_objects() {
  AnnotatedImage img;
  img.image_id = "i1";
  img.width = 8;
  img.height = 6;
  for (const char* id : {"o1", "o2"}) {
    ObjectInstance o;
    o.object_id = id;
    o.class_name = "cat";
    o.mask = ingest::decode_rle_counts(kSquareCounts, 8, 6);
    o.bbox = *tight_bbox(o.mask);
    img.objects.push_back(o);
  }
  return img;
}

TEST(AnnotationJob, OneRowPerObjectAttribute) {
  using ingest::HumanAttribute;
  const std::vector<HumanAttribute> attrs{HumanAttribute::occluded, HumanAttribute::truncated,
                                          HumanAttribute::direction};
  const auto job = ingest::export_annotation_job({two_objects()}, attrs, "j1");
  EXPECT_EQ(job.job.items.size(), 6u);
  EXPECT_EQ(csv::parse(job.csv).size(), 7u);
  EXPECT_EQ(job.csv, ingest::export_annotation_job({two_objects()}, attrs, "j1").csv);
  try {
    ingest::export_annotation_job({two_objects()}, {}, "j1");
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "no attributes requested");
  }
}

std::string ratings_csv(const std::vector<std::pair<std::string, int>>& answers_ranks,
                        const std::string& attribute = "occluded") {
  std::string s = "job_id,image_id,object_id,task_id,attribute,rater_id,answer,rank_in_sequence\n";
  int r = 0;
  for (const auto& [a, rank] : answers_ranks)
    s += "j,i1,o1,," + attribute + ",r" + std::to_string(r++) + "," + a + "," + std::to_string(rank) + "\n";
  return s;
}

TEST(AnnotationJob, ImportsConsecutiveRanks) {
  const auto r = ingest::import_human_annotations(
      ratings_csv({{"yes", 1}, {"no", 2}, {"yes", 3}, {"yes", 4}, {"yes", 5}}));
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.ratings.size(), 5u);
}

TEST(AnnotationJob, NonConsecutiveRanksRejected) {
  const auto r = ingest::import_human_annotations(ratings_csv({{"yes", 1}, {"yes", 2}, {"yes", 4}}));
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, "non-consecutive");
  EXPECT_TRUE(r.ratings.empty());
}

TEST(AnnotationJob, UnknownTokenRejected) {
  const auto r = ingest::import_human_annotations(ratings_csv({{"maybe", 1}}));
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].kind, "unknown token");
}

TEST(AnnotationJob, FormatThenImportRoundTrips) {
  const auto first = ingest::import_human_annotations(
      ratings_csv({{"left", 1}, {"left", 2}, {"away", 3}}, "direction"));
  ASSERT_TRUE(first.errors.empty());
  const auto again = ingest::import_human_annotations(ingest::format_ratings_csv(first.ratings, "j"));
  ASSERT_EQ(again.ratings.size(), 3u);
  EXPECT_EQ(again.ratings[2].answer, "away");
  EXPECT_EQ(again.ratings[2].rank_in_sequence, 3);
}

}  // namespace
}  // namespace taskaug
