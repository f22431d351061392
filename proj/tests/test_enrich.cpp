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

#include <algorithm>

#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"
#include "taskaug/enrich/consensus.hpp"
#include "taskaug/enrich/metadata.hpp"
#include "taskaug/enrich/metadata_io.hpp"

namespace taskaug {
namespace {

ObjectInstance rect_object(const std::string& id, int w, int h, BBox box) {
  ObjectInstance o;
  o.object_id = id;
  o.class_name = "box";
  o.mask = Mask(w, h);
  for (int y = box.y_min; y < box.y_max; ++y)
    for (int x = box.x_min; x < box.x_max; ++x) o.mask.set(x, y, true);
  o.bbox = box;
  return o;
}

AnnotatedImage image_with(int w, int h, std::vector<ObjectInstance> objects, Rgb fill = {128, 128, 128}) {
  AnnotatedImage img;
  img.image_id = "img";
  img.width = w;
  img.height = h;
  img.pixels = RgbImage(w, h, fill);
  img.objects = std::move(objects);
  return img;
}

TEST(Geometry, RelativeSizeAndArea) {
  const auto img = image_with(100, 100, {rect_object("a", 100, 100, {0, 0, 50, 10})});
  const auto recs = enrich::compute_geometry_metadata(img);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].segmentation_area, 500);
  EXPECT_DOUBLE_EQ(recs[0].relative_size, 0.05);
  EXPECT_FALSE(recs[0].segmask_touches_segmask);
  EXPECT_FALSE(recs[0].bbox_touches_bbox);
}

TEST(Geometry, TwoPixelGapDoesNotTouch) {
  const auto img = image_with(40, 20, {rect_object("a", 40, 20, {0, 0, 10, 10}),
                                       rect_object("b", 40, 20, {12, 0, 20, 10})});
  const auto recs = enrich::compute_geometry_metadata(img);
  EXPECT_FALSE(recs[0].segmask_touches_segmask);
  EXPECT_FALSE(recs[1].segmask_touches_segmask);
  EXPECT_TRUE(recs[0].segmask_touches_segmask_with.empty());
}

TEST(Geometry, SharedEdgeTouches) {
  const auto img = image_with(40, 20, {rect_object("a", 40, 20, {0, 0, 10, 10}),
                                       rect_object("b", 40, 20, {10, 0, 20, 10})});
  const auto recs = enrich::compute_geometry_metadata(img);
  EXPECT_TRUE(recs[0].bbox_touches_bbox);
  EXPECT_TRUE(recs[1].bbox_touches_bbox);
  EXPECT_TRUE(recs[0].segmask_touches_segmask);
  EXPECT_EQ(recs[0].segmask_touches_segmask_with, std::vector<std::string>{"b"});
  EXPECT_EQ(recs[1].segmask_touches_segmask_with, std::vector<std::string>{"a"});
}

TEST(Geometry, DiagonalNeighboursTouch) {
  const auto img = image_with(20, 20, {rect_object("a", 20, 20, {0, 0, 5, 5}),
                                       rect_object("b", 20, 20, {5, 5, 9, 9})});
  EXPECT_TRUE(enrich::compute_geometry_metadata(img)[0].segmask_touches_segmask);
}

TEST(Photometry, MichelsonContrast) {
  auto img = image_with(10, 10, {rect_object("a", 10, 10, {0, 0, 10, 10})}, {200, 200, 200});
  auto recs = enrich::compute_geometry_metadata(img);
  enrich::compute_photometry_metadata(img, recs);
  EXPECT_DOUBLE_EQ(recs[0].michelson_contrast_score, 0.0);
  EXPECT_NEAR(recs[0].brightness_score, 200.0 / 255.0, 1e-12);

  img.pixels.set(3, 3, {100, 100, 100});
  recs = enrich::compute_geometry_metadata(img);
  enrich::compute_photometry_metadata(img, recs);
  EXPECT_NEAR(recs[0].michelson_contrast_score, 1.0 / 3.0, 1e-12);

  img.pixels.set(4, 4, {0, 0, 0});
  img.pixels.set(5, 5, {255, 255, 255});
  recs = enrich::compute_geometry_metadata(img);
  const auto im = enrich::compute_photometry_metadata(img, recs);
  EXPECT_DOUBLE_EQ(recs[0].michelson_contrast_score, 1.0);
  EXPECT_GT(im.brightness, 0.0);
  EXPECT_TRUE(recs[0].source_tags.contains("michelson_contrast_score"));
}

ingest::DepthMap depth_of(int w, int h, std::uint16_t v) {
  ingest::DepthMap d;
  d.image_id = "img";
  d.raster = Gray16Image(w, h, v);
  return d;
}

TEST(Depth, ConstantDepthGivesEqualStatistics) {
  const auto img = image_with(10, 10, {rect_object("a", 10, 10, {2, 2, 8, 8})});
  auto recs = enrich::compute_geometry_metadata(img);
  enrich::compute_depth_metadata(img, depth_of(10, 10, 13107), recs);
  EXPECT_NEAR(*recs[0].average_depth, 0.2, 1e-12);
  EXPECT_NEAR(*recs[0].top_95_depth, 0.2, 1e-12);
  EXPECT_NEAR(*recs[0].bottom_5_depth, 0.2, 1e-12);
}

TEST(Depth, NearestRankIgnoresSingleOutlier) {
  // 99 pixels at 0.1 and one at 1.0: the 95th nearest-rank value is 0.1.
  const auto img = image_with(10, 10, {rect_object("a", 10, 10, {0, 0, 10, 10})});
  auto d = depth_of(10, 10, 6553);
  d.raster.set(9, 9, 65535);
  auto recs = enrich::compute_geometry_metadata(img);
  enrich::compute_depth_metadata(img, d, recs);
  EXPECT_NEAR(*recs[0].top_95_depth, 6553 / 65535.0, 1e-12);
  EXPECT_NEAR(*recs[0].average_depth, (99 * 6553 + 65535) / 65535.0 / 100.0, 1e-12);
}

TEST(Depth, NearestRankPercentile) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(enrich::nearest_rank_percentile(v, 95), 10);
  EXPECT_EQ(enrich::nearest_rank_percentile(v, 5), 1);
  EXPECT_EQ(enrich::nearest_rank_percentile(v, 50), 5);
  EXPECT_EQ(enrich::nearest_rank_percentile(v, 100), 10);
}

TEST(Depth, MissingDepthIsReported) {
  const auto img = image_with(10, 10, {rect_object("a", 10, 10, {0, 0, 5, 5})});
  const auto e = enrich::enrich_image(img, nullptr, {});
  ASSERT_EQ(e.errors.size(), 1u);
  EXPECT_FALSE(e.records[0].average_depth.has_value());
  EXPECT_FALSE(e.records[0].source_tags.contains("average_depth"));
}

std::vector<HumanRating> seq(std::initializer_list<const char*> answers) {
  std::vector<HumanRating> out;
  int rank = 1;
  for (const char* a : answers) {
    HumanRating r;
    r.image_id = "img";
    r.object_id = "a";
    r.attribute = "occluded";
    r.rater_id = "r" + std::to_string(rank);
    r.answer = a;
    r.rank_in_sequence = rank++;
    out.push_back(r);
  }
  return out;
}

TEST(Consensus, FourAgreeingRatersStop) {
  const auto c = enrich::merge_human_metadata(seq({"yes", "yes", "yes", "yes"}), 4);
  EXPECT_EQ(c.answer, "yes");
  EXPECT_EQ(c.ratings_used, 4);
  EXPECT_TRUE(c.threshold_reached);
}

TEST(Consensus, MajorityWithoutThreshold) {
  const auto c = enrich::merge_human_metadata(seq({"yes", "no", "yes", "no", "yes"}), 4);
  EXPECT_EQ(c.answer, "yes");
  EXPECT_EQ(c.ratings_used, 5);
  EXPECT_FALSE(c.threshold_reached);
}

TEST(Consensus, TieIsUnresolved) {
  EXPECT_EQ(enrich::merge_human_metadata(seq({"yes", "no"}), 4).answer, enrich::kUnresolved);
  EXPECT_EQ(enrich::merge_human_metadata(seq({"yes", "no", "no", "yes", "yes", "no"}), 4).answer,
            enrich::kUnresolved);
  EXPECT_EQ(enrich::merge_human_metadata({}, 4).answer, enrich::kUnresolved);
}

TEST(Consensus, RatingsAreTakenInRankOrder) {
  auto r = seq({"no", "yes", "yes", "yes", "yes", "no", "no", "no"});
  std::ranges::reverse(r);
  const auto c = enrich::merge_human_metadata(r, 4);
  EXPECT_EQ(c.answer, "yes");
  EXPECT_EQ(c.ratings_used, 5);
}

TEST(Consensus, InvalidThresholdThrows) {
  EXPECT_THROW(enrich::merge_human_metadata(seq({"yes"}), 0), InvalidArgument);
}

// Random sequences over two or four answers.
std::vector<HumanRating> random_sequence(Rng& rng, int length, bool binary) {
  static const char* kFour[] = {"toward_camera", "away", "left", "right"};
  std::vector<HumanRating> out = seq({});
  for (int i = 0; i < length; ++i) {
    HumanRating r;
    r.image_id = "img";
    r.object_id = "a";
    r.attribute = binary ? "occluded" : "direction";
    r.answer = binary ? (rng.coin() ? "yes" : "no") : kFour[rng.uniform_index(4)];
    r.rank_in_sequence = i + 1;
    out.push_back(r);
  }
  return out;
}

TEST(ConsensusProperty, StopsExactlyAtThreshold) {
  Rng rng(9);
  for (int trial = 0; trial < 2000; ++trial) {
    const int threshold = static_cast<int>(rng.uniform_int(1, 5));
    const auto r = random_sequence(rng, static_cast<int>(rng.uniform_int(0, 9)), rng.coin());
    const auto c = enrich::merge_human_metadata(r, threshold);
    if (!c.threshold_reached) {
      EXPECT_EQ(c.ratings_used, static_cast<int>(r.size()));
      continue;
    }
    // The winner has exactly `threshold` votes in the used prefix and no
    // answer reached the threshold earlier.
    std::map<std::string, int> votes;
    for (int i = 0; i < c.ratings_used; ++i) {
      const int v = ++votes[r[i].answer];
      if (i + 1 < c.ratings_used) {
        EXPECT_LT(v, threshold);
      }
    }
    EXPECT_EQ(votes[c.answer], threshold);
    EXPECT_EQ(r[c.ratings_used - 1].answer, c.answer);
  }
}

TEST(ConsensusProperty, RatingsAfterStopChangeNothing) {
  Rng rng(10);
  for (int trial = 0; trial < 2000; ++trial) {
    const bool binary = rng.coin();
    auto r = random_sequence(rng, static_cast<int>(rng.uniform_int(1, 9)), binary);
    const auto c = enrich::merge_human_metadata(r, 4);
    if (!c.threshold_reached) continue;
    auto extended = r;
    const auto tail = random_sequence(rng, static_cast<int>(rng.uniform_int(1, 6)), binary);
    for (auto t : tail) {
      t.rank_in_sequence = static_cast<int>(extended.size()) + 1;
      extended.push_back(t);
    }
    const auto c2 = enrich::merge_human_metadata(extended, 4);
    EXPECT_EQ(c2.answer, c.answer);
    EXPECT_EQ(c2.ratings_used, c.ratings_used);
  }
}

TEST(ConsensusProperty, EvenSplitIsUnresolved) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<const char*> answers{"yes", "yes", "yes", "no", "no", "no"};
    rng.shuffle(answers);
    std::vector<HumanRating> r;
    for (std::size_t i = 0; i < answers.size(); ++i) {
      HumanRating h;
      h.answer = answers[i];
      h.rank_in_sequence = static_cast<int>(i) + 1;
      r.push_back(h);
    }
    EXPECT_EQ(enrich::merge_human_metadata(r, 4).answer, enrich::kUnresolved);
  }
}

TEST(Consensus, AppliedToRecords) {
  auto ratings = seq({"yes", "yes", "yes", "yes"});
  auto dir = seq({"left", "left", "left", "left"});
  for (auto& d : dir) d.attribute = "direction";
  ratings.insert(ratings.end(), dir.begin(), dir.end());
  const auto img = image_with(10, 10, {rect_object("a", 10, 10, {0, 0, 5, 5})});
  ingest::DepthMap d = depth_of(10, 10, 100);
  const auto e = enrich::enrich_image(img, &d, enrich::merge_all(ratings, 4));
  EXPECT_TRUE(e.errors.empty());
  EXPECT_EQ(e.records[0].occluded, TriState::yes);
  EXPECT_EQ(e.records[0].direction, Direction::left);
  EXPECT_FALSE(e.records[0].truncated.has_value());
  EXPECT_EQ(e.records[0].source_tags.at("occluded"), Source::human);
}

TEST(MetadataIo, JsonlRoundTrip) {
  const auto img = image_with(20, 20, {rect_object("a", 20, 20, {0, 0, 10, 10}),
                                       rect_object("b", 20, 20, {10, 0, 20, 10})});
  ingest::DepthMap d = depth_of(20, 20, 30000);
  auto ratings = seq({"no", "no", "no", "no"});
  const auto e = enrich::enrich_image(img, &d, enrich::merge_all(ratings, 4));
  const auto text = enrich::to_jsonl(e.records);
  const auto back = enrich::from_jsonl(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(enrich::to_jsonl(back), text);
  EXPECT_EQ(back[0].occluded, TriState::no);
  EXPECT_EQ(back[1].segmask_touches_segmask_with, std::vector<std::string>{"a"});
  EXPECT_EQ(back[0].average_depth, e.records[0].average_depth);
}

}  // namespace
}  // namespace taskaug
