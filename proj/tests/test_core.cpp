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

#include "taskaug/core/raster.hpp"
#include "taskaug/core/types.hpp"
#include "taskaug/core/validate.hpp"

namespace taskaug {
namespace {

AnnotatedImage square_image() {
  AnnotatedImage img;
  img.image_id = "img";
  img.width = 10;
  img.height = 8;
  img.pixels = RgbImage(10, 8);
  ObjectInstance o;
  o.object_id = "o1";
  o.class_name = "cat";
  o.mask = Mask(10, 8);
  for (int y = 2; y < 5; ++y)
    for (int x = 3; x < 7; ++x) o.mask.set(x, y);
  o.bbox = {3, 2, 7, 5};
  img.objects.push_back(o);
  return img;
}

TEST(TightBBox, HalfOpenBounds) {
  Mask m(5, 5);
  EXPECT_FALSE(tight_bbox(m));
  m.set(1, 2);
  m.set(3, 4);
  EXPECT_EQ(*tight_bbox(m), (BBox{1, 2, 4, 5}));
}

TEST(BBox, GeometryHelpers) {
  const BBox b{2, 3, 6, 5};
  EXPECT_EQ(b.width(), 4);
  EXPECT_EQ(b.height(), 2);
  EXPECT_EQ(b.area(), 8);
  EXPECT_DOUBLE_EQ(b.center_x(), 4.0);
  EXPECT_TRUE(b.contains(2, 3));
  EXPECT_FALSE(b.contains(6, 3));
  EXPECT_FALSE(b.intersects({6, 3, 8, 5}));
  EXPECT_TRUE(b.dilated(1).intersects({6, 3, 8, 5}));
}

TEST(Luminance, Rec601Endpoints) {
  EXPECT_DOUBLE_EQ(luminance({0, 0, 0}), 0.0);
  EXPECT_NEAR(luminance({255, 255, 255}), 1.0, 1e-12);
  EXPECT_NEAR(luminance({255, 0, 0}), 0.299, 1e-12);
}

TEST(Validate, ConsistentImageHasNoViolations) {
  EXPECT_TRUE(validate_dataset({square_image()}).ok());
}

TEST(Validate, BBoxExcludingAMaskPixel) {
  auto img = square_image();
  img.objects[0].mask.set(8, 6);
  const auto r = validate_dataset({img});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, "bbox not tight");
  EXPECT_EQ(r.violations[0].object_id, "o1");
}

TEST(Validate, DuplicateObjectIds) {
  auto img = square_image();
  img.objects.push_back(img.objects[0]);
  const auto r = validate_dataset({img});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, "duplicate id");
}

TEST(Validate, ReportsEveryProblemWithoutModifying) {
  auto img = square_image();
  auto dup = img;
  img.objects[0].mask = Mask(10, 8);
  const auto before = img.objects[0].bbox;
  const auto r = validate_dataset({img, dup});
  std::vector<std::string> kinds;
  for (const auto& v : r.violations) kinds.push_back(v.kind);
  EXPECT_NE(std::ranges::find(kinds, "empty mask"), kinds.end());
  EXPECT_NE(std::ranges::find(kinds, "duplicate id"), kinds.end());
  EXPECT_EQ(img.objects[0].bbox, before);
}

TEST(Validate, MaskDimensionMismatch) {
  auto img = square_image();
  img.objects[0].mask = Mask(4, 4);
  const auto r = validate_dataset({img});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, "mask dimension mismatch");
}

TEST(TaskTypes, CodesRoundTripAndAnswerTypes) {
  for (auto t : all_task_types()) EXPECT_EQ(parse_task_type(task_code(t)), t);
  EXPECT_EQ(answer_type_of(TaskType::T1_2), AnswerType::count);
  EXPECT_EQ(answer_type_of(TaskType::T3_1), AnswerType::color);
  EXPECT_EQ(answer_type_of(TaskType::T8_1), AnswerType::quiz4);
  EXPECT_EQ(answer_type_of(TaskType::T6_2), AnswerType::binary);
  EXPECT_FALSE(parse_task_type("T9.9"));
}

TEST(CanonicalAnswers, PerType) {
  EXPECT_TRUE(is_canonical_answer(AnswerType::binary, "yes"));
  EXPECT_FALSE(is_canonical_answer(AnswerType::binary, "Yes"));
  EXPECT_TRUE(is_canonical_answer(AnswerType::quiz4, "d"));
  EXPECT_FALSE(is_canonical_answer(AnswerType::quiz4, "e"));
  EXPECT_TRUE(is_canonical_answer(AnswerType::count, "0"));
  EXPECT_TRUE(is_canonical_answer(AnswerType::count, "12"));
  EXPECT_FALSE(is_canonical_answer(AnswerType::count, "012"));
  EXPECT_FALSE(is_canonical_answer(AnswerType::count, "-1"));
  EXPECT_TRUE(is_canonical_answer(AnswerType::color, "green"));
}

TEST(Enums, StringRoundTrips) {
  for (auto s : {EvalStatus::answered, EvalStatus::unparseable, EvalStatus::unanswered_safety,
                 EvalStatus::transport_error})
    EXPECT_EQ(parse_eval_status(to_string(s)), s);
  for (auto d : {Direction::toward_camera, Direction::away, Direction::left, Direction::right})
    EXPECT_EQ(parse_direction(to_string(d)), d);
  EXPECT_EQ(parse_tristate("unresolved"), TriState::unresolved);
}

TEST(AttributeSource, ProvenanceByAttribute) {
  EXPECT_EQ(attribute_source("relative_size"), Source::heuristic);
  EXPECT_EQ(attribute_source("average_depth"), Source::model);
  EXPECT_EQ(attribute_source("occluded"), Source::human);
  EXPECT_FALSE(attribute_source("nonsense"));
}

TEST(HumanRating, ItemKey) {
  HumanRating r;
  r.image_id = "i";
  r.object_id = "o";
  r.attribute = "occluded";
  EXPECT_EQ(r.item_key(), "i/o/occluded");
  r.task_id = "t";
  EXPECT_EQ(r.item_key(), "t");
}

}  // namespace
}  // namespace taskaug
