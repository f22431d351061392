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

#include <set>

#include "support.hpp"
#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/synth/mock.hpp"
#include "taskaug/taskgen/bundle.hpp"
#include "taskaug/taskgen/catalog.hpp"
#include "taskaug/taskgen/generators.hpp"

namespace taskaug {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct Generated {
  synth::Fixture fx;
  std::vector<taskgen::DatasetInput> inputs;
  taskgen::GenerationConfig cfg;
  taskgen::TaskBundle bundle;
};

const Generated& shared_run() {
  static const Generated g = [] {
    Generated out;
    synth::FixtureOptions opt;
    opt.scenes = 24;
    opt.seed = 11;
    out.fx = synth::make_fixture(opt);
    out.inputs = {testing::fixture_dataset(out.fx)};
    out.cfg.seed = 7;
    out.bundle = taskgen::build_bundle(out.inputs, out.cfg);
    return out;
  }();
  return g;
}

TEST(Catalog, ListsEveryTaskTypeOnce) {
  const auto& cat = taskgen::task_catalog();
  ASSERT_EQ(cat.size(), kTaskTypeCount);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(cat[i].task_type, all_task_types()[i]);
    EXPECT_EQ(cat[i].template_id, task_code(cat[i].task_type));
  }
}

TEST(SelectImages, OrdersByClassesThenObjectsThenId) {
  auto mk = [](std::string id, std::vector<std::string> classes) {
    AnnotatedImage img;
    img.image_id = std::move(id);
    for (auto& c : classes) img.objects.push_back({"o", c, {}, {}});
    return img;
  };
  std::vector<AnnotatedImage> ds{mk("c", {"a", "a"}), mk("b", {"a", "b"}), mk("a", {"a", "a"}), mk("d", {"x"})};
  const auto sel = taskgen::select_images(ds, 3);
  ASSERT_EQ(sel.size(), 3u);
  EXPECT_EQ(sel[0]->image_id, "b");
  EXPECT_EQ(sel[1]->image_id, "a");
  EXPECT_EQ(sel[2]->image_id, "c");
  EXPECT_THROW(taskgen::select_images(ds, 0), InvalidArgument);
}

TEST(GenerationConfig, RejectsNonPositiveMargins) {
  taskgen::GenerationConfig c;
  EXPECT_NO_THROW(c.validate());
  c.min_depth_margin = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.min_size_ratio = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.grid.blur_sigmas = {0.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Bundle, AnswerKeysAgreeWithIndependentOracle) {
  const auto& g = shared_run();
  TempDir dir("keys");
  taskgen::write_bundle(g.bundle, g.inputs, dir.path(), 2);
  const auto loaded = taskgen::read_bundle(dir.path());
  std::map<std::string, int> checked;
  const auto failures = testing::check_answer_keys(g.fx, loaded, g.cfg, checked);
  for (const auto& f : failures) ADD_FAILURE() << f;
  EXPECT_GE(checked.size(), 23u);
}

TEST(Bundle, OracleRejectsEveryWrongKey) {
  const auto& g = shared_run();
  TempDir dir("mutant");
  taskgen::write_bundle(g.bundle, g.inputs, dir.path(), 2);
  auto loaded = taskgen::read_bundle(dir.path());
  for (auto& t : loaded.tasks) t.answer_key = synth::wrong_answers(t).front();
  std::map<std::string, int> checked;
  const auto failures = testing::check_answer_keys(g.fx, loaded, g.cfg, checked);
  EXPECT_EQ(failures.size(), loaded.tasks.size());
}

TEST(Bundle, KeysAreCanonicalAndIdsUnique) {
  const auto& g = shared_run();
  std::set<std::string> ids;
  std::set<std::string> assets;
  for (const auto& a : g.bundle.assets) assets.insert(a.asset_id);
  for (const auto& t : g.bundle.tasks) {
    EXPECT_TRUE(ids.insert(t.task_id).second) << t.task_id;
    EXPECT_TRUE(is_canonical_answer(t.answer_type, t.answer_key)) << t.task_id << " " << t.answer_key;
    EXPECT_EQ(t.answer_type, answer_type_of(t.task_type));
    for (const auto& r : t.image_refs) EXPECT_TRUE(assets.contains(r)) << r;
    if (t.answer_type == AnswerType::quiz4) {
      EXPECT_EQ(t.options.size(), 4u) << t.task_id;
    }
  }
}

TEST(Bundle, RespectsPerImageCap) {
  const auto& g = shared_run();
  std::map<std::pair<std::string, TaskType>, int> per;
  for (const auto& t : g.bundle.tasks) ++per[{t.image_id, t.task_type}];
  for (const auto& [k, n] : per) EXPECT_LE(n, g.cfg.max_tasks_per_type_per_image) << k.first;
}

TEST(Bundle, BinaryKeysBalancedOrWarned) {
  const auto& g = shared_run();
  std::map<TaskType, std::pair<int, int>> counts;
  for (const auto& t : g.bundle.tasks) {
    if (t.answer_type != AnswerType::binary) continue;
    (t.answer_key == "yes" ? counts[t.task_type].first : counts[t.task_type].second)++;
  }
  for (const auto& [type, c] : counts) {
    const double share = static_cast<double>(c.first) / (c.first + c.second);
    const bool warned = std::ranges::any_of(g.bundle.warnings, [&](const std::string& w) {
      return w.find(task_code(type)) != std::string::npos;
    });
    if (!warned) {
      EXPECT_LE(std::fabs(share - 0.5), g.cfg.binary_balance_tolerance + 1e-9) << task_code(type);
    }
  }
}

TEST(Bundle, TaskJsonRoundTrips) {
  const auto& g = shared_run();
  for (const auto& t : g.bundle.tasks) {
    const auto back = taskgen::task_from_json(taskgen::to_json(t));
    EXPECT_EQ(taskgen::to_json(back).dump(), taskgen::to_json(t).dump());
  }
}

TEST(Bundle, ByteIdenticalAcrossRunsAndWorkerCounts) {
  const auto& g = shared_run();
  TempDir a("det_a"), b("det_b");
  auto cfg1 = g.cfg;
  cfg1.workers = 1;
  auto cfg4 = g.cfg;
  cfg4.workers = 4;
  taskgen::write_bundle(taskgen::build_bundle(g.inputs, cfg1), g.inputs, a.path(), 1);
  taskgen::write_bundle(taskgen::build_bundle(g.inputs, cfg4), g.inputs, b.path(), 4);
  const auto ha = testing::hash_tree(a.path()), hb = testing::hash_tree(b.path());
  EXPECT_GT(ha.size(), 10u);
  EXPECT_EQ(ha, hb);
}

TEST(Bundle, SeedChangesTheBundle) {
  const auto& g = shared_run();
  auto cfg = g.cfg;
  cfg.seed = g.cfg.seed + 1;
  const auto other = taskgen::build_bundle(g.inputs, cfg);
  EXPECT_NE(other.manifest.dump(), g.bundle.manifest.dump());
  std::string x, y;
  for (const auto& t : other.tasks) x += taskgen::to_json(t).dump();
  for (const auto& t : g.bundle.tasks) y += taskgen::to_json(t).dump();
  EXPECT_NE(x, y);
}

TEST(Bundle, ManifestRecordsProvenance) {
  const auto& m = shared_run().bundle.manifest;
  EXPECT_EQ(m["format"], "taskaug-bundle/1");
  EXPECT_EQ(m["seed"], 7u);
  EXPECT_EQ(m["template_version"], taskgen::default_templates().version);
  EXPECT_EQ(m["dataset_sha256"], taskgen::dataset_digest(shared_run().inputs));
  EXPECT_EQ(m["task_count"], shared_run().bundle.tasks.size());
}

TEST(Bundle, DuplicateImageIdsAcrossDatasetsThrow) {
  const auto& g = shared_run();
  auto second = g.inputs[0];
  second.name = "copy";
  EXPECT_THROW(taskgen::build_bundle({g.inputs[0], second}, g.cfg), InvalidArgument);
}

TEST(Bundle, BudgetLimitsImagesPerDomain) {
  const auto& g = shared_run();
  auto cfg = g.cfg;
  cfg.budget = 3;
  const auto b = taskgen::build_bundle(g.inputs, cfg);
  std::set<std::string> images;
  for (const auto& t : b.tasks) images.insert(t.image_id);
  EXPECT_LE(images.size(), 3u);
}

TEST(Generators, SingleObjectSceneGivesNegativePresenceOfOthers) {
  const auto& g = shared_run();
  for (const auto& t : g.bundle.tasks) {
    if (t.task_type != TaskType::T1_3) continue;
    const auto& img = *std::ranges::find(g.fx.images, t.image_id, &AnnotatedImage::image_id);
    EXPECT_EQ(t.answer_key, img.objects.size() >= 2 ? "yes" : "no");
  }
}

TEST(Generators, NoDepthMapMeansNoDepthTasks) {
  const auto& g = shared_run();
  auto input = g.inputs[0];
  input.depth.clear();
  const auto b = taskgen::build_bundle({input}, g.cfg);
  for (const auto& t : b.tasks) {
    EXPECT_NE(t.task_type, TaskType::T6_2);
  }
}

TEST(Templates, FillLeavesUnknownPlaceholders) {
  EXPECT_EQ(taskgen::fill_template("a {x} {y}", {{"x", "1"}}), "a 1 {y}");
  EXPECT_EQ(taskgen::fill_template("{", {}), "{");
}

}  // namespace
}  // namespace taskaug
