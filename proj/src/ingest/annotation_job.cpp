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

#include "taskaug/ingest/annotation_job.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

#include "taskaug/common/csv.hpp"
#include "taskaug/common/error.hpp"

namespace taskaug::ingest {

std::string_view to_string(HumanAttribute a) {
  switch (a) {
    case HumanAttribute::occluded: return "occluded";
    case HumanAttribute::truncated: return "truncated";
    case HumanAttribute::direction: return "direction";
  }
  return "?";
}

std::optional<HumanAttribute> parse_human_attribute(std::string_view s) {
  if (s == "occluded") return HumanAttribute::occluded;
  if (s == "truncated") return HumanAttribute::truncated;
  if (s == "direction") return HumanAttribute::direction;
  return std::nullopt;
}

std::vector<std::string> allowed_answers(HumanAttribute a) {
  if (a == HumanAttribute::direction) return {"toward_camera", "away", "left", "right"};
  return {"yes", "no"};
}

ExportedJob export_annotation_job(const std::vector<AnnotatedImage>& dataset,
                                  const std::vector<HumanAttribute>& attributes,
                                  std::string job_id, int max_raters, int consensus_threshold) {
  if (attributes.empty()) throw InvalidArgument("no attributes requested");
  if (consensus_threshold > max_raters || consensus_threshold < 1) {
    throw InvalidArgument("consensus_threshold must be in [1, max_raters]");
  }
  ExportedJob out;
  out.job.job_id = std::move(job_id);
  out.job.max_raters = max_raters;
  out.job.consensus_threshold = consensus_threshold;

  std::vector<HumanAttribute> attrs = attributes;
  std::ranges::sort(attrs, {}, [](HumanAttribute a) { return to_string(a); });
  attrs.erase(std::unique(attrs.begin(), attrs.end()), attrs.end());

  for (const auto& img : dataset) {
    for (const auto& obj : img.objects) {
      for (auto a : attrs) out.job.items.push_back({img.image_id, obj.object_id, a, obj.bbox});
    }
  }
  std::ranges::stable_sort(out.job.items, {}, [](const AnnotationJobItem& it) {
    return std::make_tuple(std::string_view(it.image_id), std::string_view(it.object_id),
                           to_string(it.attribute));
  });

  out.csv = csv::format_row({"job_id", "image_id", "object_id", "attribute", "crop_x_min",
                             "crop_y_min", "crop_x_max", "crop_y_max", "allowed_answers"});
  for (const auto& it : out.job.items) {
    std::string allowed;
    for (const auto& a : allowed_answers(it.attribute)) {
      if (!allowed.empty()) allowed += '|';
      allowed += a;
    }
    out.csv += csv::format_row({out.job.job_id, it.image_id, it.object_id,
                                std::string(to_string(it.attribute)), std::to_string(it.crop.x_min),
                                std::to_string(it.crop.y_min), std::to_string(it.crop.x_max),
                                std::to_string(it.crop.y_max), allowed});
  }
  return out;
}

namespace {

bool valid_task_answer(std::string_view a) {
  for (auto t : {AnswerType::binary, AnswerType::count, AnswerType::quiz4, AnswerType::color}) {
    if (is_canonical_answer(t, a)) return true;
  }
  return false;
}

}  // namespace

ImportedRatings import_human_annotations(std::string_view csv_text) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) throw ParseError("ratings CSV has no header row", 0);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].size(); ++i) col[rows[0][i]] = i;
  for (const char* required : {"rater_id", "answer", "rank_in_sequence"}) {
    if (!col.contains(required)) throw ParseError(std::string("ratings CSV lacks column ") + required, 0);
  }
  auto field = [&](const csv::Row& r, const char* name) -> std::string {
    const auto it = col.find(name);
    if (it == col.end() || it->second >= r.size()) return {};
    return r[it->second];
  };

  ImportedRatings out;
  std::map<std::string, std::vector<HumanRating>> items;
  std::map<std::string, std::string> item_errors;
  std::vector<std::string> order;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    HumanRating h;
    h.task_id = field(r, "task_id");
    h.image_id = field(r, "image_id");
    h.object_id = field(r, "object_id");
    h.attribute = field(r, "attribute");
    h.rater_id = field(r, "rater_id");
    h.answer = field(r, "answer");
    const auto rank_text = field(r, "rank_in_sequence");
    const auto key = h.item_key();
    if (!items.contains(key) && !item_errors.contains(key)) order.push_back(key);

    auto [p, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(),
                                   h.rank_in_sequence);
    if (ec != std::errc{} || p != rank_text.data() + rank_text.size()) {
      item_errors.try_emplace(key, "bad rank '" + rank_text + "'");
      continue;
    }
    bool known = false;
    if (!h.task_id.empty()) {
      known = valid_task_answer(h.answer);
    } else if (auto a = parse_human_attribute(h.attribute)) {
      const auto allowed = allowed_answers(*a);
      known = std::ranges::find(allowed, h.answer) != allowed.end();
    } else {
      item_errors.try_emplace(key, "unknown attribute '" + h.attribute + "'");
      continue;
    }
    if (!known) {
      item_errors.try_emplace(key, "unknown token '" + h.answer + "'");
      continue;
    }
    items[key].push_back(std::move(h));
  }

  for (const auto& key : order) {
    if (auto e = item_errors.find(key); e != item_errors.end()) {
      out.errors.push_back({e->second.starts_with("unknown token") ? "unknown token" : "bad row", key,
                            e->second});
      continue;
    }
    auto& group = items[key];
    std::ranges::stable_sort(group, {}, &HumanRating::rank_in_sequence);
    bool consecutive = true;
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (group[k].rank_in_sequence != static_cast<int>(k) + 1) consecutive = false;
    }
    if (!consecutive) {
      out.errors.push_back({"non-consecutive", key, "ranks must be 1..n without gaps"});
      continue;
    }
    for (auto& h : group) out.ratings.push_back(std::move(h));
  }
  return out;
}

std::string format_ratings_csv(const std::vector<HumanRating>& ratings, std::string_view job_id) {
  std::string out = csv::format_row({"job_id", "image_id", "object_id", "task_id", "attribute",
                                     "rater_id", "answer", "rank_in_sequence"});
  for (const auto& h : ratings) {
    out += csv::format_row({std::string(job_id), h.image_id, h.object_id, h.task_id, h.attribute,
                            h.rater_id, h.answer, std::to_string(h.rank_in_sequence)});
  }
  return out;
}

}  // namespace taskaug::ingest
