// Copyright 2026 The Tempsum Authors.
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

#include "tempsum/protoform/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <tuple>
#include <sstream>

#include "tempsum/error.hpp"
#include "tempsum/protoform/quantifier.hpp"
#include "tempsum/protoform/rules.hpp"
#include "tempsum/protoform/trend.hpp"
#include "tempsum/text/codec.hpp"
#include "tempsum/util/date.hpp"

namespace tempsum::protoform {

using text::SlotFill;
using text::SlotKind;

namespace {

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

SlotFill fill(SlotKind kind, std::string_view surface_text) { return {kind, words_of(surface_text)}; }

SlotFill attribute() { return fill(SlotKind::A, kAttributeSurface); }
SlotFill time_window() { return fill(SlotKind::TW, kTimeWindowSurface); }
SlotFill sub_window() { return fill(SlotKind::sTW, kSubTimeWindowSurface); }
SlotFill goal() { return fill(SlotKind::G, kGoalSurface); }
SlotFill level_fill(Level level) { return fill(SlotKind::S, to_string(level)); }
SlotFill quantifier_fill(Quantifier q) { return fill(SlotKind::Q, surface(q)); }

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::span<const double> slice(const ingest::TimeSeries& s, IndexRange r) {
  return std::span<const double>(s.values).subspan(r.begin, r.size());
}

bool goal_met(double value, double goal_value) { return std::abs(value - goal_value) <= kGoalBand * goal_value; }

std::size_t goal_met_count(const ingest::TimeSeries& s, IndexRange r) {
  std::size_t met = 0;
  for (std::size_t i = r.begin; i < r.end; ++i) met += goal_met(s.values[i], (*s.goal_values)[i]) ? 1 : 0;
  return met;
}

SummaryInstance finish(SummaryType type, const std::string& protoform, std::vector<SlotFill> fills,
                       std::vector<IndexRange> segments, double truth) {
  auto inst = realize(type, protoform, std::move(fills));
  inst.segments = std::move(segments);
  inst.truth_degree = std::clamp(truth, 0.0, 1.0);
  return inst;
}

}  // namespace

IndexRange SummaryInstance::window() const {
  if (segments.empty()) return {};
  std::size_t b = segments.front().begin;
  std::size_t e = segments.front().end;
  for (const auto& s : segments) {
    b = std::min(b, s.begin);
    e = std::max(e, s.end);
  }
  return {b, e};
}

SeriesContext::SeriesContext(const ingest::TimeSeries& series) : series_(&series) {
  auto logged = series.logged_values();
  profile_ = build_profile(logged.empty() ? std::span<const double>(series.values) : std::span<const double>(logged));
  levels_.reserve(series.size());
  weekdays_.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    levels_.push_back(strongest_level(series.values[i], profile_));
    weekdays_.push_back(weekday_index(series.date_at(i)));
  }
}

SummaryInstance realize(SummaryType type, const std::string& protoform, std::vector<SlotFill> fills) {
  SummaryInstance inst;
  inst.type = type;
  std::size_t next = 0;
  for (const auto& token : words_of(protoform)) {
    const auto kind = text::slot_kind_from_placeholder(token);
    if (!kind) {
      inst.summary_tokens.push_back(token);
      inst.template_tokens.push_back(token);
      continue;
    }
    if (next >= fills.size() || fills[next].kind != *kind) {
      throw ConsistencyError("protoform '" + protoform + "' does not match its slot fills");
    }
    for (const auto& w : fills[next].surface) {
      inst.summary_tokens.push_back(w);
      inst.template_tokens.emplace_back(text::placeholder(*kind));
    }
    ++next;
  }
  if (next != fills.size()) throw ConsistencyError("protoform '" + protoform + "' leaves slot fills unused");
  inst.slot_fills = std::move(fills);
  return inst;
}

std::vector<SummaryInstance> generate_summary(SummaryType type, const SeriesContext& ctx, std::size_t as_of_index) {
  const auto& s = ctx.series();
  const auto& rule = rule_for(type);
  if (as_of_index >= s.size()) throw DomainError("as-of index outside the series");
  if (as_of_index + 1 < rule.min_history_days) {
    throw InsufficientHistoryError(std::string(to_string(type)) + " needs " + std::to_string(rule.min_history_days) +
                                   " days of history, have " + std::to_string(as_of_index + 1));
  }
  const std::size_t end = as_of_index + 1;
  const IndexRange window{end - rule.window_days, end};
  const IndexRange week{end - 7, end};
  const auto& protoforms = rule.protoforms;
  const auto& profile = ctx.profile();

  using enum SummaryType;
  switch (type) {
    case standard_eval_tw: {
      const double m = mean_of(slice(s, window));
      const Level level = strongest_level(m, profile);
      return {finish(type, protoforms[0], {time_window(), attribute(), level_fill(level)}, {window},
                     level_degree(m, profile, level))};
    }
    case standard_eval_stw: {
      std::array<std::size_t, 3> counts{};
      for (std::size_t i = window.begin; i < window.end; ++i) ++counts[static_cast<std::size_t>(ctx.levels()[i])];
      std::size_t modal = 0;
      for (std::size_t l = 1; l < 3; ++l) {
        if (counts[l] >= counts[modal]) modal = l;
      }
      const auto truth = quantifier_truth(static_cast<double>(counts[modal]) / static_cast<double>(window.size()));
      const Level level = static_cast<Level>(modal);
      if (truth.quantifier == Quantifier::all) {
        return {finish(type, protoforms[1], {time_window(), attribute(), level_fill(level)}, {window}, truth.degree)};
      }
      return {finish(type, protoforms[0],
                     {quantifier_fill(truth.quantifier), sub_window(), time_window(), attribute(), level_fill(level)},
                     {window}, truth.degree)};
    }
    case day_based_pattern: {
      struct Candidate {
        double proportion;
        int level;
        std::size_t last_seen;
        int weekday;
        double degree;
      };
      std::optional<Candidate> best;
      for (int wd = 0; wd < 7; ++wd) {
        std::array<std::size_t, 3> counts{};
        std::size_t total = 0;
        std::size_t last_seen = 0;
        for (std::size_t i = window.begin; i < window.end; ++i) {
          if (ctx.weekdays()[i] != wd) continue;
          ++counts[static_cast<std::size_t>(ctx.levels()[i])];
          ++total;
          last_seen = i;
        }
        if (total == 0) continue;
        for (int l = 0; l < 3; ++l) {
          const double p = static_cast<double>(counts[static_cast<std::size_t>(l)]) / static_cast<double>(total);
          const auto truth = quantifier_truth(p);
          if (truth.quantifier < Quantifier::most) continue;
          const Candidate c{p, l, last_seen, wd, truth.degree};
          if (!best || std::tie(c.proportion, c.level, c.last_seen) >
                           std::tie(best->proportion, best->level, best->last_seen)) {
            best = c;
          }
        }
      }
      if (!best) return {};
      return {finish(type, protoforms[0],
                     {attribute(), level_fill(static_cast<Level>(best->level)),
                      fill(SlotKind::D, weekday_name(best->weekday))},
                     {window}, best->degree)};
    }
    case goal_evaluation:
    case goal_assistance: {
      if (!s.goal_values) return {};
      const std::size_t met = goal_met_count(s, window);
      const auto truth = quantifier_truth(static_cast<double>(met) / static_cast<double>(window.size()));
      if (type == goal_evaluation) {
        return {finish(type, protoforms[0], {quantifier_fill(truth.quantifier), sub_window(), time_window(), goal()},
                       {window}, truth.degree)};
      }
      if (truth.quantifier > Quantifier::some) return {};
      double error = 0.0;
      for (std::size_t i = window.begin; i < window.end; ++i) error += s.values[i] - (*s.goal_values)[i];
      const auto direction = error > 0.0 ? kDirectionSurfaces[1] : kDirectionSurfaces[0];
      return {finish(type, protoforms[0], {goal(), fill(SlotKind::S, direction), attribute()}, {window},
                     truth.degree)};
    }
    case standard_trend: {
      const auto truth = quantifier_truth(slope_change_ratio(slice(s, window)));
      return {finish(type, protoforms[0],
                     {quantifier_fill(truth.quantifier), sub_window(), time_window(), attribute()}, {window},
                     truth.degree)};
    }
    case if_then_pattern: {
      const std::span<const Level> levels(ctx.levels().data() + window.begin, window.size());
      const auto mined = mine_if_then_rules(levels, kRuleMinSupport, kRuleMinConfidence, kRuleMaxAntecedent);
      if (mined.empty()) return {};
      const auto& top = mined.front();
      std::vector<SlotFill> fills{attribute()};
      for (Level l : top.antecedent) fills.push_back(level_fill(l));
      fills.push_back(level_fill(top.consequent));
      return {finish(type, protoforms[top.antecedent.size() - 1], std::move(fills), {window}, top.confidence)};
    }
    case day_if_then_pattern: {
      const std::span<const Level> levels(ctx.levels().data() + window.begin, window.size());
      const std::span<const int> weekdays(ctx.weekdays().data() + window.begin, window.size());
      const auto mined = mine_day_if_then_rules(levels, weekdays, kRuleMinSupport, kRuleMinConfidence);
      if (mined.empty()) return {};
      const auto& top = mined.front();
      return {finish(type, protoforms[0],
                     {attribute(), level_fill(top.antecedent.front()), fill(SlotKind::D, weekday_name(*top.weekday)),
                      level_fill(top.consequent)},
                     {window}, top.confidence)};
    }
    case evaluation_comparison: {
      const double before = mean_of(slice(s, {window.begin, window.begin + 7}));
      const double after = mean_of(slice(s, week));
      std::size_t which = 1;
      if (before > 0.0) {
        const double rel = (after - before) / before;
        if (rel > kComparisonDeadBand) which = 2;
        if (rel < -kComparisonDeadBand) which = 0;
      } else if (after > 0.0) {
        which = 2;
      }
      return {finish(type, protoforms[0],
                     {attribute(), time_window(), fill(SlotKind::S, kComparisonSurfaces[which]), time_window()},
                     {window}, 1.0)};
    }
    case goal_comparison: {
      if (!s.goal_values) return {};
      const std::size_t before = goal_met_count(s, {window.begin, window.begin + 7});
      const std::size_t after = goal_met_count(s, week);
      const std::size_t which = after > before ? 2 : (after < before ? 0 : 1);
      return {finish(type, protoforms[0],
                     {goal(), time_window(), fill(SlotKind::S, kComparisonSurfaces[which]), time_window()}, {window},
                     1.0)};
    }
    case cluster_description:
    case cluster_pattern:
    case standard_pattern: {
      const auto sim = find_similar_weeks(s.values, week, kSimilarWeeksK);
      const auto most_recent = std::max_element(sim.similar.begin(), sim.similar.end(),
                                                [](const auto& a, const auto& b) { return a.week.begin < b.week.begin; });
      if (type == cluster_description) {
        const double m = mean_of(slice(s, most_recent->week));
        const Level level = strongest_level(m, profile);
        return {finish(type, protoforms[0], {time_window(), attribute(), level_fill(level)}, {week},
                       level_degree(m, profile, level))};
      }
      if (type == standard_pattern) {
        const IndexRange successor = *most_recent->successor;
        const double m = mean_of(slice(s, successor));
        const Level level = strongest_level(m, profile);
        return {finish(type, protoforms[0], {time_window(), attribute(), level_fill(level), time_window()},
                       {most_recent->week, successor, week}, level_degree(m, profile, level))};
      }
      // Majority label over the successors of the top-k similar weeks; ties go
      // to the label of the most recent successor among the tied labels.
      std::array<std::size_t, 3> votes{};
      std::array<std::size_t, 3> latest{};
      for (const auto& w : sim.similar) {
        const auto l = static_cast<std::size_t>(strongest_level(mean_of(slice(s, *w.successor)), profile));
        ++votes[l];
        latest[l] = std::max(latest[l], w.successor->begin + 1);
      }
      std::size_t winner = 0;
      for (std::size_t l = 1; l < 3; ++l) {
        if (std::tie(votes[l], latest[l]) > std::tie(votes[winner], latest[winner])) winner = l;
      }
      return {finish(type, protoforms[0],
                     {time_window(), attribute(), level_fill(static_cast<Level>(winner)), time_window()}, {week},
                     static_cast<double>(votes[winner]) / static_cast<double>(sim.similar.size()))};
    }
  }
  return {};
}

std::vector<SummaryInstance> generate_summary(SummaryType type, const ingest::TimeSeries& series, Date as_of) {
  const long index = days_between(series.start_date, as_of);
  if (index < 0 || static_cast<std::size_t>(index) >= series.size()) {
    throw DomainError("as-of date " + format_date(as_of) + " outside the series");
  }
  const SeriesContext ctx(series);
  return generate_summary(type, ctx, static_cast<std::size_t>(index));
}

std::vector<std::string> templatize(const SummaryInstance& instance) {
  return text::to_template_tokens(instance.summary_tokens, instance.slot_fills);
}

}  // namespace tempsum::protoform
