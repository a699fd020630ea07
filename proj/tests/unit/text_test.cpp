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

#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "tempsum/dataset/builder.hpp"
#include "tempsum/error.hpp"
#include "tempsum/ingest/synth.hpp"
#include "tempsum/text/codec.hpp"
#include "tempsum/text/slots.hpp"
#include "tempsum/text/tokenize.hpp"
#include "tempsum/text/vocab.hpp"

using namespace tempsum;
using namespace tempsum::text;
using tempsum::testing::words;

TEST_SUITE("vocab") {
  TEST_CASE("reserved ids then frequency then lexicographic") {
    const std::vector<std::vector<std::string>> corpus = {{"a"}, {"a"}, {"b"}};
    const auto v = Vocab::build(corpus);
    CHECK(v.id("<pad>") == kPadId);
    CHECK(v.id("<s>") == kBosId);
    CHECK(v.id("</s>") == kEosId);
    CHECK(v.id("<unk>") == kUnkId);
    CHECK(v.id("a") == 4);
    CHECK(v.id("b") == 5);
    CHECK(v.size() == 6);

    const std::vector<std::vector<std::string>> ties = {{"zeta", "alpha"}};
    const auto t = Vocab::build(ties);
    CHECK(t.id("alpha") == 4);
    CHECK(t.id("zeta") == 5);
  }

  TEST_CASE("empty entries leave only the reserved tokens") {
    const std::vector<std::vector<std::string>> corpus = {{}, {}};
    CHECK(Vocab::build(corpus).size() == 4);
  }

  TEST_CASE("standard-evaluation corpus size is 4 plus distinct words") {
    ingest::SynthConfig cfg;
    cfg.n_users = 8;
    const auto series = ingest::build_series(ingest::synth_generate(cfg), ingest::Attribute::calorie_intake).series;
    const auto corpus = dataset::build_instances(series, protoform::SummaryType::standard_eval_tw);
    std::set<std::string> distinct;
    for (const auto& inst : corpus.instances) {
      for (const auto& w : decode(inst.y_summary, corpus.summary_vocab)) distinct.insert(w);
    }
    CHECK(corpus.summary_vocab.size() == static_cast<int>(4 + distinct.size()));
  }

  TEST_CASE("bijection and JSON round trip") {
    const std::vector<std::vector<std::string>> corpus = {words("the cat sat on the mat ."), words("a dog .")};
    const auto v = Vocab::build(corpus);
    for (int id = 0; id < v.size(); ++id) CHECK(v.id(v.token(id)) == id);
    CHECK(Vocab::from_json(v.to_json()) == v);
    CHECK(Vocab::from_json(v.to_json()).hash() == v.hash());
    CHECK_THROWS_AS(Vocab::from_json("[\"a\",\"b\"]"), SchemaError);
    CHECK_THROWS_AS(v.token(v.size()), ConsistencyError);
  }

  TEST_CASE("template vocabulary holds every placeholder and keeps literal ids") {
    const std::vector<std::vector<std::string>> corpus = {words("In the past week , your calorie intake was high .")};
    const auto s = Vocab::build(corpus);
    const auto t = Vocab::template_vocab(s);
    for (const auto kind : kAllSlotKinds) CHECK(t.contains(placeholder(kind)));
    for (int id = 0; id < s.size(); ++id) CHECK(t.id(s.token(id)) == id);
    for (const auto& tok : t.tokens()) CHECK((s.contains(tok) || is_placeholder(tok)));
  }

  TEST_CASE("construction is deterministic") {
    const std::vector<std::vector<std::string>> corpus = {words("b c a"), words("c a"), words("a")};
    CHECK(Vocab::build(corpus).to_json() == Vocab::build(corpus).to_json());
    CHECK(Vocab::build(corpus).hash() == Vocab::build(corpus).hash());
  }
}

TEST_SUITE("codec") {
  const std::vector<std::vector<std::string>> corpus = {
      words("In the past full week , your calorie intake has been low ."),
      words("On most of the days in the past week , your calorie intake was high .")};

  TEST_CASE("encode wraps and decode strips") {
    const auto v = Vocab::build(corpus);
    for (const auto& sentence : corpus) {
      const auto seq = encode(sentence, v);
      CHECK(seq.ids.front() == kBosId);
      CHECK(seq.ids.back() == kEosId);
      CHECK(decode(seq, v) == sentence);
    }
  }

  TEST_CASE("full-week sentence is 13 content ids plus 2 specials") {
    const auto v = Vocab::build(corpus);
    const auto tokens = tokenize("In the past full week, your calorie intake has been low.");
    CHECK(tokens.size() == 13);
    CHECK(encode(tokens, v).size() == 15);
  }

  TEST_CASE("unknown words map to <unk>") {
    const auto v = Vocab::build(corpus);
    const auto seq = encode(words("your sodium intake"), v);
    CHECK(seq.ids[2] == kUnkId);
  }

  TEST_CASE("missing terminator is malformed") {
    const auto v = Vocab::build(corpus);
    CHECK_THROWS_AS(decode(TokenSequence{{kBosId, 5, 6}}, v), MalformedSequenceError);
  }

  TEST_CASE("tokenize splits punctuation and detokenize restores it") {
    CHECK(tokenize("In the past week, your calorie intake was high.") ==
          words("In the past week , your calorie intake was high ."));
    CHECK(detokenize(words("In the past week , your calorie intake was high .")) ==
          "In the past week, your calorie intake was high.");
  }
}

TEST_SUITE("template tokens") {
  TEST_CASE("one placeholder per surface word") {
    const auto summary = words("In the past full week , your calorie intake has been low .");
    const std::vector<SlotFill> fills = {
        {SlotKind::TW, {"week"}}, {SlotKind::A, {"calorie", "intake"}}, {SlotKind::S, {"low"}}};
    const auto tmpl = to_template_tokens(summary, fills);
    CHECK(tmpl == words("In the past full TW , your A A has been S ."));
    CHECK(instantiate(tmpl, fills) == summary);
  }

  TEST_CASE("identity without fills") {
    const auto summary = words("Keep it up .");
    CHECK(to_template_tokens(summary, {}) == summary);
    CHECK(instantiate(summary, {}) == summary);
  }

  TEST_CASE("day fixture") {
    const auto summary = words("When your calorie intake is high on a Saturday , it tends to be low the next day .");
    const std::vector<SlotFill> fills = {{SlotKind::A, {"calorie", "intake"}},
                                         {SlotKind::S, {"high"}},
                                         {SlotKind::D, {"Saturday"}},
                                         {SlotKind::S, {"low"}}};
    CHECK(to_template_tokens(summary, fills) ==
          words("When your A A is S on a D , it tends to be S the next day ."));
  }

  TEST_CASE("fills are matched in order") {
    // The second S fill must be found after the first.
    const auto summary = words("low then high");
    const std::vector<SlotFill> fills = {{SlotKind::S, {"high"}}, {SlotKind::S, {"low"}}};
    CHECK_THROWS_AS(to_template_tokens(summary, fills), ConsistencyError);
  }

  TEST_CASE("fill not found") {
    const std::vector<SlotFill> fills = {{SlotKind::G, {"calorie", "goal"}}};
    CHECK_THROWS_AS(to_template_tokens(words("your calorie intake"), fills), ConsistencyError);
  }

  TEST_CASE("instantiate rejects mismatched kinds and leftovers") {
    const std::vector<SlotFill> fills = {{SlotKind::S, {"low"}}};
    CHECK_THROWS_AS(instantiate(words("was Q ."), fills), ConsistencyError);
    CHECK_THROWS_AS(instantiate(words("was ."), fills), ConsistencyError);
  }
}
