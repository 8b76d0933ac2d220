//
// Copyright 2026 The synaug Authors
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

#include "synaug/lexicon.h"

#include <algorithm>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "synaug/error.h"
#include "testing/stats.h"

namespace synaug {
namespace {

SynonymLexicon ReadLexicon(const std::string& body,
                           LexiconLoadReport* report = nullptr) {
  std::istringstream in("#synlex v1\n" + body);
  return SynonymLexicon::Read(in, report);
}

TEST(LexiconTest, LoadsRecords) {
  const auto lexicon = ReadLexicon("gem\tnoun\tjewel\ngem\tnoun\tstone\n");
  ASSERT_EQ(lexicon.Records("gem").size(), 2u);
  EXPECT_EQ(lexicon.Records("gem")[0],
            (SynonymRecord{PartOfSpeech::kNoun, "jewel"}));
  EXPECT_TRUE(lexicon.IsCandidate("gem"));
}

TEST(LexiconTest, DropsSelfMultiTokenAndDuplicateRecords) {
  LexiconLoadReport report;
  const auto lexicon = ReadLexicon(
      "gem\tnoun\tgem\n"
      "go\tverb\tget_going\n"
      "go\tverb\tgo away\n"
      "gem\tnoun\tjewel\n"
      "gem\tnoun\tJewel\n"
      "# comment\n"
      "\n",
      &report);
  EXPECT_EQ(report.records, 1u);
  EXPECT_EQ(report.dropped_self, 1u);
  EXPECT_EQ(report.dropped_multi_token, 2u);
  EXPECT_EQ(report.dropped_duplicate, 1u);
  EXPECT_EQ(report.dropped(), 4u);
  EXPECT_EQ(lexicon.Synonyms("gem"), (std::vector<std::string>{"jewel"}));
}

TEST(LexiconTest, VacuousHeadwordIsNotACandidate) {
  const auto lexicon = ReadLexicon("go\tverb\tget_going\n");
  EXPECT_TRUE(lexicon.Contains("go"));
  EXPECT_FALSE(lexicon.IsCandidate("go"));
  EXPECT_FALSE(lexicon.IsCandidate("the"));
  EXPECT_FALSE(lexicon.Contains("the"));
  EXPECT_TRUE(lexicon.Records("the").empty());
}

TEST(LexiconTest, SynonymsAreDistinctAcrossPartsOfSpeech) {
  const auto lexicon = ReadLexicon(
      "fast\tadjective\tquick\nfast\tadverb\tquick\nfast\tverb\tabstain\n");
  EXPECT_EQ(lexicon.Synonyms("fast"),
            (std::vector<std::string>{"quick", "abstain"}));
  EXPECT_EQ(lexicon.Records("fast").size(), 3u);
}

TEST(LexiconTest, NotSymmetrized) {
  const auto lexicon = ReadLexicon("gem\tnoun\tjewel\n");
  EXPECT_FALSE(lexicon.IsCandidate("jewel"));
}

TEST(LexiconTest, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      SynonymLexicon::Read(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("gem\tnoun\tjewel\n"), 1u);
  EXPECT_EQ(line_of("#synlex v1\ngem\tnoun\tjewel\ngem noun jewel\n"), 3u);
  EXPECT_EQ(line_of("#synlex v1\ngem\tpronoun\tjewel\n"), 2u);
  EXPECT_EQ(line_of("#synlex v1\ngem\tnoun\tjewel\textra\n"), 2u);
  EXPECT_EQ(line_of("#synlex v1\n\tnoun\tjewel\n"), 2u);
}

TEST(PartOfSpeechTest, NamesRoundTrip) {
  for (auto pos : {PartOfSpeech::kNoun, PartOfSpeech::kVerb,
                   PartOfSpeech::kAdjective, PartOfSpeech::kAdverb}) {
    EXPECT_EQ(ParsePartOfSpeech(PartOfSpeechName(pos)), pos);
  }
  EXPECT_FALSE(ParsePartOfSpeech("pronoun").has_value());
}

class SamplerTest : public ::testing::Test {
 protected:
  SamplerTest()
      : vocab_({"the", "jewel", "gem", "stone", "rock"}, {50, 30, 20, 10, 5},
               1),
        lexicon_(ReadLexicon(
            "gem\tnoun\tjewel\ngem\tnoun\tstone\ngem\tnoun\tbauble\n"
            "rock\tnoun\tstone\nstone\tnoun\tpebble\n")) {}

  WordId Id(const char* w) const { return *vocab_.Find(w); }

  Vocabulary vocab_;
  SynonymLexicon lexicon_;
};

TEST_F(SamplerTest, RestrictsToVocabulary) {
  const SynonymSampler sampler(lexicon_, vocab_);
  EXPECT_TRUE(sampler.IsCandidate(Id("gem")));
  EXPECT_EQ(sampler.Synonyms(Id("gem")).size(), 2u);
  EXPECT_DOUBLE_EQ(sampler.Probability(Id("gem"), Id("jewel")), 0.75);
  EXPECT_DOUBLE_EQ(sampler.Probability(Id("gem"), Id("stone")), 0.25);
  EXPECT_EQ(sampler.Probability(Id("gem"), Id("the")), 0.0);
  // "pebble" is out of vocabulary.
  EXPECT_TRUE(sampler.IsCandidate(Id("stone")));
  EXPECT_TRUE(sampler.Synonyms(Id("stone")).empty());
  Rng rng(1);
  EXPECT_FALSE(sampler.Sample(Id("stone"), rng).has_value());
  EXPECT_FALSE(sampler.Sample(Id("the"), rng).has_value());
}

TEST_F(SamplerTest, SingleSynonymIsAlwaysReturned) {
  const SynonymSampler sampler(lexicon_, vocab_);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sampler.Sample(Id("rock"), rng), Id("stone"));
  }
}

TEST_F(SamplerTest, FrequenciesAreCountProportional) {
  const SynonymSampler sampler(lexicon_, vocab_);
  Rng rng(3);
  constexpr std::size_t kDraws = 100000;
  std::vector<std::size_t> counts(2, 0);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto s = sampler.Sample(Id("gem"), rng);
    ASSERT_TRUE(s.has_value());
    ASSERT_NE(*s, Id("gem"));
    ASSERT_TRUE(*s == Id("jewel") || *s == Id("stone"));
    ++counts[*s == Id("jewel") ? 0 : 1];
  }
  EXPECT_NEAR(static_cast<double>(counts[0]) / kDraws, 0.75, 0.01);
  const std::vector<double> probs = {0.75, 0.25};
  EXPECT_LT(testing::ChiSquareStatistic(counts, probs, kDraws),
            testing::ChiSquareCritical01(1));
}

TEST_F(SamplerTest, FreeFunctionMatchesSampler) {
  const SynonymSampler sampler(lexicon_, vocab_);
  Rng a(9), b(9);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(SampleSynonym("gem", lexicon_, vocab_, a),
              sampler.Sample(Id("gem"), b));
  }
  Rng rng(0);
  EXPECT_FALSE(SampleSynonym("unknown", lexicon_, vocab_, rng).has_value());
}

TEST(ShippedLexiconTest, WordNetLexiconLoads) {
  LexiconLoadReport report;
  const SynonymLexicon lexicon = SynonymLexicon::Load(
      std::string(SYNAUG_DATA_DIR) + "/wordnet-synlex.tsv", &report);
  EXPECT_GT(report.records, 100000u);
  EXPECT_EQ(report.dropped_multi_token + report.dropped_self +
                report.dropped_duplicate,
            0u);
  EXPECT_TRUE(lexicon.IsCandidate("gem"));
  const auto gem = lexicon.Synonyms("gem");
  EXPECT_NE(std::find(gem.begin(), gem.end(), "jewel"), gem.end());
  EXPECT_FALSE(lexicon.Contains("the"));
}

TEST(ShippedLexiconTest, SampleLexiconLoads) {
  const SynonymLexicon lexicon =
      SynonymLexicon::Load(std::string(SYNAUG_DATA_DIR) + "/sample-synlex.tsv");
  EXPECT_TRUE(lexicon.IsCandidate("gem"));
}

}  // namespace
}  // namespace synaug
