// Copyright 2026 The Whodunit Authors.
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

#include <gtest/gtest.h>

#include <sstream>

#include "whodunit/corpus/interchange.h"
#include "whodunit/corpus/screenplay.h"
#include "whodunit/corpus/srt.h"
#include "whodunit/corpus/stats.h"
#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"

namespace whodunit::corpus {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizeTest, LowercasesAndStripsOuterPunctuation) {
  EXPECT_EQ(Tokenize("Okay, Warrick, hit it!"), (Tokens{"okay", "warrick", "hit", "it"}));
  EXPECT_EQ(Tokenize("don't \"man-handled\" ..."), (Tokens{"don't", "man-handled"}));
  EXPECT_TRUE(Tokenize("   ").empty());
}

TEST(TokenizeTest, SplitsSentencesWithinLine) {
  EXPECT_EQ(SplitSentences("Stop. Who are you? Run!"),
            (Tokens{"Stop.", "Who are you?", "Run!"}));
  EXPECT_EQ(SplitSentences("3.5 million"), (Tokens{"3.5 million"}));
  EXPECT_TRUE(SplitSentences("").empty());
}

TEST(ScreenplayTest, SpeakerCue) {
  auto units = ParseScreenplay("NICK: okay, Warrick, hit it", "e1");
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].kind, SentenceKind::kUtterance);
  EXPECT_EQ(units[0].speaker, "NICK");
  EXPECT_EQ(units[0].tokens, (Tokens{"okay", "warrick", "hit", "it"}));
  EXPECT_EQ(units[0].episode_id, "e1");
  EXPECT_EQ(units[0].gold_label, 0);
}

TEST(ScreenplayTest, EmptyInput) { EXPECT_TRUE(ParseScreenplay("", "e1").empty()); }

TEST(ScreenplayTest, SceneDescription) {
  auto units = ParseScreenplay("(WARRICK starts the crane support)", "e1");
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].kind, SentenceKind::kSceneDescription);
  EXPECT_FALSE(units[0].speaker.has_value());
  EXPECT_EQ(units[0].tokens, (Tokens{"warrick", "starts", "the", "crane", "support"}));
}

TEST(ScreenplayTest, MixedDocument) {
  const char* text =
      "## INT. LAB - NIGHT\n"
      "GRISSOM:\n"
      "Look at this. It's blood.\n"
      "(Catherine leans in\n"
      " closer.)\n"
      "CATHERINE: Whose?\n"
      "more from her\n";
  auto units = ParseScreenplay(text, "ep");
  ASSERT_EQ(units.size(), 5u);
  EXPECT_EQ(units[0].speaker, "GRISSOM");
  EXPECT_EQ(units[1].tokens, (Tokens{"it's", "blood"}));
  EXPECT_EQ(units[2].kind, SentenceKind::kSceneDescription);
  EXPECT_EQ(units[2].tokens, (Tokens{"catherine", "leans", "in", "closer"}));
  EXPECT_EQ(units[3].speaker, "CATHERINE");
  EXPECT_EQ(units[4].speaker, "CATHERINE");
  for (size_t i = 0; i < units.size(); ++i) EXPECT_EQ(units[i].seq_index, static_cast<int>(i));
}

TEST(ScreenplayTest, CueWithoutDialogNamesLine) {
  try {
    ParseScreenplay("NICK: hi\nGRISSOM:\n## INT. LAB\n", "e");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(ParseScreenplay("GRISSOM:", "e"), ParseError);
}

TEST(ScreenplayTest, InterchangeRoundTrip) {
  auto units = ParseScreenplay("## X\nNICK: okay. Hit it!\n(He does.)\n", "ep7");
  std::stringstream buf;
  WriteInterchange(buf, units);
  EXPECT_EQ(ReadInterchange(buf), units);
}

TEST(SrtTest, SingleCue) {
  auto cues = ParseSrt("1\n00:00:01,000 --> 00:00:02,500\nHello\n");
  ASSERT_EQ(cues.size(), 1u);
  EXPECT_EQ(cues[0], (CaptionCue{1, 1000, 2500, "Hello"}));
}

TEST(SrtTest, JoinsLines) {
  auto cues = ParseSrt("1\n00:00:01,000 --> 00:00:02,000\na\nb\n\n2\n01:00:00,000 --> 01:00:00,001\nc\n");
  ASSERT_EQ(cues.size(), 2u);
  EXPECT_EQ(cues[0].text, "a b");
  EXPECT_EQ(cues[1].start_ms, 3600000);
}

TEST(SrtTest, RejectsReversedSpan) {
  EXPECT_THROW(ParseSrt("1\n00:00:02,000 --> 00:00:01,000\nx\n"), ParseError);
}

TEST(SrtTest, RejectsMalformedAndNonMonotone) {
  EXPECT_THROW(ParseSrt("1\n00:00:0x,000 --> 00:00:01,000\nx\n"), ParseError);
  EXPECT_THROW(ParseSrt("2\n00:00:01,000 --> 00:00:02,000\nx\n\n1\n00:00:03,000 --> 00:00:04,000\ny\n"),
               ParseError);
  EXPECT_THROW(ParseSrt("1\n00:00:05,000 --> 00:00:06,000\nx\n\n2\n00:00:03,000 --> 00:00:04,000\ny\n"),
               ParseError);
}

TEST(SrtTest, CountMatchesBlocks) {
  std::string text;
  for (int i = 1; i <= 25; ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d\n00:%02d:00,000 --> 00:%02d:01,000\nline %d\n\n", i, i, i, i);
    text += buf;
  }
  EXPECT_EQ(ParseSrt(text).size(), 25u);
}

TEST(LabelTest, DerivesFromTokens) {
  using L = TokenLabel;
  EXPECT_EQ(DeriveSentenceLabel(std::vector{L::kNone, L::kPerpetrator, L::kNone}), 1);
  EXPECT_EQ(DeriveSentenceLabel(std::vector{L::kNone, L::kSuspect, L::kOther}), 0);
  EXPECT_EQ(DeriveSentenceLabel(std::vector<L>{}), 0);
}

TEST(LabelTest, AddingPerpetratorNeverClearsLabel) {
  std::vector<TokenLabel> labels = {TokenLabel::kOther, TokenLabel::kPerpetrator};
  for (int i = 0; i < 5; ++i) {
    labels.push_back(TokenLabel::kPerpetrator);
    EXPECT_EQ(DeriveSentenceLabel(labels), 1);
  }
}

std::vector<SentenceUnit> TwoCases() {
  std::vector<SentenceUnit> units;
  auto add = [&](int case_id, SentenceKind kind, const char* speaker, int gold) {
    SentenceUnit u;
    u.episode_id = "e";
    u.case_id = case_id;
    u.seq_index = static_cast<int>(units.size());
    u.kind = kind;
    if (speaker) u.speaker = speaker;
    u.tokens = {"x"};
    u.token_labels = {gold ? TokenLabel::kPerpetrator : TokenLabel::kNone};
    u.gold_label = gold;
    units.push_back(u);
  };
  add(0, SentenceKind::kUtterance, "A", 1);
  add(0, SentenceKind::kSceneDescription, nullptr, 0);
  add(0, SentenceKind::kUtterance, "B", 0);
  for (int i = 0; i < 5; ++i) add(1, SentenceKind::kUtterance, i % 2 ? "A" : "C", i == 0);
  return units;
}

TEST(StatsTest, TwoCases) {
  auto units = TwoCases();
  auto table = CorpusStats(GroupCases(units));
  const auto& s = table.Row("sentences");
  EXPECT_EQ(s.min, 3);
  EXPECT_EQ(s.max, 5);
  EXPECT_EQ(s.avg, 4);
  EXPECT_EQ(table.Row("characters").min, 2);
  EXPECT_EQ(table.Row("scene_descriptions").avg, 0.5);
  EXPECT_EQ(table.episodes_with_two_cases, 1);
  for (const auto& row : table.per_case) {
    EXPECT_LE(row.min, row.avg);
    EXPECT_LE(row.avg, row.max);
  }
}

TEST(StatsTest, SingleCaseIsDegenerate) {
  auto units = TwoCases();
  units.resize(3);
  auto table = CorpusStats(GroupCases(units));
  for (const auto& row : table.per_case) {
    EXPECT_EQ(row.min, row.max);
    EXPECT_EQ(row.avg, row.max);
  }
}

TEST(StatsTest, EmptyIsError) { EXPECT_THROW(CorpusStats({}), Error); }

TEST(ValidateTest, RejectsBrokenInvariants) {
  auto units = TwoCases();
  EXPECT_NO_THROW(ValidateEpisode(units));
  auto bad = units;
  bad[1].seq_index = 0;
  EXPECT_THROW(ValidateEpisode(bad), Error);
  bad = units;
  bad[0].gold_label = 0;
  EXPECT_THROW(ValidateEpisode(bad), Error);
  bad = units;
  bad[1].speaker = "X";
  EXPECT_THROW(ValidateEpisode(bad), Error);
  bad = units;
  bad[0].start_ms = 10;
  bad[0].end_ms = 5;
  EXPECT_THROW(ValidateEpisode(bad), Error);
}

TEST(InterchangeTest, KeysAndNulls) {
  auto units = TwoCases();
  units[1].case_id.reset();
  std::string line = ToJsonLine(units[1]);
  for (const char* key : {"episode_id", "case_id", "seq_index", "kind", "speaker", "tokens",
                          "token_labels", "gold_label", "start_ms", "end_ms"}) {
    EXPECT_NE(line.find(std::string("\"") + key + "\""), std::string::npos) << key;
  }
  EXPECT_EQ(FromJsonLine(line), units[1]);
  EXPECT_THROW(FromJsonLine("{\"episode_id\": 3}", 4), ParseError);
}

}  // namespace
}  // namespace whodunit::corpus
