// Copyright 2026 The isdkit Authors
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

#include <sstream>

#include "gtest/gtest.h"
#include "isdkit/csv.h"
#include "isdkit/dataset.h"
#include "isdkit/errors.h"
#include "test_util.h"

namespace isdkit {
namespace {

RawDataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in, "time", "event");
}

TEST(CsvTest, ThreeRowFile) {
  const RawDataset d = parse("age,time,event\n50,2,1\n60,3,0\n70,5,1\n");
  ASSERT_EQ(d.size(), 3u);
  const SurvivalDataset s = to_dataset(d);
  const auto [u, c] = split_by_censoring(s);
  EXPECT_EQ(u.size(), 2u);
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(s.feature_names(), std::vector<std::string>{"age"});
  EXPECT_DOUBLE_EQ(s[2].features[0], 70.0);
}

TEST(CsvTest, NegativeTimeNamesRow) {
  try {
    parse("time,event\n2,1\n-3,0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("negative"), std::string::npos);
  }
}

TEST(CsvTest, EventOutsideZeroOne) {
  EXPECT_THROW(parse("time,event\n2,2\n"), ParseError);
  EXPECT_THROW(parse("time,event\n2,yes\n"), ParseError);
}

TEST(CsvTest, MalformedRowNamesRowAndColumn) {
  try {
    parse("x,time,event\n1,2,1\n1,abc,0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("row 3"), std::string::npos);
    EXPECT_NE(what.find("'time'"), std::string::npos);
  }
  EXPECT_THROW(parse("x,time,event\n1,2\n"), ParseError);
  EXPECT_THROW(parse("x,time\n1,2\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(CsvTest, MissingCellsAreMarked) {
  std::string text = "x,time,event\n";
  for (int i = 0; i < 10; ++i) {
    text += (i < 3 ? std::string() : std::to_string(i)) + "," +
            std::to_string(i + 1) + ",1\n";
  }
  const RawDataset d = parse(text);
  ASSERT_EQ(d.columns.size(), 1u);
  EXPECT_EQ(d.columns[0].kind, ColumnKind::kNumeric);
  EXPECT_TRUE(d.columns[0].is_missing(0));
  EXPECT_FALSE(d.columns[0].is_missing(5));
  EXPECT_DOUBLE_EQ(d.columns[0].missing_fraction(), 0.3);
}

TEST(CsvTest, NominalColumnsKeepLabels) {
  const RawDataset d =
      parse("stage,time,event\nI,1,1\n\"II, late\",2,0\n,3,1\nI,4,1\n");
  ASSERT_EQ(d.columns[0].kind, ColumnKind::kNominal);
  EXPECT_EQ(d.columns[0].labels[1], "II, late");
  EXPECT_TRUE(d.columns[0].is_missing(2));
  EXPECT_EQ(d.columns[0].distinct_count(), 2u);
  EXPECT_THROW(to_dataset(d), Error);
}

TEST(CsvTest, RoundTripIsIdentity) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<Instance> rows;
  for (int i = 0; i < 50; ++i) {
    rows.push_back({{g(rng), g(rng) * 1e-7}, std::abs(g(rng)) * 100,
                    i % 3 != 0});
  }
  const SurvivalDataset s({"a", "b"}, rows);
  std::ostringstream out;
  write_csv(to_raw(s), out);
  std::istringstream in(out.str());
  const SurvivalDataset back = to_dataset(parse_csv(in, "time", "event"));
  ASSERT_EQ(back.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(back[i].time, s[i].time);
    EXPECT_EQ(back[i].event, s[i].event);
    EXPECT_EQ(back[i].features, s[i].features);
  }
}

TEST(CsvTest, SplitLineHandlesQuotes) {
  EXPECT_EQ(split_csv_line("a,\"b,c\",\"d\"\"e\""),
            (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_THROW(split_csv_line("a,\"b"), ParseError);
  EXPECT_EQ(csv_escape("x,y"), "\"x,y\"");
  EXPECT_EQ(csv_escape("plain"), "plain");
}

TEST(DatasetTest, SplitByCensoringPartitions) {
  using testing::bare_dataset;
  using testing::outcomes;
  const auto all_dead = outcomes({1, 2, 3}, {1, 1, 1});
  const auto all_cens = outcomes({1, 2, 3}, {0, 0, 0});
  const auto mixed = outcomes({1, 2, 3}, {1, 0, 1});
  EXPECT_EQ(split_by_censoring(bare_dataset(mixed)).first.size(), 2u);
  EXPECT_EQ(split_by_censoring(bare_dataset(mixed)).second.size(), 1u);
  EXPECT_EQ(split_by_censoring(bare_dataset(all_dead)).first.size(), 3u);
  EXPECT_EQ(split_by_censoring(bare_dataset(all_cens)).second.size(), 3u);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto o = testing::random_outcomes(rng, 1 + rep * 3);
    const auto [u, c] = split_by_censoring(bare_dataset(o));
    EXPECT_EQ(u.size() + c.size(), o.size());
  }
}

TEST(DatasetTest, ValidatesInstances) {
  EXPECT_THROW(SurvivalDataset({"a"}, {{{1.0, 2.0}, 1.0, true}}), Error);
  EXPECT_THROW(SurvivalDataset({}, {{{}, -1.0, true}}), Error);
  EXPECT_NO_THROW(SurvivalDataset({}, {{{}, 0.0, true}}));
}

TEST(DatasetTest, EtaIsHalfMinimumPositiveTime) {
  const auto o = testing::outcomes({0, 1.0, 3.0}, {1, 0, 1});
  EXPECT_DOUBLE_EQ(eta_for(o), 0.5);
  const auto zeros = testing::outcomes({0, 0}, {1, 1});
  EXPECT_THROW(eta_for(zeros), Error);
}

}  // namespace
}  // namespace isdkit
