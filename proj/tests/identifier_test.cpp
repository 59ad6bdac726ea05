// Copyright 2026 The slicekit Authors.
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

#include "slicekit/identifier.hpp"

#include <gtest/gtest.h>

namespace slicekit {
namespace {

TEST(IdentifierTest, CanonicalFormKeepsDeclarationOrder) {
  Identifier id("SynonymAug", {{"seed", 7}, {"rate", 0.3}, {"lexicon", "bundled"}});
  EXPECT_EQ(id.canonical(), "SynonymAug(seed=7, rate=0.3, lexicon=bundled)");
  EXPECT_EQ(Identifier("tokenize").canonical(), "tokenize()");
}

TEST(IdentifierTest, AmbiguousStringsAreQuoted) {
  EXPECT_EQ(Identifier("op", {{"v", "7"}}).canonical(), "op(v=\"7\")");
  EXPECT_EQ(Identifier("op", {{"v", "true"}}).canonical(), "op(v=\"true\")");
  EXPECT_EQ(Identifier("op", {{"v", "two words"}}).canonical(), "op(v=\"two words\")");
  EXPECT_EQ(Identifier("op", {{"v", ""}}).canonical(), "op(v=\"\")");
  EXPECT_EQ(Identifier("op", {{"v", "10%"}}).canonical(), "op(v=10%)");
}

TEST(IdentifierTest, ArraysRenderAsCanonicalJson) {
  Identifier id("Length", {{"intervals", Json::array({Json::array({"0%", "10%"}), Json::array({3, nullptr})})}});
  EXPECT_EQ(id.canonical(), "Length(intervals=[[\"0%\",\"10%\"],[3,null]])");
}

TEST(IdentifierTest, ParseRoundTrips) {
  std::vector<Identifier> ids = {
      Identifier("tokenize"),
      Identifier("SynonymAug", {{"seed", 7}, {"rate", 0.3}, {"lexicon", "bundled"}}),
      Identifier("HasPhrase", {{"phrases", Json::array({"her", "she"})}, {"columns", Json::array({"hypothesis"})}}),
      Identifier("op", {{"s", "a, b)"}, {"n", -1.25}, {"b", false}, {"z", nullptr}, {"q", "7"}}),
      Identifier("FixedSuffix", {{"suffix", "aaaabbbb"}}),
  };
  for (const auto& id : ids) {
    Identifier back = Identifier::parse(id.canonical());
    EXPECT_EQ(back.canonical(), id.canonical());
    EXPECT_EQ(back.name(), id.name());
    ASSERT_EQ(back.params().size(), id.params().size());
    for (std::size_t i = 0; i < id.params().size(); ++i) {
      EXPECT_EQ(back.params()[i].first, id.params()[i].first);
      EXPECT_EQ(back.params()[i].second, id.params()[i].second);
    }
  }
}

TEST(IdentifierTest, EqualityIsCanonicalEquality) {
  EXPECT_EQ(Identifier("a", {{"x", 1}}), Identifier::parse("a(x=1)"));
  EXPECT_NE(Identifier("a", {{"x", 1}, {"y", 2}}), Identifier("a", {{"y", 2}, {"x", 1}}));
}

TEST(IdentifierTest, WithAppendsOrReplaces) {
  Identifier id("a", {{"x", 1}});
  EXPECT_EQ(id.with("y", 2).canonical(), "a(x=1, y=2)");
  EXPECT_EQ(id.with("x", 5).canonical(), "a(x=5)");
  EXPECT_EQ(id.canonical(), "a(x=1)");
}

TEST(IdentifierTest, MalformedTextIsRejected) {
  for (const char* bad : {"", "a(", "a(x)", "a(x=1", "(x=1)", "a(x=1,)", "a(x=1) trailing"}) {
    EXPECT_THROW(Identifier::parse(bad), std::exception) << bad;
  }
}

}  // namespace
}  // namespace slicekit
