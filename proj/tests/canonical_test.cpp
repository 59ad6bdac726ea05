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

#include "slicekit/canonical.hpp"

#include <gtest/gtest.h>

namespace slicekit {
namespace {

TEST(Sha256Test, KnownVectors) {
  EXPECT_EQ(sha256("").hex(), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256("abc").hex(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Sha256Test, StreamMatchesOneShot) {
  Sha256Stream s;
  s.update("ab");
  s.update("");
  s.update("c");
  EXPECT_EQ(s.finish(), sha256("abc"));
}

TEST(FingerprintTest, HexRoundTripAndLow64) {
  Fingerprint f = sha256("abc");
  EXPECT_EQ(Fingerprint::from_hex(f.hex()), f);
  // Last eight bytes of the digest above: b4 10 ff 61 f2 00 15 ad.
  EXPECT_EQ(f.low64(), 0xb410ff61f20015adULL);
  EXPECT_THROW(Fingerprint::from_hex("abc"), std::exception);
  EXPECT_THROW(Fingerprint::from_hex(std::string(64, 'g')), std::exception);
}

TEST(CanonicalJsonTest, SortsKeysAndDropsWhitespace) {
  Json v = Json::parse(R"({ "b": 1, "a": [true, null, "é"], "A": {"z": 0, "y": -2} })");
  EXPECT_EQ(canonical_json(v), "{\"A\":{\"y\":-2,\"z\":0},\"a\":[true,null,\"\xC3\xA9\"],\"b\":1}");
}

TEST(CanonicalJsonTest, ShortestRoundTripNumbers) {
  EXPECT_EQ(canonical_json(Json(0.1)), "0.1");
  EXPECT_EQ(canonical_json(Json(1.5)), "1.5");
  EXPECT_EQ(canonical_json(Json(1e300)), "1e+300");
  EXPECT_EQ(canonical_json(Json(-7)), "-7");
  EXPECT_EQ(canonical_json(Json(2.0 / 3.0)), "0.6666666666666666");
}

TEST(CanonicalJsonTest, StableAcrossReparse) {
  Json v = Json::parse(R"({"k":[1,2.25,"x",{"q":false}],"a":"\n"})");
  std::string once = canonical_json(v);
  EXPECT_EQ(canonical_json(Json::parse(once)), once);
}

}  // namespace
}  // namespace slicekit
