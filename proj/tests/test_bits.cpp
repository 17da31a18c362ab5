#include <gtest/gtest.h>

#include <random>

#include "lrpls/bits.hpp"
#include "lrpls/rational.hpp"

using namespace lrpls;

TEST(BitString, TextAndHex) {
  auto b = BitString::from_text("1101");
  EXPECT_EQ(b.size(), 4u);
  EXPECT_TRUE(b[0]);
  EXPECT_FALSE(b[2]);
  EXPECT_EQ(BitString::from_hex(b.to_hex()), b);
  EXPECT_EQ(BitString::from_hex(BitString{}.to_hex()), BitString{});
  EXPECT_THROW(BitString::from_text("10x"), std::invalid_argument);
}

TEST(BitString, HexRoundTripAllLengths) {
  std::mt19937_64 rng(3);
  for (int len = 0; len < 40; ++len) {
    BitString b;
    for (int i = 0; i < len; ++i) b.push_back(rng() & 1);
    EXPECT_EQ(BitString::from_hex(b.to_hex()), b) << len;
  }
}

TEST(Codec, IntegersRoundTrip) {
  BitWriter w;
  std::vector<std::uint64_t> us{0, 1, 2, 3, 255, 1ull << 40};
  std::vector<std::int64_t> is{0, -1, 1, -1000, 1 << 20};
  for (auto u : us) w.put_uint(u);
  for (auto i : is) w.put_int(i);
  w.put_bool(true);
  w.put_opt(std::nullopt);
  w.put_opt(5);
  w.put_bits(BitString::from_text("0110"));
  auto bits = w.take();
  BitReader r(bits);
  for (auto u : us) EXPECT_EQ(r.get_uint(), u);
  for (auto i : is) EXPECT_EQ(r.get_int(), i);
  EXPECT_TRUE(r.get_bool());
  EXPECT_EQ(r.get_opt(), std::nullopt);
  EXPECT_EQ(r.get_opt(), 5);
  EXPECT_EQ(r.get_bits(), BitString::from_text("0110"));
  EXPECT_NO_THROW(r.expect_end());
}

TEST(Codec, GammaLengths) {
  // gamma(x) takes 2*floor(log2 x)+1 bits
  for (std::uint64_t x : {1ull, 2ull, 5ull, 64ull, 1000ull}) {
    BitWriter w;
    w.gamma(x);
    int lg = 63 - __builtin_clzll(x);
    EXPECT_EQ(w.bits().size(), static_cast<std::size_t>(2 * lg + 1));
  }
}

TEST(Codec, TruncationAndTrailingBitsFail) {
  BitWriter w;
  w.put_uint(77);
  auto full = w.take();
  for (std::size_t k = 0; k < full.size(); ++k) {
    auto cut = full;
    cut.truncate(k);
    BitReader r(cut);
    EXPECT_THROW(r.get_uint(), DecodeError) << k;
  }
  auto longer = full;
  longer.push_back(true);
  BitReader r(longer);
  EXPECT_EQ(r.get_uint(), 77u);
  EXPECT_THROW(r.expect_end(), DecodeError);
}

TEST(Codec, NonCanonicalIntegerFails) {
  // width 3 header followed by a leading zero
  auto b = BitString::from_text("00100" "011");
  BitReader r(b);
  EXPECT_THROW(r.get_uint(), DecodeError);
}

TEST(Codec, BoolOutOfRangeFails) {
  BitWriter w;
  w.put_uint(2);
  auto b = w.take();
  BitReader r(b);
  EXPECT_THROW(r.get_bool(), DecodeError);
}

TEST(Fields, SplitCoversEncodedLabel) {
  BitWriter w;
  w.put_uint(9);
  w.put_int(-4);
  w.put_bits(BitString::from_text("101"));
  auto b = w.take();
  auto fields = split_fields(b);
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_EQ(fields.front().begin, 0u);
  EXPECT_EQ(fields.back().end, b.size());
  for (std::size_t k = 1; k < fields.size(); ++k) EXPECT_EQ(fields[k].begin, fields[k - 1].end);
}

TEST(Rational, Parse) {
  auto r = Rational::parse("1/4");
  EXPECT_EQ(r.p, 1);
  EXPECT_EQ(r.q, 4);
  EXPECT_DOUBLE_EQ(r.value(), 0.25);
  EXPECT_EQ(Rational::parse("3").q, 1);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("-1/2"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("a/b"), std::invalid_argument);
}
