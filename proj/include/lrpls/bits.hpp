#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lrpls {

/// Thrown when a label cannot be parsed. Verifiers turn it into a rejection.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A label: an arbitrary-length string of bits.
class BitString {
 public:
  BitString() = default;

  static BitString from_text(std::string_view zeros_and_ones) {
    BitString b;
    for (char c : zeros_and_ones) {
      if (c != '0' && c != '1') throw std::invalid_argument("bit text must contain only 0/1");
      b.push_back(c == '1');
    }
    return b;
  }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { bits_ += other.bits_; }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }
  void flip(std::size_t i) { bits_[i] = bits_[i] == '1' ? '0' : '1'; }
  void truncate(std::size_t n) { bits_.resize(std::min(n, bits_.size())); }

  BitString slice(std::size_t from, std::size_t len) const {
    BitString b;
    b.bits_ = bits_.substr(from, len);
    return b;
  }

  const std::string& text() const { return bits_; }

  /// Hex dump: the bits followed by a single 1 and zero padding to a nibble
  /// boundary, so the exact bit length survives the round trip.
  std::string to_hex() const {
    std::string padded = bits_ + '1';
    while (padded.size() % 4 != 0) padded += '0';
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(padded.size() / 4);
    for (std::size_t i = 0; i < padded.size(); i += 4) {
      int v = 0;
      for (std::size_t k = 0; k < 4; ++k) v = v * 2 + (padded[i + k] == '1');
      out += kDigits[v];
    }
    return out;
  }

  static BitString from_hex(std::string_view hex) {
    std::string raw;
    raw.reserve(hex.size() * 4);
    for (char c : hex) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw DecodeError("invalid hex digit");
      for (int k = 3; k >= 0; --k) raw += ((v >> k) & 1) ? '1' : '0';
    }
    auto last_one = raw.find_last_of('1');
    if (last_one == std::string::npos) throw DecodeError("hex label lacks terminator bit");
    BitString b;
    b.bits_ = raw.substr(0, last_one);
    return b;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

/// Serialises labels as a sequence of self-delimiting fields. Every field is
/// an Elias-gamma coded (length + 1) followed by `length` payload bits.
class BitWriter {
 public:
  void gamma(std::uint64_t x) {
    if (x == 0) throw std::invalid_argument("gamma code needs x >= 1");
    int width = 64 - __builtin_clzll(x);
    for (int i = 1; i < width; ++i) out_.push_back(false);
    for (int i = width - 1; i >= 0; --i) out_.push_back((x >> i) & 1);
  }

  void put_uint(std::uint64_t v) {
    int width = v == 0 ? 0 : 64 - __builtin_clzll(v);
    gamma(static_cast<std::uint64_t>(width) + 1);
    for (int i = width - 1; i >= 0; --i) out_.push_back((v >> i) & 1);
  }

  void put_int(std::int64_t v) {
    auto zigzag = (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
    put_uint(zigzag);
  }

  void put_bool(bool b) { put_uint(b ? 1 : 0); }

  /// Optional non-negative value; absent encodes as 0.
  void put_opt(std::optional<std::int64_t> v) {
    put_uint(v ? static_cast<std::uint64_t>(*v) + 1 : 0);
  }

  void put_bits(const BitString& b) {
    gamma(static_cast<std::uint64_t>(b.size()) + 1);
    out_.append(b);
  }

  const BitString& bits() const { return out_; }
  BitString take() { return std::move(out_); }

 private:
  BitString out_;
};

/// Reads fields written by BitWriter. A soft reader records the first
/// failure instead of throwing; later reads return 0.
class BitReader {
 public:
  struct Soft {};
  explicit BitReader(const BitString& in) : in_(in) {}
  BitReader(const BitString& in, Soft) : in_(in), soft_(true) {}

  std::uint64_t gamma() {
    int zeros = 0;
    while (true) {
      if (!need(1)) return 0;
      if (in_[pos_]) break;
      ++zeros;
      ++pos_;
      if (zeros > 63) return fail("gamma prefix too long");
    }
    std::uint64_t x = 0;
    if (!need(static_cast<std::size_t>(zeros) + 1)) return 0;
    for (int i = 0; i <= zeros; ++i) x = (x << 1) | (in_[pos_++] ? 1u : 0u);
    return x;
  }

  std::uint64_t get_uint() {
    auto g = gamma();
    if (failed_) return 0;
    auto width = g - 1;
    if (width > 63) return fail("integer field wider than 63 bits");
    if (!need(width)) return 0;
    std::uint64_t v = 0;
    for (std::uint64_t i = 0; i < width; ++i) v = (v << 1) | (in_[pos_++] ? 1u : 0u);
    if (width > 0 && (v >> (width - 1)) == 0) return fail("non-canonical integer");
    return v;
  }

  std::int64_t get_int() {
    auto z = get_uint();
    return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
  }

  bool get_bool() {
    auto v = get_uint();
    if (v > 1) return fail("boolean field out of range");
    return v == 1;
  }

  std::optional<std::int64_t> get_opt() {
    auto v = get_uint();
    if (v == 0) return std::nullopt;
    return static_cast<std::int64_t>(v - 1);
  }

  BitString get_bits() {
    auto g = gamma();
    if (failed_) return {};
    auto len = g - 1;
    if (!need(len)) return {};
    auto b = in_.slice(pos_, len);
    pos_ += len;
    return b;
  }

  bool at_end() const { return pos_ == in_.size(); }
  void expect_end() {
    if (!failed_ && !at_end()) fail("trailing bits after label");
  }

  /// Throws, or in soft mode marks the reader failed. Returns 0 for convenience.
  std::uint64_t fail(const char* why) {
    if (!soft_) throw DecodeError(why);
    if (!failed_) why_ = why;
    failed_ = true;
    return 0;
  }
  bool ok() const { return !failed_; }
  const char* why() const { return why_; }

 private:
  bool need(std::size_t k) {
    if (failed_) return false;
    if (pos_ + k > in_.size()) {
      fail("label truncated");
      return false;
    }
    return true;
  }

  const BitString& in_;
  std::size_t pos_ = 0;
  bool soft_ = false;
  bool failed_ = false;
  const char* why_ = "";
};

/// Runs `read` over the whole label, throwing DecodeError on malformed input.
template <class Read>
auto decode_with(const BitString& b, Read&& read) {
  BitReader r(b);
  auto l = read(r);
  r.expect_end();
  return l;
}

/// Same as decode_with but returns nullopt instead of throwing.
template <class Read>
auto try_decode_with(const BitString& b, Read&& read) -> std::optional<decltype(read(std::declval<BitReader&>()))> {
  BitReader r(b, BitReader::Soft{});
  auto l = read(r);
  r.expect_end();
  if (!r.ok()) return std::nullopt;
  return l;
}

namespace detail {

// garbage labels are common under adversarial search; decoding them without
// exceptions keeps the verifier cheap
template <class Labels, class Decode, class Label>
bool try_decode_all(const BitString& mine, const Labels& nbrs, Decode&& decode, Label& own, std::vector<Label>& out) {
  auto o = decode(mine);
  if (!o) return false;
  own = std::move(*o);
  out.reserve(nbrs.size());
  for (const auto& b : nbrs) {
    auto x = decode(b);
    if (!x) return false;
    out.push_back(std::move(*x));
  }
  return true;
}

}  // namespace detail

/// Splits a label into its top-level fields (gamma header + payload each),
/// returning bit offsets. Used by the field-wise adversary.
struct FieldSpan {
  std::size_t begin;         // start of the gamma header
  std::size_t payload;       // start of the payload
  std::size_t end;           // one past the payload
};

inline std::vector<FieldSpan> split_fields(const BitString& b) {
  std::vector<FieldSpan> fields;
  std::size_t pos = 0;
  while (pos < b.size()) {
    std::size_t begin = pos;
    int zeros = 0;
    while (pos < b.size() && !b[pos]) {
      ++zeros;
      ++pos;
    }
    if (pos + static_cast<std::size_t>(zeros) + 1 > b.size() || zeros > 40) break;
    std::uint64_t x = 0;
    for (int i = 0; i <= zeros; ++i) x = (x << 1) | (b[pos++] ? 1u : 0u);
    std::size_t len = x - 1;
    if (pos + len > b.size()) break;
    fields.push_back({begin, pos, pos + len});
    pos += len;
  }
  return fields;
}

}  // namespace lrpls

template <>
struct std::hash<lrpls::BitString> {
  std::size_t operator()(const lrpls::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.text());
  }
};
