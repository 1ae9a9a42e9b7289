#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lessarb/combinators.hpp"

namespace lessarb {

// ---------------------------------------------------------------------------
// Scalar value types
// ---------------------------------------------------------------------------

/// Arbitrary-precision signed integer, just big enough for test data:
/// construction, comparison, halving and printing. Stored as base-1e9 limbs,
/// least significant first, no leading zero limbs.
class BigInt {
 public:
  BigInt() = default;

  explicit BigInt(std::int64_t v) {
    negative_ = v < 0;
    std::uint64_t mag =
        v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    while (mag > 0) {
      limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
      mag /= kBase;
    }
  }

  static BigInt from_limbs(bool negative, std::vector<std::uint32_t> limbs) {
    BigInt out;
    out.limbs_ = std::move(limbs);
    out.trim();
    out.negative_ = negative && !out.limbs_.empty();
    return out;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool negative() const { return negative_; }

  /// Value divided by two, rounded toward zero.
  BigInt halved() const {
    BigInt out = *this;
    std::uint64_t carry = 0;
    for (std::size_t i = out.limbs_.size(); i-- > 0;) {
      const std::uint64_t cur = carry * kBase + out.limbs_[i];
      out.limbs_[i] = static_cast<std::uint32_t>(cur / 2);
      carry = cur % 2;
    }
    out.trim();
    if (out.limbs_.empty()) out.negative_ = false;
    return out;
  }

  std::string to_string() const {
    if (limbs_.empty()) return "0";
    std::string out = negative_ ? "-" : "";
    out += std::to_string(limbs_.back());
    char buf[16];
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::snprintf(buf, sizeof(buf), "%09u", limbs_[i]);
      out += buf;
    }
    return out;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.negative_ != b.negative_) return a.negative_;
    const bool flip = a.negative_;
    if (a.limbs_.size() != b.limbs_.size()) {
      return (a.limbs_.size() < b.limbs_.size()) != flip;
    }
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return (a.limbs_[i] < b.limbs_[i]) != flip;
    }
    return false;
  }

 private:
  static constexpr std::uint64_t kBase = 1000000000;

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  bool negative_ = false;
  std::vector<std::uint32_t> limbs_;
};

/// Decimal scalar modeled as coefficient * 10^exponent. The pair is kept as
/// drawn, without normalization.
struct Scientific {
  BigInt coefficient;
  std::int64_t exponent = 0;

  friend bool operator==(const Scientific& a, const Scientific& b) {
    return a.coefficient == b.coefficient && a.exponent == b.exponent;
  }
  friend bool operator!=(const Scientific& a, const Scientific& b) {
    return !(a == b);
  }

  std::string to_string() const {
    return coefficient.to_string() + "e" + std::to_string(exponent);
  }
};

// ---------------------------------------------------------------------------
// Flat generators: native PRNG draws, never touching the budget
// ---------------------------------------------------------------------------

template <typename T>
Generator<T> flat_gen() {
  if constexpr (std::is_same_v<T, bool>) {
    return Generator<bool>([](GenContext& ctx) -> Result<bool> {
      return detail::draw_uniform(ctx, false, true);
    });
  } else if constexpr (std::is_same_v<T, char>) {
    // printable ASCII
    return Generator<char>([](GenContext& ctx) -> Result<char> {
      return detail::draw_uniform<char>(ctx, 32, 126);
    });
  } else if constexpr (std::is_integral_v<T>) {
    return Generator<T>([](GenContext& ctx) -> Result<T> {
      return detail::draw_uniform<T>(ctx, std::numeric_limits<T>::min(),
                                     std::numeric_limits<T>::max());
    });
  } else {
    static_assert(std::is_floating_point_v<T>);
    return Generator<T>([](GenContext& ctx) -> Result<T> {
      return detail::draw_uniform<T>(ctx, T(-1e6), T(1e6));
    });
  }
}

inline Generator<BigInt> gen_big_int() {
  return Generator<BigInt>([](GenContext& ctx) -> Result<BigInt> {
    const bool negative = detail::draw_uniform(ctx, false, true);
    const auto limb_count = detail::draw_uniform<std::int64_t>(ctx, 0, 3);
    std::vector<std::uint32_t> limbs;
    limbs.reserve(static_cast<std::size_t>(limb_count));
    for (std::int64_t i = 0; i < limb_count; ++i) {
      limbs.push_back(detail::draw_uniform<std::uint32_t>(ctx, 0, 999999999));
    }
    return BigInt::from_limbs(negative, std::move(limbs));
  });
}

/// coefficient first, exponent second.
inline Generator<Scientific> gen_scientific() {
  return Generator<Scientific>([big = gen_big_int(),
                                exp = flat_gen<std::int64_t>()](
                                   GenContext& ctx) -> Result<Scientific> {
    auto coefficient = big.run(ctx);
    if (!coefficient.ok()) return coefficient.take_failure();
    auto exponent = exp.run(ctx);
    if (!exponent.ok()) return exponent.take_failure();
    return Scientific{std::move(coefficient).value(), exponent.value()};
  });
}

// ---------------------------------------------------------------------------
// Compound instances
// ---------------------------------------------------------------------------

/// Generate A then B.
template <typename A, typename B>
Generator<std::pair<A, B>> gen_pair(Generator<A> ga, Generator<B> gb) {
  using P = std::pair<A, B>;
  return Generator<P>([ga = std::move(ga),
                       gb = std::move(gb)](GenContext& ctx) -> Result<P> {
    auto a = ga.run(ctx);
    if (!a.ok()) return a.take_failure();
    auto b = gb.run(ctx);
    if (!b.ok()) return b.take_failure();
    return P(std::move(a).value(), std::move(b).value());
  });
}

/// Budgeted text: a budgeted list of characters, joined. Statically a
/// cost-1 flat field, unlike the zero-cost scalars.
inline Generator<std::string> gen_text() {
  return gen_list(flat_gen<char>()).map([](std::vector<char>&& chars) {
    return std::string(chars.begin(), chars.end());
  });
}

template <typename T>
Generator<std::vector<T>> gen_vector(Generator<T> elem) {
  return gen_list(std::move(elem));
}

/// Budgeted list converted to a set; duplicates collapse, so the size may
/// come out smaller than the list length.
template <typename T>
Generator<std::set<T>> gen_set(Generator<T> elem) {
  return gen_list(std::move(elem)).map([](std::vector<T>&& xs) {
    return std::set<T>(std::make_move_iterator(xs.begin()),
                       std::make_move_iterator(xs.end()));
  });
}

/// Budgeted list of pairs converted to a map; keys deduplicate.
template <typename K, typename V>
Generator<std::map<K, V>> gen_map(Generator<K> key, Generator<V> value) {
  return gen_list(gen_pair(std::move(key), std::move(value)))
      .map([](std::vector<std::pair<K, V>>&& kvs) {
        return std::map<K, V>(std::make_move_iterator(kvs.begin()),
                              std::make_move_iterator(kvs.end()));
      });
}

// ---------------------------------------------------------------------------
// Baseline shrinkers
//
// Candidates are strictly smaller values: numbers halve toward zero,
// containers drop elements or halve their length. A value never appears in
// its own candidate list.
// ---------------------------------------------------------------------------

inline std::vector<std::int64_t> shrink(std::int64_t v) {
  if (v == 0) return {};
  std::vector<std::int64_t> out{0};
  const std::int64_t half = v / 2;
  if (half != 0) out.push_back(half);
  const std::int64_t step = v > 0 ? v - 1 : v + 1;
  if (step != 0 && step != half) out.push_back(step);
  return out;
}

inline std::vector<bool> shrink(bool v) {
  if (v) return {false};
  return {};
}

inline std::vector<char> shrink(char c) {
  if (c == 'a') return {};
  return {'a'};
}

inline std::vector<double> shrink(double v) {
  if (v == 0.0 || !std::isfinite(v)) return {};
  std::vector<double> out{0.0};
  const double half = v / 2.0;
  if (half != v && half != 0.0) out.push_back(half);
  const double truncated = std::trunc(v);
  if (truncated != v && truncated != 0.0 && truncated != half) {
    out.push_back(truncated);
  }
  return out;
}

inline std::vector<BigInt> shrink(const BigInt& v) {
  if (v.is_zero()) return {};
  std::vector<BigInt> out{BigInt{}};
  BigInt half = v.halved();
  if (half != v && !half.is_zero()) out.push_back(std::move(half));
  return out;
}

template <typename T>
std::vector<std::vector<T>> shrink(const std::vector<T>& xs) {
  if (xs.empty()) return {};
  std::vector<std::vector<T>> out;
  out.emplace_back();  // empty
  if (xs.size() >= 2) {
    out.emplace_back(xs.begin(), xs.begin() + xs.size() / 2);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<T> dropped;
    dropped.reserve(xs.size() - 1);
    dropped.insert(dropped.end(), xs.begin(), xs.begin() + i);
    dropped.insert(dropped.end(), xs.begin() + i + 1, xs.end());
    out.push_back(std::move(dropped));
  }
  return out;
}

inline std::vector<std::string> shrink(const std::string& s) {
  if (s.empty()) return {};
  std::vector<std::string> out;
  out.emplace_back();
  if (s.size() >= 2) out.push_back(s.substr(0, s.size() / 2));
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.push_back(s.substr(0, i) + s.substr(i + 1));
  }
  return out;
}

inline std::vector<Scientific> shrink(const Scientific& v) {
  std::vector<Scientific> out;
  for (auto& c : shrink(v.coefficient)) {
    out.push_back(Scientific{std::move(c), v.exponent});
  }
  for (auto e : shrink(v.exponent)) {
    out.push_back(Scientific{v.coefficient, e});
  }
  return out;  // every candidate differs from v in one component
}

template <typename A, typename B>
std::vector<std::pair<A, B>> shrink(const std::pair<A, B>& p) {
  std::vector<std::pair<A, B>> out;
  // auto&& tolerates vector<bool>'s proxy references.
  for (auto&& a : shrink(p.first)) out.emplace_back(std::move(a), p.second);
  for (auto&& b : shrink(p.second)) out.emplace_back(p.first, std::move(b));
  return out;
}

template <typename T>
std::vector<std::set<T>> shrink(const std::set<T>& s) {
  std::vector<T> xs(s.begin(), s.end());
  std::vector<std::set<T>> out;
  for (auto& candidate : shrink(xs)) {
    out.emplace_back(std::make_move_iterator(candidate.begin()),
                     std::make_move_iterator(candidate.end()));
  }
  return out;
}

template <typename K, typename V>
std::vector<std::map<K, V>> shrink(const std::map<K, V>& m) {
  std::vector<std::pair<K, V>> kvs(m.begin(), m.end());
  std::vector<std::map<K, V>> out;
  if (kvs.empty()) return out;
  out.emplace_back();
  if (kvs.size() >= 2) {
    out.emplace_back(kvs.begin(), kvs.begin() + kvs.size() / 2);
  }
  for (std::size_t i = 0; i < kvs.size(); ++i) {
    std::map<K, V> dropped;
    for (std::size_t j = 0; j < kvs.size(); ++j) {
      if (j != i) dropped.insert(kvs[j]);
    }
    out.push_back(std::move(dropped));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Display helpers, for law counterexamples
// ---------------------------------------------------------------------------

inline std::string show(bool v) { return v ? "true" : "false"; }
inline std::string show(std::int64_t v) { return std::to_string(v); }
inline std::string show(char c) { return std::string("'") + c + "'"; }
inline std::string show(double v) { return std::to_string(v); }
inline std::string show(const std::string& s) { return "\"" + s + "\""; }
inline std::string show(const BigInt& v) { return v.to_string(); }
inline std::string show(const Scientific& v) { return v.to_string(); }

template <typename A, typename B>
std::string show(const std::pair<A, B>& p) {
  return "(" + show(p.first) + ", " + show(p.second) + ")";
}

template <typename C>
std::string show_range(const C& xs) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : xs) {
    if (!first) out += ", ";
    out += show(x);
    first = false;
  }
  return out + "]";
}

template <typename T>
std::string show(const std::vector<T>& xs) {
  return show_range(xs);
}
template <typename T>
std::string show(const std::set<T>& xs) {
  return show_range(xs);
}
template <typename K, typename V>
std::string show(const std::map<K, V>& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) out += ", ";
    out += show(k) + ": " + show(v);
    first = false;
  }
  return out + "}";
}

}  // namespace lessarb
