#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace lessarb {

/// Remaining allowance of constructor-spend units. Signed: a run may dip
/// below zero while it finishes the cheapest completion of a value, but it
/// may never cross the context's floor.
class Budget {
 public:
  constexpr Budget() = default;
  constexpr explicit Budget(std::int64_t units) : units_(units) {}

  constexpr std::int64_t units() const { return units_; }

  friend constexpr bool operator==(Budget a, Budget b) {
    return a.units_ == b.units_;
  }
  friend constexpr bool operator!=(Budget a, Budget b) { return !(a == b); }
  friend constexpr bool operator<(Budget a, Budget b) {
    return a.units_ < b.units_;
  }
  friend constexpr bool operator>(Budget a, Budget b) { return b < a; }
  friend constexpr bool operator<=(Budget a, Budget b) { return !(b < a); }
  friend constexpr bool operator>=(Budget a, Budget b) { return !(a < b); }

  friend constexpr Budget operator+(Budget a, Budget b) {
    return Budget(a.units_ + b.units_);
  }
  friend constexpr Budget operator-(Budget a, Budget b) {
    return Budget(a.units_ - b.units_);
  }
  constexpr Budget operator-() const { return Budget(-units_); }

  Budget& operator+=(Budget b) {
    units_ += b.units_;
    return *this;
  }
  Budget& operator-=(Budget b) {
    units_ -= b.units_;
    return *this;
  }

 private:
  std::int64_t units_ = 0;
};

/// Budget floor used when the caller does not pick one. A run whose budget
/// drops below the floor is treated as a recursive structure with no way to
/// finish, and fails instead of looping.
inline constexpr Budget kDefaultFloor{-10000};

inline constexpr char kLoopBreakerMessage[] =
    "Recursive structure with no loop breaker.";

enum class FailureKind {
  kLoopBreakerMissing,  // budget crossed the floor
  kEmptyChoice,         // choice combinator given nothing to choose from
  kBadWeights,          // weighted choice with invalid weights
};

/// A failed generation run. Failures are ordinary values: a run either
/// yields a value or one of these.
struct GenFailure {
  FailureKind kind;
  std::string detail;

  static GenFailure loop_breaker() {
    return {FailureKind::kLoopBreakerMissing, kLoopBreakerMessage};
  }
  static GenFailure empty_choice(std::string detail) {
    return {FailureKind::kEmptyChoice, std::move(detail)};
  }
  static GenFailure bad_weights(std::string detail) {
    return {FailureKind::kBadWeights, std::move(detail)};
  }
};

/// One generation session: a seeded PRNG plus the mutable remaining budget.
/// A context drives exactly one top-level run and is not shared between
/// threads. Generators themselves are immutable and freely shareable.
class GenContext {
 public:
  GenContext(std::uint64_t seed, Budget initial, Budget floor = kDefaultFloor)
      : rng_(seed), remaining_(initial), floor_(floor) {
    if (floor >= Budget{0}) {
      throw std::invalid_argument("GenContext floor must be negative");
    }
  }

  std::mt19937_64& rng() { return rng_; }

  Budget remaining() const { return remaining_; }
  Budget floor() const { return floor_; }

  /// Number of spend calls so far. Every run is bounded: it either finishes
  /// or fails within (initial - floor) unit-or-larger spends.
  std::uint64_t spend_events() const { return spend_events_; }

  /// Deduct `amount` (non-negative) from the remaining budget, then check
  /// the floor. Failing the check means the structure being generated has
  /// no cheap way to terminate. Outstanding spend credit is consumed before
  /// the budget is touched.
  [[nodiscard]] std::optional<GenFailure> spend(Budget amount) {
    assert(amount >= Budget{0});
    auto units = static_cast<std::uint64_t>(amount.units());
    const std::uint64_t used = units < spend_credit_ ? units : spend_credit_;
    spend_credit_ -= used;
    units -= used;
    remaining_ -= Budget{static_cast<std::int64_t>(units)};
    ++spend_events_;
    if (remaining_ < floor_) return GenFailure::loop_breaker();
    return std::nullopt;
  }

  /// Floor check alone: fails iff remaining < floor. At exactly the floor
  /// this passes while the budget gate does not; both follow their
  /// originals deliberately (see README, "the floor boundary").
  [[nodiscard]] std::optional<GenFailure> check_budget() const {
    if (remaining_ < floor_) return GenFailure::loop_breaker();
    return std::nullopt;
  }

  /// Prepaid units waiting to offset upcoming spends. Collection
  /// generators pay for their cells up front and grant each cell's unit to
  /// that element as it is generated; without the transfer, elements still
  /// pending when the budget runs out would drag it through the floor and
  /// fail a run that is in fact making progress. The granter restores the
  /// previous value afterwards, so an element that charges nothing cannot
  /// leak its unit to siblings.
  std::uint64_t spend_credit() const { return spend_credit_; }
  void grant_spend_credit(std::uint64_t units) { spend_credit_ += units; }
  void set_spend_credit(std::uint64_t units) { spend_credit_ = units; }

  // Re-entry counter for the cheapest-path walk, which does not spend.
  // Bounded by (remaining - floor) at first entry so that a datatype whose
  // every constructor refers back to itself fails instead of recursing
  // forever.
  [[nodiscard]] std::optional<GenFailure> enter_cheapest() {
    if (cheapest_depth_ == 0) {
      const std::int64_t bound = remaining_.units() - floor_.units();
      cheapest_bound_ = bound > 0 ? static_cast<std::uint64_t>(bound) : 0;
    }
    if (++cheapest_depth_ > cheapest_bound_) {
      --cheapest_depth_;
      return GenFailure::loop_breaker();
    }
    return std::nullopt;
  }
  void leave_cheapest() {
    assert(cheapest_depth_ > 0);
    --cheapest_depth_;
  }

 private:
  std::mt19937_64 rng_;
  Budget remaining_;
  Budget floor_;
  std::uint64_t spend_events_ = 0;
  std::uint64_t spend_credit_ = 0;
  std::uint64_t cheapest_depth_ = 0;
  std::uint64_t cheapest_bound_ = 0;
};

}  // namespace lessarb
