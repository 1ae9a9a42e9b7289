#pragma once

#include <functional>
#include <type_traits>
#include <utility>
#include <variant>

#include "lessarb/cost.hpp"

namespace lessarb {

struct Unit {
  friend constexpr bool operator==(Unit, Unit) { return true; }
};

/// Outcome of running a generator: a value or a GenFailure.
template <typename T>
class Result {
 public:
  Result(T value) : v_(std::in_place_index<1>, std::move(value)) {}
  Result(GenFailure failure) : v_(std::in_place_index<0>, std::move(failure)) {}

  bool ok() const { return v_.index() == 1; }

  T& value() & { return std::get<1>(v_); }
  const T& value() const& { return std::get<1>(v_); }
  T&& value() && { return std::get<1>(std::move(v_)); }

  const GenFailure& failure() const { return std::get<0>(v_); }
  GenFailure take_failure() { return std::get<0>(std::move(v_)); }

 private:
  std::variant<GenFailure, T> v_;
};

/// A recipe for producing a T against a GenContext. Immutable once built;
/// running one mutates only the context it is given, so the same generator
/// may drive any number of runs (and threads, one context each).
///
/// Same seed, same starting budget, same generator: same value and same
/// final budget.
template <typename T>
class Generator {
 public:
  using value_type = T;

  Generator() = default;
  explicit Generator(std::function<Result<T>(GenContext&)> run)
      : run_(std::move(run)) {}

  Result<T> run(GenContext& ctx) const { return run_(ctx); }

  explicit operator bool() const { return static_cast<bool>(run_); }

  template <typename F>
  auto map(F f) const {
    using U = std::decay_t<std::invoke_result_t<F, T&&>>;
    return Generator<U>(
        [g = *this, f = std::move(f)](GenContext& ctx) -> Result<U> {
          auto r = g.run(ctx);
          if (!r.ok()) return r.take_failure();
          return U(f(std::move(r).value()));
        });
  }

  /// Monadic bind: run this generator, feed the value to `f`, run the
  /// generator it returns.
  template <typename F>
  auto and_then(F f) const {
    using G = std::decay_t<std::invoke_result_t<F, T&&>>;
    using U = typename G::value_type;
    return Generator<U>(
        [g = *this, f = std::move(f)](GenContext& ctx) -> Result<U> {
          auto r = g.run(ctx);
          if (!r.ok()) return r.take_failure();
          return f(std::move(r).value()).run(ctx);
        });
  }

 private:
  std::function<Result<T>(GenContext&)> run_;
};

/// Generator that yields a fixed value and touches neither budget nor PRNG.
template <typename T>
Generator<std::decay_t<T>> pure(T&& value) {
  using V = std::decay_t<T>;
  return Generator<V>(
      [v = V(std::forward<T>(value))](GenContext&) -> Result<V> { return v; });
}

/// Spend `amount` as a generator step.
inline Generator<Unit> spend(Budget amount) {
  return Generator<Unit>([amount](GenContext& ctx) -> Result<Unit> {
    if (auto failure = ctx.spend(amount)) return *std::move(failure);
    return Unit{};
  });
}

/// Read the remaining budget without changing it.
inline Generator<Budget> current_budget() {
  return Generator<Budget>(
      [](GenContext& ctx) -> Result<Budget> { return ctx.remaining(); });
}

/// The budget gate. While there is budget left the costly arm runs; once it
/// is exhausted the cheap arm runs; at or below the floor the run fails.
/// Exactly one arm ever runs.
template <typename T>
Generator<T> budget_gate(Generator<T> cheap, Generator<T> costly) {
  return Generator<T>([cheap = std::move(cheap), costly = std::move(costly)](
                          GenContext& ctx) -> Result<T> {
    const Budget budget = ctx.remaining();
    if (budget > Budget{0}) return costly.run(ctx);
    if (budget > ctx.floor()) return cheap.run(ctx);
    return GenFailure::loop_breaker();
  });
}

/// Mark a costly constructor: spend one unit, then apply `f` to the
/// generated argument.
template <typename F, typename T>
auto spend_marked_map(F f, Generator<T> g) {
  using U = std::decay_t<std::invoke_result_t<F, T&&>>;
  return Generator<U>([f = std::move(f), g = std::move(g)](
                          GenContext& ctx) -> Result<U> {
    if (auto failure = ctx.spend(Budget{1})) return *std::move(failure);
    auto r = g.run(ctx);
    if (!r.ok()) return r.take_failure();
    return U(f(std::move(r).value()));
  });
}

/// Run `gen` in a fresh context holding `cost` units. Negative cost is
/// allowed and routes every gate straight to its cheap arm.
template <typename T>
Result<T> with_cost(std::int64_t cost, const Generator<T>& gen,
                    std::uint64_t seed, Budget floor = kDefaultFloor) {
  GenContext ctx(seed, Budget{cost}, floor);
  return gen.run(ctx);
}

/// Adapter to the property-runner protocol: the runner's size parameter
/// becomes the starting budget. This is the default entry point for hooking
/// a generator into a sized test harness.
template <typename T>
class SizedRunner {
 public:
  explicit SizedRunner(Generator<T> gen) : gen_(std::move(gen)) {}

  Result<T> operator()(std::int64_t size, std::uint64_t seed) const {
    return with_cost(size, gen_, seed);
  }

  const Generator<T>& generator() const { return gen_; }

 private:
  Generator<T> gen_;
};

template <typename T>
SizedRunner<T> sized_cost(Generator<T> gen) {
  return SizedRunner<T>(std::move(gen));
}

namespace detail {

/// Uniform draw in [lo, hi] (closed) for the scalar kinds generators deal
/// in. Bool and character types go through int to stay in-contract for
/// std::uniform_int_distribution.
template <typename T, typename Urbg>
T draw_uniform_rng(Urbg& rng, T lo, T hi) {
  if constexpr (std::is_same_v<T, bool>) {
    std::uniform_int_distribution<int> dist(lo ? 1 : 0, hi ? 1 : 0);
    return dist(rng) != 0;
  } else if constexpr (std::is_integral_v<T> && sizeof(T) < sizeof(int)) {
    std::uniform_int_distribution<int> dist(static_cast<int>(lo),
                                            static_cast<int>(hi));
    return static_cast<T>(dist(rng));
  } else if constexpr (std::is_integral_v<T>) {
    std::uniform_int_distribution<T> dist(lo, hi);
    return dist(rng);
  } else {
    static_assert(std::is_floating_point_v<T>);
    std::uniform_real_distribution<T> dist(lo, hi);
    return dist(rng);
  }
}

template <typename T>
T draw_uniform(GenContext& ctx, T lo, T hi) {
  return draw_uniform_rng(ctx.rng(), lo, hi);
}

}  // namespace detail

}  // namespace lessarb
