#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "lessarb/generator.hpp"

namespace lessarb {

namespace detail {

template <typename T>
Generator<T> failing(GenFailure failure) {
  return Generator<T>([failure = std::move(failure)](GenContext&) -> Result<T> {
    return failure;
  });
}

}  // namespace detail

/// Uniform draw in [lo, hi]. Spends nothing.
template <typename T>
Generator<T> choose(T lo, T hi) {
  if (lo > hi) {
    return detail::failing<T>(GenFailure::empty_choice(
        "LessArbitrary.choose used with empty range"));
  }
  return Generator<T>([lo, hi](GenContext& ctx) -> Result<T> {
    return detail::draw_uniform(ctx, lo, hi);
  });
}

/// Uniform choice among generators, then run the chosen one.
template <typename T>
Generator<T> oneof(std::vector<Generator<T>> gens) {
  if (gens.empty()) {
    return detail::failing<T>(GenFailure::empty_choice(
        "LessArbitrary.oneof used with empty list"));
  }
  return Generator<T>([gens = std::move(gens)](GenContext& ctx) -> Result<T> {
    const auto index = detail::draw_uniform<std::size_t>(ctx, 0, gens.size() - 1);
    return gens[index].run(ctx);
  });
}

/// Uniform element of a fixed list.
template <typename T>
Generator<T> elements(std::vector<T> xs) {
  if (xs.empty()) {
    return detail::failing<T>(GenFailure::empty_choice(
        "LessArbitrary.elements used with empty list"));
  }
  return Generator<T>([xs = std::move(xs)](GenContext& ctx) -> Result<T> {
    const auto index = detail::draw_uniform<std::size_t>(ctx, 0, xs.size() - 1);
    return xs[index];
  });
}

/// Weighted choice. Draws n uniform in [1, total weight] and walks the list
/// subtracting weights until n fits; zero-weight entries are never selected.
template <typename T>
Generator<T> frequency(std::vector<std::pair<std::int64_t, Generator<T>>> entries) {
  if (entries.empty()) {
    return detail::failing<T>(GenFailure::empty_choice(
        "LessArbitrary.frequency used with empty list"));
  }
  if (std::any_of(entries.begin(), entries.end(),
                  [](const auto& e) { return e.first < 0; })) {
    return detail::failing<T>(GenFailure::bad_weights(
        "LessArbitrary.frequency: negative weight"));
  }
  if (std::all_of(entries.begin(), entries.end(),
                  [](const auto& e) { return e.first == 0; })) {
    return detail::failing<T>(GenFailure::bad_weights(
        "LessArbitrary.frequency: all weights were zero"));
  }
  // A single entry needs no selection draw; the wrapper is then
  // observationally identical to the entry's generator, seed for seed.
  if (entries.size() == 1) return std::move(entries.front().second);
  std::int64_t total = 0;
  for (const auto& e : entries) total += e.first;
  return Generator<T>([entries = std::move(entries),
                       total](GenContext& ctx) -> Result<T> {
    std::int64_t n = detail::draw_uniform<std::int64_t>(ctx, 1, total);
    for (const auto& [weight, gen] : entries) {
      if (n <= weight) return gen.run(ctx);
      n -= weight;
    }
    // Unreachable once the weights validate; kept as a guard.
    return GenFailure::empty_choice("LessArbitrary.pick used with empty list");
  });
}

/// Uniform integer in [1, remaining budget], for array and list sizes. The
/// upper bound is clamped to at least 1 so the draw stays total when the
/// budget is already gone. Spends nothing itself.
inline Generator<std::int64_t> budget_choose() {
  return Generator<std::int64_t>([](GenContext& ctx) -> Result<std::int64_t> {
    const std::int64_t upper = std::max<std::int64_t>(1, ctx.remaining().units());
    return detail::draw_uniform<std::int64_t>(ctx, 1, upper);
  });
}

/// Retry `gen` until `pred` holds, spending one unit per rejected draw. The
/// budget floor bounds the retries: an unsatisfiable predicate ends in a
/// LoopBreakerMissing failure rather than a spin.
template <typename T, typename Pred>
Generator<T> such_that(Generator<T> gen, Pred pred) {
  return Generator<T>([gen = std::move(gen),
                       pred = std::move(pred)](GenContext& ctx) -> Result<T> {
    for (;;) {
      auto r = gen.run(ctx);
      if (!r.ok()) return r;
      if (pred(r.value())) return r;
      if (auto failure = ctx.spend(Budget{1})) return *std::move(failure);
    }
  });
}

/// Bind a generated value into a dependent generator.
template <typename A, typename F>
auto for_all(Generator<A> gen, F prop) {
  return gen.and_then(std::move(prop));
}

/// Budgeted list: empty when the budget is gone; otherwise draw a length up
/// to the remaining budget, pay for it, and generate that many elements.
/// Each element's prepaid cell unit offsets that element's own first charge
/// (see GenContext::spend_credit), so cells are not billed twice and a long
/// tail of pending elements cannot drag the budget through the floor.
template <typename T>
Generator<std::vector<T>> gen_list(Generator<T> elem) {
  using List = std::vector<T>;
  auto costly = Generator<List>([elem](GenContext& ctx) -> Result<List> {
    const std::int64_t upper = std::max<std::int64_t>(1, ctx.remaining().units());
    const std::int64_t len = detail::draw_uniform<std::int64_t>(ctx, 1, upper);
    if (auto failure = ctx.spend(Budget{len})) return *std::move(failure);
    List out;
    out.reserve(static_cast<std::size_t>(len));
    for (std::int64_t i = 0; i < len; ++i) {
      const std::uint64_t saved_credit = ctx.spend_credit();
      ctx.grant_spend_credit(1);
      auto r = elem.run(ctx);
      ctx.set_spend_credit(saved_credit);
      if (!r.ok()) return r.take_failure();
      out.push_back(std::move(r).value());
    }
    return out;
  });
  return budget_gate(pure(List{}), std::move(costly));
}

}  // namespace lessarb
