#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "lessarb/combinators.hpp"
#include "lessarb/cost.hpp"
#include "lessarb/generator.hpp"

using namespace lessarb;

namespace {

GenContext make_ctx(std::int64_t remaining, std::int64_t floor = -10000,
                    std::uint64_t seed = 1) {
  return GenContext(seed, Budget{remaining}, Budget{floor});
}

}  // namespace

TEST_CASE("spend deducts and then checks the floor", "[cost]") {
  auto ctx = make_ctx(5);
  REQUIRE_FALSE(ctx.spend(Budget{1}).has_value());
  CHECK(ctx.remaining() == Budget{4});

  auto zero = make_ctx(0);
  REQUIRE_FALSE(zero.spend(Budget{0}).has_value());
  CHECK(zero.remaining() == Budget{0});

  auto at_floor = make_ctx(-10000);
  auto failure = at_floor.spend(Budget{1});
  REQUIRE(failure.has_value());
  CHECK(failure->kind == FailureKind::kLoopBreakerMissing);
  CHECK(failure->detail == "Recursive structure with no loop breaker.");
}

TEST_CASE("check_budget fails strictly below the floor", "[cost]") {
  CHECK_FALSE(make_ctx(0).check_budget().has_value());
  CHECK(make_ctx(-10001).check_budget().has_value());
  // At exactly the floor the check passes; the gate is the strict one.
  CHECK_FALSE(make_ctx(-10000).check_budget().has_value());
}

TEST_CASE("floor must be negative", "[cost]") {
  CHECK_THROWS_AS(GenContext(1, Budget{5}, Budget{0}), std::invalid_argument);
  CHECK_THROWS_AS(GenContext(1, Budget{5}, Budget{7}), std::invalid_argument);
}

TEST_CASE("budget_gate picks exactly one arm", "[cost]") {
  int cheap_runs = 0;
  int costly_runs = 0;
  auto cheap = Generator<int>([&](GenContext&) -> Result<int> {
    ++cheap_runs;
    return 1;
  });
  auto costly = Generator<int>([&](GenContext&) -> Result<int> {
    ++costly_runs;
    return 2;
  });
  auto gated = budget_gate(cheap, costly);

  auto rich = make_ctx(1);
  CHECK(gated.run(rich).value() == 2);
  CHECK(cheap_runs == 0);
  CHECK(costly_runs == 1);

  auto broke = make_ctx(0);
  CHECK(gated.run(broke).value() == 1);
  CHECK(cheap_runs == 1);

  auto dead = make_ctx(-10000);
  auto r = gated.run(dead);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure().kind == FailureKind::kLoopBreakerMissing);
  CHECK(r.failure().detail == "Recursive structure with no loop breaker.");
  CHECK(cheap_runs == 1);
  CHECK(costly_runs == 1);
}

TEST_CASE("current_budget reads without mutating", "[cost]") {
  auto ctx = make_ctx(7);
  CHECK(current_budget().run(ctx).value() == Budget{7});
  CHECK(ctx.remaining() == Budget{7});

  REQUIRE_FALSE(ctx.spend(Budget{3}).has_value());
  CHECK(current_budget().run(ctx).value() == Budget{4});

  auto negative = make_ctx(-5);
  CHECK(current_budget().run(negative).value() == Budget{-5});
}

TEST_CASE("with_cost ignores context for pure and is deterministic", "[cost]") {
  for (std::int64_t cost : {-3, 0, 1, 100}) {
    for (std::uint64_t seed : {1ULL, 99ULL}) {
      CHECK(with_cost(cost, pure(42), seed).value() == 42);
    }
  }

  // Determinism: identical (cost, generator, seed) triples replay exactly.
  auto gen = gen_list(choose<std::int64_t>(0, 1000));
  std::mt19937_64 pick(7);
  for (int i = 0; i < 100; ++i) {
    const auto cost = detail::draw_uniform_rng<std::int64_t>(pick, 0, 200);
    const auto seed = pick();
    auto a = with_cost(cost, gen, seed);
    auto b = with_cost(cost, gen, seed);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.value() == b.value());
  }
}

TEST_CASE("sized_cost feeds the runner size in as the budget", "[cost]") {
  auto gen = gen_list(choose<std::int64_t>(0, 9));
  auto runner = sized_cost(gen);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto via_runner = runner(10, seed);
    auto direct = with_cost(10, gen, seed);
    REQUIRE(via_runner.ok());
    CHECK(via_runner.value() == direct.value());
  }

  // Size zero forces the cheap arm everywhere.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CHECK(runner(0, seed).value().empty());
  }

  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    CHECK(runner(100, seed).value() == with_cost(100, gen, seed).value());
  }
}

TEST_CASE("spend_marked_map charges one unit then maps", "[cost]") {
  auto marked = spend_marked_map([](int x) { return x; }, pure(11));

  auto ctx = make_ctx(3);
  CHECK(marked.run(ctx).value() == 11);
  CHECK(ctx.remaining() == Budget{2});

  auto dead = make_ctx(-10000);
  auto r = marked.run(dead);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure().kind == FailureKind::kLoopBreakerMissing);

  // Definitional: equal to an explicit spend-then-map pipeline.
  auto doubled = spend_marked_map([](std::int64_t x) { return 2 * x; },
                                  choose<std::int64_t>(0, 99));
  auto explicit_pipeline =
      spend(Budget{1}).and_then([](Unit) { return choose<std::int64_t>(0, 99); })
          .map([](std::int64_t x) { return 2 * x; });
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto a = with_cost(10, doubled, seed);
    auto b = with_cost(10, explicit_pipeline, seed);
    CHECK(a.value() == b.value());
  }
}

TEST_CASE("generator composition obeys identity laws observationally",
          "[cost]") {
  auto g = choose<std::int64_t>(0, 1 << 20);

  auto mapped_id = g.map([](std::int64_t x) { return x; });
  auto bound_pure =
      g.and_then([](std::int64_t x) { return pure(x); });
  auto f = [](std::int64_t x) { return pure(x % 17); };
  auto left_identity = pure<std::int64_t>(41).and_then(f);

  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    CHECK(with_cost(5, mapped_id, seed).value() ==
          with_cost(5, g, seed).value());
    CHECK(with_cost(5, bound_pure, seed).value() ==
          with_cost(5, g, seed).value());
    CHECK(with_cost(5, left_identity, seed).value() == 41 % 17);
  }

  // Associativity, observationally.
  auto add_digit = [](std::int64_t x) {
    return choose<std::int64_t>(0, 9).map([x](std::int64_t d) {
      return x * 10 + d;
    });
  };
  auto nested_left = g.and_then(add_digit).and_then(add_digit);
  auto nested_right = g.and_then([&](std::int64_t x) {
    return add_digit(x).and_then(add_digit);
  });
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    CHECK(with_cost(5, nested_left, seed).value() ==
          with_cost(5, nested_right, seed).value());
  }
}

TEST_CASE("spend is monotone across whole runs", "[cost]") {
  // Pipelines built from the public combinators never end a run with more
  // budget than they started with.
  auto pipeline = gen_list(choose<std::int64_t>(0, 9)).and_then([](auto xs) {
    return spend_marked_map([n = xs.size()](std::int64_t x) { return x + n; },
                            choose<std::int64_t>(0, 9));
  });
  std::mt19937_64 pick(3);
  for (int i = 0; i < 200; ++i) {
    const auto start = detail::draw_uniform_rng<std::int64_t>(pick, 0, 100);
    GenContext ctx(pick(), Budget{start});
    (void)pipeline.run(ctx);
    CHECK(ctx.remaining() <= Budget{start});
  }
}

TEST_CASE("runs are bounded by the floor distance", "[cost]") {
  // A generator that never succeeds still terminates: the retry budget is
  // capped by (start - floor) spends.
  auto never = such_that(choose<std::int64_t>(0, 9),
                         [](const std::int64_t&) { return false; });
  for (std::int64_t start : {0, 5, 50}) {
    GenContext ctx(9, Budget{start}, Budget{-10});
    auto r = never.run(ctx);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failure().kind == FailureKind::kLoopBreakerMissing);
    CHECK(ctx.spend_events() <=
          static_cast<std::uint64_t>(start + 10 + 1));
  }
}

TEST_CASE("negative starting cost routes every gate to the cheap arm",
          "[cost]") {
  auto gated = budget_gate(pure(std::string("cheap")),
                           pure(std::string("costly")));
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CHECK(with_cost(-1, gated, seed).value() == "cheap");
    CHECK(with_cost(-9999, gated, seed).value() == "cheap");
  }
  // At the floor itself the gate refuses.
  auto r = with_cost(-10000, gated, 1);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure().kind == FailureKind::kLoopBreakerMissing);
}
