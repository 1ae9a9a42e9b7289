// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run it through ctest or directly:
//
//   ./build/tests/acceptance
//
// The checks are deliberately heavyweight (budgets to a million, hundreds
// of samples); expect the whole binary to take a minute or so.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lessarb/lessarb.hpp"
#include "shape_gen.hpp"
#include "support.hpp"

using namespace lessarb;
namespace fx = lessarb::fixtures;

namespace {

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> run;
};

const std::vector<std::int64_t> kTerminationBudgets{0,    1,      10,     100,
                                                    1000, 10000, 100000, 1000000};

// 1. Budgeted generation of the recursive fixtures completes, failure-free,
//    at every budget from zero through a million, within a minute of wall
//    time.
bool termination_guarantee(std::string& detail) {
  const auto registry = fx::register_fixtures();
  const auto tree = registry.generator<fx::Tree>("Tree");
  const auto expr = registry.generator<fx::Expr>("Expr");
  const auto stmt = registry.generator<fx::Stmt>("Stmt");

  const auto start = std::chrono::steady_clock::now();
  std::uint64_t runs = 0;
  bool all_ok = true;
  for (const std::int64_t budget : kTerminationBudgets) {
    for (std::uint64_t sample = 0; sample < 100; ++sample) {
      const std::uint64_t seed = lessarb::detail::derive_seed(11, runs++);
      all_ok = all_ok && with_cost(budget, tree, seed).ok();
      // One value of the mutually recursive pair per sample, alternating
      // between the two entry points.
      all_ok = all_ok && (sample % 2 == 0 ? with_cost(budget, expr, seed).ok()
                                          : with_cost(budget, stmt, seed).ok());
      if (!all_ok) {
        detail = "generation failed at budget " + std::to_string(budget);
        return false;
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream out;
  out << runs << " runs per fixture family in " << seconds << " s";
  detail = out.str();
  return seconds < 60.0;
}

// 2. Median constructor count and median wall time against the budget fit a
//    linear model with R^2 >= 0.98, and doubling the budget scales median
//    time by a factor in [1.5, 3.0].
bool linearity(std::string& detail) {
  using namespace lessarb::bench;
  const std::vector<std::int64_t> budgets{1000, 10000, 100000, 1000000};
  const auto records = run_bench(Policy::kBudgeted, budgets, 11, 21, 1000000);

  std::vector<double> xs;
  std::vector<double> median_nodes;
  std::vector<double> median_nanos;
  for (const auto budget : budgets) {
    std::vector<double> nodes;
    std::vector<double> nanos;
    for (const auto& r : records) {
      if (r.size != budget) continue;
      if (r.outcome != Outcome::kCompleted) {
        detail = "a budgeted run did not complete";
        return false;
      }
      nodes.push_back(static_cast<double>(r.constructors));
      nanos.push_back(static_cast<double>(r.nanos));
    }
    xs.push_back(static_cast<double>(budget));
    median_nodes.push_back(median(nodes));
    median_nanos.push_back(median(nanos));
  }
  const auto node_fit = linear_fit(xs, median_nodes);
  const auto time_fit = linear_fit(xs, median_nanos);

  const auto doubling = run_bench(Policy::kBudgeted, {500000, 1000000}, 11, 22,
                                  1000000);
  std::vector<double> half_nanos;
  std::vector<double> full_nanos;
  for (const auto& r : doubling) {
    (r.size == 500000 ? half_nanos : full_nanos)
        .push_back(static_cast<double>(r.nanos));
  }
  const double ratio = median(full_nanos) / median(half_nanos);

  std::ostringstream out;
  out << "R^2 constructors=" << node_fit.r2 << ", R^2 time=" << time_fit.r2
      << ", doubling ratio=" << ratio;
  detail = out.str();
  return node_fit.r2 >= 0.98 && time_fit.r2 >= 0.98 && ratio >= 1.5 &&
         ratio <= 3.0;
}

// 3. At size 25 the naive policy hits the million-step cap in at least half
//    of 200 runs and within ten points of the branching-process prediction;
//    the budgeted policy at a million budget never does.
bool divergence_contrast(std::string& detail) {
  using namespace lessarb::bench;

  const double predicted = mc_divergence_fraction(25, 10000, 10000, 99);

  const auto naive = run_bench(Policy::kNaive, {25}, 200, 31, 1000000);
  std::int64_t capped = 0;
  for (const auto& r : naive) capped += r.outcome == Outcome::kStepCapped;
  const double observed = static_cast<double>(capped) / 200.0;

  const auto budgeted = run_bench(Policy::kBudgeted, {1000000}, 200, 32, 1000000);
  std::int64_t budgeted_bad = 0;
  for (const auto& r : budgeted) {
    budgeted_bad += r.outcome != Outcome::kCompleted;
  }

  std::ostringstream out;
  out << "naive capped " << observed * 100.0 << "% (predicted "
      << predicted * 100.0 << "%), budgeted non-completions " << budgeted_bad
      << "/200";
  detail = out.str();
  return observed >= 0.50 && observed >= predicted - 0.10 &&
         observed <= predicted + 0.10 && budgeted_bad == 0;
}

// 4. With a zero budget, every sample picks the cheapest constructor:
//    1000/1000 on Tree and on the Expr/Stmt pair.
bool always_cheapest_law(std::string& detail) {
  const auto registry = fx::register_fixtures();
  const auto reports = run_laws(
      {
          {"Tree", less_arbitrary_laws<fx::Tree>(
                       make_subject(registry.generator<fx::Tree>("Tree")),
                       fx::is_leaf)},
          {"Expr", less_arbitrary_laws<fx::Expr>(
                       make_subject(registry.generator<fx::Expr>("Expr")),
                       fx::is_lit)},
          {"Stmt", less_arbitrary_laws<fx::Stmt>(
                       make_subject(registry.generator<fx::Stmt>("Stmt")),
                       fx::is_lit_stmt)},
      },
      41);
  std::uint64_t total = 0;
  for (const auto& r : reports) {
    if (!r.pass || r.samples_run != 1000) {
      detail = r.suite + " failed: " + r.counterexample;
      return false;
    }
    total += r.samples_run;
  }
  detail = std::to_string(total) + "/" + std::to_string(total) + " samples";
  return true;
}

// 5. No instance ever shrinks to itself: 100/100 samples per shipped
//    instance.
bool shrink_law(std::string& detail) {
  const auto registry = fx::register_fixtures();
  std::vector<std::pair<std::string, LawSuite>> suites;
  suites.emplace_back("Int", arbitrary_laws(make_subject(flat_gen<std::int64_t>())));
  suites.emplace_back("Bool", arbitrary_laws(make_subject(flat_gen<bool>())));
  suites.emplace_back("Char", arbitrary_laws(make_subject(flat_gen<char>())));
  suites.emplace_back("Double", arbitrary_laws(make_subject(flat_gen<double>())));
  suites.emplace_back("Integer", arbitrary_laws(make_subject(gen_big_int())));
  suites.emplace_back("Scientific",
                      arbitrary_laws(make_subject(gen_scientific())));
  suites.emplace_back("Text", arbitrary_laws(make_subject(gen_text())));
  suites.emplace_back(
      "[Int]", arbitrary_laws(make_subject(gen_vector(flat_gen<std::int64_t>()))));
  suites.emplace_back(
      "Set Int", arbitrary_laws(make_subject(gen_set(flat_gen<std::int64_t>()))));
  suites.emplace_back("Map Int Bool",
                      arbitrary_laws(make_subject(
                          gen_map(flat_gen<std::int64_t>(), flat_gen<bool>()))));
  suites.emplace_back("(Int, Text)",
                      arbitrary_laws(make_subject(
                          gen_pair(flat_gen<std::int64_t>(), gen_text()))));

  auto tree = make_subject(registry.generator<fx::Tree>("Tree"));
  tree.shrinker = [](const fx::Tree& t) { return fx::shrink(t); };
  tree.display = [](const fx::Tree& t) { return fx::show(t); };
  suites.emplace_back("Tree", arbitrary_laws(std::move(tree)));

  auto expr = make_subject(registry.generator<fx::Expr>("Expr"));
  expr.shrinker = [](const fx::Expr& e) { return fx::shrink(e); };
  expr.display = [](const fx::Expr& e) { return fx::show(e); };
  suites.emplace_back("Expr", arbitrary_laws(std::move(expr)));

  auto stmt = make_subject(registry.generator<fx::Stmt>("Stmt"));
  stmt.shrinker = [](const fx::Stmt& s) { return fx::shrink(s); };
  stmt.display = [](const fx::Stmt& s) { return fx::show(s); };
  suites.emplace_back("Stmt", arbitrary_laws(std::move(stmt)));

  const auto reports = run_laws(suites, 43);
  for (const auto& r : reports) {
    if (!r.pass || r.samples_run != 100) {
      detail = r.suite + " failed: " + r.counterexample;
      return false;
    }
  }
  detail = std::to_string(reports.size()) + " instances, 100/100 each";
  return true;
}

// 6. The cached cheapness and constructor-count analyses agree exactly with
//    a brute-force fold oracle on a thousand random shape trees.
bool static_analysis_oracle(std::string& detail) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 1000; ++i) {
    auto shape = test_support::random_shape(rng, 5);
    if (lessarb::detail::draw_uniform_rng(rng, 0, 1) == 0) {
      shape = Shape::data("D", std::move(shape),
                          [](std::size_t, std::vector<std::any>&&) {
                            return std::any{};
                          });
    }
    if (cheapness(*shape) != test_support::oracle_cheapness(*shape) ||
        sum_len(*shape) != test_support::oracle_sum_len(*shape)) {
      detail = "disagreement on shape " + std::to_string(i);
      return false;
    }
  }
  detail = "1000 shapes, exact agreement";
  return true;
}

// 7. Distributions: 1:3 weights land at 75% +- 2, four-way oneof is uniform
//    by chi-square at alpha 0.001, and the two-constructor fixture's sum
//    branch selection is uniform by the same test.
bool distributional_checks(std::string& detail) {
  using Entry = std::pair<std::int64_t, Generator<std::int64_t>>;
  auto weighted = frequency(std::vector<Entry>{{1, pure<std::int64_t>(0)},
                                               {3, pure<std::int64_t>(1)}});
  std::uint64_t b_count = 0;
  for (std::uint64_t i = 0; i < 40000; ++i) {
    b_count += with_cost(10, weighted, lessarb::detail::derive_seed(51, i)).value();
  }
  const double b_freq = static_cast<double>(b_count) / 40000.0;

  auto four = oneof(std::vector{pure<std::size_t>(0), pure<std::size_t>(1),
                                pure<std::size_t>(2), pure<std::size_t>(3)});
  std::vector<std::uint64_t> one_of_counts(4, 0);
  for (std::uint64_t i = 0; i < 40000; ++i) {
    ++one_of_counts[with_cost(10, four, lessarb::detail::derive_seed(52, i)).value()];
  }

  const auto registry = fx::register_fixtures();
  const auto tree = registry.generator<fx::Tree>("Tree");
  std::vector<std::uint64_t> root_counts(2, 0);
  for (std::uint64_t i = 0; i < 40000; ++i) {
    auto r = with_cost(16, tree, lessarb::detail::derive_seed(53, i));
    ++root_counts[r.value().is_leaf() ? 0 : 1];
  }

  std::ostringstream out;
  out << "weighted B at " << b_freq * 100.0 << "%, oneof chi2="
      << test_support::chi_square(one_of_counts,
                                  std::vector<double>(4, 0.25))
      << ", sum branch chi2="
      << test_support::chi_square(root_counts, std::vector<double>(2, 0.5));
  detail = out.str();
  return b_freq >= 0.73 && b_freq <= 0.77 &&
         test_support::uniform_by_chi_square(one_of_counts) &&
         test_support::uniform_by_chi_square(root_counts);
}

// 8. Generating the constructor-with-no-way-out fails with the exact loop
//    breaker message, within (budget - floor) spends, for both floors.
bool loop_breaker_detection(std::string& detail) {
  const auto registry = fx::register_fixtures();
  const auto gen = registry.generic_gen("NoBreaker");
  bool ok = true;
  std::string failure;
  for (const std::int64_t floor : {-10, -10000}) {
    for (const std::int64_t budget : {0, 16}) {
      bool run_ok = true;
      std::string run_failure;
      std::uint64_t spends = 0;
      test_support::run_with_big_stack([&] {
        GenContext ctx(8, Budget{budget}, Budget{floor});
        auto r = gen.run(ctx);
        spends = ctx.spend_events();
        run_ok = !r.ok() &&
                 r.failure().kind == FailureKind::kLoopBreakerMissing &&
                 r.failure().detail ==
                     "Recursive structure with no loop breaker." &&
                 spends <= static_cast<std::uint64_t>(budget - floor);
        if (!run_ok) run_failure = "floor " + std::to_string(floor);
      });
      ok = ok && run_ok;
      if (!run_ok) failure = run_failure;
    }
  }
  detail = ok ? "verbatim failure at floors -10 and -10000" : failure;
  return ok;
}

// 9. Replaying any (seed, budget, generator) triple gives identical values
//    and identical final budgets: 1000 random triples.
bool determinism(std::string& detail) {
  const auto registry = fx::register_fixtures();
  const auto tree = registry.generator<fx::Tree>("Tree");
  const auto expr = registry.generator<fx::Expr>("Expr");
  const auto stmt = registry.generator<fx::Stmt>("Stmt");
  const auto ints = gen_list(flat_gen<std::int64_t>());
  const auto sci = gen_scientific();

  std::mt19937_64 pick(77);
  const auto replay = [&pick](const auto& gen) {
    const auto budget = lessarb::detail::draw_uniform_rng<std::int64_t>(pick, 0, 300);
    const std::uint64_t seed = pick();
    GenContext a(seed, Budget{budget});
    GenContext b(seed, Budget{budget});
    auto ra = gen.run(a);
    auto rb = gen.run(b);
    return ra.ok() && rb.ok() && ra.value() == rb.value() &&
           a.remaining() == b.remaining() &&
           a.spend_events() == b.spend_events();
  };

  for (int i = 0; i < 200; ++i) {
    if (!replay(tree) || !replay(expr) || !replay(stmt) || !replay(ints) ||
        !replay(sci)) {
      detail = "replay diverged on triple " + std::to_string(i);
      return false;
    }
  }
  detail = "1000 triples, bit-identical replays";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "termination guarantee", termination_guarantee},
      {2, "linearity of constructor count and wall time", linearity},
      {3, "divergence contrast vs. the naive policy", divergence_contrast},
      {4, "always selects cheapest at zero budget", always_cheapest_law},
      {5, "no instance shrinks to itself", shrink_law},
      {6, "static analyses match the fold oracle", static_analysis_oracle},
      {7, "distributional checks", distributional_checks},
      {8, "loop-breaker detection", loop_breaker_detection},
      {9, "deterministic replay", determinism},
  };

  bool all = true;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    all = all && ok;
  }
  return all ? 0 : 1;
}
