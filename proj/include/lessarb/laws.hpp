#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lessarb/generator.hpp"

namespace lessarb {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-sample seed stream: deterministic in (seed, index), decorrelated
/// across indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

}  // namespace detail

struct LawResult {
  bool pass = true;
  std::string counterexample;  // non-empty iff !pass
  std::uint64_t samples_run = 0;
};

/// A named, reproducible check: same (seed, samples) always gives the same
/// result. samples == 0 means "use the law's own default count".
struct Law {
  std::string name;
  std::function<LawResult(std::uint64_t seed, std::uint64_t samples)> check;
};

struct LawSuite {
  std::string name;
  std::vector<Law> laws;
};

struct LawReport {
  std::string suite;
  std::string law;
  bool pass = true;
  std::string counterexample;
  std::uint64_t samples_run = 0;
};

/// Everything the law harness needs from one instance: how to generate,
/// shrink, compare and print it.
template <typename T>
struct Subject {
  Generator<T> gen;
  std::function<std::vector<T>(const T&)> shrinker;
  std::function<bool(const T&, const T&)> equals;
  std::function<std::string(const T&)> display;
};

/// Bundle a generator with the instance's shrink/==/show found by ADL.
template <typename T>
Subject<T> make_subject(Generator<T> gen) {
  return Subject<T>{
      std::move(gen),
      [](const T& v) { return shrink(v); },
      [](const T& a, const T& b) { return a == b; },
      [](const T& v) { return show(v); },
  };
}

/// True iff v is absent from its own shrink candidates.
template <typename T, typename ShrinkFn, typename Eq>
bool shrink_check(const T& v, const ShrinkFn& shrinker, const Eq& equals) {
  for (const auto& candidate : shrinker(v)) {
    if (equals(candidate, v)) return false;
  }
  return true;
}

template <typename T>
bool shrink_check(const T& v) {
  for (const auto& candidate : shrink(v)) {
    if (candidate == v) return false;
  }
  return true;
}

/// Law suite for a generator/shrinker pair: every generated sample must be
/// absent from its own shrink list. Budgets cycle through 0..100 across
/// samples so small and large values are both exercised.
template <typename T>
LawSuite arbitrary_laws(Subject<T> subject, std::uint64_t default_samples = 100) {
  Law law;
  law.name = "does not shrink to itself";
  law.check = [subject = std::move(subject), default_samples](
                  std::uint64_t seed, std::uint64_t samples) -> LawResult {
    const std::uint64_t n = samples == 0 ? default_samples : samples;
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::int64_t size = static_cast<std::int64_t>(i % 101);
      auto r = with_cost(size, subject.gen, detail::derive_seed(seed, i));
      if (!r.ok()) {
        return {false, "generation failed: " + r.failure().detail, i + 1};
      }
      if (!shrink_check(r.value(), subject.shrinker, subject.equals)) {
        return {false, subject.display(r.value()), i + 1};
      }
    }
    return {true, "", n};
  };
  return LawSuite{"arbitrary", {std::move(law)}};
}

/// Law suite for budget-conscious generators: with a zero budget, every
/// sample must satisfy the caller's cheapest-constructor predicate. One
/// fresh context per sample.
template <typename T>
LawSuite less_arbitrary_laws(Subject<T> subject,
                             std::function<bool(const T&)> cheapest_pred,
                             std::uint64_t default_samples = 1000) {
  Law law;
  law.name = "always selects cheapest";
  law.check = [subject = std::move(subject), pred = std::move(cheapest_pred),
               default_samples](std::uint64_t seed,
                                std::uint64_t samples) -> LawResult {
    const std::uint64_t n = samples == 0 ? default_samples : samples;
    for (std::uint64_t i = 0; i < n; ++i) {
      auto r = with_cost(0, subject.gen, detail::derive_seed(seed, i));
      if (!r.ok()) {
        return {false, "generation failed: " + r.failure().detail, i + 1};
      }
      if (!pred(r.value())) {
        return {false, subject.display(r.value()), i + 1};
      }
    }
    return {true, "", n};
  };
  return LawSuite{"LessArbitrary", {std::move(law)}};
}

/// Run every law in every suite with per-law derived seeds. Failures are
/// data in the reports, not exceptions.
inline std::vector<LawReport> run_laws(
    const std::vector<std::pair<std::string, LawSuite>>& suites,
    std::uint64_t seed, std::uint64_t samples = 0) {
  std::vector<LawReport> reports;
  std::uint64_t law_index = 0;
  for (const auto& [group, suite] : suites) {
    const std::string suite_name =
        group.empty() ? suite.name : group + "." + suite.name;
    for (const auto& law : suite.laws) {
      LawResult result = law.check(detail::derive_seed(seed, law_index), samples);
      reports.push_back(LawReport{suite_name, law.name, result.pass,
                                  result.counterexample, result.samples_run});
      ++law_index;
    }
  }
  return reports;
}

inline bool all_passed(const std::vector<LawReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

inline void print_reports(std::ostream& os,
                          const std::vector<LawReport>& reports) {
  for (const auto& r : reports) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.law << " ("
       << r.samples_run << " samples)";
    if (!r.pass) os << "\n       counterexample: " << r.counterexample;
    os << "\n";
  }
}

}  // namespace lessarb
