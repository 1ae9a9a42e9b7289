#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lessarb/fixtures.hpp"
#include "lessarb/laws.hpp"

namespace lessarb {
namespace bench {

// ---------------------------------------------------------------------------
// Policies under comparison. Every sample is one list-of-trees value, the
// way a property run would ask for its test data.
//
//   naive     — draw constructors uniformly, recurse at full size. Diverges
//               with probability approaching 1 once the mean branching
//               factor passes 1; samples abort at a step cap instead of
//               hanging.
//   sizediv   — the classic workaround: children generate at size/divisor,
//               bounding depth by log(size) but with wildly size-dependent
//               widths.
//   budgeted  — this library: one shared spend budget, linear in the size
//               parameter.
// ---------------------------------------------------------------------------

enum class Policy { kNaive, kSizeDivision, kBudgeted };

enum class Outcome { kCompleted, kStepCapped, kFailed };

inline std::string to_string(Policy p) {
  switch (p) {
    case Policy::kNaive:
      return "naive";
    case Policy::kSizeDivision:
      return "sizediv";
    default:
      return "budgeted";
  }
}

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kCompleted:
      return "completed";
    case Outcome::kStepCapped:
      return "step_capped";
    default:
      return "failed";
  }
}

struct RunRecord {
  Policy policy = Policy::kBudgeted;
  std::int64_t size = 0;  // budget for the budgeted policy, size otherwise
  std::int64_t sample = 0;
  std::uint64_t constructors = 0;
  std::uint64_t nanos = 0;
  Outcome outcome = Outcome::kCompleted;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// ---------------------------------------------------------------------------
// Growth model: how fast does naive generation blow up?
// ---------------------------------------------------------------------------

/// Mean count of recursive references per constructor. The mean across
/// constructors is the reproduction rate of one generation step; expected
/// structure size is finite only while it stays below 1.
struct GrowthModel {
  std::vector<double> refs_per_constructor;

  double mean_branching() const {
    if (refs_per_constructor.empty()) return 0.0;
    double total = 0.0;
    for (double r : refs_per_constructor) total += r;
    return total / static_cast<double>(refs_per_constructor.size());
  }
};

/// Model of the naive list-children Tree at a given size parameter:
/// Leaf has no references, Branch has a uniform [1, size] list of them.
inline GrowthModel naive_tree_model(std::int64_t size) {
  const double mean_len = (1.0 + static_cast<double>(std::max<std::int64_t>(1, size))) / 2.0;
  return GrowthModel{{0.0, mean_len}};
}

/// Expected node count of a branching process with mean offspring r,
/// truncated at depth_cap: sum of r^d for d in [0, depth_cap].
inline double expected_size(const GrowthModel& model, std::int64_t depth_cap) {
  const double r = model.mean_branching();
  double total = 0.0;
  double level = 1.0;
  for (std::int64_t d = 0; d <= depth_cap; ++d) {
    total += level;
    level *= r;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Naive and size-division oracles
// ---------------------------------------------------------------------------

struct NaiveRun {
  std::uint64_t constructors = 0;
  bool capped = false;
};

namespace detail {

// Depth-first with an explicit stack: the walk of a supercritical tree gets
// deeper roughly linearly in the nodes visited, far past what call-stack
// recursion survives at a million-step cap.
inline void naive_tree_walk(std::mt19937_64& rng, std::int64_t size,
                            std::uint64_t step_cap, NaiveRun& run) {
  if (run.capped) return;
  std::vector<std::int64_t> pending;  // children left to generate, per level
  pending.push_back(1);
  while (!pending.empty()) {
    if (pending.back() == 0) {
      pending.pop_back();
      continue;
    }
    --pending.back();
    if (run.constructors >= step_cap) {
      run.capped = true;
      return;
    }
    ++run.constructors;
    const int con = lessarb::detail::draw_uniform_rng(rng, 0, 1);
    if (con == 0) {
      (void)lessarb::detail::draw_uniform_rng<std::int64_t>(
          rng, std::numeric_limits<std::int64_t>::min(),
          std::numeric_limits<std::int64_t>::max());
      continue;
    }
    pending.push_back(lessarb::detail::draw_uniform_rng<std::int64_t>(
        rng, 1, std::max<std::int64_t>(1, size)));
  }
}

}  // namespace detail

/// Generate one Tree the naive way, counting constructors and aborting once
/// the cap is reached. Children recurse at the full size parameter.
inline NaiveRun naive_tree(std::mt19937_64& rng, std::int64_t size,
                           std::uint64_t step_cap) {
  NaiveRun run;
  detail::naive_tree_walk(rng, size, step_cap, run);
  return run;
}

/// One benchmark sample: a naive list of naive trees, the shape a property
/// run actually asks for. The cap is cumulative across the whole sample,
/// the way a hanging test suite would experience it.
inline NaiveRun naive_tree_list(std::mt19937_64& rng, std::int64_t size,
                                std::uint64_t step_cap) {
  NaiveRun run;
  const std::int64_t len = lessarb::detail::draw_uniform_rng<std::int64_t>(
      rng, 1, std::max<std::int64_t>(1, size));
  for (std::int64_t i = 0; i < len && !run.capped; ++i) {
    detail::naive_tree_walk(rng, size, step_cap, run);
  }
  return run;
}

struct SizeDivRun {
  std::uint64_t constructors = 0;
  std::uint64_t max_depth = 0;  // edges from the root
};

namespace detail {

inline void sizediv_walk(std::mt19937_64& rng, std::int64_t size,
                         std::int64_t divisor, std::uint64_t depth,
                         SizeDivRun& run) {
  ++run.constructors;
  run.max_depth = std::max(run.max_depth, depth);
  const bool forced_leaf = size <= 0;
  const int con =
      forced_leaf ? 0 : lessarb::detail::draw_uniform_rng(rng, 0, 1);
  if (con == 0) {
    (void)lessarb::detail::draw_uniform_rng<std::int64_t>(
        rng, std::numeric_limits<std::int64_t>::min(),
        std::numeric_limits<std::int64_t>::max());
    return;
  }
  const std::int64_t len = lessarb::detail::draw_uniform_rng<std::int64_t>(
      rng, 1, std::max<std::int64_t>(1, size));
  for (std::int64_t i = 0; i < len; ++i) {
    sizediv_walk(rng, size / divisor, divisor, depth + 1, run);
  }
}

}  // namespace detail

/// Generate one Tree with the size-division workaround: children recurse at
/// size/divisor, so depth is bounded by log_divisor(size) + 1.
inline SizeDivRun sizediv_tree(std::mt19937_64& rng, std::int64_t size,
                               std::int64_t divisor) {
  SizeDivRun run;
  detail::sizediv_walk(rng, size, divisor, 0, run);
  return run;
}

/// One benchmark sample under size division: a list of trees whose roots
/// already recurse at size/divisor.
inline SizeDivRun sizediv_tree_list(std::mt19937_64& rng, std::int64_t size,
                                    std::int64_t divisor) {
  SizeDivRun run;
  const std::int64_t len = lessarb::detail::draw_uniform_rng<std::int64_t>(
      rng, 1, std::max<std::int64_t>(1, size));
  for (std::int64_t i = 0; i < len; ++i) {
    detail::sizediv_walk(rng, size / divisor, divisor, 1, run);
  }
  return run;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimates for the branching-process model
// ---------------------------------------------------------------------------

/// Mean node count over simulated processes with the naive offspring law
/// (uniform constructor, then uniform [1, max_children] children),
/// truncated at depth_cap.
inline double mc_expected_size(std::int64_t max_children,
                               std::int64_t depth_cap, std::int64_t runs,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (std::int64_t i = 0; i < runs; ++i) {
    std::uint64_t nodes = 1;
    std::uint64_t frontier = 1;
    for (std::int64_t d = 0; d < depth_cap && frontier > 0; ++d) {
      std::uint64_t next = 0;
      for (std::uint64_t k = 0; k < frontier; ++k) {
        if (lessarb::detail::draw_uniform_rng(rng, 0, 1) == 1) {
          next += static_cast<std::uint64_t>(
              lessarb::detail::draw_uniform_rng<std::int64_t>(
                  rng, 1, std::max<std::int64_t>(1, max_children)));
        }
      }
      nodes += next;
      frontier = next;
    }
    total += static_cast<double>(nodes);
  }
  return total / static_cast<double>(runs);
}

/// Fraction of simulated naive samples at the given size that reach
/// step_limit constructors. For a supercritical process this approximates
/// the probability of running forever, which is what the step cap stands in
/// for; the limit can therefore sit well below the benchmark's cap.
inline double mc_divergence_fraction(std::int64_t size,
                                     std::uint64_t step_limit,
                                     std::int64_t runs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::int64_t capped = 0;
  for (std::int64_t i = 0; i < runs; ++i) {
    if (naive_tree_list(rng, size, step_limit).capped) ++capped;
  }
  return static_cast<double>(capped) / static_cast<double>(runs);
}

// ---------------------------------------------------------------------------
// The benchmark itself
// ---------------------------------------------------------------------------

inline std::vector<RunRecord> run_bench(Policy policy,
                                        const std::vector<std::int64_t>& sizes,
                                        std::int64_t samples_per_size,
                                        std::uint64_t seed,
                                        std::uint64_t step_cap,
                                        std::int64_t divisor = 2) {
  if (policy == Policy::kNaive && step_cap == 0) {
    throw std::invalid_argument("naive policy needs a positive step cap");
  }
  if (policy == Policy::kSizeDivision && divisor < 2) {
    throw std::invalid_argument("size division needs a divisor of at least 2");
  }

  const ShapeRegistry registry = fixtures::register_fixtures();
  const auto list_gen =
      gen_list(registry.generator<fixtures::Tree>("Tree"));

  std::vector<RunRecord> records;
  records.reserve(sizes.size() * static_cast<std::size_t>(samples_per_size));
  std::uint64_t run_index = 0;

  const auto one_run = [&](std::int64_t size, std::int64_t sample,
                           std::uint64_t run_seed) {
    RunRecord rec;
    rec.policy = policy;
    rec.size = size;
    rec.sample = sample;
    const auto start = std::chrono::steady_clock::now();
    switch (policy) {
      case Policy::kNaive: {
        std::mt19937_64 rng(run_seed);
        const NaiveRun r = naive_tree_list(rng, size, step_cap);
        rec.constructors = r.constructors;
        rec.outcome = r.capped ? Outcome::kStepCapped : Outcome::kCompleted;
        break;
      }
      case Policy::kSizeDivision: {
        std::mt19937_64 rng(run_seed);
        const SizeDivRun r = sizediv_tree_list(rng, size, divisor);
        rec.constructors = r.constructors;
        rec.outcome = Outcome::kCompleted;
        break;
      }
      case Policy::kBudgeted: {
        auto r = with_cost(size, list_gen, run_seed);
        if (r.ok()) {
          rec.outcome = Outcome::kCompleted;
          const auto end = std::chrono::steady_clock::now();
          rec.nanos = static_cast<std::uint64_t>(
              std::chrono::duration_cast<std::chrono::nanoseconds>(end - start)
                  .count());
          std::uint64_t nodes = 0;
          for (const auto& tree : r.value()) nodes += fixtures::node_count(tree);
          rec.constructors = nodes;
          return rec;
        }
        rec.outcome = Outcome::kFailed;
        break;
      }
    }
    const auto end = std::chrono::steady_clock::now();
    rec.nanos = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(end - start)
            .count());
    return rec;
  };

  for (const std::int64_t size : sizes) {
    // Discarded warm-up runs keep caches and the allocator hot before the
    // timed samples.
    for (int w = 0; w < 3; ++w) {
      (void)one_run(size, -1, lessarb::detail::derive_seed(seed, run_index++));
    }
    for (std::int64_t sample = 0; sample < samples_per_size; ++sample) {
      records.push_back(
          one_run(size, sample, lessarb::detail::derive_seed(seed, run_index++)));
    }
  }
  return records;
}

/// Write records as CSV, one row per record, header included, every line
/// newline-terminated.
inline void emit_csv(const std::vector<RunRecord>& records,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open CSV output file: " + path);
  }
  out << "policy,size,sample,constructors,nanos,outcome\n";
  for (const auto& r : records) {
    out << to_string(r.policy) << ',' << r.size << ',' << r.sample << ','
        << r.constructors << ',' << r.nanos << ',' << to_string(r.outcome)
        << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed while writing CSV output file: " + path);
  }
}

// ---------------------------------------------------------------------------
// Small numeric helpers for the linearity claims
// ---------------------------------------------------------------------------

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LinearFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double predicted = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - predicted) * (ys[i] - predicted);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

}  // namespace bench
}  // namespace lessarb
