#pragma once

#include <cstdint>
#include <functional>
#include <pthread.h>
#include <stdexcept>
#include <vector>

namespace test_support {

/// Pearson chi-square statistic for observed counts against expected
/// probabilities.
inline double chi_square(const std::vector<std::uint64_t>& observed,
                         const std::vector<double>& expected_probs) {
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

/// Upper critical values at significance 0.001.
inline double chi_square_critical(std::size_t degrees_of_freedom) {
  static const double kCritical[] = {0,      10.828, 13.816, 16.266,
                                     18.467, 20.515, 22.458, 24.322,
                                     26.124, 27.877};
  if (degrees_of_freedom == 0 || degrees_of_freedom > 9) {
    throw std::out_of_range("no critical value tabulated");
  }
  return kCritical[degrees_of_freedom];
}

inline bool uniform_by_chi_square(const std::vector<std::uint64_t>& observed) {
  const std::vector<double> probs(observed.size(),
                                  1.0 / static_cast<double>(observed.size()));
  return chi_square(observed, probs) <
         chi_square_critical(observed.size() - 1);
}

/// Run `fn` on a thread with a large stack. The cheapest-path loop-breaker
/// guard can legitimately recurse (floor magnitude) levels deep before it
/// trips, which outgrows the default stack at the stock -10000 floor.
inline void run_with_big_stack(const std::function<void()>& fn,
                               std::size_t stack_bytes = 512 * 1024 * 1024) {
  struct Call {
    const std::function<void()>* fn;
  } call{&fn};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, stack_bytes);
  pthread_t thread;
  const int rc = pthread_create(
      &thread, &attr,
      [](void* raw) -> void* {
        (*static_cast<Call*>(raw)->fn)();
        return nullptr;
      },
      &call);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("cannot start big-stack thread");
  pthread_join(thread, nullptr);
}

}  // namespace test_support
