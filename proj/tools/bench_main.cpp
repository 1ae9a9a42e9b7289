// Benchmark driver contrasting generation policies on the Tree fixture.
//
//   bench --policy budgeted --sizes 1000,10000,100000 --samples 20 \
//         --seed 42 --step-cap 1000000 --csv out.csv
//
// Exit codes: 0 once the run completes (whatever the per-sample outcomes),
// 2 on bad flags, 1 on I/O errors.

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lessarb/bench.hpp"

namespace {

using lessarb::bench::Outcome;
using lessarb::bench::Policy;
using lessarb::bench::RunRecord;

Policy parse_policy(const std::string& name) {
  if (name == "naive") return Policy::kNaive;
  if (name == "sizediv") return Policy::kSizeDivision;
  return Policy::kBudgeted;
}

void print_summary(const std::vector<RunRecord>& records) {
  std::map<std::int64_t, std::vector<const RunRecord*>> by_size;
  for (const auto& r : records) by_size[r.size].push_back(&r);
  for (const auto& [size, rows] : by_size) {
    std::vector<double> constructors;
    std::vector<double> nanos;
    std::int64_t capped = 0;
    std::int64_t failed = 0;
    for (const auto* r : rows) {
      constructors.push_back(static_cast<double>(r->constructors));
      nanos.push_back(static_cast<double>(r->nanos));
      if (r->outcome == Outcome::kStepCapped) ++capped;
      if (r->outcome == Outcome::kFailed) ++failed;
    }
    std::cout << "size " << size << ": " << rows.size() << " samples, median "
              << static_cast<std::uint64_t>(lessarb::bench::median(constructors))
              << " constructors, median "
              << static_cast<std::uint64_t>(lessarb::bench::median(nanos))
              << " ns";
    if (capped > 0) std::cout << ", " << capped << " step-capped";
    if (failed > 0) std::cout << ", " << failed << " failed";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree generation benchmark: naive vs. size-division vs. budgeted"};

  std::string policy_name;
  std::vector<std::int64_t> sizes;
  std::int64_t samples = 100;
  std::uint64_t seed = 42;
  std::uint64_t step_cap = 1000000;
  std::string csv_path;
  std::int64_t divisor = 2;

  app.add_option("--policy", policy_name, "generation policy")
      ->required()
      ->check(CLI::IsMember({"naive", "sizediv", "budgeted"}));
  app.add_option("--sizes", sizes,
                 "comma-separated size (budget) parameters, e.g. 10,100,1000")
      ->required()
      ->delimiter(',');
  app.add_option("--samples", samples, "samples per size")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "base PRNG seed");
  app.add_option("--step-cap", step_cap,
                 "constructor cap for the naive policy (it diverges otherwise)");
  app.add_option("--csv", csv_path, "output CSV path")->required();
  app.add_option("--divisor", divisor, "size divisor for the sizediv policy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto records = lessarb::bench::run_bench(
        parse_policy(policy_name), sizes, samples, seed, step_cap, divisor);
    lessarb::bench::emit_csv(records, csv_path);
    print_summary(records);
    std::cout << "wrote " << records.size() << " records to " << csv_path << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad flags: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
