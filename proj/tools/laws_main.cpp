// Run the shipped law suites over the bundled instances and fixtures.
// Exit code 0 when every law passes, 1 otherwise.

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "lessarb/lessarb.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Property-law harness for the bundled generator instances"};

  std::uint64_t seed = 42;
  std::uint64_t samples = 0;  // 0: per-law defaults (100 shrink, 1000 cheapest)
  app.add_option("--seed", seed, "base PRNG seed");
  app.add_option("--samples", samples, "override per-law sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  using namespace lessarb;
  namespace fx = lessarb::fixtures;

  const ShapeRegistry registry = fx::register_fixtures();

  auto tree = make_subject(registry.generator<fx::Tree>("Tree"));
  auto expr = make_subject(registry.generator<fx::Expr>("Expr"));
  auto stmt = make_subject(registry.generator<fx::Stmt>("Stmt"));

  std::vector<std::pair<std::string, LawSuite>> suites;
  suites.emplace_back("Tree", arbitrary_laws(tree));
  suites.emplace_back("Tree", less_arbitrary_laws<fx::Tree>(tree, fx::is_leaf));
  suites.emplace_back("Expr", arbitrary_laws(expr));
  suites.emplace_back("Expr", less_arbitrary_laws<fx::Expr>(expr, fx::is_lit));
  suites.emplace_back("Stmt", arbitrary_laws(stmt));
  suites.emplace_back("Stmt", less_arbitrary_laws<fx::Stmt>(stmt, fx::is_lit_stmt));

  suites.emplace_back("Int", arbitrary_laws(make_subject(flat_gen<std::int64_t>())));
  suites.emplace_back("Bool", arbitrary_laws(make_subject(flat_gen<bool>())));
  suites.emplace_back("Char", arbitrary_laws(make_subject(flat_gen<char>())));
  suites.emplace_back("Double", arbitrary_laws(make_subject(flat_gen<double>())));
  suites.emplace_back("Integer", arbitrary_laws(make_subject(gen_big_int())));
  suites.emplace_back("Scientific", arbitrary_laws(make_subject(gen_scientific())));
  suites.emplace_back("Text", arbitrary_laws(make_subject(gen_text())));
  suites.emplace_back("[Int]",
                      arbitrary_laws(make_subject(gen_vector(flat_gen<std::int64_t>()))));
  suites.emplace_back("Set Int",
                      arbitrary_laws(make_subject(gen_set(flat_gen<std::int64_t>()))));
  suites.emplace_back(
      "Map Int Text",
      arbitrary_laws(make_subject(gen_map(flat_gen<std::int64_t>(), gen_text()))));
  suites.emplace_back(
      "(Int, Bool)",
      arbitrary_laws(make_subject(gen_pair(flat_gen<std::int64_t>(), flat_gen<bool>()))));

  const auto reports = run_laws(suites, seed, samples);
  print_reports(std::cout, reports);
  return all_passed(reports) ? 0 : 1;
}
