// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Exit code = number of failures.

#include <iostream>

#include "linefront/selftest.hpp"

int main() {
  std::cout << "linefront acceptance suite\n"
            << "--------------------------\n";
  const auto results = linefront::selftest::run_all(&std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << "--------------------------\n"
            << (results.size() - failures) << "/" << results.size()
            << " criteria passed\n";
  return failures;
}
