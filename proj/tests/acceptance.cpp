// Acceptance runner. With no arguments runs every criterion; otherwise runs
// the criteria whose numbers are given. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fail.

#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "hcount/verify.hpp"

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  hcount::verify::Options opt;
  int failed = 0, ran = 0;
  for (const auto& c : hcount::verify::criteria(opt)) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto r = hcount::verify::run_criterion(c);
    std::cout << hcount::verify::format_result(r) << std::endl;
    ++ran;
    if (!r.passed) ++failed;
  }
  std::cout << ran - failed << "/" << ran << " criteria passed" << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
