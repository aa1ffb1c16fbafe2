// Acceptance runner: one PASS/FAIL line per criterion. With arguments, runs
// only the named criteria. Exit code 3 if anything fails.
#include <iostream>
#include <string>
#include <vector>

#include "hypertree/error.hpp"
#include "hypertree/verify.hpp"

int main(int argc, char** argv) {
  using namespace hypertree::verify;
  std::vector<std::string> names(argv + 1, argv + argc);
  if (names.size() == 1 && names[0] == "--list") {
    for (const auto& c : criteria()) std::cout << c.name << '\t' << c.suite << '\t' << c.description << '\n';
    return 0;
  }
  if (names.empty()) {
    for (const auto& c : criteria()) names.push_back(c.name);
  }
  bool all = true;
  for (const auto& name : names) {
    try {
      const CriterionResult r = run_criterion(name);
      std::cout << format_line(r) << std::endl;
      all = all && r.pass;
    } catch (const hypertree::ValidationError& e) {
      std::cerr << e.what() << '\n';
      return 1;
    }
  }
  return all ? 0 : 3;
}
