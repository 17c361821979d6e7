#pragma once

#include <string>
#include <vector>

namespace genhilbert::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriteria = 11;

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

// "PASS  3  closed form {0,inf}  (0.01 s)  max err 2.2e-16"
std::string format_line(const CriterionResult& r);

}  // namespace genhilbert::acceptance
