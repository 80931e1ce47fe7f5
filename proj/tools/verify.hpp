#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stplus/matgrp.hpp"

namespace stp::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

// A single orthogonal target; when unset, each suite runs its default list.
struct Target {
  FieldPtr field;
  int dim = 0;
  FormType type = FormType::Odd;
};

struct VerifyConfig {
  std::optional<Target> target;
  EnumOptions opts;
};

const std::vector<std::string>& suite_names();  // without "all"
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg);

}  // namespace stp::cli
