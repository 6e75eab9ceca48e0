#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace slicepi::cli {

struct Row {
  std::string check_id;
  std::string anchor;  // the identity being checked, in words
  int resolution = 0;  // planar cells per axis; 0 for grid-free checks
  double error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string name;
  std::vector<Row> rows;
  double seconds = 0.0;
  bool passed() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

// check_id,anchor,resolution,error,tol,pass with fixed number formatting
std::string format_csv(const SuiteReport& report);
void write_text(const std::string& path, const std::string& text);

}  // namespace slicepi::cli
