#pragma once

// Run configuration: flat `key = value` lines grouped under `[section]`
// headers, `#` comments, lists as comma-separated values.
//
//   seed = 7
//   [domain]
//   shape = rectangle        # or disk (uc, vc, radius)
//   u0 = 0  u1 = 1  v0 = 1  v1 = 2    (one per line)
//   [study]
//   resolutions = 32, 64
//   [tolerances]
//   bpf.bpf1_poly = 1e-2

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicepi/geometry.hpp"

namespace slicepi::cli {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& file, int line, const std::string& msg);
  int line;
};

// Raw parse: "section.key" -> (value, line).
class KeyValueFile {
public:
  static KeyValueFile parse(const std::string& text, const std::string& name = "<config>");
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;
  std::vector<std::string> strings(const std::string& key, const std::vector<std::string>& fallback) const;
  // keys under "section."
  std::vector<std::string> keys(const std::string& section) const;
  // every key must be in `known` (section wildcards "tolerances.*" allowed)
  void require_known(const std::vector<std::string>& known) const;
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

private:
  struct Entry {
    std::string value;
    int line;
  };
  std::string name_;
  std::map<std::string, Entry> entries_;
};

struct DomainSpec {
  PlanarRegion region = PlanarRegion::rectangle(0.0, 1.0, 1.0, 2.0);
  int m = 2;
  Resolution res{};
};

struct BeltramiSpec {
  std::vector<double> f;           // constant coefficient (2^m values, or one real value)
  std::optional<double> product = 0.5;  // if set, f is the real constant product / ||Pi||
  std::vector<double> phi{0.0, 1.0};  // real coefficients of phi(q) = sum q^n a_n
  double tol = 1e-10;
  int max_iter = 200;
};

struct RunConfig {
  std::uint64_t seed = 20240611;
  std::string outdir = ".";
  DomainSpec domain;
  std::vector<int> resolutions{64, 128};
  std::vector<int> slice_resolutions{64, 128};
  int points = 20;
  double margin = 0.15;
  std::vector<int> algebra_dims{2, 3, 4};
  int cases = 1000;
  std::vector<int> norm_dims{2, 3};
  std::vector<std::string> norm_shapes{"rectangle", "disk"};
  std::vector<int> norm_resolutions{32, 64};
  int norm_sphere_n = 8;  // sphere nodes for the m >= 3 norm runs
  BeltramiSpec beltrami;
  std::map<std::string, double> tolerances;  // check id -> tolerance override
};

RunConfig load_config(const KeyValueFile& kv);
PlanarRegion catalog_region(const std::string& shape);

}  // namespace slicepi::cli
