#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace slicepi::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool to_double(const std::string& s, double& x) {
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  return ec == std::errc() && p == e;
}

}  // namespace

ConfigError::ConfigError(const std::string& file, int line_, const std::string& msg)
    : std::runtime_error(file + (line_ > 0 ? ":" + std::to_string(line_) : std::string()) + ": " + msg),
      line(line_) {}

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& name) {
  KeyValueFile kv;
  kv.name_ = name;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) throw ConfigError(name, line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(name, line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(name, line, "empty key");
    if (value.empty()) throw ConfigError(name, line, "empty value for '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (kv.entries_.count(full)) throw ConfigError(name, line, "duplicate key '" + full + "'");
    kv.entries_[full] = {value, line};
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

void KeyValueFile::fail(const std::string& key, const std::string& msg) const {
  auto it = entries_.find(key);
  throw ConfigError(name_, it == entries_.end() ? 0 : it->second.line, key + ": " + msg);
}

double KeyValueFile::number(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  double x;
  if (!to_double(*v, x)) fail(key, "not a number: '" + *v + "'");
  return x;
}

int KeyValueFile::integer(const std::string& key, int fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  int x;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
  if (ec != std::errc() || p != v->data() + v->size()) fail(key, "not an integer: '" + *v + "'");
  return x;
}

std::vector<double> KeyValueFile::numbers(const std::string& key, const std::vector<double>& fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const std::string& s : split_list(*v)) {
    double x;
    if (!to_double(s, x)) fail(key, "not a number: '" + s + "'");
    out.push_back(x);
  }
  return out;
}

std::vector<int> KeyValueFile::integers(const std::string& key, const std::vector<int>& fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::vector<int> out;
  for (const std::string& s : split_list(*v)) {
    int x;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size()) fail(key, "not an integer: '" + s + "'");
    out.push_back(x);
  }
  return out;
}

std::vector<std::string> KeyValueFile::strings(const std::string& key,
                                               const std::vector<std::string>& fallback) const {
  auto v = get(key);
  return v ? split_list(*v) : fallback;
}

std::vector<std::string> KeyValueFile::keys(const std::string& section) const {
  std::vector<std::string> out;
  const std::string prefix = section + ".";
  for (const auto& [k, e] : entries_)
    if (k.compare(0, prefix.size(), prefix) == 0) out.push_back(k.substr(prefix.size()));
  return out;
}

void KeyValueFile::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, e] : entries_) {
    const bool ok = std::any_of(known.begin(), known.end(), [&k](const std::string& pat) {
      if (pat.size() > 2 && pat.compare(pat.size() - 2, 2, ".*") == 0)
        return k.compare(0, pat.size() - 1, pat, 0, pat.size() - 1) == 0;
      return k == pat;
    });
    if (!ok) throw ConfigError(name_, e.line, "unknown key '" + k + "'");
  }
}

PlanarRegion catalog_region(const std::string& shape) {
  if (shape == "rectangle") return PlanarRegion::rectangle(0.0, 1.0, 1.0, 2.0);
  if (shape == "disk") return PlanarRegion::disk(0.0, 2.0, 1.0);
  throw std::invalid_argument("unknown catalog shape '" + shape + "'");
}

RunConfig load_config(const KeyValueFile& kv) {
  kv.require_known({"seed", "outdir", "domain.shape", "domain.u0", "domain.u1", "domain.v0", "domain.v1",
                    "domain.uc", "domain.vc", "domain.radius", "domain.m", "domain.planar_n",
                    "domain.boundary_n", "domain.sphere_n", "study.resolutions", "study.slice_resolutions",
                    "study.points", "study.margin", "clifford.dims", "clifford.cases", "norm.dims",
                    "norm.shapes", "norm.resolutions", "norm.sphere_n", "beltrami.f", "beltrami.product",
                    "beltrami.phi", "beltrami.tol", "beltrami.max_iter", "tolerances.*"});
  RunConfig c;
  if (auto s = kv.get("seed")) {
    std::uint64_t x;
    auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), x);
    if (ec != std::errc() || p != s->data() + s->size()) kv.fail("seed", "not an unsigned integer");
    c.seed = x;
  }
  if (auto s = kv.get("outdir")) c.outdir = *s;

  const std::string shape = kv.get("domain.shape").value_or("rectangle");
  try {
    if (shape == "rectangle")
      c.domain.region = PlanarRegion::rectangle(kv.number("domain.u0", 0.0), kv.number("domain.u1", 1.0),
                                                kv.number("domain.v0", 1.0), kv.number("domain.v1", 2.0));
    else if (shape == "disk")
      c.domain.region = PlanarRegion::disk(kv.number("domain.uc", 0.0), kv.number("domain.vc", 2.0),
                                           kv.number("domain.radius", 1.0));
    else
      kv.fail("domain.shape", "expected rectangle or disk");
  } catch (const DomainError& e) {
    kv.fail("domain.shape", e.what());
  }
  c.domain.m = kv.integer("domain.m", 2);
  if (c.domain.m < 1 || c.domain.m > 6) kv.fail("domain.m", "m must lie in 1..6");
  c.domain.res.planar_n = kv.integer("domain.planar_n", 64);
  c.domain.res.boundary_n = kv.integer("domain.boundary_n", 16);
  c.domain.res.sphere_n = kv.integer("domain.sphere_n", 16);

  c.resolutions = kv.integers("study.resolutions", c.resolutions);
  c.slice_resolutions = kv.integers("study.slice_resolutions", c.slice_resolutions);
  c.norm_resolutions = kv.integers("norm.resolutions", c.norm_resolutions);
  for (const auto& [key, r] : {std::pair<const char*, const std::vector<int>&>{"study.resolutions", c.resolutions},
                               {"study.slice_resolutions", c.slice_resolutions},
                               {"norm.resolutions", c.norm_resolutions}}) {
    if (r.empty()) kv.fail(key, "empty list");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] < 4) kv.fail(key, "resolutions must be >= 4");
      if (i > 0 && r[i] <= r[i - 1]) kv.fail(key, "resolutions must be strictly increasing");
    }
  }
  c.points = kv.integer("study.points", c.points);
  if (c.points < 1) kv.fail("study.points", "need at least one check point");
  c.margin = kv.number("study.margin", c.margin);
  c.algebra_dims = kv.integers("clifford.dims", c.algebra_dims);
  c.cases = kv.integer("clifford.cases", c.cases);
  c.norm_dims = kv.integers("norm.dims", c.norm_dims);
  c.norm_shapes = kv.strings("norm.shapes", c.norm_shapes);
  c.norm_sphere_n = kv.integer("norm.sphere_n", c.norm_sphere_n);
  if (c.norm_sphere_n < 2) kv.fail("norm.sphere_n", "need at least 2 sphere nodes");
  for (const std::string& s : c.norm_shapes)
    if (s != "rectangle" && s != "disk") kv.fail("norm.shapes", "unknown shape '" + s + "'");

  c.beltrami.f = kv.numbers("beltrami.f", {});
  if (kv.has("beltrami.f") && kv.has("beltrami.product")) kv.fail("beltrami.f", "give either f or product, not both");
  if (kv.has("beltrami.f")) c.beltrami.product.reset();
  c.beltrami.product = kv.has("beltrami.product") ? kv.number("beltrami.product", 0.5) : c.beltrami.product;
  if (!c.beltrami.f.empty() && c.beltrami.f.size() != 1 && c.beltrami.f.size() != (std::size_t{1} << c.domain.m))
    kv.fail("beltrami.f", "expected 1 or 2^m coefficients");
  c.beltrami.phi = kv.numbers("beltrami.phi", c.beltrami.phi);
  c.beltrami.tol = kv.number("beltrami.tol", c.beltrami.tol);
  c.beltrami.max_iter = kv.integer("beltrami.max_iter", c.beltrami.max_iter);

  for (const std::string& k : kv.keys("tolerances")) {
    const double t = kv.number("tolerances." + k, 0.0);
    if (!(t >= 0.0)) kv.fail("tolerances." + k, "tolerance must be >= 0");
    c.tolerances[k] = t;
  }
  return c;
}

}  // namespace slicepi::cli
