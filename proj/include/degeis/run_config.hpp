// Flat key = value run configuration with a canonical serialization:
// every key is written in a fixed order, doubles with 17 significant digits,
// so serialize(parse(serialize(c))) == serialize(c) byte for byte.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace degeis {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;             // verify-identities, compare-evaluators, ...
  int n = 0;                       // 0 selects the command default
  std::uint64_t seed = 1;
  std::int64_t samples = 0;        // 0 selects the command default
  int threads = 0;                 // 0 selects DEGEIS_THREADS or hardware concurrency
  std::vector<double> s;           // empty, or {re, im}
  std::vector<double> z_x;         // x_{i,j} in row-major order
  std::vector<double> z_y;         // y_1, ..., y_{n-1}
  int lattice_cutoff = 0;          // R for the lattice sum; 0 selects the default
  int grid = 64;                   // torus grid per axis for constant terms
  std::vector<double> t_grid;
  std::vector<double> box_a_x;     // lo, hi pairs; missing pairs default to [-1/2, 1/2]
  std::vector<double> box_a_y;
  std::vector<double> box_b_x;
  std::vector<double> box_b_y;
  int stade_count = 20;
  int ramanujan_count = 10;
  std::int64_t ramanujan_terms = 100000;
  std::vector<double> stade_extra; // groups of six: mu re/im, nu re/im, s re/im
  std::vector<double> eta;         // lo, hi, power of the polynomial bump
  double tolerance = 0.0;          // 0 selects the per-check default
  double ratio_tolerance = 0.0;
  std::string out;

  std::string serialize() const;
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  // FNV-1a of the serialization with the thread count cleared.
  std::uint64_t hash() const;
};

// %.17g formatting shared by the config and CSV writers.
std::string format_double(double v);

}  // namespace degeis
