#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace bkv {

// Parsed command line for one invocation. run_command validates, computes,
// writes output files atomically, and throws bkv::Error subclasses on
// failure; the binary maps those to exit codes.
struct RunConfig {
  std::string command;  // expand | hecke | lift | signs | satotate | density
  std::string form;     // catalog label or path to a coefficient file
  long long t = 1;
  bool t_set = false;
  long long prec = 0;
  long long x_max = 100000;
  long long n_max = 100000;
  long long hecke_p = 0;
  std::vector<long long> checkpoints;  // empty: powers of 10 from 1000
  std::vector<double> z_grid;          // empty: 1.5, 1.1, 1.01, 1.001
  std::string mode = "primes";         // signs: primes | all
  std::string dd_set = "nonzero";      // density: nonzero | pos | neg
  bool negate = false;
  std::string out;  // path; for density, a prefix for _dd.csv / _reg.csv
  std::ostream* log = &std::cout;
};

void run_command(const RunConfig& cfg);

// 12-significant-digit float formatting used by every CSV writer.
std::string format_float(double v);

std::vector<long long> default_checkpoints(long long limit);

}  // namespace bkv
