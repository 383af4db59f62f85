#ifndef PAMPA_VERIFY_HPP_
#define PAMPA_VERIFY_HPP_

#include "pampa/config.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pampa {

/// Random W with entries in [-range, range] pushed through the inverse
/// transform; every result must pass in_domain with zero floors.
struct TransformDomainCheck {
  long long samples = 0;
  long long failures = 0;
  double min_density = 0.0;
  double min_pressure = 0.0;
};
TransformDomainCheck check_transform_domain(SystemKind kind, long long samples, std::uint64_t seed,
                                            double range = 50.0);

/// Admissible U -> W -> U. States are drawn with rho, p log-uniform in
/// [1e-6, 1e6], Mach number in [-10, 10] and, for MHD, |B_x|, |B_y|, |B_z| <= 10 sqrt(p),
/// so the pressure is not lost to cancellation in E.
struct RoundTripCheck {
  long long samples = 0;
  double max_relative_error = 0.0;  // over primitive components
};
RoundTripCheck check_round_trip(SystemKind kind, long long samples, std::uint64_t seed);

/// Random limiter calls: the output triple must reproduce the cell average
/// through the 1/6, 4/6, 1/6 weights and lie in G.
struct CadCheck {
  long long samples = 0;
  long long out_of_domain = 0;
  double max_relative_error = 0.0;
};
CadCheck check_cad(SystemKind kind, long long samples, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::string system = "all";  // splitting: burgers, euler, mhd or all
  long long samples = 100000;
  double eps = 0.1;                  // thm43
  std::vector<std::string> presets;  // sweep; defaults to jiang_shu and burgers
  std::function<void(const std::string&)> log;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs one suite (splitting, thm43, sweep, transform, limiter) or all of them.
std::vector<SuiteResult> verify(const std::string& suite, const VerifyOptions& options = {});

std::vector<std::string> verify_suites();

}  // namespace pampa

#endif  // PAMPA_VERIFY_HPP_
