#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnoise/fock.hpp"
#include "fnoise/mfree.hpp"

namespace fnoise {

/// Outcome of a randomized or exhaustive comparison sweep.
struct SweepResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double max_residual = 0;
  double tolerance = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> examples;  // first few failing cases
  std::vector<std::string> notes;     // informational lines

  bool passed() const { return cases > 0 && failures == 0; }
  void record(double residual, const std::string& label);
};

/// Random (sigma, tau, k, l, f, g) cases over filters all, empty, p2, p3, {2}, {1,3}.
SweepResult sweep_commutation(const FockSpace& space, int cases, std::uint64_t seed,
                            double tolerance);

/// Random filtered creation/annihilation words against pairing_expectation.
SweepResult sweep_pairing(const FockSpace& space, int cases, int max_length,
                              std::uint64_t seed, double tolerance);

/// Every color/filter word of length 1..max_n over colors 1..M and the given
/// filters, at each time t: Lambda-word expectation against sum t^{b(R)}.
SweepResult sweep_poisson_noise(const FockSpace& space, int max_n, const std::vector<Rational>& times,
                              const std::vector<Filter>& filters, double tolerance);

SweepResult sweep_cuntz(const FockSpace& space, const std::vector<MParameter>& ms, int per_m,
                        std::uint64_t seed, double tolerance);

/// Orthocomplement reading; the literal reading is reported in the examples only.
SweepResult sweep_resolution(const FockSpace& space, const std::vector<MParameter>& ms,
                             double tolerance);

/// semicircle_moment(m, p) against mfree_sample_moment(m, 2p, CLT).
SweepResult sweep_semicircle(const FockSpace& space, const std::vector<int>& ms, int max_p,
                             double tolerance);

/// D-basis states spread over grades, each with room for at least one creation.
std::vector<std::size_t> sample_sectors(const FockSpace& space, int count);

}  // namespace fnoise
