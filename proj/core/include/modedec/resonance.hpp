#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace modedec {

/// One point of the resonance lattice
///   Delta = sum_{j<k} c_j u_j + a_k u_k + sum_{j>k} d_j u_j
/// with c_j in {0,+-1}, a_k in {+-2}, d_j in {0,+-1,+-2,+-3}.
/// `k` is 1-based; `c` has k-1 entries and `d` has N-k entries.
struct GapAssignment {
  std::size_t k = 1;
  std::vector<int> c;
  int a = 2;
  std::vector<int> d;

  friend bool operator==(const GapAssignment&, const GapAssignment&) = default;
};

/// Signed Delta of `assignment` for the frequency list `upsilon` (rad/s).
double lattice_offset(const GapAssignment& assignment, std::span<const double> upsilon);

struct GapResult {
  double delta_min = 0.0;  // rad/s, smallest |Delta|
  GapAssignment assignment;
  std::size_t near_resonances = 0;  // assignments with |Delta| < threshold
};

/// Exhaustive minimum of |Delta| over every k and every coefficient tuple.
/// Ties go to the smallest k, then the lexicographically smallest tuple
/// (c..., a, d...). Throws std::invalid_argument unless `upsilon` is
/// non-empty, positive and strictly decreasing.
GapResult min_gap(std::span<const double> upsilon, double threshold = 0.0);

/// Every assignment with |Delta| < threshold, in enumeration order.
std::vector<GapAssignment> gap_report(std::span<const double> upsilon, double threshold);

/// Size of the lattice searched for N frequencies.
std::size_t lattice_size(std::size_t n_frames);

}  // namespace modedec
