#include "modedec/resonance.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace modedec {

namespace {

// Coefficient sets in ascending order so odometer enumeration is lexicographic.
constexpr std::array<int, 3> kLower{-1, 0, 1};
constexpr std::array<int, 2> kPivot{-2, 2};
constexpr std::array<int, 7> kUpper{-3, -2, -1, 0, 1, 2, 3};

void check_upsilon(std::span<const double> upsilon) {
  if (upsilon.empty()) throw std::invalid_argument("resonance: empty frequency list");
  for (std::size_t i = 0; i < upsilon.size(); ++i) {
    if (!(upsilon[i] > 0.0) || !std::isfinite(upsilon[i])) {
      throw std::invalid_argument("resonance: frequencies must be positive and finite");
    }
    if (i > 0 && !(upsilon[i] < upsilon[i - 1])) {
      throw std::invalid_argument("resonance: frequencies must be strictly decreasing");
    }
  }
}

// Walks every assignment in tie-break order and hands it to `visit`.
template <typename Visit>
void enumerate(std::size_t n, Visit&& visit) {
  GapAssignment g;
  for (std::size_t k = 1; k <= n; ++k) {
    g.k = k;
    // Digits index the sets: positions [0, k-1) lower, k-1 pivot, rest upper.
    std::vector<std::size_t> digit(n, 0);
    auto radix = [k](std::size_t pos) -> std::size_t {
      if (pos + 1 < k) return kLower.size();
      if (pos + 1 == k) return kPivot.size();
      return kUpper.size();
    };
    for (;;) {
      g.c.resize(k - 1);
      g.d.resize(n - k);
      for (std::size_t pos = 0; pos < n; ++pos) {
        if (pos + 1 < k) {
          g.c[pos] = kLower[digit[pos]];
        } else if (pos + 1 == k) {
          g.a = kPivot[digit[pos]];
        } else {
          g.d[pos - k] = kUpper[digit[pos]];
        }
      }
      visit(g);

      std::size_t pos = n;
      bool carried_out = true;
      while (pos > 0) {
        --pos;
        if (++digit[pos] < radix(pos)) {
          carried_out = false;
          break;
        }
        digit[pos] = 0;
      }
      if (carried_out) break;
    }
  }
}

}  // namespace

double lattice_offset(const GapAssignment& g, std::span<const double> upsilon) {
  if (g.k < 1 || g.k > upsilon.size() || g.c.size() != g.k - 1 ||
      g.d.size() != upsilon.size() - g.k) {
    throw std::invalid_argument("lattice_offset: assignment does not match frequency list");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < g.k; ++j) sum += g.c[j] * upsilon[j];
  sum += g.a * upsilon[g.k - 1];
  for (std::size_t j = 0; j < g.d.size(); ++j) sum += g.d[j] * upsilon[g.k + j];
  return sum;
}

std::size_t lattice_size(std::size_t n) {
  std::size_t total = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t count = kPivot.size();
    for (std::size_t j = 1; j < k; ++j) count *= kLower.size();
    for (std::size_t j = k; j < n; ++j) count *= kUpper.size();
    total += count;
  }
  return total;
}

GapResult min_gap(std::span<const double> upsilon, double threshold) {
  check_upsilon(upsilon);
  GapResult best;
  best.delta_min = INFINITY;
  enumerate(upsilon.size(), [&](const GapAssignment& g) {
    const double gap = std::abs(lattice_offset(g, upsilon));
    if (gap < threshold) ++best.near_resonances;
    if (gap < best.delta_min) {
      best.delta_min = gap;
      best.assignment = g;
    }
  });
  return best;
}

std::vector<GapAssignment> gap_report(std::span<const double> upsilon, double threshold) {
  check_upsilon(upsilon);
  std::vector<GapAssignment> hits;
  enumerate(upsilon.size(), [&](const GapAssignment& g) {
    if (std::abs(lattice_offset(g, upsilon)) < threshold) hits.push_back(g);
  });
  return hits;
}

}  // namespace modedec
