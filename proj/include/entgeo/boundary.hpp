#pragma once
// Geometry of the separable set along parameterized state curves: the cone
// toward the maximally mixed state, the boundary-crossing weight p_c,
// robustness scans over the family parameter q, and detection of kinks
// (slope discontinuities) in the robustness curve. A kink in R_R along a
// smooth state curve is the numerical signature of a singular point of the
// separable-set boundary.
//
// Assumption, not checked numerically: the scanned curve's tangent is never
// parallel to the direction toward white noise (the psi/phi mixture family
// satisfies this structurally), so smoothness of R_R faithfully reflects
// smoothness of the boundary.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "entgeo/entmeas.hpp"
#include "entgeo/matlib.hpp"
#include "entgeo/qdyn.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo {

/// One row of a parameter scan.
struct ScanRecord {
  double q;
  double negativity;
  double robustness;  // random robustness, = 2 * negativity
  double w_phi;       // Tr((I - 2|phi+><phi+|) rho)
  double w_psi;       // Tr((I - 2|psi+><psi+|) rho)
  double p_c;         // robustness / (1 + robustness)
};

/// A detected non-smooth point of the robustness curve.
struct KinkReport {
  double q_star;        // flagged grid point
  double jump;          // |R'(q+) - R'(q-)| estimated from flanking intervals
  double grid_spacing;
};

/// p * pi + (1-p) * rho with pi = I/d matching rho's partition.
inline DensityMatrix cone_point(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("cone_point: p must lie in [0,1], got " + std::to_string(p));
  const double d = static_cast<double>(rho.dim());
  ComplexMatrix m = (p / d) * ComplexMatrix::identity(rho.dim()) + (1.0 - p) * rho.matrix();
  return DensityMatrix(std::move(m), rho.dims());
}

/// Mixing weight at which the segment from rho to pi crosses the separable
/// boundary; recovers the robustness via R_R = p_c / (1 - p_c).
inline double crossing_pc(const DensityMatrix& rho) {
  const double r = random_robustness_closed(rho).value;
  return r / (1.0 + r);
}

enum class ScanSource { direct, channel, dynamics };

struct ScanParams {
  double q_min = 0.0;
  double q_max = 1.0;
  int steps = 201;
  ScanSource source = ScanSource::direct;
  // dynamics source only: sweep t over [0, t_max] and extract q from the
  // evolved state.
  double omega = 0.0;
  double g = 1.0;
  double t_max = 3.141592653589793;
};

namespace detail {

inline ScanRecord make_scan_record(double q, const DensityMatrix& rho) {
  const double neg = negativity(rho);
  const double rob = random_robustness_closed(rho).value;
  return ScanRecord{
      q,
      neg,
      rob,
      witness_value(family_witness(WitnessRegime::low_q), rho),
      witness_value(family_witness(WitnessRegime::high_q), rho),
      rob / (1.0 + rob),
  };
}

}  // namespace detail

/// Scans the psi/phi mixture family and returns one record per grid point,
/// q ascending. Sources: direct construction, the bit-flip channel applied
/// to |phi+><phi+|, or the swap dynamics (t swept uniformly, q extracted
/// from the evolved state, truncated to the monotone first half-period).
inline std::vector<ScanRecord> scan_family(const ScanParams& params) {
  if (!(params.q_min >= 0.0 && params.q_min < params.q_max && params.q_max <= 1.0))
    throw std::invalid_argument("scan_family: need 0 <= q_min < q_max <= 1");
  if (params.steps < 3) throw std::invalid_argument("scan_family: steps must be >= 3");

  std::vector<ScanRecord> records;
  records.reserve(static_cast<std::size_t>(params.steps));

  if (params.source == ScanSource::dynamics) {
    if (params.g == 0.0) throw std::invalid_argument("scan_family: dynamics requires g != 0");
    if (!(params.t_max > 0.0)) throw std::invalid_argument("scan_family: t_max must be > 0");

    std::vector<std::pair<double, DensityMatrix>> points;
    double prev_q = 2.0;
    for (int i = 0; i < params.steps; ++i) {
      const double t = params.t_max * static_cast<double>(i) / (params.steps - 1);
      DensityMatrix rho = evolve_swap({params.omega, params.g, t});
      const double q = q_overlap(rho);
      if (q >= prev_q) break;  // past the first half-period: q no longer decreasing
      prev_q = q;
      points.emplace_back(q, std::move(rho));
    }
    std::reverse(points.begin(), points.end());  // ascending q
    for (const auto& [q, rho] : points)
      if (q >= params.q_min && q <= params.q_max)
        records.push_back(detail::make_scan_record(q, rho));
    return records;
  }

  for (int i = 0; i < params.steps; ++i) {
    const double q =
        params.q_min + (params.q_max - params.q_min) * static_cast<double>(i) / (params.steps - 1);
    DensityMatrix rho = (params.source == ScanSource::channel)
                            ? bit_flip_channel(family_state(0.0), {q})
                            : family_state(q);
    records.push_back(detail::make_scan_record(q, rho));
  }
  return records;
}

namespace detail {

inline double grid_spacing_checked(const std::vector<ScanRecord>& records, const char* where) {
  if (records.size() < 5)
    throw std::invalid_argument(std::string(where) + ": need at least 5 records");
  const double h = records[1].q - records[0].q;
  for (std::size_t i = 1; i + 1 < records.size(); ++i)
    if (std::abs((records[i + 1].q - records[i].q) - h) > 1e-12)
      throw std::invalid_argument(std::string(where) + ": grid is not uniform within 1e-12");
  if (!(h > 0.0)) throw std::invalid_argument(std::string(where) + ": q must be ascending");
  return h;
}

}  // namespace detail

/// Flags interior grid points whose scaled second difference of the
/// robustness column exceeds threshold times the median scaled second
/// difference over the scan (plus a 1e-15 floor). The jump estimate is the
/// gap between the one-sided slopes over the flanking intervals.
inline std::vector<KinkReport> detect_kinks(const std::vector<ScanRecord>& records,
                                            double threshold) {
  const double h = detail::grid_spacing_checked(records, "detect_kinks");
  if (!(threshold > 0.0)) throw std::invalid_argument("detect_kinks: threshold must be > 0");

  const std::size_t n = records.size();
  std::vector<double> d2(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d2[i - 1] =
        std::abs(records[i - 1].robustness - 2.0 * records[i].robustness +
                 records[i + 1].robustness) /
        h;

  std::vector<double> sorted(d2);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  const double median =
      (sorted.size() % 2 == 1) ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  const double scale = threshold * (median + 1e-15);

  std::vector<KinkReport> kinks;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (d2[i - 1] > scale) kinks.push_back(KinkReport{records[i].q, d2[i - 1], h});
  return kinks;
}

/// Maximum over interior grid points of half the gap between one-sided
/// slopes of the negativity column: an estimate of max |N'(q+) - N'(q-)|/2.
/// Near zero for smooth profiles (bounded by h * max|N''|), and half the
/// slope jump at a kink.
inline double smoothness_probe(const std::vector<ScanRecord>& records) {
  const double h = detail::grid_spacing_checked(records, "smoothness_probe");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const double right = (records[i + 1].negativity - records[i].negativity) / h;
    const double left = (records[i].negativity - records[i - 1].negativity) / h;
    worst = std::max(worst, 0.5 * std::abs(right - left));
  }
  return worst;
}

}  // namespace entgeo
