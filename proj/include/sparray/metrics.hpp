#pragma once

// Synthesis quality metrics: sidelobe level via lobe segmentation, dB pattern
// deviation over a floor mask, and element-count reduction.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "array_model.hpp"
#include "core.hpp"

namespace sparray {

template <typename Scalar>
struct PatternMetrics {
  Scalar peak_sidelobe_db{};
  Scalar main_lobe_peak_u{};
  Scalar rmse_db{};
  Scalar max_dev_db{};
  int n_lobes{};
};

namespace detail {

// Lobe boundaries = local minima of |F| with plateau ties broken by the
// leftmost index, plus both grid endpoints.
template <typename Scalar>
std::vector<Index> lobe_boundaries(const Vector<Scalar>& mag) {
  const Index m = mag.size();
  std::vector<Index> bounds;
  bounds.push_back(0);
  Index j = 1;
  while (j + 1 < m) {
    if (mag[j] <= mag[j - 1] && mag[j] <= mag[j + 1]) {
      bounds.push_back(j);
      while (j + 1 < m - 1 && mag[j + 1] == mag[j]) ++j;
    }
    ++j;
  }
  bounds.push_back(m - 1);
  return bounds;
}

}  // namespace detail

/// Level in dB of the largest local maximum outside the lobe containing the
/// global peak.  Lobes are maximal runs of |F| between adjacent local minima.
template <typename Scalar>
Scalar peak_sidelobe_level(const Pattern<Scalar>& pattern) {
  if (!(pattern.peak > Scalar(0))) throw std::invalid_argument("degenerate pattern");
  const Vector<Scalar> mag = pattern.values.cwiseAbs();
  const auto bounds = detail::lobe_boundaries(mag);
  if (bounds.size() < 3) throw std::invalid_argument("no sidelobe structure");

  Index gp = 0;
  mag.maxCoeff(&gp);
  bool found = false;
  Scalar best = Scalar(0);
  for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
    const Index a = bounds[seg], b = bounds[seg + 1];
    if (a <= gp && gp <= b) continue;
    const Scalar lobe_max = mag.segment(a, b - a + 1).maxCoeff();
    if (!found || lobe_max > best) {
      best = lobe_max;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("no sidelobe structure");
  return best > Scalar(0)
             ? std::max(Scalar(20) * std::log10(best / pattern.peak), Scalar(db_report_floor))
             : Scalar(db_report_floor);
}

/// Number of lobes of |F| (segments between adjacent local minima).
template <typename Scalar>
int lobe_count(const Pattern<Scalar>& pattern) {
  return static_cast<int>(detail::lobe_boundaries(pattern.values.cwiseAbs()).size()) - 1;
}

template <typename Scalar>
struct PatternDeviation {
  Scalar rmse_db{};
  Scalar max_dev_db{};
};

/// Compares normalized dB patterns at grid points where the reference `a` is at
/// or above floor_db; deep nulls are excluded as grid-placement noise.
template <typename Scalar>
PatternDeviation<Scalar> pattern_deviation(const Pattern<Scalar>& a, const Pattern<Scalar>& b,
                                           Scalar floor_db = Scalar(-50)) {
  if (a.grid.size() != b.grid.size() || !(a.grid.u.array() == b.grid.u.array()).all())
    throw std::invalid_argument("grid mismatch");
  const Pattern<Scalar> da = to_db(a);
  const Pattern<Scalar> db = to_db(b);
  Scalar sum2 = 0, max_dev = 0;
  Index count = 0;
  for (Index j = 0; j < da.values.size(); ++j) {
    if (da.values[j] < floor_db) continue;
    const Scalar dev = std::abs(da.values[j] - db.values[j]);
    sum2 += dev * dev;
    max_dev = std::max(max_dev, dev);
    ++count;
  }
  if (count == 0) throw std::invalid_argument("no points above comparison floor");
  return {std::sqrt(sum2 / Scalar(count)), max_dev};
}

/// Element-count saving in percent, 100 (n_uniform - n_sparse) / n_uniform.
inline double element_reduction(int n_uniform, int n_sparse) {
  if (n_sparse < 1) throw std::invalid_argument("element counts must be >= 1");
  if (n_sparse > n_uniform)
    throw std::invalid_argument("sparse element count exceeds uniform count");
  return 100.0 * double(n_uniform - n_sparse) / double(n_uniform);
}

/// Aggregate metrics of `candidate` against reference `target` on a shared grid.
template <typename Scalar>
PatternMetrics<Scalar> compute_pattern_metrics(const Pattern<Scalar>& target,
                                               const Pattern<Scalar>& candidate,
                                               Scalar floor_db = Scalar(-50)) {
  PatternMetrics<Scalar> out;
  const auto dev = pattern_deviation(target, candidate, floor_db);
  out.rmse_db = dev.rmse_db;
  out.max_dev_db = dev.max_dev_db;
  out.peak_sidelobe_db = peak_sidelobe_level(candidate);
  Index gp = 0;
  candidate.values.cwiseAbs().maxCoeff(&gp);
  out.main_lobe_peak_u = candidate.grid.u[gp];
  out.n_lobes = lobe_count(candidate);
  return out;
}

}  // namespace sparray
