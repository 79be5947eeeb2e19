#pragma once

// Linear array geometry and array-factor evaluation.  Positions are stored in
// wavelengths, so the phase of an element at d seen from direction u = cos(theta)
// is 2*pi*d*u and the wavenumber never appears explicitly.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace sparray {

inline constexpr double db_report_floor = -120.0;  // clamp for normalized dB output

/// One radiating element: position d/lambda, real amplitude, phase in radians.
template <typename Scalar>
struct ElementPlacement {
  Scalar position{};
  Scalar excitation{};
  Scalar phase{};
};

/// Mirror-symmetric array stored as its non-negative half.  The evaluation
/// convention doubles every half term, including a d = 0 element when present;
/// the physical element count subtracts the center duplicate.
template <typename Scalar>
struct SymmetricArray {
  std::vector<ElementPlacement<Scalar>> half_elements;
  bool has_center_element = false;

  SymmetricArray() = default;

  explicit SymmetricArray(std::vector<ElementPlacement<Scalar>> half)
      : half_elements(std::move(half)) {
    if (half_elements.empty()) throw std::invalid_argument("empty half-array");
    Scalar prev = Scalar(-1);
    for (const auto& e : half_elements) {
      if (!(e.position >= Scalar(0)))
        throw std::invalid_argument("half-array position must be >= 0");
      if (!(e.position > prev))
        throw std::invalid_argument("half-array positions must be strictly increasing");
      if (!std::isfinite(static_cast<double>(e.excitation)))
        throw std::invalid_argument("invalid excitation");
      prev = e.position;
    }
    has_center_element = half_elements.front().position == Scalar(0);
  }

  int physical_element_count() const {
    return 2 * static_cast<int>(half_elements.size()) - (has_center_element ? 1 : 0);
  }
};

/// Ordered sample directions in u = cos(theta) space.
template <typename Scalar>
struct AngleGrid {
  Vector<Scalar> u;

  AngleGrid() = default;

  explicit AngleGrid(Vector<Scalar> values) : u(std::move(values)) {
    if (u.size() < 2) throw std::invalid_argument("angle grid needs at least 2 samples");
    for (Index j = 0; j < u.size(); ++j) {
      if (!(u[j] >= Scalar(-1) && u[j] <= Scalar(1)))
        throw std::invalid_argument("angle grid values must lie in [-1, 1]");
      if (j > 0 && !(u[j] > u[j - 1]))
        throw std::invalid_argument("angle grid must be strictly increasing");
    }
  }

  static AngleGrid uniform(Index m, Scalar lo = Scalar(0), Scalar hi = Scalar(1)) {
    if (m < 2) throw std::invalid_argument("angle grid needs at least 2 samples");
    return AngleGrid(Vector<Scalar>::LinSpaced(m, lo, hi));
  }

  Index size() const { return u.size(); }
};

/// Sampled array factor on an AngleGrid.  Values are linear field samples,
/// signed when the array is phase-coherent; peak = max |F|.
template <typename Scalar>
struct Pattern {
  AngleGrid<Scalar> grid;
  Vector<Scalar> values;
  Scalar peak{};
};

namespace detail {

template <typename Scalar>
Pattern<Scalar> make_pattern(AngleGrid<Scalar> grid, Vector<Scalar> values) {
  Pattern<Scalar> p;
  p.peak = values.size() ? values.cwiseAbs().maxCoeff() : Scalar(0);
  p.grid = std::move(grid);
  p.values = std::move(values);
  return p;
}

}  // namespace detail

/// Full array factor F(u) = sum_i R_i exp(j(2 pi d_i u + phase_i)) over elements
/// with signed positions.  When the set is phase-symmetric the imaginary part
/// vanishes (<= 1e-12 * peak) and the signed real part is returned; otherwise
/// the magnitude is returned.
template <typename Scalar>
Pattern<Scalar> array_factor_full(std::span<const ElementPlacement<Scalar>> elements,
                                  const AngleGrid<Scalar>& grid) {
  if (elements.empty()) throw std::invalid_argument("no elements");
  for (const auto& e : elements)
    if (!std::isfinite(static_cast<double>(e.excitation)))
      throw std::invalid_argument("invalid excitation");

  const Index m = grid.size();
  Vector<std::complex<Scalar>> acc = Vector<std::complex<Scalar>>::Zero(m);
  for (const auto& e : elements) {
    for (Index j = 0; j < m; ++j) {
      const Scalar ang = Scalar(two_pi) * e.position * grid.u[j] + e.phase;
      acc[j] += e.excitation * std::complex<Scalar>(std::cos(ang), std::sin(ang));
    }
  }
  const Scalar mag_peak = acc.cwiseAbs().maxCoeff();
  const Scalar imag_peak = acc.imag().cwiseAbs().maxCoeff();
  Vector<Scalar> values = (imag_peak <= Scalar(1e-12) * mag_peak || mag_peak == Scalar(0))
                              ? Vector<Scalar>(acc.real())
                              : Vector<Scalar>(acc.cwiseAbs());
  return detail::make_pattern(grid, std::move(values));
}

template <typename Scalar>
Pattern<Scalar> array_factor_full(const std::vector<ElementPlacement<Scalar>>& elements,
                                  const AngleGrid<Scalar>& grid) {
  return array_factor_full(std::span<const ElementPlacement<Scalar>>(elements), grid);
}

/// Symmetric array factor F(u) = 2 sum_i R_i cos(2 pi d_i u).  A center element
/// contributes 2 R like every other half term.
template <typename Scalar>
Pattern<Scalar> array_factor_symmetric(const SymmetricArray<Scalar>& array,
                                       const AngleGrid<Scalar>& grid) {
  if (array.half_elements.empty()) throw std::invalid_argument("empty half-array");
  const Index m = grid.size();
  Vector<Scalar> values = Vector<Scalar>::Zero(m);
  for (const auto& e : array.half_elements)
    values += Scalar(2) * e.excitation *
              (Scalar(two_pi) * e.position * grid.u.array()).cos().matrix();
  return detail::make_pattern(grid, std::move(values));
}

/// Explicit mirrored element list realizing the doubled-half convention: each
/// half element appears at +d and -d, so a center element appears twice.
template <typename Scalar>
std::vector<ElementPlacement<Scalar>> mirrored_elements(const SymmetricArray<Scalar>& array) {
  std::vector<ElementPlacement<Scalar>> out;
  out.reserve(2 * array.half_elements.size());
  for (auto it = array.half_elements.rbegin(); it != array.half_elements.rend(); ++it)
    out.push_back({-it->position, it->excitation, -it->phase});
  for (const auto& e : array.half_elements) out.push_back(e);
  return out;
}

/// Normalized dB view: 20 log10(|F| / peak), clamped at -120 dB, maximum 0 dB.
template <typename Scalar>
Pattern<Scalar> to_db(const Pattern<Scalar>& pattern) {
  if (!(pattern.peak > Scalar(0))) throw std::invalid_argument("degenerate pattern");
  Vector<Scalar> db(pattern.values.size());
  for (Index j = 0; j < db.size(); ++j) {
    const Scalar mag = std::abs(pattern.values[j]);
    db[j] = mag > Scalar(0)
                ? std::max(Scalar(20) * std::log10(mag / pattern.peak), Scalar(db_report_floor))
                : Scalar(db_report_floor);
  }
  Pattern<Scalar> out;
  out.grid = pattern.grid;
  out.values = std::move(db);
  out.peak = out.values.maxCoeff();
  return out;
}

}  // namespace sparray
