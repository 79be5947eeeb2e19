#pragma once

// Reference excitations the synthesis pipeline targets: Dolph-Chebyshev weights
// for uniform arrays and bundled published element tables used as fixtures and
// comparison columns.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "array_model.hpp"
#include "core.hpp"

namespace sparray {

struct ChebyshevSpec {
  int n_elements = 0;
  double sll_db = 0;      // desired sidelobe level, negative
  double spacing = 0.5;   // element spacing in wavelengths
};

/// T_n with the cosh continuation outside [-1, 1].
inline double chebyshev_poly(int n, double x) {
  if (x > 1.0) return std::cosh(n * std::acosh(x));
  if (x < -1.0) return (n % 2 == 0 ? 1.0 : -1.0) * std::cosh(n * std::acosh(-x));
  return std::cos(n * std::acos(x));
}

namespace detail {

// Dolph-Chebyshev window of length N for a sidelobe level sll_db < 0:
// sample T_{N-1}(x0 cos(pi k / N)) over k, inverse-transform, reorder so the
// window is symmetric, and normalize to max 1.  Even N needs the half-sample
// phase factor before the transform.
inline std::vector<double> chebyshev_window(int n, double sll_db) {
  const int order = n - 1;
  const double ratio = std::pow(10.0, -sll_db / 20.0);  // main-to-sidelobe voltage ratio
  const double x0 = std::cosh(std::acosh(ratio) / order);

  std::vector<std::complex<double>> p(n);
  for (int k = 0; k < n; ++k) {
    p[k] = chebyshev_poly(order, x0 * std::cos(std::numbers::pi * k / n));
    if (n % 2 == 0) {
      const double ang = std::numbers::pi * k / n;
      p[k] *= std::complex<double>(std::cos(ang), std::sin(ang));
    }
  }
  std::vector<double> w_raw(n);
  for (int t = 0; t < n; ++t) {
    std::complex<double> acc = 0;
    for (int k = 0; k < n; ++k) {
      const double ang = -two_pi * k * t / n;
      acc += p[k] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    w_raw[t] = acc.real();
  }
  std::vector<double> w(n);
  if (n % 2 == 0) {
    const int nh = n / 2 + 1;
    for (int i = 0; i < nh - 1; ++i) w[i] = w_raw[nh - 1 - i];
    for (int i = 1; i < nh; ++i) w[nh - 2 + i] = w_raw[i];
  } else {
    const int nh = (n + 1) / 2;
    for (int i = 0; i < nh - 1; ++i) w[i] = w_raw[nh - 1 - i];
    for (int i = 0; i < nh; ++i) w[nh - 1 + i] = w_raw[i];
  }
  double mx = 0;
  for (double v : w) mx = std::max(mx, v);
  for (double& v : w) v /= mx;
  return w;
}

}  // namespace detail

/// Half-array of a uniformly spaced Dolph-Chebyshev array.  Even N places
/// elements at spacing*(i - 1/2); odd N includes a center element whose stored
/// excitation is halved so the doubled-half evaluation reproduces the physical
/// window pattern.  Excitations are normalized to max 1.
template <typename Scalar = double>
SymmetricArray<Scalar> chebyshev_excitations(const ChebyshevSpec& spec) {
  if (spec.n_elements < 2) throw std::invalid_argument("chebyshev array needs N >= 2");
  if (!(spec.sll_db < 0)) throw std::invalid_argument("sidelobe level must be negative dB");
  if (!(spec.spacing > 0)) throw std::invalid_argument("spacing must be positive");

  const int n = spec.n_elements;
  const auto w = detail::chebyshev_window(n, spec.sll_db);
  std::vector<ElementPlacement<Scalar>> half;
  if (n % 2 == 0) {
    for (int i = 1; i <= n / 2; ++i)
      half.push_back({Scalar((i - 0.5) * spec.spacing), Scalar(w[n / 2 + i - 1]), Scalar(0)});
  } else {
    const int c = (n - 1) / 2;
    half.push_back({Scalar(0), Scalar(w[c] / 2), Scalar(0)});
    for (int i = 1; i <= c; ++i)
      half.push_back({Scalar(i * spec.spacing), Scalar(w[c + i]), Scalar(0)});
  }
  Scalar mx = 0;
  for (const auto& e : half) mx = std::max(mx, e.excitation);
  for (auto& e : half) e.excitation /= mx;
  return SymmetricArray<Scalar>(std::move(half));
}

/// The 29-element tapered reference of the second synthesis example: 15 half
/// entries at 0.5-wavelength spacing including the center element.
template <typename Scalar = double>
SymmetricArray<Scalar> taylor_kaiser_fixture() {
  static constexpr double excitations[15] = {
      1.0,     0.99328, 0.97329, 0.94063, 0.89622, 0.84132, 0.77748, 0.70645,
      0.63017, 0.55065, 0.46994, 0.39004, 0.31282, 0.24001, 0.17309};
  std::vector<ElementPlacement<Scalar>> half;
  for (int i = 0; i < 15; ++i)
    half.push_back({Scalar(0.5 * i), Scalar(excitations[i]), Scalar(0)});
  return SymmetricArray<Scalar>(std::move(half));
}

/// Published matrix-pencil comparison column for the 20-element equiripple case.
template <typename Scalar = double>
SymmetricArray<Scalar> matrix_pencil_table1() {
  static constexpr double pos[7] = {0, 0.8206, 1.6381, 2.4481, 3.2432, 4.0071, 4.7145};
  static constexpr double exc[7] = {1, 0.95818, 0.84113, 0.67176, 0.48115, 0.30046, 0.23345};
  std::vector<ElementPlacement<Scalar>> half;
  for (int i = 0; i < 7; ++i) half.push_back({Scalar(pos[i]), Scalar(exc[i]), Scalar(0)});
  return SymmetricArray<Scalar>(std::move(half));
}

/// Published matrix-pencil comparison column for the 29-element tapered case.
template <typename Scalar = double>
SymmetricArray<Scalar> matrix_pencil_table2() {
  static constexpr double pos[8] = {0, 0.8831, 1.7652, 2.6451, 3.5211, 4.3905, 5.2485, 6.0842};
  static constexpr double exc[8] = {1, 0.97859, 0.91634, 0.81903, 0.69547, 0.55651, 0.4137, 0.27782};
  std::vector<ElementPlacement<Scalar>> half;
  for (int i = 0; i < 8; ++i) half.push_back({Scalar(pos[i]), Scalar(exc[i]), Scalar(0)});
  return SymmetricArray<Scalar>(std::move(half));
}

/// Published sparse-synthesis result columns, used for side-by-side reporting.
template <typename Scalar = double>
SymmetricArray<Scalar> cs_result_table1() {
  static constexpr double pos[6] = {0.4, 1.2, 2.0, 2.8, 3.6, 4.5};
  static constexpr double exc[6] = {1, 0.92947, 0.79514, 0.61428, 0.41719, 0.2409};
  std::vector<ElementPlacement<Scalar>> half;
  for (int i = 0; i < 6; ++i) half.push_back({Scalar(pos[i]), Scalar(exc[i]), Scalar(0)});
  return SymmetricArray<Scalar>(std::move(half));
}

template <typename Scalar = double>
SymmetricArray<Scalar> cs_result_table2() {
  static constexpr double pos[9] = {0.4, 1.2, 2.0, 2.8, 3.6, 4.4, 5.2, 6.0, 6.8};
  static constexpr double exc[9] = {1,   0.96431, 0.89689, 0.8045, 0.69429,
                                    0.57146, 0.43998, 0.30694, 0.18562};
  std::vector<ElementPlacement<Scalar>> half;
  for (int i = 0; i < 9; ++i) half.push_back({Scalar(pos[i]), Scalar(exc[i]), Scalar(0)});
  return SymmetricArray<Scalar>(std::move(half));
}

}  // namespace sparray
