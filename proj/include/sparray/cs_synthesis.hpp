#pragma once

// Sparse-recovery synthesis over a fine position grid: dictionary assembly,
// target sampling, L1 minimization with a residual-ball data constraint, a
// minimum-norm L2 baseline, and extraction of a physical sparse array.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "array_model.hpp"
#include "core.hpp"
#include "metrics.hpp"

namespace sparray {

/// Candidate element positions d_i = i*step, i = 1..n with n = ceil(x_max/step):
/// the positive half of an aperture sampled at pitch `step`, origin excluded.
template <typename Scalar>
struct PositionGrid {
  Scalar x_max{};
  Scalar step{};
  Vector<Scalar> positions;

  PositionGrid() = default;

  PositionGrid(Scalar x_max_in, Scalar step_in) : x_max(x_max_in), step(step_in) {
    if (!(step > Scalar(0))) throw std::invalid_argument("grid step must be positive");
    if (!(x_max > Scalar(0))) throw std::invalid_argument("aperture must be positive");
    // guard against FP near-integer ratios like 10/0.1
    const Index n = static_cast<Index>(std::ceil(double(x_max) / double(step) - 1e-9));
    if (n < 1) throw std::invalid_argument("empty position grid");
    positions.resize(n);
    for (Index i = 0; i < n; ++i) positions[i] = Scalar(i + 1) * step;
  }

  Index size() const { return positions.size(); }
};

/// The m x n sensing matrix with entries 2 cos(2 pi d_i u_j) plus its grids.
template <typename Scalar>
struct Dictionary {
  Matrix<Scalar> matrix;
  AngleGrid<Scalar> row_grid;
  PositionGrid<Scalar> col_grid;

  Index rows() const { return matrix.rows(); }
  Index cols() const { return matrix.cols(); }
};

struct SolverConfig {
  double epsilon = 1e-3;          // residual ball radius relative to ||f||_2
  int max_iterations = 5000;      // homotopy path step cap
  double convergence_tol = 1e-8;  // relative floor for accepting path events
  double penalty = 1.0;           // reserved for splitting-type solvers, unused here
  std::uint64_t seed = 0;         // no randomized initialization is used

  void validate() const {
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(convergence_tol > 0)) throw std::invalid_argument("convergence_tol must be positive");
    if (!(penalty > 0)) throw std::invalid_argument("penalty must be positive");
  }
};

template <typename Scalar>
struct SparseSolution {
  Vector<Scalar> coefficients;
  Scalar residual_norm{};
  Scalar l1_norm{};
  int iterations_used = 0;
  bool converged = false;
  std::string diagnostic;
};

/// Assembles the dictionary A[j][i] = 2 cos(2 pi d_i u_j).
template <typename Scalar>
Dictionary<Scalar> build_dictionary(const PositionGrid<Scalar>& pos_grid,
                                    const AngleGrid<Scalar>& angle_grid) {
  if (pos_grid.size() == 0 || angle_grid.size() == 0)
    throw std::invalid_argument("empty grid");
  Dictionary<Scalar> dict;
  dict.matrix = Scalar(2) *
                (Scalar(two_pi) * angle_grid.u * pos_grid.positions.transpose()).array().cos();
  dict.row_grid = angle_grid;
  dict.col_grid = pos_grid;
  return dict;
}

/// Samples the reference pattern on the angle grid: f_j = F_ref(u_j).
template <typename Scalar>
Vector<Scalar> sample_target(const SymmetricArray<Scalar>& reference,
                             const AngleGrid<Scalar>& angle_grid) {
  return array_factor_symmetric(reference, angle_grid).values;
}

/// min ||r||_1  s.t.  ||A r - f||_2 <= epsilon ||f||_2, solved exactly by
/// following the lasso regularization path (LARS with the lasso modification)
/// until the residual first reaches the ball.  The path starts at r = 0 and is
/// piecewise linear in the regularization level; every knot has an exactly
/// sparse support, so the returned vertex solution carries no smear across
/// near-parallel columns.  Deterministic: no randomization, ties by lowest
/// column index.
template <typename Scalar>
SparseSolution<Scalar> solve_l1(const Matrix<Scalar>& A, const Vector<Scalar>& f,
                                const SolverConfig& config = {}) {
  static_assert(std::is_floating_point_v<Scalar>, "real dictionaries only");
  config.validate();
  if (A.rows() != f.size()) throw std::invalid_argument("dimension mismatch");

  const Index n = A.cols();
  SparseSolution<Scalar> sol;
  sol.coefficients = Vector<Scalar>::Zero(n);

  const Scalar fnorm = f.norm();
  if (fnorm == Scalar(0) || config.epsilon >= 1.0) {
    sol.converged = true;
    sol.residual_norm = fnorm;
    return sol;
  }
  const Scalar target = Scalar(config.epsilon) * fnorm;
  const Scalar target2 = target * target;
  const Scalar ev_tol = Scalar(config.convergence_tol);

  const Matrix<Scalar> G = A.transpose() * A;
  Vector<Scalar>& x = sol.coefficients;
  std::vector<Index> active;
  std::vector<Scalar> signs;
  Index last_drop = -1;

  auto finish = [&](Scalar rn, bool ok, std::string why) {
    sol.residual_norm = rn;
    sol.l1_norm = x.template lpNorm<1>();
    sol.converged = ok;
    sol.diagnostic = std::move(why);
    return sol;
  };

  while (sol.iterations_used < config.max_iterations) {
    ++sol.iterations_used;
    const Vector<Scalar> resid = f - A * x;
    const Scalar rn2 = resid.squaredNorm();
    if (rn2 <= target2) return finish(std::sqrt(rn2), true, "");
    const Vector<Scalar> c = A.transpose() * resid;

    if (active.empty()) {
      Index j0 = 0;
      const Scalar cmax = c.cwiseAbs().maxCoeff(&j0);
      if (cmax <= ev_tol * fnorm)
        return finish(std::sqrt(rn2), false, "residual orthogonal to dictionary");
      active.push_back(j0);
      signs.push_back(c[j0] > 0 ? Scalar(1) : Scalar(-1));
      last_drop = -1;
    }

    const Index k = static_cast<Index>(active.size());
    Matrix<Scalar> Gs(k, k);
    Vector<Scalar> s(k);
    Scalar lam = 0;
    for (Index a = 0; a < k; ++a) {
      s[a] = signs[a];
      lam = std::max(lam, std::abs(c[active[a]]));
      for (Index b = 0; b < k; ++b) Gs(a, b) = G(active[a], active[b]);
    }
    Eigen::LDLT<Matrix<Scalar>> ldlt(Gs);
    if (ldlt.info() != Eigen::Success)
      return finish(std::sqrt(rn2), false, "active-set gram factorization failed");
    const Vector<Scalar> w = ldlt.solve(s);
    const Scalar c2 = s.dot(w);  // = ||A_S w||^2
    if (!(c2 > Scalar(0)))
      return finish(std::sqrt(rn2), false, "degenerate active set");

    Vector<Scalar> a_rate = Vector<Scalar>::Zero(n);
    for (Index a = 0; a < k; ++a) a_rate += w[a] * G.col(active[a]);

    // candidate step sizes along the current segment
    enum class Event { stop, join, drop, ls_point };
    Scalar g = lam;  // full step to the least-squares point on the active set
    Event ev = Event::ls_point;
    Index ev_idx = -1;
    Scalar ev_sign = 0;

    const Scalar disc = lam * lam - (rn2 - target2) / c2;
    if (disc >= Scalar(0)) {
      const Scalar g_stop = (lam - std::sqrt(disc)) * (Scalar(1) + Scalar(1e-12));
      if (g_stop < g) {
        g = g_stop;
        ev = Event::stop;
      }
    }
    for (Index j = 0; j < n; ++j) {
      if (j == last_drop || std::find(active.begin(), active.end(), j) != active.end())
        continue;
      for (const Scalar sgn : {Scalar(1), Scalar(-1)}) {
        const Scalar den = Scalar(1) - sgn * a_rate[j];
        if (den <= ev_tol) continue;
        const Scalar gj = (lam - sgn * c[j]) / den;
        if (gj > ev_tol * lam && gj < g) {
          g = gj;
          ev = Event::join;
          ev_idx = j;
          ev_sign = sgn;
        }
      }
    }
    for (Index a = 0; a < k; ++a) {
      if (w[a] * s[a] < Scalar(0)) {
        const Scalar gd = -x[active[a]] / w[a];
        if (gd > ev_tol * lam && gd < g) {
          g = gd;
          ev = Event::drop;
          ev_idx = a;
        }
      }
    }
    if (!(g > Scalar(0)) || !std::isfinite(double(g)))
      return finish(std::sqrt(rn2), false, "path stalled");

    for (Index a = 0; a < k; ++a) x[active[a]] += g * w[a];

    switch (ev) {
      case Event::stop:
        break;  // top-of-loop residual check terminates
      case Event::join:
        active.push_back(ev_idx);
        signs.push_back(ev_sign);
        last_drop = -1;
        break;
      case Event::drop:
        x[active[ev_idx]] = Scalar(0);
        last_drop = active[ev_idx];
        active.erase(active.begin() + ev_idx);
        signs.erase(signs.begin() + ev_idx);
        break;
      case Event::ls_point: {
        // correlations on the active set are exhausted; feasibility is decided
        // by the least-squares floor of the current span
        const Vector<Scalar> r_ls = f - A * x;
        const Scalar rn = r_ls.norm();
        if (rn <= target) return finish(rn, true, "");
        const Scalar cmax = (A.transpose() * r_ls).cwiseAbs().maxCoeff();
        if (cmax <= ev_tol * fnorm)
          return finish(rn, false, "residual ball infeasible: least-squares floor reached");
        last_drop = -1;
        break;
      }
    }
  }
  return finish((f - A * x).norm(), false, "path step limit reached");
}

template <typename Scalar>
SparseSolution<Scalar> solve_l1(const Dictionary<Scalar>& dictionary, const Vector<Scalar>& f,
                                const SolverConfig& config = {}) {
  return solve_l1(dictionary.matrix, f, config);
}

/// Minimum-Euclidean-norm least-squares solution via a rank-revealing complete
/// orthogonal decomposition; the non-sparse contrast for the L1 route.
template <typename Scalar>
SparseSolution<Scalar> solve_l2_baseline(const Matrix<Scalar>& A, const Vector<Scalar>& f) {
  if (A.rows() != f.size()) throw std::invalid_argument("dimension mismatch");
  Eigen::CompleteOrthogonalDecomposition<Matrix<Scalar>> cod(A);
  SparseSolution<Scalar> sol;
  sol.coefficients = cod.solve(f);
  sol.residual_norm = (A * sol.coefficients - f).norm();
  sol.l1_norm = sol.coefficients.template lpNorm<1>();
  sol.iterations_used = 1;
  sol.converged = true;
  return sol;
}

template <typename Scalar>
SparseSolution<Scalar> solve_l2_baseline(const Dictionary<Scalar>& dictionary,
                                         const Vector<Scalar>& f) {
  return solve_l2_baseline(dictionary.matrix, f);
}

/// Count of coefficients at or above threshold_rel * max|r|.
template <typename Scalar>
Index surviving_count(const Vector<Scalar>& r, Scalar threshold_rel = Scalar(1e-3)) {
  const Scalar mx = r.size() ? r.cwiseAbs().maxCoeff() : Scalar(0);
  if (!(mx > Scalar(0))) return 0;
  return (r.cwiseAbs().array() >= threshold_rel * mx).count();
}

/// Thresholds the solution at threshold_rel * max|r|, merges runs of surviving
/// columns whose index gaps are <= merge_gap into single elements at the
/// |r|-weighted centroid with summed excitation, and normalizes to max 1.
template <typename Scalar>
SymmetricArray<Scalar> extract_sparse_array(const SparseSolution<Scalar>& solution,
                                            const PositionGrid<Scalar>& col_grid,
                                            Scalar threshold_rel = Scalar(1e-3),
                                            Index merge_gap = 1) {
  const Vector<Scalar>& r = solution.coefficients;
  if (r.size() != col_grid.size()) throw std::invalid_argument("dimension mismatch");
  const Scalar mx = r.size() ? r.cwiseAbs().maxCoeff() : Scalar(0);
  if (!(mx > Scalar(0))) throw std::invalid_argument("no elements survive threshold");
  const Scalar cut = threshold_rel * mx;

  std::vector<Index> survivors;
  for (Index i = 0; i < r.size(); ++i)
    if (std::abs(r[i]) >= cut) survivors.push_back(i);

  std::vector<ElementPlacement<Scalar>> elements;
  std::size_t group_start = 0;
  for (std::size_t t = 1; t <= survivors.size(); ++t) {
    if (t < survivors.size() && survivors[t] - survivors[t - 1] <= merge_gap) continue;
    Scalar weight = 0, centroid = 0, excitation = 0;
    for (std::size_t q = group_start; q < t; ++q) {
      const Index i = survivors[q];
      weight += std::abs(r[i]);
      centroid += std::abs(r[i]) * col_grid.positions[i];
      excitation += r[i];
    }
    elements.push_back({centroid / weight, excitation, Scalar(0)});
    group_start = t;
  }

  Scalar emax = 0;
  for (const auto& e : elements) emax = std::max(emax, std::abs(e.excitation));
  if (!(emax > Scalar(0))) throw std::invalid_argument("no elements survive threshold");
  for (auto& e : elements) e.excitation /= emax;
  return SymmetricArray<Scalar>(std::move(elements));
}

template <typename Scalar>
struct SynthesisReport {
  // input echo
  Scalar x_max{}, step{};
  Index samples{};
  SolverConfig solver;
  Scalar threshold_rel{};
  Index merge_gap{};

  // results
  SymmetricArray<Scalar> sparse_array;
  int n_uniform = 0;
  int n_sparse = 0;
  Scalar reduction_percent{};
  Pattern<Scalar> target_pattern;
  Pattern<Scalar> synthesized_pattern;
  SparseSolution<Scalar> solution;
  Index l1_survivors = 0;  // at the fixed 1e-3 * max|r| contrast threshold
  Index l2_survivors = 0;
  Scalar rmse_db{}, max_dev_db{};       // synthesized vs target, -50 dB floor
  Scalar psl_target_db{}, psl_synth_db{};  // on a 2001-point dense grid
};

namespace detail {

template <typename Fn>
auto staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(stage) + ": " + e.what());
  }
}

}  // namespace detail

/// Full pipeline: dictionary, target sampling, L1 solve, extraction, metrics,
/// and the L2-baseline sparsity contrast.
template <typename Scalar>
SynthesisReport<Scalar> synthesize(const SymmetricArray<Scalar>& reference, Scalar x_max,
                                   Scalar step, const AngleGrid<Scalar>& angle_grid,
                                   const SolverConfig& config = {},
                                   Scalar threshold_rel = Scalar(1e-3), Index merge_gap = 1) {
  SynthesisReport<Scalar> report;
  report.x_max = x_max;
  report.step = step;
  report.samples = angle_grid.size();
  report.solver = config;
  report.threshold_rel = threshold_rel;
  report.merge_gap = merge_gap;

  const auto dict = detail::staged("build_dictionary", [&] {
    return build_dictionary(PositionGrid<Scalar>(x_max, step), angle_grid);
  });
  const auto f =
      detail::staged("sample_target", [&] { return sample_target(reference, angle_grid); });
  report.solution = detail::staged("solve_l1", [&] { return solve_l1(dict, f, config); });
  report.sparse_array = detail::staged("extract_sparse_array", [&] {
    return extract_sparse_array(report.solution, dict.col_grid, threshold_rel, merge_gap);
  });

  report.n_uniform = reference.physical_element_count();
  report.n_sparse = report.sparse_array.physical_element_count();
  report.reduction_percent =
      Scalar(100.0 * double(report.n_uniform - report.n_sparse) / double(report.n_uniform));
  report.target_pattern = detail::make_pattern(angle_grid, f);
  report.synthesized_pattern = array_factor_symmetric(report.sparse_array, angle_grid);

  const auto dev = detail::staged("metrics", [&] {
    return pattern_deviation(report.target_pattern, report.synthesized_pattern, Scalar(-50));
  });
  report.rmse_db = dev.rmse_db;
  report.max_dev_db = dev.max_dev_db;

  const auto dense = AngleGrid<Scalar>::uniform(2001);
  const auto nanv = std::numeric_limits<Scalar>::quiet_NaN();
  try {
    report.psl_target_db = peak_sidelobe_level(array_factor_symmetric(reference, dense));
  } catch (const std::exception&) {
    report.psl_target_db = nanv;
  }
  try {
    report.psl_synth_db = peak_sidelobe_level(array_factor_symmetric(report.sparse_array, dense));
  } catch (const std::exception&) {
    report.psl_synth_db = nanv;
  }

  report.l1_survivors = surviving_count(report.solution.coefficients);
  const auto baseline =
      detail::staged("solve_l2_baseline", [&] { return solve_l2_baseline(dict, f); });
  report.l2_survivors = surviving_count(baseline.coefficients);
  return report;
}

}  // namespace sparray
