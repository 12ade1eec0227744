#include "flatheat/fdsolver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "flatheat/errors.hpp"

namespace flatheat {

double ControlSurface::max_abs() const {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

double ControlSurface::l2_effort() const {
  if (times.size() < 2 || x1.size() < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double wt = (k == 0 || k == times.size() - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (std::size_t m = 0; m < x1.size(); ++m) {
      const double wx = (m == 0 || m == x1.size() - 1) ? 0.5 : 1.0;
      row += wx * at(k, m) * at(k, m);
    }
    acc += wt * row;
  }
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  const double dx = (x1.back() - x1.front()) / static_cast<double>(x1.size() - 1);
  return std::sqrt(acc * dt * dx);
}

namespace {

// Thomas algorithm for a constant-stencil tridiagonal system with Neumann-type
// boundary rows: diag (1+2r) everywhere, off-diagonal -r, except the first and
// last rows where the single off-diagonal entry is -2r (mirror ghost folded in).
class NeumannTridiag {
 public:
  NeumannTridiag(std::size_t n, double r) : n_(n), r_(r), diag_(n), work_(n) {
    // Precompute the forward-elimination pivots (they depend only on n, r).
    diag_[0] = 1.0 + 2.0 * r;
    for (std::size_t i = 1; i < n; ++i) {
      const double upper_prev = (i == 1) ? -2.0 * r : -r;
      const double lower = (i == n - 1) ? -2.0 * r : -r;
      diag_[i] = (1.0 + 2.0 * r) - lower * upper_prev / diag_[i - 1];
    }
  }

  // Solves in place; rhs has stride `stride` inside `data`.
  void solve(double* data, std::size_t stride) const {
    work_[0] = data[0];
    for (std::size_t i = 1; i < n_; ++i) {
      const double lower = (i == n_ - 1) ? -2.0 * r_ : -r_;
      work_[i] = data[i * stride] - lower / diag_[i - 1] * work_[i - 1];
    }
    data[(n_ - 1) * stride] = work_[n_ - 1] / diag_[n_ - 1];
    for (std::size_t i = n_ - 1; i-- > 0;) {
      const double upper = (i == 0) ? -2.0 * r_ : -r_;
      data[i * stride] = (work_[i] - upper * data[(i + 1) * stride]) / diag_[i];
    }
  }

 private:
  std::size_t n_;
  double r_;
  std::vector<double> diag_;
  mutable std::vector<double> work_;
};

}  // namespace

AdiSolver::AdiSolver(Grid2D grid, ControlEvaluator control)
    : grid_(grid), control_(std::move(control)) {
  if (!control_) control_ = [](double, double) { return 0.0; };
}

Field2D AdiSolver::step(const Field2D& field, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("AdiSolver::step: dt must be positive");
  const std::size_t n1 = grid_.n1, n2 = grid_.n2;
  const double h1 = grid_.h1(), h2 = grid_.h2();
  const double r1 = 0.5 * dt / (h1 * h1);
  const double r2 = 0.5 * dt / (h2 * h2);
  const double t_half = field.t + 0.5 * dt;

  // Flux source g_i = 2 u(t+dt/2, x1_i) / h2 on the controlled boundary row.
  std::vector<double> g(n1);
  for (std::size_t i = 0; i < n1; ++i) g[i] = 2.0 * control_(t_half, grid_.x1(i)) / h2;

  // Half step 1: implicit in x1, explicit in x2.
  Field2D star(grid_, field.t + 0.5 * dt);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      double lap2;
      if (j == 0)
        lap2 = 2.0 * (field.at(i, 1) - field.at(i, 0));
      else if (j == n2 - 1)
        lap2 = 2.0 * (field.at(i, n2 - 2) - field.at(i, n2 - 1)) + h2 * h2 * g[i];
      else
        lap2 = field.at(i, j - 1) - 2.0 * field.at(i, j) + field.at(i, j + 1);
      star.at(i, j) = field.at(i, j) + r2 * lap2;
    }
  }
  NeumannTridiag solver1(n1, r1);
  for (std::size_t j = 0; j < n2; ++j) solver1.solve(&star.values[j], n2);

  // Half step 2: implicit in x2, explicit in x1.
  Field2D next(grid_, field.t + dt);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      double lap1;
      if (i == 0)
        lap1 = 2.0 * (star.at(1, j) - star.at(0, j));
      else if (i == n1 - 1)
        lap1 = 2.0 * (star.at(n1 - 2, j) - star.at(n1 - 1, j));
      else
        lap1 = star.at(i - 1, j) - 2.0 * star.at(i, j) + star.at(i + 1, j);
      next.at(i, j) = star.at(i, j) + r1 * lap1;
    }
  }
  // Implicit flux term on the controlled row.
  for (std::size_t i = 0; i < n1; ++i) next.at(i, n2 - 1) += r2 * h2 * h2 * g[i];
  NeumannTridiag solver2(n2, r2);
  for (std::size_t i = 0; i < n1; ++i) solver2.solve(&next.values[i * n2], 1);

  return next;
}

AdiSolver::Trajectory AdiSolver::simulate(const Field2D& theta0, double t_end, double dt,
                                          const std::vector<double>& snapshot_times) const {
  if (t_end < theta0.t) throw std::invalid_argument("simulate: t_end before initial time");
  const double duration = t_end - theta0.t;
  const long steps = std::lround(duration / dt);
  if (std::abs(static_cast<double>(steps) * dt - duration) > 1e-9)
    throw std::invalid_argument("simulate: dt does not divide the simulated interval");

  std::vector<long> snap_steps;
  for (double ts : snapshot_times) {
    const long k = std::lround((ts - theta0.t) / dt);
    if (k < 0 || k > steps || std::abs(theta0.t + static_cast<double>(k) * dt - ts) > 1e-9)
      throw std::invalid_argument("simulate: snapshot time " + std::to_string(ts) +
                                  " does not land on the step grid");
    snap_steps.push_back(k);
  }

  Trajectory out;
  Field2D current = theta0;
  auto maybe_snapshot = [&](long k) {
    for (std::size_t m = 0; m < snap_steps.size(); ++m)
      if (snap_steps[m] == k) {
        Field2D s = current;
        s.t = snapshot_times[m];  // exact requested stamp
        out.snapshots.push_back(std::move(s));
      }
  };
  maybe_snapshot(0);
  for (long k = 1; k <= steps; ++k) {
    current = step(current, dt);
    current.t = theta0.t + static_cast<double>(k) * dt;  // avoid drift
    if (k % 50 == 0 || k == steps) {
      if (!current.all_finite())
        throw InstabilityError("simulate: non-finite field at step " + std::to_string(k), k);
    }
    maybe_snapshot(k);
  }
  out.final_field = std::move(current);
  out.steps = steps;
  return out;
}

}  // namespace flatheat
