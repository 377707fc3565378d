#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracsim {

enum class Boundary { FreeSpace, Absorbing, Reflecting, Periodic };

// Uniform spatial grid: nodes x_i = x0 + i*dx for i in [0,n).
struct Grid1D {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 2;
  Boundary bc = Boundary::FreeSpace;

  Grid1D() = default;
  Grid1D(double x0_, double dx_, std::size_t n_,
         Boundary bc_ = Boundary::FreeSpace)
      : x0(x0_), dx(dx_), n(n_), bc(bc_) {
    if (!(dx > 0.0)) throw std::invalid_argument("Grid1D: dx must be > 0");
    if (n < 2) throw std::invalid_argument("Grid1D: need at least two nodes");
  }

  double x(std::size_t i) const noexcept { return x0 + dx * static_cast<double>(i); }
  double x_last() const noexcept { return x(n - 1); }
  std::vector<double> nodes() const {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = x(i);
    return xs;
  }
};

// Uniform time grid: nodes t_i = t0 + i*dt for i in [0,n).
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t n = 2;

  TimeGrid() = default;
  TimeGrid(double t0_, double dt_, std::size_t n_) : t0(t0_), dt(dt_), n(n_) {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
    if (n < 1) throw std::invalid_argument("TimeGrid: need at least one node");
  }

  double t(std::size_t i) const noexcept { return t0 + dt * static_cast<double>(i); }
  double t_last() const noexcept { return t(n - 1); }
};

// Dense row-major matrix of doubles; rows usually index paths or snapshots.
struct RowMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RowMatrix() = default;
  RowMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }
  double* row(std::size_t r) noexcept { return data.data() + r * cols; }
  const double* row(std::size_t r) const noexcept { return data.data() + r * cols; }
};

}  // namespace fracsim
