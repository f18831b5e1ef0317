#pragma once

#include <cstddef>
#include <vector>

namespace lel {

// Geometric grid over [lo, hi] with a fixed number of points per decade
// (endpoints always included).
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes) with linear
// extrapolation from the end slopes.  Inputs must be strictly increasing in x.
class PchipTable {
  public:
    PchipTable() = default;
    PchipTable(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    bool empty() const { return x_.empty(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }

  private:
    std::size_t locate(double x) const;
    std::vector<double> x_, y_, slope_;
};

// Interpolates a positive function in log-log coordinates; extrapolates by
// continuing the end slopes (power-law continuation).
class LogLogTable {
  public:
    LogLogTable() = default;
    LogLogTable(const std::vector<double>& x, const std::vector<double>& y);

    double operator()(double x) const;
    bool empty() const { return table_.empty(); }

  private:
    PchipTable table_;
};

}  // namespace lel
