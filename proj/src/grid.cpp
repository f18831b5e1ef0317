#include "grid.hpp"

#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace lel {

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo)) throw_invalid("log_grid: need 0 < lo < hi");
    if (points_per_decade < 1) throw_invalid("log_grid: points_per_decade < 1");
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

PchipTable::PchipTable(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2) throw_invalid("PchipTable: need >= 2 points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw_invalid("PchipTable: x not increasing");
    std::vector<double> d(n - 1);
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
}

std::size_t PchipTable::locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    if (it == x_.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double PchipTable::operator()(double x) const {
    if (x <= x_.front())
        return y_.front() + slope_.front() * (x - x_.front());
    if (x >= x_.back())
        return y_.back() + slope_.back() * (x - x_.back());
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * y_[i] + h * h10 * slope_[i] + h01 * y_[i + 1] +
           h * h11 * slope_[i + 1];
}

double PchipTable::derivative(double x) const {
    if (x <= x_.front()) return slope_.front();
    if (x >= x_.back()) return slope_.back();
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double dh00 = (6 * t * t - 6 * t) / h;
    const double dh10 = 3 * t * t - 4 * t + 1;
    const double dh01 = (6 * t - 6 * t * t) / h;
    const double dh11 = 3 * t * t - 2 * t;
    return dh00 * y_[i] + dh10 * slope_[i] + dh01 * y_[i + 1] +
           dh11 * slope_[i + 1];
}

LogLogTable::LogLogTable(const std::vector<double>& x,
                         const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw_invalid("LogLogTable: need >= 2 points");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw_invalid("LogLogTable: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    table_ = PchipTable(std::move(lx), std::move(ly));
}

double LogLogTable::operator()(double x) const {
    return std::exp(table_(std::log(x)));
}

}  // namespace lel
