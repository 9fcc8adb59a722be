#include "mfp/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mfp/error.hpp"
#include "mfp/scalar.hpp"

namespace mfp {

Quantile Quantile::from_cells(const SpaceTimeGrid& grid, std::span<const double> density) {
  const int n = grid.n_x();
  if (static_cast<int>(density.size()) != n) throw ValidationError("density", "size mismatch");
  double total = 0.0;
  for (double v : density) {
    if (!(v >= 0.0)) throw ValidationError("density", "must be nonnegative");
    total += v;
  }
  if (!(total > 0.0)) throw ValidationError("density", "zero mass");
  Quantile q;
  q.alpha.reserve(n + 1);
  q.x.reserve(n + 1);
  double acc = 0.0;
  q.alpha.push_back(0.0);
  q.x.push_back(grid.face_position(0));
  for (int i = 0; i < n; ++i) {
    acc += density[i] / total;
    q.alpha.push_back(i + 1 == n ? 1.0 : acc);
    q.x.push_back(grid.x_min() + (i + 1) * grid.dx());
  }
  return q;
}

double Quantile::eval_right(double a) const {
  // First breakpoint strictly beyond a; interpolate on the segment ending there.
  const auto it = std::upper_bound(alpha.begin(), alpha.end(), a);
  if (it == alpha.begin()) return x.front();
  if (it == alpha.end()) return x.back();
  const std::size_t j = static_cast<std::size_t>(it - alpha.begin());
  const double a0 = alpha[j - 1], a1 = alpha[j];
  return x[j - 1] + (x[j] - x[j - 1]) * (a - a0) / (a1 - a0);
}

double Quantile::eval_left(double a) const {
  const auto it = std::lower_bound(alpha.begin(), alpha.end(), a);
  if (it == alpha.begin()) return x.front();
  if (it == alpha.end()) return x.back();
  const std::size_t j = static_cast<std::size_t>(it - alpha.begin());
  const double a0 = alpha[j - 1], a1 = alpha[j];
  return x[j - 1] + (x[j] - x[j - 1]) * (a - a0) / (a1 - a0);
}

double Quantile::cdf(double y) const {
  if (y < x.front()) return 0.0;
  if (y >= x.back()) return 1.0;
  // Last breakpoint with x <= y.
  const auto it = std::upper_bound(x.begin(), x.end(), y);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double x0 = x[j - 1], x1 = x[j];
  if (x1 == x0) return alpha[j];
  return alpha[j - 1] + (alpha[j] - alpha[j - 1]) * (y - x0) / (x1 - x0);
}

namespace {

// Periodic extension of a torus quantile: Q(a + n) = Q(a) + n L.
double periodic_right(const Quantile& q, double a, double length) {
  const double n = std::floor(a);
  return q.eval_right(a - n) + n * length;
}

// All breakpoints of a -> Q(a - theta) in [0, 1].
std::vector<double> shifted_breaks(const Quantile& q, double theta) {
  std::vector<double> out;
  for (double a : q.alpha) {
    const double s = a + theta;
    const double r = s - std::floor(s);
    out.push_back(r);
  }
  return out;
}

std::vector<double> merged_breaks(const Quantile& q0, const Quantile& q1, double theta, bool torus) {
  std::vector<double> breaks = q0.alpha;
  const auto extra = torus ? shifted_breaks(q1, theta) : q1.alpha;
  breaks.insert(breaks.end(), extra.begin(), extra.end());
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

// Values of a piecewise-linear f at the two ends of each segment. f is only
// sampled strictly inside segments, so rounding at a breakpoint can never pick
// the wrong side of a jump.
template <class F>
void for_each_segment(const std::vector<double>& breaks, F&& f,
                      const std::function<void(double, double, double, double)>& emit) {
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = breaks[j], b = breaks[j + 1];
    if (!(b - a > 1e-15)) continue;
    const double fp = f(a + 0.25 * (b - a));
    const double fq = f(a + 0.75 * (b - a));
    emit(a, b, fp - 0.5 * (fq - fp), fq + 0.5 * (fq - fp));
  }
}

Quantile interpolate(const Quantile& q0, const Quantile& q1, double theta, double s, double length,
                     bool torus) {
  auto q1_at = [&](double a) { return torus ? periodic_right(q1, a - theta, length) : q1.eval_right(a); };
  Quantile out;
  for_each_segment(merged_breaks(q0, q1, theta, torus),
                   [&](double a) { return (1.0 - s) * q0.eval_right(a) + s * q1_at(a); },
                   [&](double a, double b, double fa, double fb) {
                     // Guard monotonicity against rounding in the extrapolation.
                     const double lo = out.x.empty() ? fa : std::max(fa, out.x.back());
                     out.alpha.push_back(a);
                     out.x.push_back(lo);
                     out.alpha.push_back(b);
                     out.x.push_back(std::max(fb, lo));
                   });
  return out;
}

}  // namespace

double torus_rotation(const Quantile& q0, const Quantile& q1, double length) {
  auto cost = [&](double theta) {
    // Exact integral of a squared piecewise-linear difference (Simpson per segment).
    double total = 0.0;
    for_each_segment(merged_breaks(q0, q1, theta, true),
                     [&](double a) { return q0.eval_right(a) - periodic_right(q1, a - theta, length); },
                     [&](double a, double b, double da, double db) {
                       const double dm = 0.5 * (da + db);
                       total += (b - a) * (da * da + 4.0 * dm * dm + db * db) / 6.0;
                     });
    return -total;
  };
  // The cost is convex in theta; search a window covering every relative rotation.
  return scalar::golden_max(cost, -1.0, 1.0, 1e-13).first;
}

DensityField geodesic_oracle_1d(std::span<const double> m0, std::span<const double> m1,
                                const SpaceTimeGrid& grid) {
  const Quantile q0 = Quantile::from_cells(grid, m0);
  const Quantile q1 = Quantile::from_cells(grid, m1);
  const bool torus = grid.is_torus();
  const double length = grid.length();
  const double theta = torus ? torus_rotation(q0, q1, length) : 0.0;
  double total0 = 0.0;
  for (double v : m0) total0 += v;
  total0 *= grid.dx();

  const int nt = grid.n_t();
  const int nx = grid.n_x();
  std::vector<double> values(static_cast<std::size_t>(nt + 1) * nx);
  for (int k = 0; k <= nt; ++k) {
    const double s = static_cast<double>(k) / nt;
    const Quantile qt = interpolate(q0, q1, theta, s, length, torus);
    const double start = qt.x.front();
    auto lifted_cdf = [&](double y) {
      if (!torus) return qt.cdf(y);
      const double n = std::floor((y - start) / length);
      return n + qt.cdf(y - n * length);
    };
    for (int i = 0; i < nx; ++i) {
      const double a = grid.face_position(i);
      const double b = a + grid.dx();
      values[grid.node_cell_index(k, i)] = total0 * (lifted_cdf(b) - lifted_cdf(a)) / grid.dx();
    }
  }
  return DensityField(grid, std::move(values));
}

double max_l1_distance(const DensityField& a, const DensityField& b) {
  if (a.grid() != b.grid()) throw ValidationError("field", "grid mismatch");
  const auto& g = a.grid();
  double worst = 0.0;
  for (int k = 0; k <= g.n_t(); ++k) {
    double d = 0.0;
    for (int i = 0; i < g.n_x(); ++i) d += std::abs(a.at(k, i) - b.at(k, i));
    worst = std::max(worst, d * g.dx());
  }
  return worst;
}

}  // namespace mfp
