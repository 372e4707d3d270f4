#pragma once
// Brute-force reference computations for the tests. Nothing here calls the
// library: vectors are std::vector<double>, functions are std::function.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Fn = std::function<double(const Vec&)>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double len(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct Piece {
  Vec a;
  double b;
};

inline double max_affine(const std::vector<Piece>& ps, const Vec& x) {
  double m = -kInf;
  for (const auto& p : ps) m = std::max(m, dot(p.a, x) + p.b);
  return m;
}

inline double min_of_max(const std::vector<std::vector<Piece>>& cs, const Vec& x) {
  double m = kInf;
  for (const auto& c : cs) m = std::min(m, max_affine(c, x));
  return m;
}

// min over a dense angle sweep (or the two directions in 1-D) of the difference
// quotient at step t; exact for piecewise affine f once t is below every breakpoint
inline double sweep_grsl(const Fn& f, const Vec& xbar, std::size_t angles = 200000, double t = 1e-7) {
  const double f0 = f(xbar);
  double best = kInf;
  auto q = [&](const Vec& u) {
    Vec x = xbar;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * u[i];
    return (f(x) - f0) / t;
  };
  if (xbar.size() == 1) return std::min(q({1.0}), q({-1.0}));
  for (std::size_t k = 0; k < angles; ++k) {
    const double th = 2 * kPi * static_cast<double>(k) / static_cast<double>(angles);
    best = std::min(best, q({std::cos(th), std::sin(th)}));
  }
  return best;
}

// sup of |f(x) - f(y)| / |x - y| over neighbouring points of a 1-D grid
inline double grid_lipschitz_1d(const Fn& f, double lo, double hi, std::size_t n) {
  double best = 0;
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double x = lo + h * static_cast<double>(i);
    best = std::max(best, std::abs(f({x + h}) - f({x})) / h);
  }
  return best;
}

// largest sigma on the grid sigma_step * k with f(xbar + s) >= f(xbar) + sigma |s|
// at every sampled offset 1e-6 <= |s| <= 1e-2 (1-D)
inline double sigma_grid_1d(const Fn& f, double xbar, double sigma_step = 1e-4) {
  double m = kInf;
  const double f0 = f({xbar});
  for (double s = 1e-2; s >= 1e-6; s *= 0.8)
    for (double sign : {1.0, -1.0}) m = std::min(m, (f({xbar + sign * s}) - f0) / s);
  return std::floor(m / sigma_step + 1e-9) * sigma_step;
}

// ---- 2-D convex hull (Andrew's monotone chain), counter-clockwise ----
inline std::vector<Vec> hull2(std::vector<Vec> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  auto turn = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

inline double dist_to_segment(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = sub(b, a), ap = sub(p, a);
  const double l2 = dot(ab, ab);
  double t = l2 > 0 ? dot(ap, ab) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  Vec c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = a[i] + t * ab[i] - p[i];
  return len(c);
}

// min over the euclidean unit circle of the support function of conv(points):
// the distance from 0 to the boundary when 0 is interior, minus dist(0, C) otherwise.
inline double min_support_2d(const std::vector<Vec>& points) {
  const auto h = hull2(points);
  const Vec o{0.0, 0.0};
  if (h.size() == 1) return -len(h[0]);
  if (h.size() == 2) return -dist_to_segment(o, h[0], h[1]);
  bool inside = true;
  double edge_dist = kInf;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Vec& a = h[i];
    const Vec& b = h[(i + 1) % h.size()];
    const double cr = (b[0] - a[0]) * (o[1] - a[1]) - (b[1] - a[1]) * (o[0] - a[0]);
    if (cr < 0) inside = false;
    edge_dist = std::min(edge_dist, dist_to_segment(o, a, b));
  }
  return inside ? edge_dist : -edge_dist;
}

// closest point of triangle abc to p (Ericson, Real-Time Collision Detection)
inline double dist_to_triangle(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
  const Vec ab = sub(b, a), ac = sub(c, a), ap = sub(p, a);
  auto at = [&](double v, double w) {
    Vec q(3);
    for (int i = 0; i < 3; ++i) q[i] = a[i] + v * ab[i] + w * ac[i] - p[i];
    return len(q);
  };
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return len(ap);
  const Vec bp = sub(p, b);
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return len(bp);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return at(d1 / (d1 - d3), 0);
  const Vec cp = sub(p, c);
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return len(cp);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return at(0, d2 / (d2 - d6));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    Vec q(3);
    for (int i = 0; i < 3; ++i) q[i] = b[i] + w * (c[i] - b[i]) - p[i];
    return len(q);
  }
  const double den = 1.0 / (va + vb + vc);
  return at(vb * den, vc * den);
}

// 3-D analogue of min_support_2d. Facet planes come from every vertex triple with
// all points on one side; points must be in general position (random data).
inline double min_support_3d(const std::vector<Vec>& p) {
  const Vec o{0.0, 0.0, 0.0};
  const std::size_t n = p.size();
  double plane_dist = kInf;
  bool full = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec nrm = cross(sub(p[j], p[i]), sub(p[k], p[i]));
        const double l = len(nrm);
        if (l < 1e-12) continue;
        for (auto& v : nrm) v /= l;
        double lo = kInf, hi = -kInf;
        for (const auto& q : p) {
          const double s = dot(nrm, sub(q, p[i]));
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
        if (hi > 1e-12 && lo < -1e-12) continue;  // not a supporting plane
        if (hi <= 1e-12 && lo >= -1e-12) continue;  // degenerate (coplanar set)
        full = true;
        const double outward = hi <= 1e-12 ? 1.0 : -1.0;  // all points on the inner side
        plane_dist = std::min(plane_dist, outward * dot(nrm, sub(p[i], o)));
      }
  if (full && plane_dist > 0) return plane_dist;  // 0 strictly inside every facet
  double d = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    d = std::min(d, len(p[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      d = std::min(d, dist_to_segment(o, p[i], p[j]));
      for (std::size_t k = j + 1; k < n; ++k) d = std::min(d, dist_to_triangle(o, p[i], p[j], p[k]));
    }
  }
  return -d;
}

// grsl of a min-of-max-affine function in the euclidean plane or space, from the
// active pieces of the active components; no LP and no sphere search
inline double cell_grsl(const std::vector<std::vector<Piece>>& comps, const Vec& xbar, double tol = 1e-9) {
  const double f0 = min_of_max(comps, xbar);
  double best = kInf;
  for (const auto& c : comps) {
    if (max_affine(c, xbar) > f0 + tol) continue;
    std::vector<Vec> grads;
    for (const auto& p : c)
      if (dot(p.a, xbar) + p.b >= f0 - tol) grads.push_back(p.a);
    best = std::min(best, xbar.size() == 2 ? min_support_2d(grads) : min_support_3d(grads));
  }
  return best;
}

// dist(x, {f <= alpha}) over a uniform grid of the box center +- half (2-D)
inline double grid_sublevel_distance_2d(const Fn& f, double alpha, const Vec& x, double half, std::size_t n) {
  double best = kInf;
  const double h = 2 * half / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec y{x[0] - half + h * static_cast<double>(i), x[1] - half + h * static_cast<double>(j)};
      if (f(y) <= alpha) best = std::min(best, len(sub(x, y)));
    }
  return best;
}

// liminf realization of f(x) / dist(x, {f <= 0}) on the line: min over sampled
// x near xbar with f(x) > 0, distance from a fine grid of the sublevel set
inline double err_quotient_1d(const Fn& f, double xbar, double half = 1.0, std::size_t n = 200001) {
  std::vector<double> lev;
  const double h = 2 * half / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = xbar - half + h * static_cast<double>(i);
    if (f({y}) <= 0) lev.push_back(y);
  }
  double best = kInf;
  for (double s = 1e-2; s >= 1e-4; s *= 0.7)
    for (double sign : {1.0, -1.0}) {
      const double x = xbar + sign * s, fx = f({x});
      if (!(fx > 0)) continue;
      double d = kInf;
      for (double y : lev) d = std::min(d, std::abs(x - y));
      best = std::min(best, fx / d);
    }
  return best;
}

}  // namespace oracle
