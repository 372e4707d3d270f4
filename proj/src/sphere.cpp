#include "slopelab/sphere.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "slopelab/errors.hpp"
#include "slopelab/lp.hpp"
#include "slopelab/rng.hpp"

namespace slopelab::sphere {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMeshLevel = 5;
constexpr std::size_t kCircleMesh = 720;
constexpr std::size_t kCandidates = 8;
constexpr double kAngleTol = 1e-11;

struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::vector<std::size_t>> neighbors;
  double max_edge_angle = 0.0;
};

Mesh build_icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                          {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p = scaled(1.0 / euclidean_norm(p), p);
  std::vector<std::array<std::size_t, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid;
    auto midpoint = [&](std::size_t a, std::size_t b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      Point m = add(v[a], v[b]);
      m = scaled(1.0 / euclidean_norm(m), m);
      v.push_back(std::move(m));
      mid.emplace(key, v.size() - 1);
      return v.size() - 1;
    };
    std::vector<std::array<std::size_t, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const std::size_t a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }
  Mesh mesh;
  mesh.neighbors.resize(v.size());
  for (const auto& f : faces) {
    for (int i = 0; i < 3; ++i) {
      const std::size_t a = f[i], b = f[(i + 1) % 3];
      mesh.neighbors[a].push_back(b);
      mesh.neighbors[b].push_back(a);
      mesh.max_edge_angle = std::max(mesh.max_edge_angle, std::acos(std::clamp(dot(v[a], v[b]), -1.0, 1.0)));
    }
  }
  for (auto& nb : mesh.neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  mesh.vertices = std::move(v);
  return mesh;
}

const Mesh& mesh3() {
  static const Mesh m = build_icosphere(kMeshLevel);
  return m;
}

Point normalize(const SpaceConfig& space, Point w) {
  const double n = space.norm_of(w);
  for (auto& x : w) x /= n;
  return w;
}

// Indices of mesh-local minima, best first, at most kCandidates.
std::vector<std::size_t> local_minima(const std::vector<double>& values,
                                      const std::function<bool(std::size_t, std::size_t)>& is_neighbor_better) {
  std::vector<std::size_t> mins;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!is_neighbor_better(i, 0)) mins.push_back(i);
  std::sort(mins.begin(), mins.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  if (mins.size() > kCandidates) mins.resize(kCandidates);
  if (mins.empty()) {
    mins.push_back(static_cast<std::size_t>(
        std::min_element(values.begin(), values.end()) - values.begin()));
  }
  return mins;
}

}  // namespace

Minimum refine(const SpaceConfig& space, const std::function<double(ConstVec)>& g, ConstVec center,
               double half_angle) {
  if (space.dim == 1) {
    const Point u{center[0] >= 0 ? 1.0 : -1.0};
    return {g(u), u};
  }
  if (space.dim == 2) {
    const double c = std::atan2(center[1], center[0]);
    auto at = [&](double th) { return normalize(space, {std::cos(th), std::sin(th)}); };
    double arg = c;
    const double v = golden_section([&](double th) { return g(at(th)); }, c - half_angle, c + half_angle, kAngleTol,
                                    &arg);
    return {v, at(arg)};
  }
  if (space.dim != 3) fail(ErrorCode::kUnsupported, "local sphere refinement is implemented for dim <= 3");
  const Point e1 = scaled(1.0 / euclidean_norm(center), center);
  const Point helper = std::abs(e1[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
  Point e2 = axpy(-dot(helper, e1), e1, helper);
  e2 = scaled(1.0 / euclidean_norm(e2), e2);
  const Point e3 = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]};
  auto at = [&](double a, double b) {
    Point w(3);
    for (int i = 0; i < 3; ++i)
      w[i] = std::cos(a) * std::cos(b) * e1[i] + std::sin(a) * std::cos(b) * e2[i] + std::sin(b) * e3[i];
    return normalize(space, w);
  };
  auto inner = [&](double b, double* arg_a) {
    return golden_section([&](double a) { return g(at(a, b)); }, -half_angle, half_angle, kAngleTol, arg_a);
  };
  double arg_b = 0.0;
  golden_section(
      [&](double b) {
        double a = 0.0;
        return inner(b, &a);
      },
      -half_angle, half_angle, kAngleTol, &arg_b);
  double arg_a = 0.0;
  const double v = inner(arg_b, &arg_a);
  return {v, at(arg_a, arg_b)};
}

namespace {

Minimum minimize_circle(const SpaceConfig& space, const std::function<double(ConstVec)>& g) {
  auto at = [&](double theta) { return normalize(space, {std::cos(theta), std::sin(theta)}); };
  auto value = [&](double theta) { return g(at(theta)); };
  const double step = 2.0 * kPi / static_cast<double>(kCircleMesh);
  std::vector<double> vals(kCircleMesh);
  for (std::size_t j = 0; j < kCircleMesh; ++j) vals[j] = value(step * static_cast<double>(j));
  auto mins = local_minima(vals, [&](std::size_t i, std::size_t) {
    const std::size_t l = (i + kCircleMesh - 1) % kCircleMesh, r = (i + 1) % kCircleMesh;
    return vals[l] < vals[i] || vals[r] < vals[i];
  });
  Minimum best;
  for (std::size_t j : mins) {
    const double c = step * static_cast<double>(j);
    if (vals[j] < best.value) best = {vals[j], at(c)};
    const Minimum m = refine(space, g, Point{std::cos(c), std::sin(c)}, 2.0 * step);
    if (m.value < best.value) best = m;
  }
  return best;
}

Minimum minimize_sphere3(const SpaceConfig& space, const std::function<double(ConstVec)>& g) {
  const Mesh& mesh = mesh3();
  const auto& verts = mesh.vertices;
  std::vector<double> vals(verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j) vals[j] = g(normalize(space, verts[j]));
  auto mins = local_minima(vals, [&](std::size_t i, std::size_t) {
    for (std::size_t nb : mesh.neighbors[i])
      if (vals[nb] < vals[i] || (vals[nb] == vals[i] && nb < i)) return true;
    return false;
  });
  const double half = 2.0 * mesh.max_edge_angle;
  Minimum best;
  for (std::size_t j : mins) {
    if (vals[j] < best.value) best = {vals[j], normalize(space, verts[j])};
    const Minimum m = refine(space, g, verts[j], half);
    if (m.value < best.value) best = m;
  }
  return best;
}

double max_linear(const std::vector<Point>& grads, ConstVec u) {
  double m = -kInf;
  for (const auto& a : grads) m = std::max(m, dot(a, u));
  return m;
}

Point cross3(ConstVec a, ConstVec b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void push_unit(std::vector<Point>& out, const Point& w, double scale) {
  const double n = euclidean_norm(w);
  if (n > 1e-14 * scale) out.push_back(scaled(1.0 / n, w));
}

// Euclidean sphere. On the stratum where exactly the pieces S are active, h is one linear
// function restricted to the unit sphere of V_S = {u : <a_j - a_i, u> = 0, j in S}; its
// minimum there is the normalized projection of -a_i onto V_S. Strata with |S| <= dim cover
// the generic cases; degenerate strata reduce to one of those.
std::vector<Point> euclidean_candidates(const std::vector<Point>& g, std::size_t dim) {
  double scale = 1.0;
  for (const auto& a : g) scale = std::max(scale, euclidean_norm(a));
  std::vector<Point> c;
  Point e1(dim, 0.0);
  e1[0] = 1.0;
  c.push_back(e1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    push_unit(c, scaled(-1.0, g[i]), scale);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Point d = sub(g[j], g[i]);
      const double dd = dot(d, d);
      if (!(dd > 1e-28 * scale * scale)) continue;
      if (dim == 2) {
        push_unit(c, {-d[1], d[0]}, scale);
        push_unit(c, {d[1], -d[0]}, scale);
        continue;
      }
      const Point pa = axpy(-dot(g[i], d) / dd, d, g[i]);
      const std::size_t before = c.size();
      push_unit(c, scaled(-1.0, pa), scale);
      if (c.size() == before) {  // h is constant on the circle; any unit vector of V_S will do
        const std::size_t k = std::abs(d[0]) <= std::abs(d[1]) && std::abs(d[0]) <= std::abs(d[2]) ? 0
                              : std::abs(d[1]) <= std::abs(d[2])                                  ? 1
                                                                                                   : 2;
        Point ek(3, 0.0);
        ek[k] = 1.0;
        push_unit(c, cross3(d, ek), scale);
      }
      for (std::size_t k = j + 1; k < g.size(); ++k) {
        const Point n = cross3(d, sub(g[k], g[i]));
        push_unit(c, n, scale * scale);
        push_unit(c, scaled(-1.0, n), scale * scale);
      }
    }
  }
  return c;
}

// Facet normals of the dual ball: the primal unit ball is {u : <c, u> <= 1 for all c}.
std::vector<Point> ball_facets(const SpaceConfig& space) {
  const std::size_t n = space.dim;
  std::vector<Point> out;
  if (space.norm == Norm::kEllInf) {
    for (std::size_t k = 0; k < n; ++k)
      for (double s : {1.0, -1.0}) {
        Point c(n, 0.0);
        c[k] = s;
        out.push_back(std::move(c));
      }
  } else {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Point c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = (mask >> k) & 1 ? -1.0 : 1.0;
      out.push_back(std::move(c));
    }
  }
  return out;
}

// Polyhedral sphere: on each facet {<c, u> = 1} of the ball, min t subject to <a_i, u> <= t
// is a linear program. Variables u = u+ - u-, t = t+ - t-, one slack per inequality.
std::vector<Point> polyhedral_candidates(const SpaceConfig& space, const std::vector<Point>& g) {
  const std::size_t n = space.dim;
  const auto facets = ball_facets(space);
  const std::size_t rows = g.size() + facets.size();
  const std::size_t cols = 2 * n + 2 + g.size() + facets.size() - 1;
  std::vector<Point> out;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
    std::vector<double> b(rows, 0.0), c(cols, 0.0);
    c[2 * n] = 1.0;
    c[2 * n + 1] = -1.0;
    std::size_t slack = 2 * n + 2;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] = g[i][k];
        a[i][n + k] = -g[i][k];
      }
      a[i][2 * n] = -1.0;
      a[i][2 * n + 1] = 1.0;
      a[i][slack++] = 1.0;
    }
    for (std::size_t h = 0; h < facets.size(); ++h) {
      const std::size_t r = g.size() + h;
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] = facets[h][k];
        a[r][n + k] = -facets[h][k];
      }
      b[r] = 1.0;
      if (h != f) a[r][slack++] = 1.0;
    }
    const lp::Result res = lp::solve_standard_form(a, b, c);
    if (res.status != lp::Status::kOptimal) continue;
    Point u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = res.x[k] - res.x[n + k];
    if (space.norm_of(u) > 0.0) out.push_back(normalize(space, std::move(u)));
  }
  return out;
}

}  // namespace

Minimum minimize_max_linear(const SpaceConfig& space, const std::vector<Point>& grads) {
  if (grads.empty()) fail(ErrorCode::kInvalidArgument, "need at least one gradient");
  if (space.dim == 1) return minimize(space, [&](ConstVec u) { return max_linear(grads, u); });
  if (space.dim > 3) fail(ErrorCode::kUnsupported, "sphere minimization is implemented for dim <= 3");
  const auto cand = space.norm == Norm::kEuclidean ? euclidean_candidates(grads, space.dim)
                                                   : polyhedral_candidates(space, grads);
  Minimum best;
  for (const auto& u : cand) {
    const double v = max_linear(grads, u);
    if (v < best.value) best = {v, u};
  }
  if (best.argmin.empty()) fail(ErrorCode::kInternal, "no candidate direction on the sphere");
  return best;
}

double golden_section(const std::function<double(double)>& f, double a, double b, double tol, double* argmin) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = fc <= fd ? c : d;
  if (argmin) *argmin = x;
  return std::min(fc, fd);
}

const std::vector<Point>& icosphere(int level) {
  if (level == kMeshLevel) return mesh3().vertices;
  static std::map<int, std::vector<Point>> cache;  // test/diagnostic use only
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, build_icosphere(level).vertices).first;
  return it->second;
}

std::vector<Point> sample_directions(const SpaceConfig& space, std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  const std::size_t n = space.dim;
  if (n == 1) return {{1.0}, {-1.0}};
  if (count == 0) fail(ErrorCode::kInvalidArgument, "direction count must be positive");
  out.reserve(count);
  if (n == 2) {
    for (std::size_t j = 0; j < count; ++j) {
      const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(count);
      out.push_back(normalize(space, {std::cos(th), std::sin(th)}));
    }
  } else if (n == 3) {
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = golden_angle * static_cast<double>(j);
      out.push_back(normalize(space, {r * std::cos(th), r * std::sin(th), z}));
    }
  } else {
    Rng rng(seed);
    for (std::size_t j = 0; j < count; ++j) {
      Point w(n);
      for (auto& x : w) x = rng.normal();
      out.push_back(normalize(space, std::move(w)));
    }
  }
  return out;
}

double covering_radius(const SpaceConfig& space, std::size_t count) {
  double euclid = kInf;
  switch (space.dim) {
    case 1: return 0.0;
    case 2: euclid = kPi / static_cast<double>(count); break;
    case 3: euclid = 3.0 / std::sqrt(static_cast<double>(count)); break;
    default: return kInf;
  }
  return space.euclidean_distortion() * euclid;
}

Minimum minimize(const SpaceConfig& space, const std::function<double(ConstVec)>& g) {
  switch (space.dim) {
    case 1: {
      const double vp = g(Point{1.0}), vm = g(Point{-1.0});
      return vp <= vm ? Minimum{vp, {1.0}} : Minimum{vm, {-1.0}};
    }
    case 2: return minimize_circle(space, g);
    case 3: return minimize_sphere3(space, g);
    default: fail(ErrorCode::kUnsupported, "sphere minimization is implemented for dim <= 3");
  }
}

}  // namespace slopelab::sphere
