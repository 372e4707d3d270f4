#include "slopelab/space.hpp"

#include <algorithm>

#include "slopelab/errors.hpp"

namespace slopelab {

std::string_view norm_name(Norm norm) {
  switch (norm) {
    case Norm::kEuclidean: return "euclidean";
    case Norm::kEll1: return "ell1";
    case Norm::kEllInf: return "ellinf";
  }
  return "euclidean";
}

Norm parse_norm(std::string_view name) {
  if (name == "euclidean" || name == "ell2" || name == "l2") return Norm::kEuclidean;
  if (name == "ell1" || name == "l1") return Norm::kEll1;
  if (name == "ellinf" || name == "linf") return Norm::kEllInf;
  fail(ErrorCode::kInvalidArgument, "unknown norm '" + std::string(name) + "'");
}

namespace {

double lp_norm(Norm norm, ConstVec v) {
  switch (norm) {
    case Norm::kEuclidean: return euclidean_norm(v);
    case Norm::kEll1: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
    case Norm::kEllInf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

Norm dual_of(Norm norm) {
  switch (norm) {
    case Norm::kEll1: return Norm::kEllInf;
    case Norm::kEllInf: return Norm::kEll1;
    default: return Norm::kEuclidean;
  }
}

}  // namespace

double SpaceConfig::norm_of(ConstVec v) const { return lp_norm(norm, v); }

double SpaceConfig::dual_norm_of(ConstVec v) const { return lp_norm(dual_of(norm), v); }

double SpaceConfig::distance(ConstVec x, ConstVec y) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::abs(x[i] - y[i]);
    switch (norm) {
      case Norm::kEuclidean: acc += d * d; break;
      case Norm::kEll1: acc += d; break;
      case Norm::kEllInf: acc = std::max(acc, d); break;
    }
  }
  return norm == Norm::kEuclidean ? std::sqrt(acc) : acc;
}

Point SpaceConfig::dual_norming_vector(ConstVec v) const {
  Point out(v.size(), 0.0);
  const double n = norm_of(v);
  if (n == 0.0) return out;
  switch (norm) {
    case Norm::kEuclidean:
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
      break;
    case Norm::kEll1:
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
      break;
    case Norm::kEllInf: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
      out[best] = v[best] > 0 ? 1.0 : -1.0;
      break;
    }
  }
  return out;
}

double SpaceConfig::euclidean_distortion() const {
  if (norm == Norm::kEuclidean) return 1.0;
  return 2.0 * std::sqrt(static_cast<double>(dim));
}

void SpaceConfig::check_point(ConstVec x, std::string_view what) const {
  if (x.size() != dim)
    fail(ErrorCode::kDimensionMismatch, std::string(what) + " has dimension " + std::to_string(x.size()) +
                                            ", expected " + std::to_string(dim));
}

double dot(ConstVec a, ConstVec b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point add(ConstVec a, ConstVec b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Point sub(ConstVec a, ConstVec b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point axpy(double alpha, ConstVec x, ConstVec y) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + y[i];
  return out;
}

Point scaled(double alpha, ConstVec x) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
  return out;
}

double euclidean_norm(ConstVec v) { return std::sqrt(dot(v, v)); }

}  // namespace slopelab
