#include <cmath>

#include "dcatight/dca_engine.hpp"
#include "dcatight/error.hpp"

namespace dcatight {

namespace {

void check_class(double mu, ExtReal L) {
  if (!std::isfinite(mu) || !(L > 0.0) || !(mu <= L))
    throw Error(ErrorCode::InvalidArgument, "interpolation needs L > 0 and mu <= L");
}

struct RowMin {
  double slack = kInf;
  std::size_t j = 0;
};

RowMin row_min(const std::vector<Triplet>& t, std::size_t i, double mu, ExtReal L) {
  RowMin m;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j == i) continue;
    const double s = interpolation_slack(t[i], t[j], mu, L);
    if (s < m.slack) m = {s, j};
  }
  return m;
}

InterpolationResult reduce(const std::vector<RowMin>& rows, double tol) {
  InterpolationResult out;
  double worst = kInf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].slack < worst) {
      worst = rows[i].slack;
      out.worst_i = i;
      out.worst_j = rows[i].j;
    }
  }
  out.worst_violation = rows.size() < 2 ? 0.0 : worst;
  out.ok = out.worst_violation >= -tol;
  return out;
}

}  // namespace

double interpolation_slack(const Triplet& ti, const Triplet& tj, double mu, ExtReal L) {
  const Vector dx = ti.x - tj.x;
  const Vector dg = ti.g - tj.g;
  const double lhs = ti.f - tj.f - tj.g.dot(dx);
  if (L.is_inf()) return lhs - 0.5 * mu * dx.squaredNorm();
  const double l = L.value();
  if (mu == l) {
    // The class is a single quadratic curvature: equality and g = L x up to a constant.
    return -std::abs(lhs - 0.5 * l * dx.squaredNorm()) - (dg - l * dx).norm();
  }
  return lhs - dg.squaredNorm() / (2.0 * l) - mu / (2.0 * l * (l - mu)) * (dg - l * dx).squaredNorm();
}

InterpolationResult interpolation_check(const std::vector<Triplet>& triplets, double mu, ExtReal L, double tol) {
  check_class(mu, L);
  std::vector<RowMin> rows(triplets.size());
  const auto n = static_cast<std::ptrdiff_t>(triplets.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = row_min(triplets, static_cast<std::size_t>(i), mu, L);
  return reduce(rows, tol);
}

InterpolationResult interpolation_check_serial(const std::vector<Triplet>& triplets, double mu, ExtReal L,
                                               double tol) {
  check_class(mu, L);
  std::vector<RowMin> rows;
  rows.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) rows.push_back(row_min(triplets, i, mu, L));
  return reduce(rows, tol);
}

}  // namespace dcatight
