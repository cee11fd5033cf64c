#include "qaoa/interpolation.hpp"

#include <cmath>
#include <stdexcept>

namespace qaoa {

namespace {

// Second derivatives of the not-a-knot cubic spline through (i, y_i),
// i = 0..m-1 on the unit-spaced grid. The m x m system is small here (circuit
// depths), so dense Gaussian elimination with partial pivoting is plenty.
std::vector<double> not_a_knot_second_derivatives(std::span<const double> y) {
  const std::size_t m = y.size();
  std::vector<double> a(m * m, 0.0), rhs(m, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * m + c]; };

  // Continuity of the third derivative at the first and last interior knots
  // (h = 1): sigma_0 - 2 sigma_1 + sigma_2 = 0 and its mirror.
  at(0, 0) = 1.0;
  at(0, 1) = -2.0;
  at(0, 2) = 1.0;
  at(m - 1, m - 3) = 1.0;
  at(m - 1, m - 2) = -2.0;
  at(m - 1, m - 1) = 1.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    at(i, i - 1) = 1.0;
    at(i, i) = 4.0;
    at(i, i + 1) = 1.0;
    rhs[i] = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]);
  }

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (pivot != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(at(col, c), at(pivot, c));
      std::swap(rhs[col], rhs[pivot]);
    }
    const double d = at(col, col);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = at(r, col) / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) at(r, c) -= f * at(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> sigma(m, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    double s = rhs[r];
    for (std::size_t c = r + 1; c < m; ++c) s -= at(r, c) * sigma[c];
    sigma[r] = s / at(r, r);
  }
  return sigma;
}

}  // namespace

std::vector<double> interpolate(std::span<const double> values,
                                std::size_t new_len, InterpKind kind) {
  const std::size_t m = values.size();
  if (m < 2) throw std::invalid_argument("interpolation needs >= 2 values");
  if (new_len < 2) throw std::invalid_argument("new_len must be >= 2");
  if (kind == InterpKind::Cubic && m < 4)
    throw std::invalid_argument("cubic interpolation needs >= 4 values");

  std::vector<double> sigma;
  if (kind == InterpKind::Cubic) sigma = not_a_knot_second_derivatives(values);

  std::vector<double> out(new_len, 0.0);
  out.front() = values.front();
  out.back() = values.back();
  const double scale =
      static_cast<double>(m - 1) / static_cast<double>(new_len - 1);
  for (std::size_t j = 1; j + 1 < new_len; ++j) {
    const double x = static_cast<double>(j) * scale;  // in [0, m-1]
    std::size_t i = static_cast<std::size_t>(x);
    if (i > m - 2) i = m - 2;
    const double t = x - static_cast<double>(i);
    if (kind == InterpKind::Linear) {
      out[j] = values[i] + t * (values[i + 1] - values[i]);
    } else {
      const double b =
          (values[i + 1] - values[i]) - (2.0 * sigma[i] + sigma[i + 1]) / 6.0;
      const double d = (sigma[i + 1] - sigma[i]) / 6.0;
      out[j] = values[i] + t * (b + t * (0.5 * sigma[i] + t * d));
    }
  }
  return out;
}

}  // namespace qaoa
