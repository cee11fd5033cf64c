#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qaoa {

enum class InterpKind { Linear, Cubic };

/// Resamples `values`, treated as samples at uniform grid points
/// {0, 1/(m-1), ..., 1} with m = values.size(), onto the uniform grid with
/// new_len points. Linear is piecewise linear; Cubic is the not-a-knot cubic
/// spline (with exactly 4 points this is the unique global cubic through
/// them). Endpoints are preserved exactly and constant input yields constant
/// output. Requires m >= 2, new_len >= 2, and m >= 4 for Cubic.
std::vector<double> interpolate(std::span<const double> values,
                                std::size_t new_len, InterpKind kind);

}  // namespace qaoa
