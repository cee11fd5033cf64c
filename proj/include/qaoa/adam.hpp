#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qaoa {

struct AdamParams {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Standard bias-corrected Adam. The optimizer is a plain value: identical
/// (state, params, grads) sequences produce identical trajectories, and
/// reset() restores a freshly initialized state (possibly at a new
/// dimension, as required when the circuit depth grows).
class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::size_t dim, AdamParams hyper = {});

  /// One update; returns the new parameter vector and advances the moments.
  /// Throws on length mismatch or non-finite gradient entries.
  std::vector<double> step(std::span<const double> params,
                           std::span<const double> grads);

  void reset() { reset(dim()); }
  void reset(std::size_t dim);

  std::size_t dim() const { return first_moment_.size(); }
  long long step_count() const { return step_count_; }
  const AdamParams& hyper() const { return hyper_; }
  const std::vector<double>& first_moment() const { return first_moment_; }
  const std::vector<double>& second_moment() const { return second_moment_; }

 private:
  AdamParams hyper_;
  std::vector<double> first_moment_;
  std::vector<double> second_moment_;
  long long step_count_ = 0;
};

}  // namespace qaoa
