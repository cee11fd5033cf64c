#include "qaoa/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace qaoa {

AdamOptimizer::AdamOptimizer(std::size_t dim, AdamParams hyper)
    : hyper_(hyper) {
  if (dim < 1) throw std::invalid_argument("optimizer dimension must be >= 1");
  if (!(hyper_.beta1 > 0.0 && hyper_.beta1 < 1.0) ||
      !(hyper_.beta2 > 0.0 && hyper_.beta2 < 1.0))
    throw std::invalid_argument("Adam betas must lie in (0, 1)");
  if (hyper_.learning_rate <= 0.0 || hyper_.epsilon <= 0.0)
    throw std::invalid_argument("learning rate and epsilon must be positive");
  first_moment_.assign(dim, 0.0);
  second_moment_.assign(dim, 0.0);
}

void AdamOptimizer::reset(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("optimizer dimension must be >= 1");
  first_moment_.assign(dim, 0.0);
  second_moment_.assign(dim, 0.0);
  step_count_ = 0;
}

std::vector<double> AdamOptimizer::step(std::span<const double> params,
                                        std::span<const double> grads) {
  const std::size_t d = dim();
  if (params.size() != d || grads.size() != d)
    throw std::invalid_argument("parameter/gradient length mismatch");
  for (double g : grads)
    if (!std::isfinite(g))
      throw std::invalid_argument("non-finite gradient entry");

  ++step_count_;
  const double b1 = hyper_.beta1;
  const double b2 = hyper_.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(step_count_));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(step_count_));

  std::vector<double> next(params.begin(), params.end());
  for (std::size_t i = 0; i < d; ++i) {
    first_moment_[i] = b1 * first_moment_[i] + (1.0 - b1) * grads[i];
    second_moment_[i] =
        b2 * second_moment_[i] + (1.0 - b2) * grads[i] * grads[i];
    const double m_hat = first_moment_[i] / corr1;
    const double v_hat = second_moment_[i] / corr2;
    next[i] -= hyper_.learning_rate * m_hat / (std::sqrt(v_hat) + hyper_.epsilon);
  }
  return next;
}

}  // namespace qaoa
