#pragma once

#include <vector>

#include "vric/dqn/network.hpp"

namespace vric::dqn {

// Adaptive-moment SGD over QNetwork parameters.
class AdamOptimizer {
 public:
  AdamOptimizer(const QNetwork& net, double lr, double beta1 = 0.9,
                double beta2 = 0.999, double eps = 1e-8);

  void apply(QNetwork& net, const QNetwork::Gradients& grads);

  [[nodiscard]] long step_count() const { return t_; }

 private:
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  long t_ = 0;
  std::vector<std::vector<double>> m_w_, v_w_, m_b_, v_b_;
};

}  // namespace vric::dqn
