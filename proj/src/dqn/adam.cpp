#include "vric/dqn/adam.hpp"

#include <cmath>

namespace vric::dqn {

AdamOptimizer::AdamOptimizer(const QNetwork& net, double lr, double beta1,
                             double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (const auto& layer : net.layers()) {
    m_w_.emplace_back(layer.w.size(), 0.0);
    v_w_.emplace_back(layer.w.size(), 0.0);
    m_b_.emplace_back(layer.b.size(), 0.0);
    v_b_.emplace_back(layer.b.size(), 0.0);
  }
}

void AdamOptimizer::apply(QNetwork& net, const QNetwork::Gradients& grads) {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));

  auto update = [&](std::vector<double>& param, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < param.size(); ++i) {
      m[i] = beta1_ * m[i] + (1.0 - beta1_) * g[i];
      v[i] = beta2_ * v[i] + (1.0 - beta2_) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      param[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
  };

  auto& layers = net.layers();
  for (std::size_t k = 0; k < layers.size(); ++k) {
    update(layers[k].w, grads.dw[k], m_w_[k], v_w_[k]);
    update(layers[k].b, grads.db[k], m_b_[k], v_b_[k]);
  }
}

}  // namespace vric::dqn
