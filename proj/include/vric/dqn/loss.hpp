#pragma once

#include <span>

#include "vric/dqn/network.hpp"
#include "vric/dqn/replay.hpp"

namespace vric::dqn {

// One-step TD loss with Huber robustification:
//   y  = r + gamma * (1 - done) * max_a' Q_target(s')[a']
//   L  = mean_batch Huber_1(Q(s)[a] - y)
struct TdLoss {
  double loss = 0.0;
  QNetwork::Gradients grads;
};

TdLoss td_loss(const QNetwork& net, const QNetwork& target,
               std::span<const Transition> batch, double gamma);

// Loss only, for finite-difference checks.
double td_loss_value(const QNetwork& net, const QNetwork& target,
                     std::span<const Transition> batch, double gamma);

}  // namespace vric::dqn
