#include "vric/dqn/loss.hpp"

#include <algorithm>
#include <cmath>

namespace vric::dqn {

namespace {

// Targets never carry gradients; compute them once per batch.
std::vector<double> td_targets(const QNetwork& target,
                               std::span<const Transition> batch,
                               double gamma) {
  const std::size_t n = batch.size();
  const std::size_t out_dim = target.output_dim();

  std::vector<double> next_in(n * kStateDim);
  for (std::size_t b = 0; b < n; ++b) {
    std::copy(batch[b].next_state.begin(), batch[b].next_state.end(),
              next_in.begin() + b * kStateDim);
  }
  QNetwork::Activations ws;
  target.forward_batch(next_in.data(), n, ws);
  const std::vector<double>& q_next = ws.acts.back();

  std::vector<double> y(n);
  for (std::size_t b = 0; b < n; ++b) {
    double best = q_next[b * out_dim];
    for (std::size_t a = 1; a < out_dim; ++a) {
      best = std::max(best, q_next[b * out_dim + a]);
    }
    y[b] = batch[b].reward +
           (batch[b].done ? 0.0 : gamma * best);
  }
  return y;
}

struct ForwardPass {
  QNetwork::Activations ws;
  std::vector<double> in;
};

ForwardPass forward_states(const QNetwork& net,
                           std::span<const Transition> batch) {
  ForwardPass fp;
  fp.in.resize(batch.size() * kStateDim);
  for (std::size_t b = 0; b < batch.size(); ++b) {
    std::copy(batch[b].state.begin(), batch[b].state.end(),
              fp.in.begin() + b * kStateDim);
  }
  net.forward_batch(fp.in.data(), batch.size(), fp.ws);
  return fp;
}

}  // namespace

TdLoss td_loss(const QNetwork& net, const QNetwork& target,
               std::span<const Transition> batch, double gamma) {
  const std::size_t n = batch.size();
  const std::size_t out_dim = net.output_dim();
  const std::vector<double> y = td_targets(target, batch, gamma);
  ForwardPass fp = forward_states(net, batch);
  const std::vector<double>& q = fp.ws.acts.back();

  TdLoss result;
  result.grads = net.make_gradients();

  std::vector<double> d_out(n * out_dim, 0.0);
  double loss = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const double err = q[b * out_dim + batch[b].action] - y[b];
    if (std::abs(err) <= 1.0) {
      loss += 0.5 * err * err;
    } else {
      loss += std::abs(err) - 0.5;
    }
    d_out[b * out_dim + batch[b].action] =
        std::clamp(err, -1.0, 1.0) / static_cast<double>(n);
  }
  result.loss = loss / static_cast<double>(n);

  net.backward_batch(fp.ws, d_out.data(), result.grads);
  return result;
}

double td_loss_value(const QNetwork& net, const QNetwork& target,
                     std::span<const Transition> batch, double gamma) {
  const std::size_t n = batch.size();
  const std::size_t out_dim = net.output_dim();
  const std::vector<double> y = td_targets(target, batch, gamma);
  ForwardPass fp = forward_states(net, batch);
  const std::vector<double>& q = fp.ws.acts.back();

  double loss = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const double err = q[b * out_dim + batch[b].action] - y[b];
    loss += (std::abs(err) <= 1.0) ? 0.5 * err * err : std::abs(err) - 0.5;
  }
  return loss / static_cast<double>(n);
}

}  // namespace vric::dqn
