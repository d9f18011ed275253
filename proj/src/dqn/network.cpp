#include "vric/dqn/network.hpp"

#include <cmath>

#include "vric/dqn/kernels.hpp"

namespace vric::dqn {

QNetwork QNetwork::zeros(std::span<const std::size_t> dims) {
  if (dims.size() < 2) {
    throw DimensionMismatch("network needs at least input and output dims");
  }
  QNetwork net;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    Layer layer;
    layer.in_dim = dims[k];
    layer.out_dim = dims[k + 1];
    layer.w.assign(layer.in_dim * layer.out_dim, 0.0);
    layer.b.assign(layer.out_dim, 0.0);
    net.layers_.push_back(std::move(layer));
  }
  return net;
}

QNetwork QNetwork::he_init(std::span<const std::size_t> dims,
                           std::mt19937_64& rng) {
  QNetwork net = zeros(dims);
  for (std::size_t k = 0; k < net.layers_.size(); ++k) {
    Layer& layer = net.layers_[k];
    const bool last = (k + 1 == net.layers_.size());
    if (last) {
      // Small uniform output layer keeps initial Q-values near zero.
      const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_dim));
      std::uniform_real_distribution<double> dist(-0.01 * bound, 0.01 * bound);
      for (double& v : layer.w) {
        v = dist(rng);
      }
    } else {
      std::normal_distribution<double> dist(
          0.0, std::sqrt(2.0 / static_cast<double>(layer.in_dim)));
      for (double& v : layer.w) {
        v = dist(rng);
      }
    }
  }
  return net;
}

std::size_t QNetwork::input_dim() const {
  return layers_.empty() ? 0 : layers_.front().in_dim;
}

std::size_t QNetwork::output_dim() const {
  return layers_.empty() ? 0 : layers_.back().out_dim;
}

std::size_t QNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers_) {
    n += l.w.size() + l.b.size();
  }
  return n;
}

std::vector<double> QNetwork::forward_one(std::span<const double> x) const {
  if (x.size() != input_dim()) {
    throw DimensionMismatch("input size " + std::to_string(x.size()) +
                            " != network input dim " +
                            std::to_string(input_dim()));
  }
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    next.assign(l.out_dim, 0.0);
    linear_forward(cur.data(), 1, l.in_dim, l.w.data(), l.b.data(), l.out_dim,
                   next.data());
    if (k + 1 < layers_.size()) {
      relu_inplace(next.data(), next.size());
    }
    cur.swap(next);
  }
  return cur;
}

void QNetwork::forward_batch(const double* in, std::size_t batch,
                             Activations& ws) const {
  ws.batch = batch;
  ws.acts.resize(layers_.size() + 1);
  ws.acts[0].assign(in, in + batch * input_dim());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    ws.acts[k + 1].assign(batch * l.out_dim, 0.0);
    linear_forward(ws.acts[k].data(), batch, l.in_dim, l.w.data(), l.b.data(),
                   l.out_dim, ws.acts[k + 1].data());
    if (k + 1 < layers_.size()) {
      relu_inplace(ws.acts[k + 1].data(), ws.acts[k + 1].size());
    }
  }
}

QNetwork::Gradients QNetwork::make_gradients() const {
  Gradients g;
  g.dw.resize(layers_.size());
  g.db.resize(layers_.size());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    g.dw[k].assign(layers_[k].w.size(), 0.0);
    g.db[k].assign(layers_[k].b.size(), 0.0);
  }
  return g;
}

void QNetwork::Gradients::zero() {
  for (auto& v : dw) {
    std::fill(v.begin(), v.end(), 0.0);
  }
  for (auto& v : db) {
    std::fill(v.begin(), v.end(), 0.0);
  }
}

void QNetwork::backward_batch(const Activations& ws, const double* d_out,
                              Gradients& grads) const {
  const std::size_t batch = ws.batch;
  std::vector<double> d_act(d_out, d_out + batch * output_dim());
  std::vector<double> d_in;

  for (std::size_t k = layers_.size(); k-- > 0;) {
    const Layer& l = layers_[k];
    // Hidden layers carry ReLU; fold its derivative into d_act first.
    if (k + 1 < layers_.size()) {
      relu_backward(ws.acts[k + 1].data(), d_act.data(), d_act.size(),
                    d_act.data());
    }
    d_in.assign(batch * l.in_dim, 0.0);
    linear_backward(ws.acts[k].data(), l.w.data(), d_act.data(), batch,
                    l.in_dim, l.out_dim, k > 0 ? d_in.data() : nullptr,
                    grads.dw[k].data(), grads.db[k].data());
    d_act.swap(d_in);
  }
}

bool QNetwork::operator==(const QNetwork& o) const {
  if (layers_.size() != o.layers_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k].in_dim != o.layers_[k].in_dim ||
        layers_[k].out_dim != o.layers_[k].out_dim ||
        layers_[k].w != o.layers_[k].w || layers_[k].b != o.layers_[k].b) {
      return false;
    }
  }
  return true;
}

}  // namespace vric::dqn
