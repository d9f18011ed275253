#pragma once

#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace vric::dqn {

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain MLP: affine layers with ReLU on hidden layers and identity output.
// Weights are row-major, w[o * in_dim + i].
class QNetwork {
 public:
  struct Layer {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<double> w;
    std::vector<double> b;
  };

  QNetwork() = default;

  // All-zero weights with the given layer widths, e.g. {11, 64, 64, 3}.
  static QNetwork zeros(std::span<const std::size_t> dims);

  // He-initialized hidden layers, small uniform output layer.
  static QNetwork he_init(std::span<const std::size_t> dims,
                          std::mt19937_64& rng);

  [[nodiscard]] std::size_t input_dim() const;
  [[nodiscard]] std::size_t output_dim() const;
  [[nodiscard]] std::vector<Layer>& layers() { return layers_; }
  [[nodiscard]] const std::vector<Layer>& layers() const { return layers_; }
  [[nodiscard]] std::size_t parameter_count() const;

  [[nodiscard]] std::vector<double> forward_one(std::span<const double> x) const;

  // Batched forward keeping every activation for backprop. acts[0] is the
  // input copy; acts[k] the post-activation output of layer k-1.
  struct Activations {
    std::size_t batch = 0;
    std::vector<std::vector<double>> acts;
  };
  void forward_batch(const double* in, std::size_t batch, Activations& ws) const;

  struct Gradients {
    std::vector<std::vector<double>> dw;
    std::vector<std::vector<double>> db;

    void zero();
  };
  [[nodiscard]] Gradients make_gradients() const;

  // Backprop from d(loss)/d(output). `ws` must come from forward_batch on
  // the same input.
  void backward_batch(const Activations& ws, const double* d_out,
                      Gradients& grads) const;

  bool operator==(const QNetwork& o) const;

 private:
  std::vector<Layer> layers_;
};

}  // namespace vric::dqn
