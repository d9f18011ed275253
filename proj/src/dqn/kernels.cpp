#include "vric/dqn/kernels.hpp"

#include <cstdint>

namespace vric::dqn {

// Work below this size is not worth a thread team.
static constexpr std::size_t kParallelCutoff = 2048;

void linear_forward(const double* in, std::size_t batch, std::size_t in_dim,
                    const double* w, const double* bias, std::size_t out_dim,
                    double* out) {
  const std::int64_t n = static_cast<std::int64_t>(batch);
#pragma omp parallel for schedule(static) if (batch * out_dim * in_dim > kParallelCutoff)
  for (std::int64_t b = 0; b < n; ++b) {
    const double* x = in + b * in_dim;
    double* y = out + b * out_dim;
    for (std::size_t o = 0; o < out_dim; ++o) {
      double acc = bias[o];
      const double* wr = w + o * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) {
        acc += wr[i] * x[i];
      }
      y[o] = acc;
    }
  }
}

void relu_inplace(double* x, std::size_t n) {
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
  for (std::int64_t i = 0; i < sn; ++i) {
    if (x[i] < 0.0) {
      x[i] = 0.0;
    }
  }
}

void linear_backward(const double* in, const double* w, const double* d_out,
                     std::size_t batch, std::size_t in_dim, std::size_t out_dim,
                     double* d_in, double* d_w, double* d_bias) {
  if (d_in != nullptr) {
    const std::int64_t n = static_cast<std::int64_t>(batch);
#pragma omp parallel for schedule(static) if (batch * in_dim * out_dim > kParallelCutoff)
    for (std::int64_t b = 0; b < n; ++b) {
      const double* dy = d_out + b * out_dim;
      double* dx = d_in + b * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) {
        double acc = 0.0;
        for (std::size_t o = 0; o < out_dim; ++o) {
          acc += dy[o] * w[o * in_dim + i];
        }
        dx[i] = acc;
      }
    }
  }

  if (d_w != nullptr) {
    const std::int64_t no = static_cast<std::int64_t>(out_dim);
#pragma omp parallel for schedule(static) if (batch * in_dim * out_dim > kParallelCutoff)
    for (std::int64_t o = 0; o < no; ++o) {
      for (std::size_t i = 0; i < in_dim; ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < batch; ++b) {
          acc += d_out[b * out_dim + o] * in[b * in_dim + i];
        }
        d_w[o * in_dim + i] = acc;
      }
    }
  }

  if (d_bias != nullptr) {
    const std::int64_t no = static_cast<std::int64_t>(out_dim);
#pragma omp parallel for schedule(static) if (batch * out_dim > kParallelCutoff)
    for (std::int64_t o = 0; o < no; ++o) {
      double acc = 0.0;
      for (std::size_t b = 0; b < batch; ++b) {
        acc += d_out[b * out_dim + o];
      }
      d_bias[o] = acc;
    }
  }
}

void relu_backward(const double* act, const double* d_act, std::size_t n,
                   double* d_pre) {
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
  for (std::int64_t i = 0; i < sn; ++i) {
    d_pre[i] = act[i] > 0.0 ? d_act[i] : 0.0;
  }
}

// ----------------------------------------------------------------------------
// Serial reference: identical arithmetic, no threading.
// ----------------------------------------------------------------------------

namespace serial {

void linear_forward(const double* in, std::size_t batch, std::size_t in_dim,
                    const double* w, const double* bias, std::size_t out_dim,
                    double* out) {
  for (std::size_t b = 0; b < batch; ++b) {
    const double* x = in + b * in_dim;
    double* y = out + b * out_dim;
    for (std::size_t o = 0; o < out_dim; ++o) {
      double acc = bias[o];
      const double* wr = w + o * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) {
        acc += wr[i] * x[i];
      }
      y[o] = acc;
    }
  }
}

void relu_inplace(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) {
      x[i] = 0.0;
    }
  }
}

void linear_backward(const double* in, const double* w, const double* d_out,
                     std::size_t batch, std::size_t in_dim, std::size_t out_dim,
                     double* d_in, double* d_w, double* d_bias) {
  if (d_in != nullptr) {
    for (std::size_t b = 0; b < batch; ++b) {
      const double* dy = d_out + b * out_dim;
      double* dx = d_in + b * in_dim;
      for (std::size_t i = 0; i < in_dim; ++i) {
        double acc = 0.0;
        for (std::size_t o = 0; o < out_dim; ++o) {
          acc += dy[o] * w[o * in_dim + i];
        }
        dx[i] = acc;
      }
    }
  }
  if (d_w != nullptr) {
    for (std::size_t o = 0; o < out_dim; ++o) {
      for (std::size_t i = 0; i < in_dim; ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < batch; ++b) {
          acc += d_out[b * out_dim + o] * in[b * in_dim + i];
        }
        d_w[o * in_dim + i] = acc;
      }
    }
  }
  if (d_bias != nullptr) {
    for (std::size_t o = 0; o < out_dim; ++o) {
      double acc = 0.0;
      for (std::size_t b = 0; b < batch; ++b) {
        acc += d_out[b * out_dim + o];
      }
      d_bias[o] = acc;
    }
  }
}

void relu_backward(const double* act, const double* d_act, std::size_t n,
                   double* d_pre) {
  for (std::size_t i = 0; i < n; ++i) {
    d_pre[i] = act[i] > 0.0 ? d_act[i] : 0.0;
  }
}

}  // namespace serial

}  // namespace vric::dqn
