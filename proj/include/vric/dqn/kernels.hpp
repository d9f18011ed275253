#pragma once

#include <cstddef>

namespace vric::dqn {

// Dense-layer kernels used by training and inference. Each output element is
// owned by exactly one loop iteration and accumulated in a fixed order, so
// the OpenMP versions produce bit-identical results to the serial reference
// for any thread count. The serial reference lives in kernels::serial and is
// compared against the parallel path in tests and in the kernel benchmark.
//
// Layouts are row-major: in[b*in_dim + i], w[o*in_dim + i], out[b*out_dim + o].

// out = in * w^T + bias
void linear_forward(const double* in, std::size_t batch, std::size_t in_dim,
                    const double* w, const double* bias, std::size_t out_dim,
                    double* out);

// x = max(x, 0) elementwise
void relu_inplace(double* x, std::size_t n);

// Gradients of a linear layer. Any of d_in / d_w / d_bias may be null to
// skip that output.
void linear_backward(const double* in, const double* w, const double* d_out,
                     std::size_t batch, std::size_t in_dim, std::size_t out_dim,
                     double* d_in, double* d_w, double* d_bias);

// d_pre = d_act where act > 0, else 0 (act is the post-ReLU activation)
void relu_backward(const double* act, const double* d_act, std::size_t n,
                   double* d_pre);

namespace serial {

void linear_forward(const double* in, std::size_t batch, std::size_t in_dim,
                    const double* w, const double* bias, std::size_t out_dim,
                    double* out);
void relu_inplace(double* x, std::size_t n);
void linear_backward(const double* in, const double* w, const double* d_out,
                     std::size_t batch, std::size_t in_dim, std::size_t out_dim,
                     double* d_in, double* d_w, double* d_bias);
void relu_backward(const double* act, const double* d_act, std::size_t n,
                   double* d_pre);

}  // namespace serial

}  // namespace vric::dqn
