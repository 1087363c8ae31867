#pragma once

#include <random>
#include <vector>

#include "magnocool/types.hpp"

namespace magnocool {
namespace rl {

/// Dense multilayer perceptron: ReLU hidden layers, linear output.
/// Batches are columns (dim x batch). Weights are out x in.
struct Mlp {
  std::vector<Mat> weights;
  std::vector<Vec> biases;

  static Mlp make(int input, const std::vector<int>& hidden, int output,
                  std::mt19937_64& rng);

  int n_layers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return static_cast<int>(weights.front().cols()); }
  int output_dim() const { return static_cast<int>(weights.back().rows()); }
  long parameter_count() const;

  Mat forward(const Mat& x) const;

  /// Post-activation values per layer; act[0] is the input.
  struct Cache {
    std::vector<Mat> act;
  };
  Mat forward(const Mat& x, Cache& cache) const;

  struct Gradients {
    std::vector<Mat> d_weights;
    std::vector<Vec> d_biases;

    double global_norm() const;
    void scale(double s);
  };
  Gradients zero_gradients() const;

  /// Backpropagates d_loss/d_output; fills `grads` when non-null and
  /// returns d_loss/d_input either way.
  Mat backward(const Cache& cache, const Mat& d_out, Gradients* grads) const;
};

/// theta_target <- (1 - tau) theta_target + tau theta.
void soft_update(Mlp& target, const Mlp& online, double tau);

struct AdamOptimizer {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;
  std::vector<Mat> m_w, v_w;
  std::vector<Vec> m_b, v_b;

  static AdamOptimizer make(const Mlp& net, double lr);

  /// Clips the gradient to `clip_norm` (global L2, <= 0 disables) and
  /// applies one bias-corrected update.
  void step(Mlp& net, Mlp::Gradients& grads, double clip_norm);
};

}  // namespace rl
}  // namespace magnocool
