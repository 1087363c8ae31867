#include "magnocool/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace magnocool {
namespace rl {

Mlp Mlp::make(int input, const std::vector<int>& hidden, int output,
              std::mt19937_64& rng) {
  if (input < 1 || output < 1)
    throw std::invalid_argument("Mlp: dimensions must be positive");
  Mlp net;
  std::vector<int> dims;
  dims.push_back(input);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(output);
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const int fan_in = dims[l], fan_out = dims[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> u(-bound, bound);
    Mat w(fan_out, fan_in);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = u(rng);
    Vec b(fan_out);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = u(rng);
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

long Mlp::parameter_count() const {
  long n = 0;
  for (int l = 0; l < n_layers(); ++l)
    n += weights[l].size() + biases[l].size();
  return n;
}

Mat Mlp::forward(const Mat& x) const {
  Mat a = x;
  for (int l = 0; l < n_layers(); ++l) {
    a = (weights[l] * a).colwise() + biases[l];
    if (l + 1 < n_layers()) a = a.cwiseMax(0.0);
  }
  return a;
}

Mat Mlp::forward(const Mat& x, Cache& cache) const {
  cache.act.assign(1, x);
  for (int l = 0; l < n_layers(); ++l) {
    Mat a = (weights[l] * cache.act.back()).colwise() + biases[l];
    if (l + 1 < n_layers()) a = a.cwiseMax(0.0);
    cache.act.push_back(std::move(a));
  }
  return cache.act.back();
}

Mlp::Gradients Mlp::zero_gradients() const {
  Gradients g;
  for (int l = 0; l < n_layers(); ++l) {
    g.d_weights.push_back(Mat::Zero(weights[l].rows(), weights[l].cols()));
    g.d_biases.push_back(Vec::Zero(biases[l].size()));
  }
  return g;
}

Mat Mlp::backward(const Cache& cache, const Mat& d_out, Gradients* grads) const {
  Mat dz = d_out;
  for (int l = n_layers() - 1; l >= 0; --l) {
    if (l + 1 < n_layers()) {
      // ReLU mask from the stored post-activation.
      dz = dz.cwiseProduct(
          (cache.act[l + 1].array() > 0.0).cast<double>().matrix());
    }
    if (grads) {
      grads->d_weights[l] = dz * cache.act[l].transpose();
      grads->d_biases[l] = dz.rowwise().sum();
    }
    dz = (weights[l].transpose() * dz).eval();
  }
  return dz;
}

double Mlp::Gradients::global_norm() const {
  double acc = 0.0;
  for (const auto& w : d_weights) acc += w.squaredNorm();
  for (const auto& b : d_biases) acc += b.squaredNorm();
  return std::sqrt(acc);
}

void Mlp::Gradients::scale(double s) {
  for (auto& w : d_weights) w *= s;
  for (auto& b : d_biases) b *= s;
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  if (target.n_layers() != online.n_layers())
    throw std::invalid_argument("soft_update: topology mismatch");
  for (int l = 0; l < target.n_layers(); ++l) {
    if (target.weights[l].rows() != online.weights[l].rows() ||
        target.weights[l].cols() != online.weights[l].cols())
      throw std::invalid_argument("soft_update: shape mismatch at layer " +
                                  std::to_string(l));
    target.weights[l] = (1.0 - tau) * target.weights[l] + tau * online.weights[l];
    target.biases[l] = (1.0 - tau) * target.biases[l] + tau * online.biases[l];
  }
}

AdamOptimizer AdamOptimizer::make(const Mlp& net, double lr) {
  AdamOptimizer opt;
  opt.lr = lr;
  for (int l = 0; l < net.n_layers(); ++l) {
    opt.m_w.push_back(Mat::Zero(net.weights[l].rows(), net.weights[l].cols()));
    opt.v_w.push_back(Mat::Zero(net.weights[l].rows(), net.weights[l].cols()));
    opt.m_b.push_back(Vec::Zero(net.biases[l].size()));
    opt.v_b.push_back(Vec::Zero(net.biases[l].size()));
  }
  return opt;
}

void AdamOptimizer::step(Mlp& net, Mlp::Gradients& grads, double clip_norm) {
  if (clip_norm > 0.0) {
    const double norm = grads.global_norm();
    if (norm > clip_norm) grads.scale(clip_norm / norm);
  }
  ++step_count;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
  const double alpha_t = lr * std::sqrt(c2) / c1;
  for (size_t l = 0; l < m_w.size(); ++l) {
    m_w[l] = beta1 * m_w[l] + (1.0 - beta1) * grads.d_weights[l];
    v_w[l] = beta2 * v_w[l] +
             (1.0 - beta2) * grads.d_weights[l].cwiseProduct(grads.d_weights[l]);
    net.weights[l].array() -=
        alpha_t * m_w[l].array() / (v_w[l].array().sqrt() + eps);
    m_b[l] = beta1 * m_b[l] + (1.0 - beta1) * grads.d_biases[l];
    v_b[l] = beta2 * v_b[l] +
             (1.0 - beta2) * grads.d_biases[l].cwiseProduct(grads.d_biases[l]);
    net.biases[l].array() -=
        alpha_t * m_b[l].array() / (v_b[l].array().sqrt() + eps);
  }
}

}  // namespace rl
}  // namespace magnocool
