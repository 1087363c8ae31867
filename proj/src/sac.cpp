#include "magnocool/sac.hpp"

#include <cmath>
#include <stdexcept>

#include "magnocool/errors.hpp"

namespace magnocool {
namespace rl {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi)/2
constexpr double kLog2 = 0.69314718055994530942;

double softplus(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

// log(1 - tanh(z)^2), stable for large |z|.
double log_one_minus_tanh_sq(double z) {
  return 2.0 * (kLog2 - z - softplus(-2.0 * z));
}

}  // namespace

PolicySample policy_sample(const Mlp& net, const Mat& obs, const SacConfig& cfg,
                           std::mt19937_64* rng) {
  PolicySample ps;
  const Mat out = net.forward(obs, ps.cache);
  if (!out.allFinite())
    throw NumericalError(
        "policy_sample: non-finite network output (corrupt weights?)");
  const int k = static_cast<int>(out.rows()) / 2;
  const int batch = static_cast<int>(out.cols());

  ps.mu = out.topRows(k);
  const Mat raw = out.bottomRows(k);
  ps.log_std = raw.cwiseMax(cfg.log_std_min).cwiseMin(cfg.log_std_max);
  ps.clamp_interior = ((raw.array() > cfg.log_std_min) &&
                       (raw.array() < cfg.log_std_max))
                          .cast<double>()
                          .matrix();
  ps.sigma = ps.log_std.array().exp().matrix();
  if (cfg.noise_std > 0.0) {
    ps.std_eff = (ps.sigma.array().square() + cfg.noise_std * cfg.noise_std)
                     .sqrt()
                     .matrix();
  } else {
    ps.std_eff = ps.sigma;
  }

  ps.eps = Mat::Zero(k, batch);
  if (rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < ps.eps.size(); ++i)
      ps.eps.data()[i] = normal(*rng);
  }
  ps.pre_squash = ps.mu + ps.std_eff.cwiseProduct(ps.eps);
  ps.actions = ps.pre_squash.array().tanh().matrix();

  ps.log_prob.setZero(batch);
  for (int b = 0; b < batch; ++b) {
    double lp = 0.0;
    for (int i = 0; i < k; ++i) {
      const double e = ps.eps(i, b);
      lp += -std::log(ps.std_eff(i, b)) - 0.5 * e * e - kHalfLog2Pi;
      lp -= log_one_minus_tanh_sq(ps.pre_squash(i, b));
    }
    ps.log_prob(b) = lp;
  }
  return ps;
}

SacAgent::SacAgent(int obs_dim, int action_dim, SacConfig cfg, std::uint64_t seed)
    : obs_dim_(obs_dim), action_dim_(action_dim), cfg_(std::move(cfg)), rng_(seed) {
  if (obs_dim < 1 || action_dim < 1)
    throw std::invalid_argument("SacAgent: bad dimensions");
  policy = Mlp::make(obs_dim_, cfg_.hidden, 2 * action_dim_, rng_);
  q1 = Mlp::make(obs_dim_ + action_dim_, cfg_.hidden, 1, rng_);
  q2 = Mlp::make(obs_dim_ + action_dim_, cfg_.hidden, 1, rng_);
  q1_target = q1;
  q2_target = q2;
  opt_policy = AdamOptimizer::make(policy, cfg_.lr);
  opt_q1 = AdamOptimizer::make(q1, cfg_.lr);
  opt_q2 = AdamOptimizer::make(q2, cfg_.lr);
  log_alpha_ = std::log(cfg_.alpha_init);
  target_entropy_ = std::isnan(cfg_.target_entropy)
                        ? -static_cast<double>(action_dim_)
                        : cfg_.target_entropy;
}

std::pair<Vec, double> SacAgent::sample_action(const Vec& obs, bool deterministic) {
  if (!obs.allFinite())
    throw std::invalid_argument("sample_action: non-finite observation");
  const PolicySample ps =
      policy_sample(policy, obs, cfg_, deterministic ? nullptr : &rng_);
  return {ps.actions.col(0), ps.log_prob(0)};
}

Vec SacAgent::uniform_random_action() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec a(action_dim_);
  for (int i = 0; i < action_dim_; ++i) a(i) = u(rng_);
  return a;
}

Mat SacAgent::critic_input(const Mat& s, const Mat& a) const {
  Mat in(s.rows() + a.rows(), s.cols());
  in.topRows(s.rows()) = s;
  in.bottomRows(a.rows()) = a;
  return in;
}

Vec SacAgent::critic_target(const Batch& batch, const PolicySample& next,
                            const Mlp& q_target_a, const Mlp& q_target_b,
                            double gamma, double alpha) {
  Mat in(batch.s2.rows() + next.actions.rows(), batch.s2.cols());
  in.topRows(batch.s2.rows()) = batch.s2;
  in.bottomRows(next.actions.rows()) = next.actions;
  const Vec qa = q_target_a.forward(in).row(0).transpose();
  const Vec qb = q_target_b.forward(in).row(0).transpose();
  const Vec qmin = qa.cwiseMin(qb);
  Vec y(batch.size());
  for (int i = 0; i < batch.size(); ++i) {
    y(i) = batch.r(i) + gamma * (1.0 - batch.done(i)) *
                            (qmin(i) - alpha * next.log_prob(i));
  }
  return y;
}

std::pair<double, double> SacAgent::update_critics(const Batch& batch) {
  const PolicySample next = policy_sample(policy, batch.s2, cfg_, &rng_);
  const Vec y =
      critic_target(batch, next, q1_target, q2_target, cfg_.gamma, alpha());
  const Mat in = critic_input(batch.s, batch.a);
  const double inv_b = 1.0 / batch.size();

  double losses[2];
  Mlp* nets[2] = {&q1, &q2};
  AdamOptimizer* opts[2] = {&opt_q1, &opt_q2};
  for (int c = 0; c < 2; ++c) {
    Mlp::Cache cache;
    const Vec q = nets[c]->forward(in, cache).row(0).transpose();
    const Vec diff = q - y;
    losses[c] = diff.squaredNorm() * inv_b;
    if (!std::isfinite(losses[c]))
      throw NumericalError("update_critics: non-finite loss");
    const Mat d_out = (2.0 * inv_b) * diff.transpose();
    Mlp::Gradients grads = nets[c]->zero_gradients();
    nets[c]->backward(cache, d_out, &grads);
    opts[c]->step(*nets[c], grads, cfg_.grad_clip);
  }
  return {losses[0], losses[1]};
}

double SacAgent::update_actor(const Batch& batch, double* mean_log_prob) {
  const int k = action_dim_;
  const int b = batch.size();
  const double inv_b = 1.0 / b;
  const double a_coef = alpha();

  const PolicySample ps = policy_sample(policy, batch.s, cfg_, &rng_);
  const Mat in = critic_input(batch.s, ps.actions);
  Mlp::Cache c1, c2;
  const Vec q1v = q1.forward(in, c1).row(0).transpose();
  const Vec q2v = q2.forward(in, c2).row(0).transpose();

  double loss = 0.0;
  Mat d_q1_out(1, b), d_q2_out(1, b);
  for (int i = 0; i < b; ++i) {
    const double qmin = std::min(q1v(i), q2v(i));
    loss += a_coef * ps.log_prob(i) - qmin;
    // Gradient of -qmin flows through the selected critic only.
    const bool first = q1v(i) <= q2v(i);
    d_q1_out(0, i) = first ? -inv_b : 0.0;
    d_q2_out(0, i) = first ? 0.0 : -inv_b;
  }
  loss *= inv_b;
  if (!std::isfinite(loss)) throw NumericalError("update_actor: non-finite loss");

  // d(loss)/d(action) with critic parameters frozen.
  const Mat d_in1 = q1.backward(c1, d_q1_out, nullptr);
  const Mat d_in2 = q2.backward(c2, d_q2_out, nullptr);
  const Mat d_action = d_in1.bottomRows(k) + d_in2.bottomRows(k);

  const Mat one_m_a2 =
      (1.0 - ps.actions.array().square()).matrix();  // d tanh
  const double w_lp = a_coef * inv_b;
  const Mat d_mu =
      d_action.cwiseProduct(one_m_a2) + w_lp * 2.0 * ps.actions;
  const Mat d_std_eff =
      d_action.cwiseProduct(one_m_a2).cwiseProduct(ps.eps) +
      w_lp * (2.0 * ps.actions.cwiseProduct(ps.eps) -
              ps.std_eff.cwiseInverse());
  // d std_eff / d log_std = sigma^2 / std_eff; zero outside the clamp.
  const Mat d_log_std =
      d_std_eff
          .cwiseProduct(ps.sigma.cwiseProduct(ps.sigma).cwiseQuotient(ps.std_eff))
          .cwiseProduct(ps.clamp_interior);

  Mat d_out(2 * k, b);
  d_out.topRows(k) = d_mu;
  d_out.bottomRows(k) = d_log_std;
  Mlp::Gradients grads = policy.zero_gradients();
  policy.backward(ps.cache, d_out, &grads);
  opt_policy.step(policy, grads, cfg_.grad_clip);

  if (mean_log_prob) *mean_log_prob = ps.log_prob.mean();
  return loss;
}

double SacAgent::update_alpha(double mean_log_prob) {
  if (!cfg_.adaptive_alpha) return alpha();
  // d/d(log alpha) of -alpha (E log pi + target entropy)
  const double grad =
      -std::exp(log_alpha_) * (mean_log_prob + target_entropy_);
  ++alpha_step_;
  alpha_m_ = 0.9 * alpha_m_ + 0.1 * grad;
  alpha_v_ = 0.999 * alpha_v_ + 0.001 * grad * grad;
  const double c1 = 1.0 - std::pow(0.9, static_cast<double>(alpha_step_));
  const double c2 = 1.0 - std::pow(0.999, static_cast<double>(alpha_step_));
  log_alpha_ -=
      cfg_.lr * (std::sqrt(c2) / c1) * alpha_m_ / (std::sqrt(alpha_v_) + 1e-8);
  return alpha();
}

void SacAgent::soft_update_targets() {
  soft_update(q1_target, q1, cfg_.tau);
  soft_update(q2_target, q2, cfg_.tau);
}

SacAgent::UpdateStats SacAgent::update(const Batch& batch) {
  UpdateStats stats;
  const auto [l1, l2] = update_critics(batch);
  stats.q1_loss = l1;
  stats.q2_loss = l2;
  stats.actor_loss = update_actor(batch, &stats.mean_log_prob);
  stats.alpha = update_alpha(stats.mean_log_prob);
  soft_update_targets();
  return stats;
}

}  // namespace rl
}  // namespace magnocool
