#include "magnocool/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace magnocool {
namespace rl {

namespace {

using nlohmann::json;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
  put_u64(out, s.size());
  out.insert(out.end(), s.begin(), s.end());
}

void put_tensor(std::vector<std::uint8_t>& out, const std::string& name,
                const double* data, std::uint64_t rows, std::uint64_t cols) {
  put_string(out, name);
  put_u32(out, 2);
  put_u64(out, rows);
  put_u64(out, cols);
  for (std::uint64_t i = 0; i < rows * cols; ++i) put_f64(out, data[i]);
}

struct Reader {
  const std::vector<std::uint8_t>& bytes;
  size_t pos = 0;

  void need(size_t n) const {
    if (pos + n > bytes.size())
      throw std::invalid_argument("checkpoint: truncated file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s(bytes.begin() + pos, bytes.begin() + pos + n);
    pos += n;
    return s;
  }
  void tensor_into(const std::string& expect_name, double* data,
                   std::uint64_t rows, std::uint64_t cols) {
    const std::string name = str();
    if (name != expect_name)
      throw std::invalid_argument("checkpoint: expected tensor '" + expect_name +
                                  "', found '" + name + "'");
    const std::uint32_t ndim = u32();
    if (ndim != 2) throw std::invalid_argument("checkpoint: bad tensor rank");
    const std::uint64_t r = u64(), c = u64();
    if (r != rows || c != cols)
      throw std::invalid_argument("checkpoint: tensor '" + name + "' is " +
                                  std::to_string(r) + "x" + std::to_string(c) +
                                  ", expected " + std::to_string(rows) + "x" +
                                  std::to_string(cols));
    for (std::uint64_t i = 0; i < rows * cols; ++i) data[i] = f64();
  }
};

void put_net(std::vector<std::uint8_t>& out, const std::string& prefix,
             const Mlp& net) {
  for (int l = 0; l < net.n_layers(); ++l) {
    put_tensor(out, prefix + ".w" + std::to_string(l), net.weights[l].data(),
               net.weights[l].rows(), net.weights[l].cols());
    put_tensor(out, prefix + ".b" + std::to_string(l), net.biases[l].data(),
               net.biases[l].size(), 1);
  }
}

void read_net(Reader& r, const std::string& prefix, Mlp& net) {
  for (int l = 0; l < net.n_layers(); ++l) {
    r.tensor_into(prefix + ".w" + std::to_string(l), net.weights[l].data(),
                  net.weights[l].rows(), net.weights[l].cols());
    r.tensor_into(prefix + ".b" + std::to_string(l), net.biases[l].data(),
                  net.biases[l].size(), 1);
  }
}

void put_adam(std::vector<std::uint8_t>& out, const std::string& prefix,
              const AdamOptimizer& opt) {
  put_u64(out, static_cast<std::uint64_t>(opt.step_count));
  for (size_t l = 0; l < opt.m_w.size(); ++l) {
    const std::string n = prefix + "." + std::to_string(l);
    put_tensor(out, n + ".mw", opt.m_w[l].data(), opt.m_w[l].rows(), opt.m_w[l].cols());
    put_tensor(out, n + ".vw", opt.v_w[l].data(), opt.v_w[l].rows(), opt.v_w[l].cols());
    put_tensor(out, n + ".mb", opt.m_b[l].data(), opt.m_b[l].size(), 1);
    put_tensor(out, n + ".vb", opt.v_b[l].data(), opt.v_b[l].size(), 1);
  }
}

void read_adam(Reader& r, const std::string& prefix, AdamOptimizer& opt) {
  opt.step_count = static_cast<long>(r.u64());
  for (size_t l = 0; l < opt.m_w.size(); ++l) {
    const std::string n = prefix + "." + std::to_string(l);
    r.tensor_into(n + ".mw", opt.m_w[l].data(), opt.m_w[l].rows(), opt.m_w[l].cols());
    r.tensor_into(n + ".vw", opt.v_w[l].data(), opt.v_w[l].rows(), opt.v_w[l].cols());
    r.tensor_into(n + ".mb", opt.m_b[l].data(), opt.m_b[l].size(), 1);
    r.tensor_into(n + ".vb", opt.v_b[l].data(), opt.v_b[l].size(), 1);
  }
}

json hyper_to_json(const SacAgent& agent) {
  const SacConfig& c = agent.config();
  json j;
  j["obs_dim"] = agent.obs_dim();
  j["action_dim"] = agent.action_dim();
  j["hidden"] = c.hidden;
  j["lr"] = c.lr;
  j["buffer_capacity"] = c.buffer_capacity;
  j["batch_size"] = c.batch_size;
  j["gamma"] = c.gamma;
  j["tau"] = c.tau;
  j["alpha_init"] = c.alpha_init;
  j["adaptive_alpha"] = c.adaptive_alpha;
  j["target_entropy"] = agent.target_entropy();
  j["grad_clip"] = c.grad_clip;
  j["log_std_min"] = c.log_std_min;
  j["log_std_max"] = c.log_std_max;
  j["noise_std"] = c.noise_std;
  return j;
}

}  // namespace

std::vector<std::uint8_t> Checkpoint::serialize(const SacAgent& agent,
                                                const std::string& env_hash) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 8);
  put_u32(out, kVersion);
  put_string(out, env_hash);
  put_string(out, hyper_to_json(agent).dump());

  put_f64(out, agent.log_alpha_);
  put_f64(out, agent.alpha_m_);
  put_f64(out, agent.alpha_v_);
  put_u64(out, static_cast<std::uint64_t>(agent.alpha_step_));

  std::ostringstream rng_state;
  rng_state << agent.rng();
  put_string(out, rng_state.str());

  put_net(out, "policy", agent.policy);
  put_net(out, "q1", agent.q1);
  put_net(out, "q2", agent.q2);
  put_net(out, "q1_target", agent.q1_target);
  put_net(out, "q2_target", agent.q2_target);
  put_adam(out, "opt_policy", agent.opt_policy);
  put_adam(out, "opt_q1", agent.opt_q1);
  put_adam(out, "opt_q2", agent.opt_q2);
  return out;
}

std::string Checkpoint::env_hash_of(const std::vector<std::uint8_t>& bytes) {
  Reader r{bytes};
  r.need(12);
  if (std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw std::invalid_argument("checkpoint: bad magic");
  r.pos = 8;
  if (r.u32() != kVersion)
    throw std::invalid_argument("checkpoint: unsupported format version");
  return r.str();
}

SacAgent Checkpoint::deserialize(const std::vector<std::uint8_t>& bytes,
                                 const std::string& expect_env_hash, bool force) {
  Reader r{bytes};
  r.need(12);
  if (std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw std::invalid_argument("checkpoint: bad magic");
  r.pos = 8;
  if (r.u32() != kVersion)
    throw std::invalid_argument("checkpoint: unsupported format version");
  const std::string env_hash = r.str();
  if (!expect_env_hash.empty() && env_hash != expect_env_hash && !force)
    throw std::invalid_argument(
        "checkpoint: environment hash mismatch (checkpoint " + env_hash +
        ", expected " + expect_env_hash + "); pass force to override");

  const json j = json::parse(r.str());
  SacConfig cfg;
  cfg.hidden = j.at("hidden").get<std::vector<int>>();
  cfg.lr = j.at("lr");
  cfg.buffer_capacity = j.at("buffer_capacity");
  cfg.batch_size = j.at("batch_size");
  cfg.gamma = j.at("gamma");
  cfg.tau = j.at("tau");
  cfg.alpha_init = j.at("alpha_init");
  cfg.adaptive_alpha = j.at("adaptive_alpha");
  cfg.target_entropy = j.at("target_entropy");
  cfg.grad_clip = j.at("grad_clip");
  cfg.log_std_min = j.at("log_std_min");
  cfg.log_std_max = j.at("log_std_max");
  cfg.noise_std = j.at("noise_std");

  SacAgent agent(j.at("obs_dim"), j.at("action_dim"), cfg, /*seed=*/0);
  agent.log_alpha_ = r.f64();
  agent.alpha_m_ = r.f64();
  agent.alpha_v_ = r.f64();
  agent.alpha_step_ = static_cast<long>(r.u64());

  std::istringstream rng_state(r.str());
  rng_state >> agent.rng();

  read_net(r, "policy", agent.policy);
  read_net(r, "q1", agent.q1);
  read_net(r, "q2", agent.q2);
  read_net(r, "q1_target", agent.q1_target);
  read_net(r, "q2_target", agent.q2_target);
  read_adam(r, "opt_policy", agent.opt_policy);
  read_adam(r, "opt_q1", agent.opt_q1);
  read_adam(r, "opt_q2", agent.opt_q2);
  return agent;
}

void write_checkpoint_file(const std::string& path,
                           const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open checkpoint file for write: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("checkpoint write failed: " + path);
}

std::vector<std::uint8_t> read_checkpoint_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open checkpoint file: " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(f),
                                   std::istreambuf_iterator<char>());
}

void warm_start_from(const std::vector<std::uint8_t>& teacher_bytes,
                     SacAgent& agent) {
  const SacAgent teacher = Checkpoint::deserialize(teacher_bytes);
  if (teacher.obs_dim() != agent.obs_dim() ||
      teacher.action_dim() != agent.action_dim() ||
      teacher.config().hidden != agent.config().hidden) {
    std::ostringstream msg;
    msg << "warm_start_from: dimension mismatch; teacher obs/act = "
        << teacher.obs_dim() << "/" << teacher.action_dim() << " hidden = [";
    for (int h : teacher.config().hidden) msg << h << " ";
    msg << "], student obs/act = " << agent.obs_dim() << "/"
        << agent.action_dim() << " hidden = [";
    for (int h : agent.config().hidden) msg << h << " ";
    msg << "]";
    throw std::invalid_argument(msg.str());
  }
  agent.policy = teacher.policy;
  agent.q1 = teacher.q1;
  agent.q2 = teacher.q2;
  agent.q1_target = teacher.q1_target;
  agent.q2_target = teacher.q2_target;
  agent.opt_policy = teacher.opt_policy;
  agent.opt_q1 = teacher.opt_q1;
  agent.opt_q2 = teacher.opt_q2;
  agent.log_alpha_ = teacher.log_alpha_;
  agent.alpha_m_ = teacher.alpha_m_;
  agent.alpha_v_ = teacher.alpha_v_;
  agent.alpha_step_ = teacher.alpha_step_;
}

}  // namespace rl
}  // namespace magnocool
