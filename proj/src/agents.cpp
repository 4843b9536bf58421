#include "ranslice/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ranslice {
namespace {

void check_context(const AgentContext& ctx) {
  if (ctx.num_actions <= 0 || ctx.sadis_per_day <= 0 || ctx.train_steps <= 0)
    throw std::invalid_argument("agent context dimensions must be positive");
}

void check_slot(const Observation& obs, int sadis_per_day) {
  if (obs.sadi_of_day < 0 || obs.sadi_of_day >= sadis_per_day)
    throw std::invalid_argument("sadi_of_day out of range");
}

// Rank-1 Cholesky update: L L^T + x x^T, in place via Givens-style rotations.
// One-hot x makes the leading columns no-ops, so skip them.
void cholesky_rank1_update(Eigen::MatrixXd& chol, Eigen::VectorXd x) {
  const Eigen::Index n = chol.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (x[k] == 0.0) continue;
    const double diag = chol(k, k);
    const double r = std::hypot(diag, x[k]);
    const double c = r / diag;
    const double s = x[k] / diag;
    chol(k, k) = r;
    const Eigen::Index tail = n - k - 1;
    if (tail > 0) {
      auto col = chol.col(k).tail(tail);
      col = (col + s * x.tail(tail)) / c;
      x.tail(tail) = c * x.tail(tail) - s * col;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- DcmabAgent

DcmabAgent::DcmabAgent(const AgentContext& ctx, const DcmabOptions& opts, std::uint64_t seed)
    : ctx_(ctx),
      opts_(opts),
      model_([&] {
        check_context(ctx);
        if (opts.epsilon < 0.0 || opts.epsilon > 1.0)
          throw std::invalid_argument("epsilon must lie in [0, 1]");
        if (!(opts.learning_rate > 0.0))
          throw std::invalid_argument("learning rate must be positive");
        std::vector<int> dims;
        dims.push_back(opts.state == DcmabState::kEnergyQos ? 2 : ctx.sadis_per_day);
        for (int h : opts.hidden) dims.push_back(h);
        dims.push_back(ctx.num_actions);
        return MlpModel(dims, seed);
      }()),
      rng_(seed ^ 0xD1B54A32D192ED03ull),
      power_min_(std::numeric_limits<double>::infinity()),
      power_max_(-std::numeric_limits<double>::infinity()),
      qos_min_(std::numeric_limits<double>::infinity()),
      qos_max_(-std::numeric_limits<double>::infinity()) {}

std::string DcmabAgent::name() const {
  return opts_.state == DcmabState::kEnergyQos ? "dcmab_eq" : "dcmab_sadi";
}

std::vector<double> DcmabAgent::encode(const Observation& obs) const {
  check_slot(obs, ctx_.sadis_per_day);
  if (opts_.state == DcmabState::kSadiOneHot) {
    std::vector<double> x(static_cast<std::size_t>(ctx_.sadis_per_day), 0.0);
    x[static_cast<std::size_t>(obs.sadi_of_day)] = 1.0;
    return x;
  }
  // Min-max over everything seen so far; midpoint until a range exists.
  auto norm = [](double v, double lo, double hi) {
    if (!(hi > lo)) return 0.5;
    return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  };
  return {norm(obs.prev_power_watts, power_min_, power_max_),
          norm(obs.prev_qos, qos_min_, qos_max_)};
}

double DcmabAgent::current_epsilon() const {
  if (!opts_.epsilon_decay) return opts_.epsilon;
  const double remaining =
      1.0 - static_cast<double>(updates_) / static_cast<double>(ctx_.train_steps);
  return opts_.epsilon * std::max(0.0, remaining);
}

int DcmabAgent::select(const Observation& obs) {
  const double eps = frozen_ ? 0.0 : current_epsilon();
  if (eps > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < eps) {
      std::uniform_int_distribution<int> arm(0, ctx_.num_actions - 1);
      return arm(rng_);
    }
  }
  const auto scores = model_.forward(encode(obs));
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

double DcmabAgent::update(const Observation& obs, int action_index, double reward) {
  if (opts_.state == DcmabState::kEnergyQos) {
    // Widen the normalizer before encoding so the sample that moves a bound
    // is already encoded with it.
    power_min_ = std::min(power_min_, obs.prev_power_watts);
    power_max_ = std::max(power_max_, obs.prev_power_watts);
    qos_min_ = std::min(qos_min_, obs.prev_qos);
    qos_max_ = std::max(qos_max_, obs.prev_qos);
  }
  const double loss = model_.train_step(encode(obs), action_index, reward, opts_.learning_rate);
  ++updates_;
  return loss;
}

// ------------------------------------------------------------ ThompsonCAgent

ThompsonCAgent::ThompsonCAgent(const AgentContext& ctx, const ThompsonCOptions& opts,
                               std::uint64_t seed)
    : ctx_(ctx), opts_(opts), rng_(seed) {
  check_context(ctx);
  if (!(opts.m > 0.0)) throw std::invalid_argument("m must be positive");
  if (!(opts.phi > 0.0) || !(static_cast<double>(ctx.train_steps) > opts.phi))
    throw std::invalid_argument("phi must satisfy 0 < phi < train_steps");
  z_ = ctx.num_actions * ctx.sadis_per_day;
  sigma_ = opts.m * std::sqrt(9.0 * z_ * std::log(ctx.train_steps / opts.phi));
  gram_ = Eigen::MatrixXd::Identity(z_, z_);
  chol_ = Eigen::MatrixXd::Identity(z_, z_);
  acc_ = Eigen::VectorXd::Zero(z_);
  mu_ = Eigen::VectorXd::Zero(z_);
}

int ThompsonCAgent::context_index(int action_index, int sadi_of_day) const {
  if (action_index < 0 || action_index >= ctx_.num_actions)
    throw std::out_of_range("action index out of range");
  if (sadi_of_day < 0 || sadi_of_day >= ctx_.sadis_per_day)
    throw std::out_of_range("sadi_of_day out of range");
  return action_index * ctx_.sadis_per_day + sadi_of_day;
}

Eigen::VectorXd ThompsonCAgent::sample_posterior() {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd g(z_);
  for (int i = 0; i < z_; ++i) g[i] = normal(rng_);
  // cov(mu_hat + sigma L^-T g) = sigma^2 (L L^T)^-1 = sigma^2 D^-1.
  return mu_ + sigma_ * chol_.transpose().triangularView<Eigen::Upper>().solve(g);
}

int ThompsonCAgent::select(const Observation& obs) {
  check_slot(obs, ctx_.sadis_per_day);
  const int slot = obs.sadi_of_day;
  auto argmax_over_arms = [&](const Eigen::VectorXd& scores) {
    int best = 0;
    for (int a = 1; a < ctx_.num_actions; ++a)
      if (scores[context_index(a, slot)] > scores[context_index(best, slot)]) best = a;
    return best;
  };
  if (frozen_) return argmax_over_arms(mu_);
  return argmax_over_arms(sample_posterior());
}

void ThompsonCAgent::refresh_mu(const Eigen::VectorXd& rhs) {
  // Two triangular solves give D^-1 rhs without forming the inverse.
  const Eigen::VectorXd y = chol_.triangularView<Eigen::Lower>().solve(rhs);
  mu_ = chol_.transpose().triangularView<Eigen::Upper>().solve(y);
}

double ThompsonCAgent::update(const Observation& obs, int action_index, double reward) {
  if (!std::isfinite(reward)) throw std::invalid_argument("reward must be finite");
  const int j = context_index(action_index, obs.sadi_of_day);
  gram_(j, j) += 1.0;  // one-hot context: the outer product is a single cell
  Eigen::VectorXd d = Eigen::VectorXd::Zero(z_);
  d[j] = 1.0;
  cholesky_rank1_update(chol_, d);
  acc_[j] += reward;
  if (opts_.literal_update)
    refresh_mu(reward * d);
  else
    refresh_mu(acc_);
  return 0.0;
}

// ----------------------------------------------------------- ThompsonNcAgent

ThompsonNcAgent::ThompsonNcAgent(const AgentContext& ctx, std::uint64_t seed)
    : means_(static_cast<std::size_t>(std::max(ctx.num_actions, 1)), 0.0),
      counts_(static_cast<std::size_t>(std::max(ctx.num_actions, 1)), 0),
      rng_(seed) {
  check_context(ctx);
}

int ThompsonNcAgent::select(const Observation&) {
  const int k = static_cast<int>(means_.size());
  if (frozen_)
    return static_cast<int>(std::max_element(means_.begin(), means_.end()) - means_.begin());
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < k; ++a) {
    std::normal_distribution<double> theta(
        means_[static_cast<std::size_t>(a)],
        std::sqrt(1.0 / (1.0 + static_cast<double>(counts_[static_cast<std::size_t>(a)]))));
    const double score = theta(rng_);
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

double ThompsonNcAgent::update(const Observation&, int action_index, double reward) {
  if (action_index < 0 || action_index >= static_cast<int>(means_.size()))
    throw std::out_of_range("action index out of range");
  if (!std::isfinite(reward)) throw std::invalid_argument("reward must be finite");
  auto& n = counts_[static_cast<std::size_t>(action_index)];
  ++n;
  auto& m = means_[static_cast<std::size_t>(action_index)];
  m += (reward - m) / static_cast<double>(n);
  return 0.0;
}

// ------------------------------------------------------------------- helpers

RandomAgent::RandomAgent(const AgentContext& ctx, std::uint64_t seed)
    : num_actions_(ctx.num_actions), rng_(seed) {
  check_context(ctx);
}

int RandomAgent::select(const Observation&) {
  std::uniform_int_distribution<int> arm(0, num_actions_ - 1);
  return arm(rng_);
}

std::vector<std::string> agent_keys() {
  return {"dcmab_eq", "dcmab_sadi", "thompson_c", "thompson_nc", "all_active", "random"};
}

std::unique_ptr<Agent> make_agent(const std::string& key, const AgentContext& ctx,
                                  const AgentParams& params, std::uint64_t seed) {
  DcmabOptions dcmab;
  dcmab.epsilon = params.epsilon;
  dcmab.epsilon_decay = params.epsilon_decay;
  dcmab.learning_rate = params.alpha;
  if (key == "dcmab_eq") {
    dcmab.state = DcmabState::kEnergyQos;
    return std::make_unique<DcmabAgent>(ctx, dcmab, seed);
  }
  if (key == "dcmab_sadi") {
    dcmab.state = DcmabState::kSadiOneHot;
    return std::make_unique<DcmabAgent>(ctx, dcmab, seed);
  }
  if (key == "thompson_c")
    return std::make_unique<ThompsonCAgent>(
        ctx, ThompsonCOptions{params.m, params.phi, params.literal_update}, seed);
  if (key == "thompson_nc") return std::make_unique<ThompsonNcAgent>(ctx, seed);
  if (key == "all_active") {
    check_context(ctx);
    return std::make_unique<AllActiveAgent>(ctx);
  }
  if (key == "random") return std::make_unique<RandomAgent>(ctx, seed);
  throw std::invalid_argument("unknown agent '" + key + "'");
}

}  // namespace ranslice
