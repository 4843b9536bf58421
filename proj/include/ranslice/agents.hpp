#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ranslice/env.hpp"
#include "ranslice/mlp.hpp"

namespace ranslice {

// Dimensions every policy needs: arm count K, SADIs per day N and the
// training budget J.
struct AgentContext {
  int num_actions = 0;
  int sadis_per_day = 0;
  int train_steps = 0;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual int select(const Observation& obs) = 0;
  // Returns the training loss where the policy defines one, else 0.
  virtual double update(const Observation& obs, int action_index, double reward) = 0;
  // Switch to evaluation: no exploration, greedy / posterior-mean actions.
  virtual void freeze() {}
};

enum class DcmabState {
  kEnergyQos,   // min-max-normalized (previous power, previous QoS)
  kSadiOneHot,  // one-hot SADI-of-day
};

struct DcmabOptions {
  DcmabState state = DcmabState::kEnergyQos;
  double epsilon = 1.0;       // initial exploration rate
  bool epsilon_decay = true;  // anneal linearly to zero over the training budget
  double learning_rate = 0.001;
  std::vector<int> hidden = {100, 100, 100};
};

// Epsilon-greedy deep contextual bandit: one shared network maps the encoded
// state to a per-arm reward estimate; only the chosen arm's output is
// trained.
class DcmabAgent : public Agent {
 public:
  DcmabAgent(const AgentContext& ctx, const DcmabOptions& opts, std::uint64_t seed);

  std::string name() const override;
  int select(const Observation& obs) override;
  double update(const Observation& obs, int action_index, double reward) override;
  void freeze() override { frozen_ = true; }

  // Encoded network input for an observation; components lie in [0, 1].
  std::vector<double> encode(const Observation& obs) const;
  double current_epsilon() const;
  MlpModel& model() { return model_; }

 private:
  AgentContext ctx_;
  DcmabOptions opts_;
  MlpModel model_;
  std::mt19937_64 rng_;
  bool frozen_ = false;
  long updates_ = 0;
  double power_min_, power_max_, qos_min_, qos_max_;
};

struct ThompsonCOptions {
  double m = 0.01;
  double phi = 0.5;
  // Rebuild mu_hat from only the latest observation instead of the full
  // accumulated history.
  bool literal_update = false;
};

// Linear-Gaussian Thompson sampling over one-hot (arm, SADI-of-day)
// contexts: dimension z = K * N, Gram matrix D starts at the identity and
// grows by rank-1 outer products, and arms are scored through a posterior
// sample mu ~ N(mu_hat, sigma^2 D^-1).
class ThompsonCAgent : public Agent {
 public:
  ThompsonCAgent(const AgentContext& ctx, const ThompsonCOptions& opts, std::uint64_t seed);

  std::string name() const override { return "thompson_c"; }
  int select(const Observation& obs) override;
  double update(const Observation& obs, int action_index, double reward) override;
  void freeze() override { frozen_ = true; }

  int context_dim() const { return z_; }
  int context_index(int action_index, int sadi_of_day) const;
  double sigma() const { return sigma_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& mu_hat() const { return mu_; }
  // One draw from N(mu_hat, sigma^2 D^-1); consumes RNG state.
  Eigen::VectorXd sample_posterior();

 private:
  void refresh_mu(const Eigen::VectorXd& rhs);

  AgentContext ctx_;
  ThompsonCOptions opts_;
  int z_ = 0;
  double sigma_ = 0.0;
  Eigen::MatrixXd gram_, chol_;  // D and its lower Cholesky factor
  Eigen::VectorXd acc_, mu_;     // sum of d*r, current mu_hat
  std::mt19937_64 rng_;
  bool frozen_ = false;
};

// Context-free per-arm Gaussian Thompson sampling: theta_k ~ N(m_k, 1/(1+n_k)).
class ThompsonNcAgent : public Agent {
 public:
  ThompsonNcAgent(const AgentContext& ctx, std::uint64_t seed);

  std::string name() const override { return "thompson_nc"; }
  int select(const Observation& obs) override;
  double update(const Observation& obs, int action_index, double reward) override;
  void freeze() override { frozen_ = true; }

  const std::vector<double>& means() const { return means_; }
  const std::vector<long>& counts() const { return counts_; }

 private:
  std::vector<double> means_;
  std::vector<long> counts_;
  std::mt19937_64 rng_;
  bool frozen_ = false;
};

// Keeps every slice on: always the last arm.
class AllActiveAgent : public Agent {
 public:
  explicit AllActiveAgent(const AgentContext& ctx) : last_(ctx.num_actions - 1) {}
  std::string name() const override { return "all_active"; }
  int select(const Observation&) override { return last_; }
  double update(const Observation&, int, double) override { return 0.0; }

 private:
  int last_;
};

// Uniform arm each SADI, seeded; stays random when frozen.
class RandomAgent : public Agent {
 public:
  RandomAgent(const AgentContext& ctx, std::uint64_t seed);
  std::string name() const override { return "random"; }
  int select(const Observation&) override;
  double update(const Observation&, int, double) override { return 0.0; }

 private:
  int num_actions_;
  std::mt19937_64 rng_;
};

// Config-level knobs shared by the factory.
struct AgentParams {
  double epsilon = 1.0;
  bool epsilon_decay = true;
  double alpha = 0.001;
  double m = 0.01;
  double phi = 0.5;
  bool literal_update = false;

  bool operator==(const AgentParams&) const = default;
};

// Keys: dcmab_eq, dcmab_sadi, thompson_c, thompson_nc, all_active, random.
std::vector<std::string> agent_keys();
std::unique_ptr<Agent> make_agent(const std::string& key, const AgentContext& ctx,
                                  const AgentParams& params, std::uint64_t seed);

}  // namespace ranslice
