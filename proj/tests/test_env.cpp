#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ranslice/env.hpp"

using namespace ranslice;

namespace {

SyntheticProfile small_profile() {
  SyntheticProfile p = SyntheticProfile::defaults();
  p.sadi_count = 96;
  p.sadis_per_day = 48;
  return p;
}

}  // namespace

TEST_SUITE("env") {
  TEST_CASE("action space: binary counting with the eco slice pinned on") {
    const TrafficTrace trace = generate_synthetic(1, small_profile());
    const auto space = action_space(trace.slices);
    REQUIRE(space.size() == 8);
    for (std::size_t k = 0; k < space.size(); ++k) {
      CHECK(space[k].is_active(3));  // eco always on
      for (int j = 0; j < 3; ++j)
        CHECK(space[k].is_active(j) == ((k >> j & 1u) != 0));
    }
    CHECK(space[0].count_active() == 1);  // eco only
    CHECK(space[7].count_active() == 4);  // everything
  }

  TEST_CASE("eco-only at stock parameters draws exactly 899 W") {
    const TrafficTrace trace = generate_synthetic(2, small_profile());
    EnvConfig cfg;
    const StepOutcome out = step(trace, 5, 0, cfg);
    CHECK(out.power_watts == 899.0);  // 18 + 742 + 139, rho_eco == 1 exactly
    CHECK(out.action_index == 0);
    CHECK(out.action.count_active() == 1);
  }

  TEST_CASE("carried portions: offload vs drop") {
    const TrafficTrace trace = generate_synthetic(3, small_profile());
    const Configuration config{{0, 1, 0, 1}};  // YouTube + eco
    const auto& loads = trace.loads[10];

    const auto offload = carried_load_portion(trace, 10, config, true);
    CHECK(offload[0] == 0.0);
    CHECK(offload[2] == 0.0);
    const double total = loads[0] + loads[1] + loads[2] + loads[3];
    CHECK(offload[1] == doctest::Approx(loads[1] / total).epsilon(1e-12));
    CHECK(offload[3] == doctest::Approx((loads[0] + loads[2] + loads[3]) / total).epsilon(1e-12));

    const auto drop = carried_load_portion(trace, 10, config, false);
    const double kept = loads[1] + loads[3];
    CHECK(drop[1] == doctest::Approx(loads[1] / kept).epsilon(1e-12));
    CHECK(drop[3] == doctest::Approx(loads[3] / kept).epsilon(1e-12));
    CHECK(drop[1] + drop[3] == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("the chosen arm's reward is the matching entry of all_rewards") {
    const TrafficTrace trace = generate_synthetic(4, small_profile());
    EnvConfig cfg;
    cfg.beta = 0.8;
    for (int a = 0; a < 8; ++a) {
      const StepOutcome out = step(trace, 17, a, cfg);
      REQUIRE(out.all_rewards.size() == 8);
      CHECK(out.reward == out.all_rewards[static_cast<std::size_t>(a)]);  // bitwise
      CHECK(out.best_reward ==
            *std::max_element(out.all_rewards.begin(), out.all_rewards.end()));
      CHECK(out.regret_step >= 0.0);
      CHECK(out.regret_step ==
            doctest::Approx(out.best_reward - out.reward).epsilon(1e-15));
    }
  }

  TEST_CASE("reward composition: energy term plus beta * qos") {
    const TrafficTrace trace = generate_synthetic(5, small_profile());
    EnvConfig cfg;
    cfg.beta = 5.0;
    cfg.reward_energy_scale = 1.0;
    const StepOutcome out = step(trace, 3, 7, cfg);
    CHECK(out.reward ==
          doctest::Approx(1.0 / out.power_watts + 5.0 * out.qos).epsilon(1e-15));
  }

  TEST_CASE("beta = 0 makes the cheapest arm optimal") {
    const TrafficTrace trace = generate_synthetic(6, small_profile());
    EnvConfig cfg;
    cfg.beta = 0.0;
    const StepOutcome out = step(trace, 9, 0, cfg);
    // Eco-only carries everything at the lowest psi: highest 1/power.
    CHECK(out.best_reward == out.all_rewards[0]);
    CHECK(out.regret_step == 0.0);
  }

  TEST_CASE("scaling the energy term by 4 scales reward gaps consistently") {
    const TrafficTrace trace = generate_synthetic(7, small_profile());
    EnvConfig base;
    base.beta = 0.0;
    EnvConfig scaled = base;
    scaled.reward_energy_scale = 4.0;
    const StepOutcome a = step(trace, 20, 3, base);
    const StepOutcome b = step(trace, 20, 3, scaled);
    for (std::size_t k = 0; k < 8; ++k)
      CHECK(b.all_rewards[k] == 4.0 * a.all_rewards[k]);  // exact: power of two
    CHECK(b.regret_step == 4.0 * a.regret_step);
  }

  TEST_CASE("step is deterministic") {
    const TrafficTrace trace = generate_synthetic(8, small_profile());
    EnvConfig cfg;
    cfg.beta = 1.0;
    const StepOutcome a = step(trace, 33, 5, cfg);
    const StepOutcome b = step(trace, 33, 5, cfg);
    CHECK(a.reward == b.reward);
    CHECK(a.power_watts == b.power_watts);
    CHECK(a.all_rewards == b.all_rewards);
  }

  TEST_CASE("cumulative regret sums the per-step values") {
    const TrafficTrace trace = generate_synthetic(9, small_profile());
    EnvConfig cfg;
    std::vector<StepOutcome> outs;
    double expected = 0.0;
    for (int tau = 0; tau < 10; ++tau) {
      outs.push_back(step(trace, tau, tau % 8, cfg));
      expected += outs.back().regret_step;
    }
    CHECK(cumulative_regret(outs) == doctest::Approx(expected).epsilon(1e-15));
  }

  TEST_CASE("bad arguments throw") {
    const TrafficTrace trace = generate_synthetic(10, small_profile());
    EnvConfig cfg;
    CHECK_THROWS_AS(step(trace, 0, 8, cfg), std::out_of_range);
    CHECK_THROWS_AS(step(trace, 0, -1, cfg), std::out_of_range);
    EnvConfig bad = cfg;
    bad.beta = -0.5;
    CHECK_THROWS_AS(step(trace, 0, 0, bad), std::invalid_argument);
    CHECK_THROWS_AS(
        carried_load_portion(trace, 0, Configuration{{1, 1, 1, 0}}, true),
        std::invalid_argument);
  }
}
