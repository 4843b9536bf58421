#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ranslice/qos.hpp"
#include "ranslice/traffic.hpp"

using namespace ranslice;

namespace {

// Hand-built single-SADI trace: 2 Facebook users (reqs 12, 9), 3 YouTube
// users (reqs 7, 11, 16), 1 Google user (req 20), no eco users.
TrafficTrace tiny_trace() {
  TrafficTrace t;
  t.sadi_count = 1;
  t.sadis_per_day = 1;
  t.slices = {{0, "Facebook", 1.2, 10.0, false},
              {1, "YouTube", 1.6, 1.0, false},
              {2, "Google", 1.4, 15.0, false},
              {3, "EcoSlice", 1.0, 11.0, true}};
  t.background_load = {0.0, 0.0, 0.0, 5.0};
  t.demands = {{{{0, 12.0, 10.0}, {0, 9.0, 10.0}},
                {{1, 7.0, 20.0}, {1, 11.0, 20.0}, {1, 16.0, 20.0}},
                {{2, 20.0, 30.0}},
                {}}};
  t.loads = {{20.0, 60.0, 30.0, 5.0}};
  return t;
}

SyntheticProfile big_profile() {
  SyntheticProfile p = SyntheticProfile::defaults();
  p.sadi_count = 480;  // ~480 * ~20 users per app slice
  p.sadis_per_day = 48;
  return p;
}

}  // namespace

TEST_SUITE("qos") {
  TEST_CASE("a user is satisfied exactly when served at or under the requirement") {
    CHECK(user_satisfaction(10.0, 12.0) == 1);
    CHECK(user_satisfaction(10.0, 10.0) == 1);  // boundary counts
    CHECK(user_satisfaction(10.0, 9.99) == 0);
    CHECK_THROWS_AS(user_satisfaction(0.0, 5.0), std::domain_error);
    CHECK_THROWS_AS(user_satisfaction(5.0, -1.0), std::domain_error);
  }

  TEST_CASE("hand trace: all slices active") {
    const TrafficTrace t = tiny_trace();
    const QosReport r = evaluate_qos(t, 0, Configuration{{1, 1, 1, 1}});
    // Facebook at 10ms: 12 ok, 9 misses -> 1/2. YouTube at 1ms: all ok.
    // Google at 15ms: 20 ok.
    CHECK(r.per_slice[0] == doctest::Approx(0.5));
    CHECK(r.per_slice[1] == doctest::Approx(1.0));
    CHECK(r.per_slice[2] == doctest::Approx(1.0));
    CHECK_FALSE(r.per_slice[3].has_value());  // no eco users, slice excluded
    CHECK(r.station == doctest::Approx((0.5 + 1.0 + 1.0) / 3.0));
    CHECK(r.per_user[0] == std::vector<int>{1, 0});
  }

  TEST_CASE("hand trace: deactivating YouTube reroutes its users to the eco delay") {
    const TrafficTrace t = tiny_trace();
    const QosReport r = evaluate_qos(t, 0, Configuration{{1, 0, 1, 1}});
    // YouTube users served at 11ms: reqs 7 (miss), 11 (ok), 16 (ok) -> 2/3.
    CHECK(r.per_slice[1] == doctest::Approx(2.0 / 3.0));
    CHECK(r.station == doctest::Approx((0.5 + 2.0 / 3.0 + 1.0) / 3.0));
  }

  TEST_CASE("hand trace: without the fallback, deactivated users score zero") {
    const TrafficTrace t = tiny_trace();
    const QosReport r = evaluate_qos(t, 0, Configuration{{1, 0, 1, 1}}, false);
    CHECK(r.per_slice[1] == doctest::Approx(0.0));
    CHECK(r.per_user[1] == std::vector<int>{0, 0, 0});
  }

  TEST_CASE("the eco slice cannot be deactivated") {
    const TrafficTrace t = tiny_trace();
    CHECK_THROWS_AS(evaluate_qos(t, 0, Configuration{{1, 1, 1, 0}}), std::invalid_argument);
  }

  TEST_CASE("stock delays: all-active always satisfies everyone") {
    const TrafficTrace trace = generate_synthetic(31, big_profile());
    for (int tau = 0; tau < trace.sadi_count; tau += 7)
      CHECK(evaluate_qos(trace, tau, Configuration{{1, 1, 1, 1}}).station == 1.0);
  }

  TEST_CASE("stock delays: dropping Facebook and Google onto the eco slice is free") {
    // Facebook requirements start at 11 >= the 11ms eco delay; Google's at 16.
    const TrafficTrace trace = generate_synthetic(32, big_profile());
    for (int tau = 0; tau < trace.sadi_count; tau += 7) {
      const QosReport r = evaluate_qos(trace, tau, Configuration{{0, 1, 0, 1}});
      CHECK(r.per_slice[0] == doctest::Approx(1.0));
      CHECK(r.per_slice[2] == doctest::Approx(1.0));
      CHECK(r.station == doctest::Approx(1.0));
    }
  }

  TEST_CASE("stock delays: deactivated YouTube satisfies ~6/11 of its users") {
    // Requirements are U(6,17); the 11ms eco delay satisfies req >= 11,
    // i.e. a 6/11 fraction in expectation.
    const TrafficTrace trace = generate_synthetic(33, big_profile());
    double satisfied = 0.0;
    long users = 0;
    for (int tau = 0; tau < trace.sadi_count; ++tau) {
      const QosReport r = evaluate_qos(trace, tau, Configuration{{1, 0, 1, 1}});
      for (int bit : r.per_user[1]) {
        satisfied += bit;
        ++users;
      }
    }
    REQUIRE(users >= 9000);
    const double fraction = satisfied / static_cast<double>(users);
    CHECK(std::abs(fraction - 6.0 / 11.0) <= 0.05);
  }

  TEST_CASE("station mean ignores slices with no users") {
    TrafficTrace t = tiny_trace();
    t.demands[0][0].clear();  // Facebook empty this SADI
    t.loads[0][0] = 0.0;
    const QosReport r = evaluate_qos(t, 0, Configuration{{1, 1, 1, 1}});
    CHECK_FALSE(r.per_slice[0].has_value());
    CHECK(r.station == doctest::Approx(1.0));  // YouTube and Google only
  }
}
