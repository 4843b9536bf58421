#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "ranslice/energy.hpp"
#include "ranslice/slice.hpp"

using namespace ranslice;

namespace {

std::vector<SliceSpec> stock_slices() {
  return {{0, "Facebook", 1.2, 10.0, false},
          {1, "YouTube", 1.6, 1.0, false},
          {2, "Google", 1.4, 15.0, false},
          {3, "EcoSlice", 1.0, 11.0, true}};
}

Configuration config_of(std::vector<std::uint8_t> bits) { return Configuration{std::move(bits)}; }

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("per-slice draw matches hand-computed values") {
    const PowerParams params;
    const auto slices = stock_slices();
    // rho*psi*742 + psi*139, worked out by hand.
    CHECK(slice_energy(slices[3], 1.0, params) == doctest::Approx(881.0).epsilon(1e-9));
    CHECK(slice_energy(slices[0], 0.0, params) ==
          doctest::Approx(166.8).epsilon(1e-9));  // 1.2*139
    CHECK(slice_energy(slices[1], 0.0, params) ==
          doctest::Approx(222.4).epsilon(1e-9));  // 1.6*139
    CHECK(slice_energy(slices[0], 0.3, params) ==
          doctest::Approx(433.92).epsilon(1e-9));  // 0.3*1.2*742 + 1.2*139
  }

  TEST_CASE("station power: all active at equal load, and eco-only") {
    const PowerParams params;
    const auto slices = stock_slices();
    const std::vector<double> quarters{0.25, 0.25, 0.25, 0.25};
    // 18 + sum_i (0.25*psi_i*742 + psi_i*139), psi sum = 5.2.
    CHECK(base_station_power(config_of({1, 1, 1, 1}), slices, quarters, params) ==
          doctest::Approx(1705.4).epsilon(1e-9));
    // Only the eco slice, carrying everything: 18 + 742 + 139 exactly.
    const std::vector<double> eco_all{0.0, 0.0, 0.0, 1.0};
    CHECK(base_station_power(config_of({0, 0, 0, 1}), slices, eco_all, params) == 899.0);
  }

  TEST_CASE("inactive slices contribute nothing") {
    const PowerParams params;
    const auto slices = stock_slices();
    const std::vector<double> rho{0.0, 0.3, 0.0, 0.7};
    const double power = base_station_power(config_of({0, 1, 0, 1}), slices, rho, params);
    const double expected = params.p_static_watts + slice_energy(slices[1], 0.3, params) +
                            slice_energy(slices[3], 0.7, params);
    CHECK(power == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("recomputation from the definition over random inputs") {
    const PowerParams params;
    const auto slices = stock_slices();
    std::uint32_t state = 12345;
    auto next_unit = [&state] {
      state = state * 1664525u + 1013904223u;
      return static_cast<double>(state) / 4294967296.0;
    };
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> rho(4);
      double left = 1.0;
      for (int i = 0; i < 3; ++i) {
        rho[static_cast<std::size_t>(i)] = left * next_unit();
        left -= rho[static_cast<std::size_t>(i)];
      }
      rho[3] = left;
      Configuration config{{1, 1, 1, 1}};
      double expected = params.p_static_watts;
      for (int i = 0; i < 4; ++i) {
        const auto& s = slices[static_cast<std::size_t>(i)];
        expected += rho[static_cast<std::size_t>(i)] * s.psi * params.p_dynamic_watts +
                    s.psi * params.p_fixed_watts;
      }
      CHECK(base_station_power(config, slices, rho, params) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("power grows strictly with load portion and with activation") {
    const PowerParams params;
    const auto slices = stock_slices();
    const std::vector<double> lo{0.1, 0.2, 0.1, 0.6};
    const std::vector<double> hi{0.1, 0.5, 0.1, 0.3};  // more on the heavier slice
    const Configuration all{{1, 1, 1, 1}};
    CHECK(base_station_power(all, slices, hi, params) >
          base_station_power(all, slices, lo, params));
    // Turning any slice off at fixed portions can only shed power.
    const std::vector<double> rho{0.25, 0.25, 0.25, 0.25};
    const double full = base_station_power(all, slices, rho, params);
    for (int drop = 0; drop < 3; ++drop) {
      Configuration c{{1, 1, 1, 1}};
      c.active[static_cast<std::size_t>(drop)] = 0;
      CHECK(base_station_power(c, slices, rho, params) < full);
    }
  }

  TEST_CASE("domain errors") {
    const PowerParams params;
    const auto slices = stock_slices();
    CHECK_THROWS_AS(slice_energy(slices[0], -0.01, params), std::domain_error);
    CHECK_THROWS_AS(slice_energy(slices[0], 1.01, params), std::domain_error);
    const std::vector<double> rho{0.25, 0.25, 0.25, 0.25};
    CHECK_THROWS_AS(base_station_power(Configuration{{1, 1, 1, 0}}, slices, rho, params),
                    std::invalid_argument);
    CHECK_THROWS_AS(base_station_power(Configuration{{1, 1, 1}}, slices, rho, params),
                    std::invalid_argument);
    PowerParams negative;
    negative.p_dynamic_watts = -1.0;
    CHECK_THROWS_AS(slice_energy(slices[0], 0.5, negative), std::invalid_argument);
  }

  TEST_CASE("slice validation") {
    auto slices = stock_slices();
    CHECK_NOTHROW(validate_slices(slices));
    CHECK(eco_index(slices) == 3);

    auto no_eco = slices;
    no_eco[3].is_eco = false;
    CHECK_THROWS_AS(validate_slices(no_eco), std::invalid_argument);

    auto heavy_eco = slices;
    heavy_eco[3].psi = 1.3;  // heavier than Facebook
    CHECK_THROWS_AS(validate_slices(heavy_eco), std::invalid_argument);

    auto dup = slices;
    dup[1].name = "Facebook";
    CHECK_THROWS_AS(validate_slices(dup), std::invalid_argument);

    auto comma = slices;
    comma[0].name = "Face,book";
    CHECK_THROWS_AS(validate_slices(comma), std::invalid_argument);

    auto bad_ids = slices;
    std::swap(bad_ids[0], bad_ids[1]);
    CHECK_THROWS_AS(validate_slices(bad_ids), std::invalid_argument);
  }
}
