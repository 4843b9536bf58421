#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "ranslice/traffic.hpp"

using namespace ranslice;
namespace fs = std::filesystem;

namespace {

SyntheticProfile small_profile(int sadis = 96, int per_day = 48) {
  SyntheticProfile p = SyntheticProfile::defaults();
  p.sadi_count = sadis;
  p.sadis_per_day = per_day;
  return p;
}

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "ranslice_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("traffic") {
  TEST_CASE("defaults describe the stock station") {
    const SyntheticProfile p = SyntheticProfile::defaults();
    REQUIRE(p.slices.size() == 4);
    CHECK(p.slices[0].spec.name == "Facebook");
    CHECK(p.slices[0].spec.psi == 1.2);
    CHECK(p.slices[0].spec.delta_ms == 10.0);
    CHECK(p.slices[1].spec.psi == 1.6);
    CHECK(p.slices[1].spec.delta_ms == 1.0);
    CHECK(p.slices[2].spec.psi == 1.4);
    CHECK(p.slices[2].spec.delta_ms == 15.0);
    CHECK(p.slices[3].spec.is_eco);
    CHECK(p.slices[3].spec.psi == 1.0);
    CHECK(p.slices[3].spec.delta_ms == 11.0);
    CHECK(p.slices[3].users_max == 0);  // no native eco users
    CHECK(p.sadi_count == 1440);
    CHECK(p.sadis_per_day == 144);
    CHECK_NOTHROW(validate_profile(p));
  }

  TEST_CASE("generation is deterministic, bit for bit") {
    const SyntheticProfile p = small_profile();
    const TrafficTrace a = generate_synthetic(7, p);
    const TrafficTrace b = generate_synthetic(7, p);
    const TrafficTrace c = generate_synthetic(8, p);
    CHECK(a == b);
    CHECK_FALSE(a == c);
  }

  TEST_CASE("drawn values respect the configured ranges") {
    const SyntheticProfile p = small_profile();
    const TrafficTrace trace = generate_synthetic(3, p);
    for (int tau = 0; tau < trace.sadi_count; ++tau)
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& users = trace.demands[static_cast<std::size_t>(tau)][i];
        if (i == 3) {
          CHECK(users.empty());
          continue;
        }
        const auto& sp = p.slices[i];
        CHECK(users.size() >= static_cast<std::size_t>(sp.users_min));
        CHECK(users.size() <= static_cast<std::size_t>(sp.users_max));
        for (const UserDemand& u : users) {
          CHECK(u.slice_id == static_cast<int>(i));
          CHECK(u.delay_req_ms >= sp.delay_min_ms);
          CHECK(u.delay_req_ms <= sp.delay_max_ms);
          CHECK(u.load >= 0.0);
        }
      }
  }

  TEST_CASE("slice load equals its users' loads plus the background floor") {
    const TrafficTrace trace = generate_synthetic(11, small_profile());
    for (int tau = 0; tau < trace.sadi_count; ++tau)
      for (std::size_t i = 0; i < 4; ++i) {
        double users_total = 0.0;
        for (const UserDemand& u : trace.demands[static_cast<std::size_t>(tau)][i])
          users_total += u.load;
        CHECK(trace.loads[static_cast<std::size_t>(tau)][i] ==
              doctest::Approx(users_total + trace.background_load[i]).epsilon(1e-12));
      }
  }

  TEST_CASE("eco floor resolves to the configured fraction of the mean app load") {
    const TrafficTrace trace = generate_synthetic(1, small_profile());
    // 0.05 * mean(100, 140, 80) = 16/3.
    CHECK(trace.background_load[3] == doctest::Approx(5.333333333333333).epsilon(1e-12));
    CHECK(trace.background_load[0] == 0.0);
    // An explicit floor wins over the fraction rule.
    SyntheticProfile p = small_profile();
    p.slices[3].background_load = 2.5;
    CHECK(generate_synthetic(1, p).background_load[3] == 2.5);
  }

  TEST_CASE("noise-free totals follow the two-harmonic curve") {
    SyntheticProfile p = small_profile();
    for (auto& s : p.slices) s.noise_std = 0.0;
    const TrafficTrace trace = generate_synthetic(5, p);
    for (int tau = 0; tau < trace.sadi_count; ++tau)
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& sp = p.slices[i];
        const double t = 2.0 * std::numbers::pi * (tau % p.sadis_per_day) / p.sadis_per_day;
        const double curve =
            sp.mean_load * (1.0 + sp.daily_amplitude * std::sin(t + sp.phase) +
                            sp.half_day_amplitude * std::sin(2.0 * t + 2.0 * sp.phase));
        double users_total = 0.0;
        for (const UserDemand& u : trace.demands[static_cast<std::size_t>(tau)][i])
          users_total += u.load;
        CHECK(users_total == doctest::Approx(std::max(0.0, curve)).epsilon(1e-9));
      }
  }

  TEST_CASE("each app slice's diurnal curve actually varies across the day") {
    // the staggered phases roughly cancel in the station total, so the swing
    // shows up per slice
    SyntheticProfile p = small_profile();
    for (auto& s : p.slices) s.noise_std = 0.0;
    const TrafficTrace trace = generate_synthetic(5, p);
    for (std::size_t i = 0; i < 3; ++i) {
      double lo = 1e300, hi = 0.0;
      for (int tau = 0; tau < p.sadis_per_day; ++tau) {
        lo = std::min(lo, trace.loads[static_cast<std::size_t>(tau)][i]);
        hi = std::max(hi, trace.loads[static_cast<std::size_t>(tau)][i]);
      }
      CHECK(hi > 1.5 * lo);
    }
  }

  TEST_CASE("csv round-trip reproduces the trace exactly") {
    const SyntheticProfile p = small_profile();
    const TrafficTrace trace = generate_synthetic(21, p);
    const fs::path path = temp_file("roundtrip.csv");
    export_csv(trace, path);
    const TrafficTrace back = ingest_csv(path, p);
    CHECK(trace == back);
  }

  TEST_CASE("export is byte-stable across runs") {
    const SyntheticProfile p = small_profile();
    const fs::path a = temp_file("stable_a.csv");
    const fs::path b = temp_file("stable_b.csv");
    export_csv(generate_synthetic(4, p), a);
    export_csv(generate_synthetic(4, p), b);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(sa.substr(0, sa.find('\n')) == "sadi,slice,user_id,delay_req_ms,load");
  }

  TEST_CASE("malformed csv is rejected with the offending line") {
    const SyntheticProfile p = small_profile();
    auto write_and_ingest = [&](const char* name, const std::string& body) {
      const fs::path path = temp_file(name);
      std::ofstream out(path);
      out << body;
      out.close();
      return ingest_csv(path, p);
    };
    CHECK_THROWS_WITH_AS(write_and_ingest("bad_header.csv", "sadi,slice\n0,Facebook,0,12,1\n"),
                         doctest::Contains("line 1"), std::invalid_argument);
    const std::string header = "sadi,slice,user_id,delay_req_ms,load\n";
    CHECK_THROWS_WITH_AS(write_and_ingest("bad_fields.csv", header + "0,Facebook,0,12\n"),
                         doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        write_and_ingest("bad_slice.csv", header + "0,Netflix,0,12,1\n"),
        doctest::Contains("unknown slice"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        write_and_ingest("bad_number.csv", header + "0,Facebook,0,twelve,1\n"),
        doctest::Contains("delay_req_ms"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        write_and_ingest("bad_gap.csv", header + "0,Facebook,0,12,1\n2,Facebook,0,12,1\n"),
        doctest::Contains("contiguous"), std::invalid_argument);
    CHECK_THROWS_AS(write_and_ingest("bad_days.csv", header + "0,Facebook,0,12,1\n"),
                    std::invalid_argument);  // 1 sadi is not a whole day
  }

  TEST_CASE("load portions are a distribution") {
    const TrafficTrace trace = generate_synthetic(13, small_profile());
    for (int tau = 0; tau < trace.sadi_count; ++tau) {
      const auto rho = load_portion(trace, tau);
      double sum = 0.0;
      for (double r : rho) {
        CHECK(r >= 0.0);
        sum += r;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("profile validation rejects broken inputs") {
    SyntheticProfile p = small_profile();
    p.sadi_count = 100;  // not a multiple of 48
    CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    p = small_profile();
    p.slices[0].users_min = 10;
    p.slices[0].users_max = 5;
    CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    p = small_profile();
    p.slices[1].delay_min_ms = 9.0;
    p.slices[1].delay_max_ms = 6.0;
    CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
    p = small_profile();
    p.slices[2].mean_load = -1.0;
    CHECK_THROWS_AS(validate_profile(p), std::invalid_argument);
  }
}
