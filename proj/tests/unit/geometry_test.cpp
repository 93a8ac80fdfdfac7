#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hapsim/geometry.hpp"

using namespace hapsim;

namespace {

// Independent chord-length oracle: law of cosines on the spherical triangle
// (earth center, user, platform) with central angle g / Re.
double chord_oracle(double ground_m, double altitude_m) {
  const double phi = ground_m / kEarthRadiusM;
  const double r1 = kEarthRadiusM;
  const double r2 = kEarthRadiusM + altitude_m;
  return std::sqrt(r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(phi));
}

}  // namespace

TEST_CASE("sample_users stays inside the region and respects n") {
  const Region tiny{1.0, 1.0};
  const auto users = sample_users(tiny, 1, 7);
  REQUIRE(users.size() == 1);
  CHECK(users[0].x_m >= 0.0);
  CHECK(users[0].x_m <= 1.0);
  CHECK(users[0].y_m >= 0.0);
  CHECK(users[0].y_m <= 1.0);

  CHECK(sample_users(tiny, 0, 7).empty());
  CHECK_THROWS_AS(sample_users(tiny, -1, 7), std::invalid_argument);
}

TEST_CASE("sample_users is bit-identical for identical seeds") {
  const Region region{339116.0, 339116.0};
  const auto a = sample_users(region, 1000, 42);
  const auto b = sample_users(region, 1000, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x_m == b[i].x_m);
    CHECK(a[i].y_m == b[i].y_m);
  }
  const auto c = sample_users(region, 1000, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    any_diff |= a[i].x_m != c[i].x_m;
  }
  CHECK(any_diff);
}

TEST_CASE("sample_users mean passes the CLT bound") {
  const double side = 339116.0;
  const Region region{side, side};
  const long n = 1000000;
  const auto users = sample_users(region, n, 42);
  double sum_x = 0.0;
  for (const auto& u : users) sum_x += u.x_m;
  const double mean_x = sum_x / static_cast<double>(n);
  const double bound = 3.0 * (side / std::sqrt(12.0)) / 1000.0;  // 3 sigma / sqrt(n)
  CHECK(std::abs(mean_x - side / 2.0) < bound);
}

TEST_CASE("place_haps canonical layouts") {
  const Region square{100.0, 100.0};
  const auto one = place_haps(square, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].x_m == doctest::Approx(50.0));
  CHECK(one[0].y_m == doctest::Approx(50.0));

  const auto four = place_haps(square, 4);
  REQUIRE(four.size() == 4);
  CHECK(four[0].x_m == doctest::Approx(25.0));
  CHECK(four[0].y_m == doctest::Approx(25.0));
  CHECK(four[1].x_m == doctest::Approx(75.0));
  CHECK(four[1].y_m == doctest::Approx(25.0));
  CHECK(four[2].x_m == doctest::Approx(25.0));
  CHECK(four[2].y_m == doctest::Approx(75.0));
  CHECK(four[3].x_m == doctest::Approx(75.0));
  CHECK(four[3].y_m == doctest::Approx(75.0));

  // k = 2 splits along the longer axis.
  const Region tall{100.0, 400.0};
  const auto two = place_haps(tall, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].x_m == doctest::Approx(50.0));
  CHECK(two[0].y_m == doctest::Approx(100.0));
  CHECK(two[1].x_m == doctest::Approx(50.0));
  CHECK(two[1].y_m == doctest::Approx(300.0));

  CHECK_THROWS_AS(place_haps(square, 0), std::invalid_argument);

  // Deterministic and permutation-stable.
  const auto again = place_haps(square, 4);
  for (std::size_t i = 0; i < four.size(); ++i) {
    CHECK(four[i].x_m == again[i].x_m);
    CHECK(four[i].y_m == again[i].y_m);
  }
}

TEST_CASE("four platforms strictly shrink the worst user-to-HAPS distance") {
  const Region region{339116.0, 339116.0};
  const auto users = sample_users(region, 10000, 11);
  double worst1 = 0.0, worst4 = 0.0;
  const auto h1 = place_haps(region, 1);
  const auto h4 = place_haps(region, 4);
  for (const auto& u : users) {
    double d1 = 1e18, d4 = 1e18;
    for (const auto& h : h1) d1 = std::min(d1, ground_distance(u, h));
    for (const auto& h : h4) d4 = std::min(d4, ground_distance(u, h));
    worst1 = std::max(worst1, d1);
    worst4 = std::max(worst4, d4);
  }
  CHECK(worst4 < worst1);
}

TEST_CASE("slant_range closed-form values") {
  CHECK(slant_range(90.0, 20000.0) == doctest::Approx(20000.0).epsilon(1e-12));
  // Frozen from the closed form with Re = 6371 km.
  CHECK(std::abs(slant_range(0.0, 20000.0) - 505212.83) < 1.0);
  CHECK(std::abs(slant_range(30.0, 20000.0) - 39813.98) < 1.0);
  // Flat-earth upper bound h / sin(elevation).
  CHECK(slant_range(30.0, 20000.0) < 20000.0 / std::sin(30.0 * std::numbers::pi / 180.0));

  CHECK_THROWS_AS(slant_range(-0.1, 20000.0), std::invalid_argument);
  CHECK_THROWS_AS(slant_range(90.1, 20000.0), std::invalid_argument);
}

TEST_CASE("slant_range is strictly decreasing in elevation") {
  double prev = slant_range(0.0, 20000.0);
  for (int i = 1; i <= 90; ++i) {
    const double d = slant_range(static_cast<double>(i), 20000.0);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("elevation_of hits known angles") {
  const HapsNode haps{{1000.0, 2000.0}, 20000.0, 0.0, Band::S};
  CHECK(elevation_of(GeoPoint{1000.0, 2000.0}, haps) == doctest::Approx(90.0));

  const HapsNode origin{{0.0, 0.0}, 20000.0, 0.0, Band::S};
  const double e = elevation_of(GeoPoint{20000.0, 0.0}, origin);
  CHECK(std::abs(e - 44.8651) < 0.02);
  CHECK(e < 45.0);  // flat-earth 45 degrees is an upper bound
}

TEST_CASE("elevation_of is strictly decreasing in ground distance") {
  const HapsNode origin{{0.0, 0.0}, 20000.0, 0.0, Band::S};
  double prev = 91.0;
  for (int i = 1; i <= 1000; ++i) {
    const double g = 500.0 * i;
    const double e = elevation_of(GeoPoint{g, 0.0}, origin);
    if (e == 0.0 && prev == 0.0) continue;  // both clamped beyond horizon
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("slant_range composed with elevation_of reproduces the chord") {
  const HapsNode origin{{0.0, 0.0}, 20000.0, 0.0, Band::S};
  for (double g : {1.0, 100.0, 5000.0, 20000.0, 120000.0, 240000.0, 480000.0}) {
    const double e = elevation_of(GeoPoint{g, 0.0}, origin);
    const double via_elevation = slant_range(e, 20000.0);
    const double chord = chord_oracle(g, 20000.0);
    CHECK(std::abs(via_elevation - chord) / chord < 1e-6);
  }
}
