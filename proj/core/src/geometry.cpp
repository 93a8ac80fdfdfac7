#include "hapsim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hapsim/rng.hpp"

namespace hapsim {

double ground_distance(const GeoPoint& a, const GeoPoint& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

std::vector<GeoPoint> sample_users(const Region& region, long n, std::uint64_t seed) {
  if (n < 0) {
    throw std::invalid_argument("sample_users: n must be >= 0");
  }
  std::vector<GeoPoint> users(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    auto rng = SubstreamRng::keyed(seed, {kUserPlacementStream, static_cast<std::uint64_t>(i)});
    users[static_cast<std::size_t>(i)] = GeoPoint{
        rng.next_double() * region.width_m,
        rng.next_double() * region.height_m,
    };
  }
  return users;
}

std::vector<GeoPoint> place_haps(const Region& region, int k) {
  if (k <= 0) {
    throw std::invalid_argument("place_haps: k must be >= 1");
  }
  const bool x_is_long = region.width_m >= region.height_m;
  const double long_extent = x_is_long ? region.width_m : region.height_m;
  const double short_extent = x_is_long ? region.height_m : region.width_m;

  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
  const int rows = (k + cols - 1) / cols;

  std::vector<GeoPoint> nodes;
  nodes.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int col = i % cols;
    const int row = i / cols;
    const double along = (col + 0.5) * long_extent / cols;
    const double across = (row + 0.5) * short_extent / rows;
    nodes.push_back(x_is_long ? GeoPoint{along, across} : GeoPoint{across, along});
  }
  return nodes;
}

double slant_range(double elevation_deg, double altitude_m) {
  if (elevation_deg < 0.0 || elevation_deg > 90.0) {
    throw std::invalid_argument("slant_range: elevation must be in [0, 90] degrees");
  }
  const double s = std::sin(elevation_deg * std::numbers::pi / 180.0);
  const double re = kEarthRadiusM;
  const double h = altitude_m;
  return std::sqrt(re * re * s * s + h * h + 2.0 * re * h) - re * s;
}

double elevation_of(const GeoPoint& user, const HapsNode& haps) {
  const double g = ground_distance(user, haps.position);
  if (g == 0.0) {
    return 90.0;
  }
  const double phi = g / kEarthRadiusM;
  const double num = std::cos(phi) - kEarthRadiusM / (kEarthRadiusM + haps.altitude_m);
  const double den = std::sin(phi);
  const double elevation = std::atan2(num, den) * 180.0 / std::numbers::pi;
  return std::max(0.0, elevation);  // beyond-horizon clamps to the horizon
}

}  // namespace hapsim
