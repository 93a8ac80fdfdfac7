#pragma once

#include <cstdint>
#include <vector>

#include "hapsim/band.hpp"

namespace hapsim {

inline constexpr double kEarthRadiusM = 6371000.0;

/// Axis-aligned service area on a local tangent plane. The default square
/// covers 115,000 km^2, the footprint used throughout the shipped configs.
struct Region {
  double width_m = 339116.0;
  double height_m = 339116.0;
};

/// Planar position inside a Region (meters from the south-west corner).
struct GeoPoint {
  double x_m = 0.0;
  double y_m = 0.0;
};

/// Stratospheric platform: planar position plus altitude and the per-band
/// EIRP it radiates toward every user in its footprint (single-beam model).
struct HapsNode {
  GeoPoint position{};
  double altitude_m = 20000.0;
  double eirp_dbm = 0.0;
  Band band = Band::S;
};

double ground_distance(const GeoPoint& a, const GeoPoint& b);

/// n i.i.d.-uniform points over the region. Each point draws from its own
/// counter-based substream, so any parallel split reproduces the serial
/// stream. n == 0 yields an empty list; n < 0 is invalid.
std::vector<GeoPoint> sample_users(const Region& region, long n, std::uint64_t seed);

/// Deterministic platform layout: k = 1 at the region center, k = 2 at the
/// centers of the two halves split along the longer axis, k = 4 at the
/// quadrant centroids. Other k land on a ceil(sqrt(k))-column grid oriented
/// along the longer axis. k == 0 is invalid.
std::vector<GeoPoint> place_haps(const Region& region, int k);

/// Line-of-sight distance to a platform at `altitude_m` seen under
/// `elevation_deg`, on a spherical earth. Exactly `altitude_m` at zenith.
double slant_range(double elevation_deg, double altitude_m);

/// Elevation angle (degrees) of the platform as seen from the user, using the
/// planar user-HAPS distance as great-circle arc length. Clamped to >= 0;
/// 90 at the sub-HAPS point.
double elevation_of(const GeoPoint& user, const HapsNode& haps);

}  // namespace hapsim
