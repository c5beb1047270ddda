#pragma once

#include <cmath>

namespace pheno {

// Local equirectangular projection shared by obfuscation and all mobility
// distance math: x east, y north, meters. 111320 m per degree of latitude.
constexpr double kMetersPerDeg = 111320.0;
constexpr double kDegToRad = 0.017453292519943295;

struct PlanarPoint {
  double x = 0;  // m east
  double y = 0;  // m north
};

inline PlanarPoint project(double lat, double lon) {
  return {kMetersPerDeg * lon * std::cos(lat * kDegToRad), kMetersPerDeg * lat};
}

inline double planar_dist(const PlanarPoint& a, const PlanarPoint& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Per-participant fixed displacement, meters east/north.
struct GpsOffset {
  double east_m = 0;
  double north_m = 0;
};

// Applies the displacement as an exact translation in the projected plane,
// so pairwise planar distances are preserved bit-for-bit up to rounding.
// Rejects |lat| > 85 where the cos() scale factor degenerates.
void obfuscate_gps(const GpsOffset& offset, double lat, double lon, double& lat_out,
                   double& lon_out);

}  // namespace pheno
