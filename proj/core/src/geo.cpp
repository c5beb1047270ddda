#include "pheno/geo.hpp"

#include "pheno/error.hpp"

namespace pheno {

void obfuscate_gps(const GpsOffset& offset, double lat, double lon, double& lat_out,
                   double& lon_out) {
  if (std::fabs(lat) > 85.0)
    throw Error(Errc::PoleProximity, "latitude out of supported range: " + std::to_string(lat));
  // Translate in the projected plane, then invert the projection at the new
  // latitude. With north_m = 0 this reduces to lon + east/(111320·cos lat).
  double y = kMetersPerDeg * lat + offset.north_m;
  double lat2 = y / kMetersPerDeg;
  if (std::fabs(lat2) > 85.0)
    throw Error(Errc::PoleProximity, "displaced latitude out of supported range");
  double x = kMetersPerDeg * lon * std::cos(lat * kDegToRad) + offset.east_m;
  lat_out = lat2;
  lon_out = x / (kMetersPerDeg * std::cos(lat2 * kDegToRad));
}

}  // namespace pheno
