#pragma once

#include <cstdint>
#include <vector>

#include "pheno/config.hpp"
#include "pheno/geo.hpp"

namespace pheno {

// Mobility works entirely in the projected plane (meters), which makes every
// metric translation-invariant under the per-participant GPS displacement.
struct GpsSample {
  std::int64_t lms;  // local epoch ms
  double x, y;       // projected meters
};

struct MobilityParams {
  double pause_radius_m = 50.0;
  double pause_min_duration_s = 300.0;
  double home_radius_m = 100.0;
  double sigloc_merge_m = 200.0;
  double sigloc_min_dwell_min = 15.0;
  int night_start_min = 1260;  // 21:00
  int night_end_min = 360;     // 06:00
};
MobilityParams mobility_params(const StudyConfig& cfg);

struct Pause {
  double cx, cy;  // centroid
  std::int64_t start_lms, end_lms;
};

struct Flight {
  double from_x, from_y, to_x, to_y;
  double length_m;
  double duration_s;
  std::int64_t start_lms;
};

struct PauseFlightTrace {
  std::vector<Pause> pauses;
  std::vector<Flight> flights;  // flights[i] connects pauses[i] -> pauses[i+1]
};

// Greedy running-centroid pause detector: a pause is a maximal group in
// which each point stays within pause_radius of the group's running
// centroid, spanning at least pause_min_duration.
PauseFlightTrace extract_pauses_flights(const std::vector<GpsSample>& sorted_samples,
                                        const MobilityParams& p);

// Clusters of pauses merged at sigloc_merge_m, with accumulated dwell time.
struct SigLoc {
  double cx, cy;
  double dwell_ms;
};
std::vector<SigLoc> cluster_pauses(const std::vector<Pause>& pauses, double merge_m);

struct HomePoint {
  double x, y;
};
// Argmax night dwell (21:00-06:00) over clustered night pauses across the
// whole sample history; throws NoNightData when no pause touches the night.
HomePoint detect_home(const std::vector<GpsSample>& all_samples, const MobilityParams& p);

struct MobilityDay {
  double Hometime_mins;
  double SigLocsVisited;
  double RoG_m;
  double MaxHomeDist_m;
  double DistTravelled_m;
  double MaxDiam_m;
  double AvgFlightLen_m;
  double StdFlightLen_m;
  double AvgFlightDur_s;
  double StdFlightDur_s;
  double ProbPause;
  double SigLocEntropy;
  double MinsMissing;
  double FirstMoveTime_mins;
  double NumFlights;
};
constexpr int kMobilityDims = 15;

// day_samples must all fall inside the local day starting at day_start_lms.
MobilityDay daily_mobility(const std::vector<GpsSample>& day_samples,
                           const PauseFlightTrace& trace, const HomePoint& home,
                           std::int64_t day_start_lms, const MobilityParams& p);

// Overlap (ms) of [start,end) with the nightly window, accumulated across
// however many nights the interval spans.
std::int64_t night_overlap_ms(std::int64_t start_lms, std::int64_t end_lms, int night_start_min,
                              int night_end_min);

}  // namespace pheno
