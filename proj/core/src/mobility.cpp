#include "pheno/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pheno/error.hpp"
#include "pheno/numeric.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double dist2d(double ax, double ay, double bx, double by) {
  double dx = ax - bx, dy = ay - by;
  return std::sqrt(dx * dx + dy * dy);
}
}  // namespace

MobilityParams mobility_params(const StudyConfig& c) {
  MobilityParams p;
  p.pause_radius_m = c.pause_radius_m;
  p.pause_min_duration_s = c.pause_min_duration_s;
  p.home_radius_m = c.home_radius_m;
  p.sigloc_merge_m = c.sigloc_merge_m;
  p.sigloc_min_dwell_min = c.sigloc_min_dwell_min;
  p.night_start_min = c.night_start_min;
  p.night_end_min = c.night_end_min;
  return p;
}

PauseFlightTrace extract_pauses_flights(const std::vector<GpsSample>& s,
                                        const MobilityParams& p) {
  PauseFlightTrace out;
  const size_t n = s.size();
  size_t i = 0;
  while (i < n) {
    double cx = s[i].x, cy = s[i].y;
    size_t j = i + 1;
    size_t count = 1;
    while (j < n && dist2d(s[j].x, s[j].y, cx, cy) <= p.pause_radius_m) {
      cx = (cx * static_cast<double>(count) + s[j].x) / static_cast<double>(count + 1);
      cy = (cy * static_cast<double>(count) + s[j].y) / static_cast<double>(count + 1);
      ++count;
      ++j;
    }
    double span_s = static_cast<double>(s[j - 1].lms - s[i].lms) / 1000.0;
    if (count >= 2 && span_s >= p.pause_min_duration_s) {
      out.pauses.push_back({cx, cy, s[i].lms, s[j - 1].lms});
      i = j;
    } else {
      ++i;
    }
  }
  for (size_t k = 1; k < out.pauses.size(); ++k) {
    const Pause& a = out.pauses[k - 1];
    const Pause& b = out.pauses[k];
    Flight f;
    f.from_x = a.cx;
    f.from_y = a.cy;
    f.to_x = b.cx;
    f.to_y = b.cy;
    f.length_m = dist2d(a.cx, a.cy, b.cx, b.cy);
    f.duration_s = static_cast<double>(b.start_lms - a.end_lms) / 1000.0;
    f.start_lms = a.end_lms;
    out.flights.push_back(f);
  }
  return out;
}

std::vector<SigLoc> cluster_pauses(const std::vector<Pause>& pauses, double merge_m) {
  std::vector<SigLoc> clusters;
  for (const auto& pa : pauses) {
    double dwell = static_cast<double>(pa.end_lms - pa.start_lms);
    bool placed = false;
    for (auto& c : clusters) {
      if (dist2d(pa.cx, pa.cy, c.cx, c.cy) <= merge_m) {
        // dwell-weighted centroid update
        double w = c.dwell_ms + dwell;
        if (w > 0) {
          c.cx = (c.cx * c.dwell_ms + pa.cx * dwell) / w;
          c.cy = (c.cy * c.dwell_ms + pa.cy * dwell) / w;
        }
        c.dwell_ms = w;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({pa.cx, pa.cy, dwell});
  }
  return clusters;
}

std::int64_t night_overlap_ms(std::int64_t start, std::int64_t end, int night_start_min,
                              int night_end_min) {
  if (end <= start) return 0;
  std::int64_t total = 0;
  // Night for day d: [d + night_start, d+1 + night_end) in local ms.
  std::int64_t first_day = local_day_serial(start) - 1;
  std::int64_t last_day = local_day_serial(end);
  for (std::int64_t d = first_day; d <= last_day; ++d) {
    std::int64_t w0 = d * kMsPerDay + static_cast<std::int64_t>(night_start_min) * kMsPerMin;
    std::int64_t w1 = (d + 1) * kMsPerDay + static_cast<std::int64_t>(night_end_min) * kMsPerMin;
    std::int64_t a = std::max(start, w0), b = std::min(end, w1);
    if (b > a) total += b - a;
  }
  return total;
}

HomePoint detect_home(const std::vector<GpsSample>& all_samples, const MobilityParams& p) {
  auto trace = extract_pauses_flights(all_samples, p);
  // Keep pauses with any nighttime overlap, weighted by that overlap.
  std::vector<Pause> night;
  for (const auto& pa : trace.pauses) {
    std::int64_t ov = night_overlap_ms(pa.start_lms, pa.end_lms, p.night_start_min,
                                       p.night_end_min);
    if (ov > 0) {
      Pause np = pa;
      // reuse the interval fields to carry night dwell into clustering
      np.start_lms = 0;
      np.end_lms = ov;
      night.push_back(np);
    }
  }
  if (night.empty()) throw Error(Errc::NoNightData, "no nighttime pause found");
  auto clusters = cluster_pauses(night, p.sigloc_merge_m);
  const SigLoc* best = &clusters[0];
  for (const auto& c : clusters)
    if (c.dwell_ms > best->dwell_ms) best = &c;
  return {best->cx, best->cy};
}

MobilityDay daily_mobility(const std::vector<GpsSample>& day_samples,
                           const PauseFlightTrace& trace, const HomePoint& home,
                           std::int64_t day_start_lms, const MobilityParams& p) {
  MobilityDay m{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan,
                kNan, kNan, kNan, kNan, 1440, kNan, kNan};
  if (day_samples.empty()) return m;

  // Minute coverage: a pause covering any part of the minute fixes the
  // position at its centroid; otherwise the first sample in the minute does.
  int observed = 0, at_home = 0;
  for (int minute = 0; minute < 1440; ++minute) {
    std::int64_t m0 = day_start_lms + static_cast<std::int64_t>(minute) * kMsPerMin;
    std::int64_t m1 = m0 + kMsPerMin;
    double px = 0, py = 0;
    bool known = false;
    for (const auto& pa : trace.pauses) {
      if (pa.start_lms < m1 && pa.end_lms > m0) {
        px = pa.cx;
        py = pa.cy;
        known = true;
        break;
      }
    }
    if (!known) {
      // day_samples sorted; binary search the minute
      auto it = std::lower_bound(day_samples.begin(), day_samples.end(), m0,
                                 [](const GpsSample& s, std::int64_t t) { return s.lms < t; });
      if (it != day_samples.end() && it->lms < m1) {
        px = it->x;
        py = it->y;
        known = true;
      }
    }
    if (known) {
      ++observed;
      if (dist2d(px, py, home.x, home.y) <= p.home_radius_m) ++at_home;
    }
  }
  m.Hometime_mins = at_home;
  m.MinsMissing = 1440 - observed;

  // Sample-based geometry.
  double sx = 0, sy = 0;
  for (const auto& s : day_samples) {
    sx += s.x;
    sy += s.y;
  }
  double n = static_cast<double>(day_samples.size());
  double cx = sx / n, cy = sy / n;
  double acc = 0, max_home = 0;
  for (const auto& s : day_samples) {
    double dx = s.x - cx, dy = s.y - cy;
    acc += dx * dx + dy * dy;
    max_home = std::max(max_home, dist2d(s.x, s.y, home.x, home.y));
  }
  m.RoG_m = std::sqrt(acc / n);
  m.MaxHomeDist_m = max_home;

  double diam = 0;
  for (size_t i = 0; i < day_samples.size(); ++i)
    for (size_t j = i + 1; j < day_samples.size(); ++j)
      diam = std::max(diam, dist2d(day_samples[i].x, day_samples[i].y, day_samples[j].x,
                                   day_samples[j].y));
  m.MaxDiam_m = diam;

  // Flights.
  m.NumFlights = static_cast<double>(trace.flights.size());
  double dist_travelled = 0;
  if (!trace.flights.empty()) {
    std::vector<double> lens, durs;
    for (const auto& f : trace.flights) {
      lens.push_back(f.length_m);
      durs.push_back(f.duration_s);
      dist_travelled += f.length_m;
    }
    m.AvgFlightLen_m = vec_mean(lens);
    m.StdFlightLen_m = vec_std(lens);
    m.AvgFlightDur_s = vec_mean(durs);
    m.StdFlightDur_s = vec_std(durs);
    m.FirstMoveTime_mins =
        static_cast<double>(trace.flights.front().start_lms - day_start_lms) /
        static_cast<double>(kMsPerMin);
  }
  m.DistTravelled_m = trace.flights.empty() ? 0.0 : dist_travelled;

  // Pause fraction of traced time.
  double pause_ms = 0, flight_ms = 0;
  for (const auto& pa : trace.pauses) pause_ms += static_cast<double>(pa.end_lms - pa.start_lms);
  for (const auto& f : trace.flights) flight_ms += f.duration_s * 1000.0;
  if (pause_ms + flight_ms > 0) m.ProbPause = pause_ms / (pause_ms + flight_ms);

  // Significant locations visited today.
  auto clusters = cluster_pauses(trace.pauses, p.sigloc_merge_m);
  double min_dwell_ms = p.sigloc_min_dwell_min * 60000.0;
  std::vector<double> dwell;
  for (const auto& c : clusters)
    if (c.dwell_ms >= min_dwell_ms) dwell.push_back(c.dwell_ms);
  if (dwell.empty() && !clusters.empty()) {
    // every visited place was brief; count the dominant one so a day with
    // any pause registers at least one location
    double best = 0;
    for (const auto& c : clusters) best = std::max(best, c.dwell_ms);
    dwell.push_back(best);
  }
  m.SigLocsVisited = static_cast<double>(dwell.size());
  if (!dwell.empty()) {
    double total = 0;
    for (double d : dwell) total += d;
    double ent = 0;
    for (double d : dwell) {
      double frac = d / total;
      if (frac > 0) ent -= frac * std::log(frac);
    }
    m.SigLocEntropy = ent;
  }
  return m;
}

}  // namespace pheno
