#include "pheno/dashboards.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pheno/manifest.hpp"
#include "pheno/records.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v, const char* spec) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}
std::string fmt1(double v) { return fmt(v, "%.1f"); }
std::string fmt4(double v) { return fmt(v, "%.4f"); }

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kStyle =
    "<style>\n"
    "body{font-family:sans-serif;margin:16px}\n"
    "table{border-collapse:collapse;margin:8px 0}\n"
    "td,th{border:1px solid #999;padding:3px 7px;font-size:13px;text-align:right}\n"
    "th{background:#eee}\n"
    "td.label,th.label{text-align:left}\n"
    ".green{background:#9fd79f}\n"
    ".orange{background:#f5c26b}\n"
    ".red{background:#e57373}\n"
    ".mild{background:#fff0a3}\n"
    ".high{background:#f5c26b}\n"
    ".max{background:#e57373}\n"
    ".good{background:#9fd79f}\n"
    ".fair{background:#f5c26b}\n"
    ".poor{background:#e57373}\n"
    ".bars{display:flex;align-items:flex-end;gap:6px;height:120px}\n"
    ".bar{width:34px;text-align:center;font-size:11px}\n"
    ".panel{display:inline-block;vertical-align:top;border:1px solid #ccc;"
    "margin:6px;padding:6px}\n"
    "</style>\n";

std::string html_open(const std::string& title) {
  return "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
         escape(title) + "</title>\n" + kStyle + "</head>\n<body>\n<h1>" + escape(title) +
         "</h1>\n";
}

double age_hours(std::int64_t now_ms, std::int64_t then_ms) {
  if (then_ms < 0) return kNan;
  return static_cast<double>(now_ms - then_ms) / 3600000.0;
}

// Age cell: hours with freshness color; never-seen renders red "never".
std::string age_cell(std::int64_t now_ms, std::int64_t then_ms, const StudyConfig& cfg) {
  double h = age_hours(now_ms, then_ms);
  if (std::isnan(h)) return "<td class=\"red\">never</td>";
  return "<td class=\"" + freshness_class(h, cfg) + "\">" + fmt1(h) + "</td>";
}

}  // namespace

std::string freshness_class(double age_hours, const StudyConfig& cfg) {
  if (age_hours < cfg.fresh_green_hours) return "green";
  if (age_hours < cfg.fresh_orange_hours) return "orange";
  return "red";
}

std::string severity_class(double score, const StudyConfig& cfg) {
  if (std::isnan(score) || score < cfg.severity_mild) return "";
  if (score < cfg.severity_high) return "mild";
  if (score < 1.0) return "high";
  return "max";
}

double payment_progress(double worn_hours_total, double elapsed_days, double day_hours) {
  if (elapsed_days <= 0.0 || day_hours <= 0.0) return 0.0;
  return std::min(100.0, 100.0 * worn_hours_total / (elapsed_days * day_hours));
}

std::string render_collection(const std::vector<ParticipantMeta>& participants,
                              std::int64_t now_ms, const StudyConfig& cfg) {
  std::string out = html_open("Data collection");
  out += "<p>Generated for " +
         format_local_datetime(local_ms(now_ms, cfg.tz_offset_min)) + " (UTC" +
         (cfg.tz_offset_min >= 0 ? "+" : "") + std::to_string(cfg.tz_offset_min / 60) +
         ")</p>\n";
  out +=
      "<table>\n<tr><th class=\"label\">Participant</th><th class=\"label\">Phone</th>"
      "<th>Enrolled</th><th>Last visit</th><th>Visit #</th>"
      "<th>Location (h)</th><th>Sociability (h)</th><th>Taps (h)</th>"
      "<th>Phone upload (h)</th><th>Fitbit upload (h)</th><th>Sleep wake (h)</th>"
      "<th>Wearing (h/day)</th><th>Payment (%)</th></tr>\n";

  std::vector<std::string> phone_issues, fitbit_issues, sleep_issues;
  const std::int64_t today = local_day_serial(local_ms(now_ms, cfg.tz_offset_min));

  for (const auto& p : participants) {
    // Wearing window: midnight of the last visit through midnight yesterday.
    std::int64_t visit_day = today;
    std::string last_visit = "-";
    if (!p.visit_dates.empty()) {
      last_visit = p.visit_dates.back();
      visit_day = day_serial(parse_day(last_visit));
    }
    const std::int64_t elapsed = (today - 1) - visit_day;
    double worn_h = kNan, avg_h = kNan, pay = 0.0;
    if (elapsed > 0) {
      double total_s = 0.0;
      for (std::int64_t d = visit_day; d < today - 1; ++d) {
        auto it = p.heart_samples_by_day.find(d);
        if (it != p.heart_samples_by_day.end())
          total_s += 5.0 * static_cast<double>(it->second);
      }
      worn_h = total_s / 3600.0;
      avg_h = worn_h / static_cast<double>(elapsed);
      pay = payment_progress(worn_h, static_cast<double>(elapsed), cfg.wearing_day_hours);
    }

    out += "<tr><td class=\"label\">" + escape(p.id) + "</td><td class=\"label\">" +
           escape(p.phone_model) + "</td><td>" + escape(p.enrollment_date) + "</td><td>" +
           escape(last_visit) + "</td><td>" + std::to_string(p.visit_dates.size()) +
           "</td>";
    out += age_cell(now_ms, p.last_location_ms, cfg);
    out += age_cell(now_ms, p.last_sociability_ms, cfg);
    out += age_cell(now_ms, p.last_taps_ms, cfg);
    out += age_cell(now_ms, p.last_phone_upload_ms, cfg);
    out += age_cell(now_ms, p.last_wearable_upload_ms, cfg);
    out += age_cell(now_ms, p.last_wake_ms, cfg);
    out += "<td>" + fmt1(avg_h) + "</td><td>" + fmt1(pay) + "</td></tr>\n";

    if (freshness_class(age_hours(now_ms, p.last_phone_upload_ms), cfg) != "green" ||
        p.last_phone_upload_ms < 0)
      phone_issues.push_back(p.id);
    if (freshness_class(age_hours(now_ms, p.last_wearable_upload_ms), cfg) != "green" ||
        p.last_wearable_upload_ms < 0)
      fitbit_issues.push_back(p.id);
    if (freshness_class(age_hours(now_ms, p.last_wake_ms), cfg) != "green" ||
        p.last_wake_ms < 0)
      sleep_issues.push_back(p.id);
  }
  out += "</table>\n<h2>Issues</h2>\n<ul>\n";
  auto issue_line = [&](const char* label, const std::vector<std::string>& ids) {
    out += "<li>";
    out += label;
    out += ": ";
    if (ids.empty()) {
      out += "none";
    } else {
      for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += escape(ids[i]);
      }
    }
    out += "</li>\n";
  };
  issue_line("Phone Sync", phone_issues);
  issue_line("Fitbit Sync", fitbit_issues);
  issue_line("Sleep Data", sleep_issues);
  out += "</ul>\n</body>\n</html>\n";
  return out;
}

std::string render_completion(const CompletionCounts& counts, std::int64_t end_day, int days) {
  std::string out = html_open("Data completion");
  for (const auto& [pid, by_kind] : counts) {
    out += "<h2>" + escape(pid) + "</h2>\n<table>\n<tr><th class=\"label\">Feature</th>";
    for (int i = days - 1; i >= 0; --i)
      out += "<th>" + format_day(civil_from_days(end_day - i)) + "</th>";
    out += "</tr>\n";
    for (Kind k : all_kinds()) {
      const char* name = kind_name(k);
      out += "<tr><td class=\"label\">";
      out += name;
      out += "</td>";
      auto kit = by_kind.find(name);
      for (int i = days - 1; i >= 0; --i) {
        std::int64_t c = 0;
        if (kit != by_kind.end()) {
          auto dit = kit->second.find(end_day - i);
          if (dit != kit->second.end()) c = dit->second;
        }
        out += "<td>" + std::to_string(c) + "</td>";
      }
      out += "</tr>\n";
    }
    out += "</table>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

namespace {

struct WindowMean {
  double sleep_hrs = kNan, sleep_eff = kNan, msg_contacts = kNan, calls_over_min = kNan,
         away_mins = kNan, rog_m = kNan;
  int days_present = 0;
};

WindowMean window_mean(const std::map<std::int64_t, ClinicianDay>& days, std::int64_t lo,
                       std::int64_t hi) {
  WindowMean w;
  double s[6] = {0, 0, 0, 0, 0, 0};
  int n[6] = {0, 0, 0, 0, 0, 0};
  for (auto it = days.lower_bound(lo); it != days.end() && it->first <= hi; ++it) {
    const ClinicianDay& d = it->second;
    const double v[6] = {d.sleep_hrs, d.sleep_eff, d.msg_contacts,
                         d.calls_over_min, d.away_mins, d.rog_m};
    bool any = false;
    for (int i = 0; i < 6; ++i) {
      if (!std::isnan(v[i])) {
        s[i] += v[i];
        ++n[i];
        any = true;
      }
    }
    if (any) ++w.days_present;
  }
  double* fields[6] = {&w.sleep_hrs, &w.sleep_eff, &w.msg_contacts,
                       &w.calls_over_min, &w.away_mins, &w.rog_m};
  for (int i = 0; i < 6; ++i)
    if (n[i] > 0) *fields[i] = s[i] / n[i];
  return w;
}

// Color scale for mean radius of gyration; lower mobility is the warning
// direction.
const char* rog_class(double rog_m) {
  if (std::isnan(rog_m)) return "";
  if (rog_m >= 2000.0) return "good";
  if (rog_m >= 500.0) return "fair";
  return "poor";
}

const char* efficiency_class(double eff, const StudyConfig& cfg) {
  if (std::isnan(eff)) return "";
  if (eff >= cfg.efficiency_good) return "good";
  if (eff >= cfg.efficiency_fair) return "fair";
  return "poor";
}

std::string bar(const std::string& label, double value, double px_per_unit,
                const std::string& cls, const std::string& text) {
  int h = 0;
  if (!std::isnan(value) && value > 0)
    h = std::min(110, static_cast<int>(std::lround(value * px_per_unit)));
  return "<div class=\"bar\"><div class=\"" + (cls.empty() ? "fill" : cls) +
         "\" style=\"height:" + std::to_string(h) + "px;border:1px solid #777\"></div>" +
         text + "<br>" + label + "</div>";
}

}  // namespace

std::string render_clinician(const ClinicianSeries& series, std::int64_t today_serial,
                             const StudyConfig& cfg) {
  std::string out = html_open("Clinician trends");
  out += "<p>Week ending " + format_day(civil_from_days(today_serial - 1)) + "</p>\n";
  struct Win {
    const char* label;
    std::int64_t lo, hi;
  };
  // CW: the 7 days before 00:00 today; PW: the 7 before CW; PM: 30 before PW.
  const Win wins[3] = {{"CW", today_serial - 7, today_serial - 1},
                       {"PW", today_serial - 14, today_serial - 8},
                       {"PM", today_serial - 44, today_serial - 15}};
  for (const auto& [pid, days] : series) {
    out += "<h2>" + escape(pid) + "</h2>\n";
    WindowMean m[3];
    int total_days = 0;
    for (int i = 0; i < 3; ++i) {
      m[i] = window_mean(days, wins[i].lo, wins[i].hi);
      total_days += m[i].days_present;
    }
    if (total_days < 1) {
      out += "<p>insufficient data</p>\n";
      continue;
    }
    // Sleep: bar height = mean duration, color = efficiency bucket.
    out += "<div class=\"panel\"><h3>Sleep</h3><div class=\"bars\">";
    for (int i = 0; i < 3; ++i)
      out += bar(wins[i].label, m[i].sleep_hrs, 10.0,
                 efficiency_class(m[i].sleep_eff, cfg), fmt1(m[i].sleep_hrs) + "h");
    out += "</div></div>\n";
    // Sociability: distinct message contacts and calls > 1 min per day.
    out += "<div class=\"panel\"><h3>Sociability</h3><div class=\"bars\">";
    for (int i = 0; i < 3; ++i)
      out += bar(std::string(wins[i].label) + " msg", m[i].msg_contacts, 12.0, "",
                 fmt1(m[i].msg_contacts));
    for (int i = 0; i < 3; ++i)
      out += bar(std::string(wins[i].label) + " call", m[i].calls_over_min, 12.0, "",
                 fmt1(m[i].calls_over_min));
    out += "</div></div>\n";
    // Mobility: time away from home, color = radius-of-gyration bucket.
    out += "<div class=\"panel\"><h3>Mobility</h3><div class=\"bars\">";
    for (int i = 0; i < 3; ++i)
      out += bar(wins[i].label, m[i].away_mins, 0.15, rog_class(m[i].rog_m),
                 fmt1(m[i].away_mins) + "m");
    out += "</div></div>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string render_anomaly(const ScoreTable& table, std::int64_t day, const StudyConfig& cfg) {
  std::string out = html_open("Anomaly scores " + format_day(civil_from_days(day)));
  out += "<table>\n<tr><th class=\"label\">Patient ID</th><th>multi var</th>";
  for (const auto& [display, column] : anomaly_feature_selection()) {
    (void)column;
    out += "<th>" + escape(display) + "</th>";
  }
  out += "</tr>\n";
  auto cell = [&](double v) {
    std::string cls = severity_class(v, cfg);
    out += cls.empty() ? "<td>" : "<td class=\"" + cls + "\">";
    out += fmt4(v) + "</td>";
  };
  for (const auto& [pid, days] : table) {
    auto it = days.find(day);
    if (it == days.end()) continue;
    out += "<tr><td class=\"label\">" + escape(pid) + "</td>";
    cell(it->second.multivariate);
    for (size_t f = 0; f < anomaly_feature_selection().size(); ++f)
      cell(f < it->second.features.size() ? it->second.features[f] : kNan);
    out += "</tr>\n";
  }
  out += "</table>\n</body>\n</html>\n";
  return out;
}

}  // namespace pheno
