#include "procurement/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace procurement {

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(fmt12(v));
}

namespace {

Json number(double v) {
  if (!std::isfinite(v)) return fmt12(v);
  return round12(v);
}

}  // namespace

Json VerificationReport::to_json() const {
  Json j;
  j["id"] = id;
  j["check"] = check;
  j["params"] = params;
  j["max_violation"] = number(max_violation);
  j["tolerance"] = number(tolerance);
  j["pass"] = pass;
  j["worst"] = worst;
  if (runtime_s) j["runtime_s"] = number(*runtime_s);
  if (!note.empty()) j["note"] = note;
  return j;
}

std::string VerificationReport::to_json_line() const { return to_json().dump(); }

void ViolationTracker::add(double violation, Json where) {
  ++n_;
  if (std::isnan(violation)) violation = INFINITY;
  all_.push_back(violation);
  if (n_ == 1 || violation > max_) max_ = violation;
  if (violation <= 0.0 && worst_.size() >= keep_) return;
  worst_.emplace_back(violation, std::move(where));
  std::stable_sort(worst_.begin(), worst_.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (worst_.size() > keep_) worst_.pop_back();
}

std::size_t ViolationTracker::count_above(double tol) const {
  return static_cast<std::size_t>(
      std::count_if(all_.begin(), all_.end(), [tol](double v) { return v > tol; }));
}

void ViolationTracker::finish(VerificationReport& report) const {
  report.max_violation = n_ == 0 ? 0.0 : std::max(0.0, max_);
  report.worst = Json::array();
  for (const auto& [v, where] : worst_) {
    Json w = where;
    w["violation"] = number(v);
    report.worst.push_back(std::move(w));
  }
  finalize(report);
}

void finalize(VerificationReport& report) {
  report.pass = std::isfinite(report.max_violation) && report.max_violation <= report.tolerance;
}

}  // namespace procurement
