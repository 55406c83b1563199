#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace procurement {

using Json = nlohmann::ordered_json;

/// "%.12g" formatting used for every float the tools print.
std::string fmt12(double v);

/// v rounded through its 12-significant-digit text form, so JSON output is
/// stable across platforms and runs.
double round12(double v);

/// Structured pass/fail record for one check.
struct VerificationReport {
  std::string id;
  std::string check;
  Json params = Json::object();
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Json worst = Json::array();  // worst offending locations, largest first
  std::optional<double> runtime_s;
  std::string note;

  Json to_json() const;
  std::string to_json_line() const;
};

/// Collects violations and remembers the worst few locations.
class ViolationTracker {
 public:
  explicit ViolationTracker(std::size_t keep = 5) : keep_(keep) {}

  /// Records a violation magnitude (<= 0 means satisfied) at a location.
  void add(double violation, Json where);
  double max() const { return max_; }
  std::size_t count_above(double tol) const;
  std::size_t evaluations() const { return n_; }

  /// Fills max_violation, worst and pass (max_violation <= tolerance).
  void finish(VerificationReport& report) const;

 private:
  std::size_t keep_;
  std::size_t n_ = 0;
  double max_ = 0.0;
  std::vector<double> all_;
  std::vector<std::pair<double, Json>> worst_;
};

/// pass is recomputed from max_violation and tolerance.
void finalize(VerificationReport& report);

}  // namespace procurement
