#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "quasikit/extrapolation.hpp"
#include "quasikit/maps.hpp"
#include "quasikit/transmission.hpp"

namespace quasikit {

using Json = nlohmann::json;

const char* version();

// Complex numbers are plain numbers or {"re": x, "im": y}.
cplx complex_from_json(const Json& j);
Json complex_to_json(cplx z);
CVec cvec_from_json(const Json& j);
Json cvec_to_json(const CVec& v);

// {"kind": "identity" | "taylor" | "joukowski" | "moebius" | "inverted" | "interior" | "catalog", ...}
UnivalentMap map_from_json(const Json& j);
// "standard", "deep", "coarse", "collar" or {"deltas": [...], "order": k, "tol": t}
ExtrapolationSchedule schedule_from_json(const Json& j);
// {"kind": "identity" | "rotation" | "sine" | "automorphism", ...}
CircleHomeo homeo_from_json(const Json& j);

// Suites used for exit codes 10 + suite.
enum class Suite { Series = 0, Maps = 1, FaberGrunsky = 2, Cauchy = 3, Transmission = 4 };
const char* to_string(Suite s);

class ExperimentConfig {
public:
  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_json(Json j);

  // key=value with dotted keys for nested objects; the value is parsed as JSON when possible,
  // otherwise stored as a string.
  void set(const std::string& assignment);
  void validate() const;

  const Json& json() const { return j_; }
  UnivalentMap map() const;
  int N() const;
  ExtrapolationSchedule schedule() const;
  std::optional<cplx> q() const;
  double tolerance(const std::string& name, double fallback) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;

private:
  Json j_;
};

struct Residual {
  std::string name;
  Suite suite = Suite::Series;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunReport {
  std::string command;
  std::string version;
  Json config;
  double kappa_D = 0.0;
  Json quadrature;
  Json result;
  std::vector<Residual> residuals;
  double wall_clock = 0.0;
  std::map<std::string, std::string> tables;  // CSV file name -> contents

  void add(const std::string& name, Suite suite, double value, double tolerance);
  bool passed() const;
  // 0 when every residual passes, otherwise 10 + the suite of the first failing row.
  int exit_code() const;
  Json to_json() const;
  // report.json plus one CSV per table.
  void write(const std::string& dir) const;
};

const std::vector<std::string>& commands();
RunReport run(const std::string& command, const ExperimentConfig& cfg);

// Per-field differences of two report JSON objects with the same command and map. "fields" lists
// {path, a, b[, delta]} for every differing leaf outside wall_clock.
Json diff_reports(const Json& a, const Json& b);

}  // namespace quasikit
