#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cwb/graph.hpp"
#include "cwb/spectral.hpp"

namespace cwb {

// value = exp applied `height` times to `top`. Nested-exponential magnitudes
// never get materialized; comparisons descend through logarithms.
struct TowerReal {
  int height = 0;
  double top = 0.0;

  static TowerReal of(double v) { return {0, v}; }
  TowerReal log_structural() const;  // exact log: drops one exp level
  double to_double() const;          // +inf when it does not fit

  // -1, 0, 1 comparison by repeated log descent; exact for distinguishable values
  static int compare(const TowerReal& a, const TowerReal& b);
  bool operator>=(const TowerReal& o) const { return compare(*this, o) >= 0; }
  bool operator<(const TowerReal& o) const { return compare(*this, o) < 0; }
};

// t -> t + a, preserving the structural height.
TowerReal tower_add_scalar(const TowerReal& t, double a);
// t -> f * t for f > 0, preserving the structural height.
TowerReal tower_mul_scalar(const TowerReal& t, double f);

// Compression-function shapes: pow:<alpha>, log, loglog, table:<path.csv>.
struct RhoSpec {
  enum class Kind { power, log, loglog, table } kind = Kind::power;
  double alpha = 1.0;
  std::vector<std::pair<double, double>> points;  // table, strictly increasing in both

  static RhoSpec parse(const std::string& text);
  static RhoSpec table_from_points(std::vector<std::pair<double, double>> pts);

  double t0() const;                  // smallest admissible argument
  double eval(double t) const;        // domain_error below t0 / outside the table
  TowerReal eval_tower(const TowerReal& t) const;
  bool bounded() const { return kind == Kind::table; }
  std::string text() const;
};

// the generalized distortion lower bound diam * sqrt(lambda1 / (2 degree))
double jv_lower_bound(int64_t diam, double lambda1, int degree);

struct DistortionBounds {
  double lower_jv = 0.0;
  double upper_trivial = 0.0;  // = diameter, by the scaled indicator embedding
  int64_t diam = 0;
  int degree = 0;
  double lambda1 = 0.0;
};

DistortionBounds distortion_bounds(const CayleyGraph& g, const SpectralReport& rep);

struct CompressionRow {
  int64_t index = 0;     // family parameter m
  double diam = 0.0;
  double lower = 0.0;    // distortion lower bound for this member
  double ratio = 0.0;    // lower * rho(diam) / diam
};

struct CompressionVerdict {
  bool obstructed = false;
  std::string verdict;   // "obstructed (at sampled scale)" or "inconclusive"
  double growth = 0.0;   // ratio_last / ratio_first
  std::vector<CompressionRow> rows;
};

// Trend check for the hypothesis "diam/rho(diam) grows like the distortion":
// obstructed iff the ratios increase strictly and grow past `factor`.
CompressionVerdict compression_obstruction(const std::vector<CompressionRow>& family_data,
                                           const RhoSpec& rho, double factor = 10.0);

struct KmPlanRow {
  int64_t m = 0;
  TowerReal log_km;   // L_m = log k_m, minimal with rho(c m^2 L_m) >= m^s
  int tower_height() const { return log_km.height + 1; }  // height of k_m itself
  double top_value() const { return log_km.top; }
};

struct KmPlan {
  std::vector<KmPlanRow> rows;
  std::string to_json() const;  // rows of {m, tower_height, top_value}
};

// Minimal tower-form L_m with rho(c m^2 L_m) >= m^s, verified in log space;
// unsatisfiable for bounded (table) rho beyond its range.
KmPlan choose_km(const RhoSpec& rho, const std::vector<int64_t>& m_values, int s, double c = 1.0);

// rho(c m^2 L) >= m^s, evaluated without materializing the magnitudes.
bool km_inequality_holds(const RhoSpec& rho, int64_t m, int s, double c, const TowerReal& L);

struct DiamLawCell {
  int64_t m = 0;
  int64_t k = 0;
  int64_t diam = 0;
  uint64_t order = 0;
  std::string method;
  double ratio = 0.0;  // diam / (m^2 ln k)
};

struct DiamLawReport {
  std::vector<DiamLawCell> cells;
  double ratio_min = 0.0, ratio_max = 0.0;
  bool within_band = false;  // max/min <= band factor
};

// Measured diameters of sl(m, zmod k, st) over a cell list, with the
// diam/(m^2 log k) ratios and a one-order-of-magnitude band check.
DiamLawReport diameter_law_fit(const std::vector<std::pair<int64_t, int64_t>>& cells,
                               uint64_t vertex_cap = 2'000'000,
                               uint64_t memory_budget = 6ull << 30, int threads = 1,
                               double band_factor = 10.0);

}  // namespace cwb
