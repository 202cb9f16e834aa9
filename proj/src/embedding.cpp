#include "cwb/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace cwb {

using ordered_json = nlohmann::ordered_json;

TowerReal TowerReal::log_structural() const {
  if (height >= 1) return {height - 1, top};
  if (top <= 0) fail(errc::domain, "log of a nonpositive value");
  return {0, std::log(top)};
}

double TowerReal::to_double() const {
  double v = top;
  for (int i = 0; i < height; ++i) {
    if (v > 709.0) return std::numeric_limits<double>::infinity();
    v = std::exp(v);
  }
  return v;
}

namespace {

// Joint log-descent until both sides sit at height 0; logs preserve order.
// Returns {-1,0,1} for sign-settled cases, 2 with the final doubles otherwise.
int descend_pair(TowerReal a, TowerReal b, double* va, double* vb) {
  while (a.height > 0 || b.height > 0) {
    if (a.height > 0 && b.height == 0 && b.top <= 0) return 1;
    if (b.height > 0 && a.height == 0 && a.top <= 0) return -1;
    a = a.log_structural();
    b = b.log_structural();
  }
  *va = a.top;
  *vb = b.top;
  return 2;
}

}  // namespace

int TowerReal::compare(const TowerReal& a, const TowerReal& b) {
  double va = 0, vb = 0;
  int s = descend_pair(a, b, &va, &vb);
  if (s != 2) return s;
  return va < vb ? -1 : va > vb ? 1 : 0;
}

TowerReal tower_add_scalar(const TowerReal& t, double a) {
  if (t.height == 0) return {0, t.top + a};
  // t = exp(w); t + a = exp(w + log1p(a * exp(-t)))
  double value = t.to_double();
  if (std::isinf(value)) return t;  // the correction is below double resolution
  TowerReal w = t.log_structural();
  return {t.height, tower_add_scalar(w, std::log1p(a / value)).top};
}

TowerReal tower_mul_scalar(const TowerReal& t, double f) {
  if (f <= 0) fail(errc::domain, "tower scaling needs a positive factor");
  if (t.height == 0) return {0, t.top * f};
  TowerReal w = tower_add_scalar(t.log_structural(), std::log(f));
  return {w.height + 1, w.top};
}

RhoSpec RhoSpec::parse(const std::string& text) {
  RhoSpec r;
  if (text.rfind("pow:", 0) == 0) {
    r.kind = Kind::power;
    r.alpha = std::stod(text.substr(4));
    if (!(r.alpha > 0.0) || r.alpha > 1.0) fail(errc::parse, "pow:<alpha> needs alpha in (0,1]");
    return r;
  }
  if (text == "log") {
    r.kind = Kind::log;
    return r;
  }
  if (text == "loglog") {
    r.kind = Kind::loglog;
    return r;
  }
  if (text.rfind("table:", 0) == 0) {
    std::ifstream in(text.substr(6));
    if (!in) fail(errc::io, "cannot open rho table " + text.substr(6));
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double x, y;
      if (!(ls >> x >> y)) fail(errc::parse, "bad rho table line: '" + line + "'");
      pts.emplace_back(x, y);
    }
    return table_from_points(std::move(pts));
  }
  fail(errc::parse, "unknown rho '" + text + "' (pow:<alpha>, log, loglog, table:<path>)");
}

RhoSpec RhoSpec::table_from_points(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 2) fail(errc::parse, "rho table needs at least two points");
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first <= pts[i - 1].first || pts[i].second <= pts[i - 1].second)
      fail(errc::parse, "rho table must be strictly increasing in both coordinates");
  RhoSpec r;
  r.kind = Kind::table;
  r.points = std::move(pts);
  return r;
}

double RhoSpec::t0() const {
  switch (kind) {
    case Kind::power: return 0.0;
    case Kind::log: return 1.0;
    case Kind::loglog: return std::exp(1.0);
    case Kind::table: return points.front().first;
  }
  return 0.0;
}

double RhoSpec::eval(double t) const {
  if (t < t0()) fail(errc::domain, "rho not evaluable at " + std::to_string(t));
  switch (kind) {
    case Kind::power: return std::pow(t, alpha);
    case Kind::log: return std::log(t);
    case Kind::loglog: return std::log(std::log(t));
    case Kind::table: {
      if (t > points.back().first) fail(errc::domain, "rho table ends before the request");
      auto it = std::lower_bound(points.begin(), points.end(), std::make_pair(t, -1e300));
      if (it->first == t) return it->second;
      auto [x1, y1] = *(it - 1);
      auto [x2, y2] = *it;
      return y1 + (y2 - y1) * (t - x1) / (x2 - x1);
    }
  }
  fail(errc::internal, "bad rho kind");
}

TowerReal RhoSpec::eval_tower(const TowerReal& t) const {
  switch (kind) {
    case Kind::power: {
      if (t.height == 0) return {0, eval(t.top)};
      TowerReal w = tower_mul_scalar(t.log_structural(), alpha);
      return {w.height + 1, w.top};
    }
    case Kind::log: return t.log_structural();
    case Kind::loglog: return t.log_structural().log_structural();
    case Kind::table: {
      double v = t.to_double();
      if (std::isinf(v)) fail(errc::domain, "rho table ends before the request");
      return {0, eval(v)};
    }
  }
  fail(errc::internal, "bad rho kind");
}

std::string RhoSpec::text() const {
  switch (kind) {
    case Kind::power: return "pow:" + std::to_string(alpha);
    case Kind::log: return "log";
    case Kind::loglog: return "loglog";
    case Kind::table: return "table";
  }
  return "?";
}

double jv_lower_bound(int64_t diam, double lambda1, int degree) {
  if (diam <= 0 || lambda1 <= 0 || degree <= 0)
    fail(errc::parse, "jv bound needs positive diameter, gap and degree");
  return double(diam) * std::sqrt(lambda1 / (2.0 * degree));
}

DistortionBounds distortion_bounds(const CayleyGraph& g, const SpectralReport& rep) {
  if (rep.spec != g.spec_text) fail(errc::parse, "spectral report is for a different graph");
  DistortionBounds b;
  b.diam = diameter(g);
  b.degree = g.degree;
  b.lambda1 = rep.lambda1;
  b.lower_jv = jv_lower_bound(b.diam, rep.lambda1, g.degree);
  b.upper_trivial = double(b.diam);
  return b;
}

CompressionVerdict compression_obstruction(const std::vector<CompressionRow>& family_data,
                                           const RhoSpec& rho, double factor) {
  if (family_data.size() < 2) fail(errc::parse, "need at least two family members");
  for (size_t i = 1; i < family_data.size(); ++i)
    if (family_data[i].diam <= family_data[i - 1].diam)
      fail(errc::parse, "member diameters must increase strictly");
  // rho(t)/t nonincreasing across the sampled diameters
  for (size_t i = 1; i < family_data.size(); ++i) {
    double a = rho.eval(family_data[i - 1].diam) / family_data[i - 1].diam;
    double b = rho.eval(family_data[i].diam) / family_data[i].diam;
    if (b > a * (1.0 + 1e-12))
      fail(errc::domain, "rho(t)/t increases on the sampled range; hypothesis violated");
  }
  CompressionVerdict v;
  v.rows = family_data;
  bool strictly_increasing = true;
  for (auto& row : v.rows) row.ratio = row.lower * rho.eval(row.diam) / row.diam;
  for (size_t i = 1; i < v.rows.size(); ++i)
    if (v.rows[i].ratio <= v.rows[i - 1].ratio) strictly_increasing = false;
  v.growth = v.rows.back().ratio / v.rows.front().ratio;
  v.obstructed = strictly_increasing && v.growth > factor;
  v.verdict = v.obstructed ? "obstructed (at sampled scale)" : "inconclusive";
  return v;
}

bool km_inequality_holds(const RhoSpec& rho, int64_t m, int s, double c, const TowerReal& L) {
  double cm2 = c * double(m) * double(m);
  TowerReal x = L.height == 0 ? TowerReal{0, cm2 * L.top} : tower_mul_scalar(L, cm2);
  TowerReal lhs = rho.eval_tower(x);
  // compare after joint log descent, with slack for the last-ulp round trips
  double va = 0, vb = 0;
  int sign = descend_pair(lhs, TowerReal::of(std::pow(double(m), s)), &va, &vb);
  if (sign != 2) return sign > 0;
  return va >= vb - 1e-9 * std::max(1.0, std::abs(vb));
}

KmPlan choose_km(const RhoSpec& rho, const std::vector<int64_t>& m_values, int s, double c) {
  if (s < 1 || c <= 0) fail(errc::parse, "choose_km needs s >= 1 and c > 0");
  KmPlan plan;
  for (int64_t m : m_values) {
    double cm2 = c * double(m) * double(m);
    double ms = std::pow(double(m), s);
    TowerReal L;
    switch (rho.kind) {
      case RhoSpec::Kind::power:
        // (c m^2 L)^alpha = m^s
        L = {0, std::pow(double(m), double(s) / rho.alpha) / cm2};
        break;
      case RhoSpec::Kind::log:
        // log(c m^2 L) = m^s
        L = {1, ms - std::log(cm2)};
        break;
      case RhoSpec::Kind::loglog:
        // log log(c m^2 L) = m^s  =>  L = exp(exp(m^s) - log(c m^2))
        L = {2, tower_add_scalar(TowerReal{1, ms}, -std::log(cm2)).top};
        break;
      case RhoSpec::Kind::table: {
        if (ms > rho.points.back().second)
          fail(errc::unsatisfiable,
               "rho table is bounded by " + std::to_string(rho.points.back().second) +
                   " < m^s = " + std::to_string(ms));
        // smallest x with rho(x) >= m^s by inverse interpolation
        double x = rho.points.back().first;
        for (size_t i = 0; i < rho.points.size(); ++i)
          if (rho.points[i].second >= ms) {
            if (i == 0 || rho.points[i].second == ms) {
              x = rho.points[i].first;
            } else {
              auto [x1, y1] = rho.points[i - 1];
              auto [x2, y2] = rho.points[i];
              x = x1 + (x2 - x1) * (ms - y1) / (y2 - y1);
            }
            break;
          }
        L = {0, x / cm2};
        break;
      }
    }
    if (!km_inequality_holds(rho, m, s, c, L))
      fail(errc::internal, "chosen L_m fails its defining inequality");
    plan.rows.push_back({m, L});
  }
  return plan;
}

std::string KmPlan::to_json() const {
  ordered_json arr = ordered_json::array();
  for (const KmPlanRow& r : rows) {
    ordered_json row;
    row["m"] = r.m;
    row["tower_height"] = r.tower_height();
    row["top_value"] = r.top_value();
    arr.push_back(std::move(row));
  }
  ordered_json j;
  j["rows"] = std::move(arr);
  return j.dump();
}

DiamLawReport diameter_law_fit(const std::vector<std::pair<int64_t, int64_t>>& cells,
                               uint64_t vertex_cap, uint64_t memory_budget, int threads,
                               double band_factor) {
  if (cells.empty()) fail(errc::parse, "no cells requested");
  DiamLawReport rep;
  for (auto [m, k] : cells) {
    GroupSpec spec = GroupSpec::parse("sl:m=" + std::to_string(m) + ",ring=zmod" +
                                      std::to_string(k) + ",gens=st");
    DiameterResult d = diameter_of(spec, vertex_cap, memory_budget, threads);
    DiamLawCell cell{m, k, d.diameter, d.order, d.method,
                     double(d.diameter) / (double(m) * double(m) * std::log(double(k)))};
    rep.cells.push_back(cell);
  }
  rep.ratio_min = rep.ratio_max = rep.cells[0].ratio;
  for (const auto& cell : rep.cells) {
    rep.ratio_min = std::min(rep.ratio_min, cell.ratio);
    rep.ratio_max = std::max(rep.ratio_max, cell.ratio);
  }
  rep.within_band = rep.ratio_max <= band_factor * rep.ratio_min;
  return rep;
}

}  // namespace cwb
