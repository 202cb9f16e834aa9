#include "cwb/run.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "cwb/cdu.hpp"
#include "cwb/embedding.hpp"
#include "cwb/folner.hpp"
#include "cwb/graph.hpp"
#include "cwb/spectral.hpp"
#include "cwb/topology.hpp"

namespace cwb {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kFormatVersion = "1";

int exit_code_for(errc c) {
  switch (c) {
    case errc::ok: return 0;
    case errc::cap_exceeded:
    case errc::numerical:
    case errc::io:
    case errc::internal: return 3;
    default: return 2;
  }
}

struct CommonFlags {
  std::string out;
  int threads = int(std::thread::hardware_concurrency());
  uint64_t vertex_cap = 2'000'000;
  uint64_t word_cap = 4'000'000;
  uint64_t memory_budget = 6ull << 30;
  double tol = 1e-9;
};

std::string csv_of_rows(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ordered_json word_json(const std::optional<Word>& w) {
  if (!w) return nullptr;
  return w->text();
}

FamilySpec family_from(const std::string& base, const std::string& range, const std::string& km,
                       const std::string& primes) {
  return FamilySpec::parse(base, range, km, primes);
}

}  // namespace

const char* tool_version() { return kToolVersion; }
const char* format_version() { return kFormatVersion; }

RunResult run(int argc, const char* const* argv) {
  auto start = std::chrono::steady_clock::now();
  CLI::App app{"workbench for marked groups, Cayley balls and coarse geometry"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cwb ") + kToolVersion + " format " + kFormatVersion);

  CommonFlags common;
  app.add_option("--out", common.out, "write the JSON report to a file instead of stdout");
  app.add_option("--threads", common.threads, "worker cap; results do not depend on it");

  // per-subcommand state
  std::string g1, g2, group, family, range, km, primes, limit, mode = "auto", rho_text, ring_text,
              format;
  int rmax = 0, radius = 0, generator = 1, s_exp = 3;
  int64_t m_param = 3;
  uint64_t exact_threshold = 22, order_cap = 1'000'000, matrix_limit = 500;
  double factor = 10.0, c_const = 1.0;

  CLI::App* ball = app.add_subcommand("ball-agree", "agreement radius of two marked groups");
  ball->add_option("--g1", g1)->required();
  ball->add_option("--g2", g2)->required();
  ball->add_option("--rmax", rmax)->required();
  ball->add_option("--word-cap", common.word_cap);

  CLI::App* conv = app.add_subcommand("converge", "certify a family against a limit group");
  conv->add_option("--family", family)->required();
  conv->add_option("--range", range);
  conv->add_option("--km", km);
  conv->add_option("--primes", primes);
  conv->add_option("--limit", limit)->required();
  conv->add_option("--radius", radius)->required();
  conv->add_option("--word-cap", common.word_cap);

  CLI::App* foln = app.add_subcommand("folner", "isoperimetric profile over metric balls");
  foln->add_option("--group", group)->required();
  foln->add_option("--rmax", rmax)->required();
  foln->add_option("--exact-threshold", exact_threshold);
  foln->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exact", "heuristic"}));

  CLI::App* gr = app.add_subcommand("graph", "build a Cayley graph and export it");
  gr->add_option("--group", group)->required();
  gr->add_option("--cap", common.vertex_cap);
  gr->add_option("--format", format)->check(CLI::IsMember({"edges", "dot", "json"}));
  bool diameter_only = false;
  gr->add_flag("--diameter-only", diameter_only,
               "measure diameter and order only; large matrix groups fall back to the "
               "packed-bitmap search under --mem-budget");
  gr->add_option("--mem-budget", common.memory_budget);

  CLI::App* spec_cmd = app.add_subcommand("spectral", "Laplacian spectral gap and kappa interval");
  spec_cmd->add_option("--group", group)->required();
  spec_cmd->add_option("--tol", common.tol);
  spec_cmd->add_option("--cap", common.vertex_cap);

  CLI::App* scan = app.add_subcommand("expander-scan", "lambda1 across a family");
  scan->add_option("--family", family)->required();
  scan->add_option("--range", range);
  scan->add_option("--km", km);
  scan->add_option("--primes", primes);
  scan->add_option("--tol", common.tol);
  scan->add_option("--cap", common.vertex_cap);

  CLI::App* dist = app.add_subcommand("distortion", "distortion bracket [JV, diam]");
  dist->add_option("--group", group)->required();
  dist->add_option("--tol", common.tol);
  dist->add_option("--cap", common.vertex_cap);

  CLI::App* uni = app.add_subcommand("union", "coarse disjoint union export");
  uni->add_option("--family", family)->required();
  uni->add_option("--range", range);
  uni->add_option("--km", km);
  uni->add_option("--primes", primes);
  uni->add_option("--matrix-limit", matrix_limit);
  uni->add_option("--cap", common.vertex_cap);

  CLI::App* comp = app.add_subcommand("compression", "Austin-type obstruction trend");
  comp->add_option("--family", family)->required();
  comp->add_option("--range", range);
  comp->add_option("--km", km);
  comp->add_option("--rho", rho_text)->required();
  comp->add_option("--factor", factor);
  comp->add_option("--tol", common.tol);
  comp->add_option("--cap", common.vertex_cap);
  comp->add_option("--mem-budget", common.memory_budget);

  CLI::App* chk = app.add_subcommand("choose-k", "minimal tower-form log k_m for a compression goal");
  chk->add_option("--rho", rho_text)->required();
  chk->add_option("--range", range)->required();
  chk->add_option("--s", s_exp);
  chk->add_option("--c", c_const);

  CLI::App* ord = app.add_subcommand("order", "order of a marked generator");
  ord->add_option("--group", group)->required();
  ord->add_option("--generator", generator)->required();
  ord->add_option("--cap", order_cap);

  CLI::App* elem = app.add_subcommand("elementary-lengths", "word lengths of elementary generators");
  elem->add_option("--m", m_param)->required();
  elem->add_option("--ring", ring_text)->required();
  elem->add_option("--cap", common.vertex_cap);

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  ordered_json report;
  try {
    std::vector<std::string> args(argv, argv + argc);
    std::reverse(args.begin(), args.end());  // CLI11 consumes reversed vectors
    app.parse(std::move(args));

    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    report["command"] = name;
    ordered_json config = ordered_json::object();
    for (const CLI::Option* opt : sub->get_options())
      if (opt->count() > 0 && opt->get_name().rfind("--", 0) == 0)
        config[opt->get_name().substr(2)] = opt->results().front();
    report["config"] = std::move(config);
    report["version"] = {{"tool", kToolVersion}, {"format", kFormatVersion}};
    ordered_json result = ordered_json::object();

    if (sub == ball) {
      MarkedGroup a = make_group(g1), b = make_group(g2);
      AgreementReport rep = agreement_radius(a, b, rmax, common.word_cap);
      result["radius"] = rep.radius;
      result["witness"] = word_json(rep.witness);
      result["witness_side"] = rep.witness ? ordered_json(rep.witness_side) : ordered_json(nullptr);
      result["kernel_sizes_g1"] = rep.kernel_sizes_g1;
      result["kernel_sizes_g2"] = rep.kernel_sizes_g2;
    } else if (sub == conv) {
      FamilySpec fam = family_from(family, range, km, primes);
      auto rows = converge_certify(fam, GroupSpec::parse(limit), radius, common.word_cap);
      std::vector<std::vector<std::string>> csv{{"member", "spec", "radius", "threshold_met",
                                                 "agrees", "witness"}};
      bool all_above_threshold_agree = true;
      for (const auto& r : rows) {
        csv.push_back({std::to_string(r.member_value), csv_escape(r.member_spec),
                       std::to_string(r.radius),
                       r.threshold_met ? "1" : "0", r.agrees ? "1" : "0",
                       r.witness ? r.witness->text() : ""});
        if (r.threshold_met && !r.agrees) all_above_threshold_agree = false;
      }
      result["table"] = csv_of_rows(csv);
      result["all_above_threshold_agree"] = all_above_threshold_agree;
    } else if (sub == foln) {
      MarkedGroup g = make_group(group);
      FolnerOptions opt;
      opt.exact_threshold = exact_threshold;
      FolnerProfile p;
      if (mode == "auto") {
        p = rel_profile(g, rmax, opt);
      } else {
        RelMode rm = mode == "exact" ? RelMode::exact : RelMode::heuristic;
        for (int r = 1; r <= rmax; ++r) p.entries.push_back(rel(g, r, rm, opt));
      }
      result["csv"] = p.to_csv();
    } else if (sub == gr) {
      if (diameter_only) {
        DiameterResult d = diameter_of(GroupSpec::parse(group), common.vertex_cap,
                                       common.memory_budget, std::max(1, common.threads));
        result["diameter"] = d.diameter;
        result["order"] = d.order;
        result["method"] = d.method;
      } else {
        MarkedGroup g = make_group(group);
        CayleyGraph graph = build_graph(g, common.vertex_cap);
        BfsMetrics m = graph.metrics();
        result["vertices"] = graph.vertex_count();
        result["edges"] = graph.edge_count();
        result["degree"] = graph.degree;
        result["diameter"] = diameter(graph);
        result["sphere_sizes"] = m.sphere_sizes;
        if (!format.empty()) result["export"] = export_graph(graph, parse_export_format(format));
      }
    } else if (sub == spec_cmd) {
      MarkedGroup g = make_group(group);
      CayleyGraph graph = build_graph(g, common.vertex_cap);
      SpectralReport rep = laplacian_lambda1(graph, common.tol);
      KappaInterval kappa = kappa_interval(rep, generator_set_size(g));
      result["lambda1"] = rep.lambda1;
      result["method"] = rep.method;
      result["residual"] = rep.residual;
      result["constant_overlap"] = rep.constant_overlap;
      result["kappa_lower"] = kappa.lower;
      result["kappa_upper"] = kappa.upper;
      result["csv"] = "spec,|V|,degree,lambda1,method,tol\n" + csv_escape(group) + "," +
                      std::to_string(graph.vertex_count()) + "," + std::to_string(graph.degree) +
                      "," + fmt_double(rep.lambda1) + "," + rep.method + "," +
                      fmt_double(rep.tol) + "\n";
    } else if (sub == scan) {
      FamilySpec fam = family_from(family, range, km, primes);
      ScanResult res = expander_scan(fam, common.tol, common.vertex_cap);
      result["csv"] = res.to_csv();
      result["min_spec"] = res.rows[res.min_index].spec;
      result["min_lambda1"] = res.rows[res.min_index].report.lambda1;
    } else if (sub == dist) {
      MarkedGroup g = make_group(group);
      CayleyGraph graph = build_graph(g, common.vertex_cap);
      SpectralReport rep = laplacian_lambda1(graph, common.tol);
      DistortionBounds b = distortion_bounds(graph, rep);
      result["lower_jv"] = b.lower_jv;
      result["upper_trivial"] = b.upper_trivial;
      result["diameter"] = b.diam;
      result["degree"] = b.degree;
      result["lambda1"] = b.lambda1;
    } else if (sub == uni) {
      FamilySpec fam = family_from(family, range, km, primes);
      CoarseUnion u = CoarseUnion::build(fam, common.vertex_cap);
      result["union"] = ordered_json::parse(u.to_json(matrix_limit));
    } else if (sub == comp) {
      FamilySpec fam = family_from(family, range, km, "");
      RhoSpec rho = RhoSpec::parse(rho_text);
      std::vector<CompressionRow> rows;
      for (size_t i = 0; i < fam.size(); ++i) {
        MarkedGroup g(fam.member(i));
        CayleyGraph graph = build_graph(g, common.vertex_cap);
        SpectralReport rep = laplacian_lambda1(graph, common.tol);
        DistortionBounds b = distortion_bounds(graph, rep);
        rows.push_back({fam.member_index(i), double(b.diam), b.lower_jv, 0.0});
      }
      CompressionVerdict v = compression_obstruction(rows, rho, factor);
      std::vector<std::vector<std::string>> csv{{"m", "diam", "lower", "ratio"}};
      for (const auto& r : v.rows)
        csv.push_back({std::to_string(r.index), fmt_double(r.diam), fmt_double(r.lower),
                       fmt_double(r.ratio)});
      result["verdict"] = v.verdict;
      result["obstructed"] = v.obstructed;
      result["growth"] = v.growth;
      result["table"] = csv_of_rows(csv);
    } else if (sub == chk) {
      RhoSpec rho = RhoSpec::parse(rho_text);
      KmPlan plan = choose_km(rho, parse_range(range), s_exp, c_const);
      result["plan"] = ordered_json::parse(plan.to_json());
    } else if (sub == ord) {
      MarkedGroup g = make_group(group);
      GeneratorOrder o = order_of_generator(g, generator, order_cap);
      if (o.at_least) {
        result["order"] = nullptr;
        result["at_least"] = o.value;
      } else {
        result["order"] = o.value;
      }
    } else if (sub == elem) {
      Ring ring = [&] {
        if (ring_text.rfind("zmod", 0) == 0) return Ring::zmod(std::stoull(ring_text.substr(4)));
        if (ring_text.rfind("f2t:", 0) == 0) return Ring::f2tk(std::stoull(ring_text.substr(4)));
        fail(errc::parse, "ring must be zmod<k> or f2t:<k>");
      }();
      ElementaryLengthTable t = elementary_lengths(m_param, ring, common.vertex_cap);
      std::vector<std::vector<std::string>> csv{{"i", "j", "value", "length"}};
      for (const auto& r : t.rows)
        csv.push_back({std::to_string(r.i), std::to_string(r.j), r.value,
                       std::to_string(r.length)});
      result["table"] = csv_of_rows(csv);
      result["max_length"] = t.max_length;
    }

    report["result"] = std::move(result);
  } catch (const CLI::CallForHelp&) {
    return {app.help(), 0};
  } catch (const CLI::CallForVersion&) {
    return {std::string("cwb ") + kToolVersion + " format " + kFormatVersion + "\n", 0};
  } catch (const CLI::ParseError& e) {
    ordered_json err;
    err["error"] = {{"code", "parse_error"}, {"message", e.what()}};
    return {err.dump(2) + "\n", 2};
  } catch (const Error& e) {
    ordered_json err;
    err["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    return {err.dump(2) + "\n", exit_code_for(e.code())};
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = {{"code", "internal_error"}, {"message", e.what()}};
    return {err.dump(2) + "\n", 3};
  }

  auto wall =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  report["wall_time_ms"] = wall.count();
  std::string text = report.dump(2) + "\n";
  if (!common.out.empty()) {
    std::ofstream out(common.out);
    if (!out) {
      ordered_json err;
      err["error"] = {{"code", "io_error"}, {"message", "cannot write " + common.out}};
      return {err.dump(2) + "\n", 3};
    }
    out << text;
    return {"", 0};
  }
  return {text, 0};
}

}  // namespace cwb
