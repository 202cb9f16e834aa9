#include "cwb/spectral.hpp"

#include <Eigen/Dense>

#include <random>
#include <set>
#include <sstream>

namespace cwb {

namespace {

Eigen::VectorXd laplacian_apply(const CayleyGraph& g, const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  for (uint32_t u = 0; u < g.vertex_count(); ++u) {
    double acc = double(g.offsets[u + 1] - g.offsets[u]) * x[u];
    for (uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) acc -= x[g.neighbors[e]];
    y[u] = acc;
  }
  return y;
}

double residual_of(const CayleyGraph& g, const Eigen::VectorXd& x, double lambda) {
  Eigen::VectorXd r = laplacian_apply(g, x) - lambda * x;
  return r.norm() / x.norm();
}

double overlap_with_constants(const Eigen::VectorXd& x) {
  return std::abs(x.sum()) / (x.norm() * std::sqrt(double(x.size())));
}

SpectralReport dense_lambda1(const CayleyGraph& g, double tol) {
  const auto n = Eigen::Index(g.vertex_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (uint32_t u = 0; u < g.vertex_count(); ++u) {
    L(u, u) = double(g.offsets[u + 1] - g.offsets[u]);
    for (uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) L(u, g.neighbors[e]) -= 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  if (es.info() != Eigen::Success) fail(errc::numerical, "dense eigensolver failed");
  SpectralReport rep;
  rep.lambda1 = es.eigenvalues()(1);
  rep.method = "dense";
  rep.tol = tol;
  rep.residual = residual_of(g, es.eigenvectors().col(1), rep.lambda1);
  rep.constant_overlap = overlap_with_constants(es.eigenvectors().col(1));
  return rep;
}

// Lanczos with full reorthogonalization on c*I - L, deflated against the
// constants; restarts from the best Ritz vector until the residual bound holds.
SpectralReport lanczos_lambda1(const CayleyGraph& g, double tol) {
  const auto n = Eigen::Index(g.vertex_count());
  const double c = 2.0 * g.degree + 1.0;
  auto project = [&](Eigen::VectorXd& x) { x.array() -= x.mean(); };
  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = c * x - laplacian_apply(g, x);
    project(y);
    return y;
  };

  const int max_dim = int(std::min<Eigen::Index>(n - 1, 420));
  const int max_restarts = 60;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = gauss(rng);
  project(start);
  start.normalize();

  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;  // tridiagonal entries
    Eigen::VectorXd v = start;
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    double beta_last = 0.0;
    for (int j = 0; j < max_dim; ++j) {
      basis.push_back(v);
      Eigen::VectorXd w = apply(v);
      double a = v.dot(w);
      alpha.push_back(a);
      w -= a * v;
      if (j > 0) w -= beta_last * prev;
      // two passes of reorthogonalization keep the basis numerically orthogonal
      for (int pass = 0; pass < 2; ++pass)
        for (const Eigen::VectorXd& b : basis) w -= b.dot(w) * b;
      double nb = w.norm();

      bool check_now = (j + 1) % 16 == 0 || nb < 1e-14 || j + 1 == max_dim;
      if (check_now) {
        int dim = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
          T(i, i) = alpha[size_t(i)];
          if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[size_t(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXd z = es.eigenvectors().col(dim - 1);  // top Ritz pair of c*I - L
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < dim; ++i) y += z[i] * basis[size_t(i)];
        project(y);
        y.normalize();
        double lambda = c - es.eigenvalues()(dim - 1);
        if (residual_of(g, y, lambda) <= tol) {
          SpectralReport rep;
          rep.lambda1 = lambda;
          rep.method = "iterative";
          rep.tol = tol;
          rep.residual = residual_of(g, y, lambda);
          rep.constant_overlap = overlap_with_constants(y);
          return rep;
        }
        if (nb < 1e-14 || j + 1 == max_dim) {
          start = y;  // thick restart from the best Ritz vector
          break;
        }
      }
      beta.push_back(nb);
      beta_last = nb;
      prev = basis.back();
      v = w / nb;
    }
  }
  fail(errc::numerical, "Lanczos did not reach the residual tolerance");
}

}  // namespace

SpectralReport laplacian_lambda1(const CayleyGraph& g, double tol, uint64_t dense_limit) {
  if (g.vertex_count() < 2) fail(errc::parse, "spectral gap needs at least 2 vertices");
  SpectralReport rep = g.vertex_count() <= dense_limit ? dense_lambda1(g, tol)
                                                       : lanczos_lambda1(g, tol);
  rep.spec = g.spec_text;
  rep.vertices = g.vertex_count();
  rep.degree = g.degree;
  return rep;
}

KappaInterval kappa_interval(const SpectralReport& rep, int generator_set_size) {
  if (generator_set_size < 1) fail(errc::parse, "generator set must be nonempty");
  KappaInterval k;
  k.lower = std::sqrt(2.0 * rep.lambda1 / double(generator_set_size));
  k.upper = std::sqrt(2.0 * rep.lambda1);
  return k;
}

int generator_set_size(const MarkedGroup& g) {
  std::set<std::string> keys;
  for (int i = 1; i <= g.arity(); ++i) {
    if (!is_identity(g.generator(i))) keys.insert(element_key(g.generator(i)));
    if (!is_identity(g.generator_inverse(i))) keys.insert(element_key(g.generator_inverse(i)));
  }
  return int(keys.size());
}

ScanResult expander_scan(const FamilySpec& family, double tol, uint64_t vertex_cap) {
  ScanResult out;
  for (size_t i = 0; i < family.size(); ++i) {
    MarkedGroup g(family.member(i));
    CayleyGraph graph = build_graph(g, vertex_cap);
    out.rows.push_back({family.member_text(i), laplacian_lambda1(graph, tol)});
    if (out.rows.back().report.lambda1 < out.rows[out.min_index].report.lambda1)
      out.min_index = out.rows.size() - 1;
  }
  return out;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string ScanResult::to_csv() const {
  std::ostringstream os;
  os << "spec,|V|,degree,lambda1,method,tol\n";
  os.precision(12);
  for (const ScanRow& r : rows)
    os << csv_escape(r.spec) << ',' << r.report.vertices << ',' << r.report.degree << ','
       << r.report.lambda1 << ',' << r.report.method << ',' << r.report.tol << '\n';
  return os.str();
}

}  // namespace cwb
