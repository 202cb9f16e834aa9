#pragma once

#include <string>
#include <vector>

#include "cwb/family.hpp"
#include "cwb/graph.hpp"

namespace cwb {

struct SpectralReport {
  std::string spec;
  uint64_t vertices = 0;
  int degree = 0;
  double lambda1 = 0.0;     // second-smallest eigenvalue of L = D - A (simple graph)
  std::string method;       // "dense" or "iterative"
  double tol = 0.0;
  double residual = 0.0;          // achieved ||Lx - lambda x|| / ||x||
  double constant_overlap = 0.0;  // |<x, 1>| / (||x|| ||1||) of the certified eigenvector
};

// Quote a CSV field when it contains separators (specs carry commas).
std::string csv_escape(const std::string& field);

// Dense symmetric solve up to `dense_limit` vertices (default 3000), deflated
// Lanczos beyond. numerical_failure when the residual bound cannot be met.
SpectralReport laplacian_lambda1(const CayleyGraph& g, double tol = 1e-9,
                                 uint64_t dense_limit = 3000);

struct KappaInterval {
  double lower = 0.0;  // sqrt(2 lambda1 / |S u S^-1|), by averaging the displacement sum
  double upper = 0.0;  // sqrt(2 lambda1), by evaluating at the lambda1-eigenvector
};

// Two-sided bracket for the scalar displacement constant.
KappaInterval kappa_interval(const SpectralReport& rep, int generator_set_size);

// |S u S^-1| as a set of non-identity elements (involutions and coincidences collapse).
int generator_set_size(const MarkedGroup& g);

struct ScanRow {
  std::string spec;
  SpectralReport report;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  size_t min_index = 0;      // member with the smallest lambda1
  std::string to_csv() const;  // spec,|V|,degree,lambda1,method,tol
};

ScanResult expander_scan(const FamilySpec& family, double tol = 1e-9,
                         uint64_t vertex_cap = 2'000'000);

}  // namespace cwb
