#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fermisum/errors.hpp"
#include "fermisum/linalg.hpp"
#include "fermisum/statesum.hpp"
#include "fermisum/util.hpp"

namespace fermisum::spectral {

using linalg::ComplexMatrix;

/// Discrete Dirac operator iM of the circle state sum: identity diagonal
/// blocks, -Q_{j+1} superdiagonal blocks, -Q_1 in the bottom-left corner.
struct DiscreteDirac {
  std::size_t edge_count = 0;
  std::size_t fibre_dim = 0;
  ComplexMatrix matrix;  // size (n N) x (n N)
};

inline DiscreteDirac build_discrete_dirac(const statesum::TriangulatedCircle& tri) {
  const std::size_t n = tri.fibre_dim;
  const std::size_t nn = tri.edge_count();
  if (nn == 0) throw ArgumentError("build_discrete_dirac: no edges");
  ComplexMatrix m(n * nn, n * nn);
  for (std::size_t i = 0; i < n * nn; ++i) m(i, i) = 1.0;
  for (std::size_t block = 0; block < nn; ++block) {
    // block row `block` couples to block column `block+1 mod N` with the
    // edge matrix Q_{block+2 mod N} in 1-based paper labels
    const std::size_t col_block = (block + 1) % nn;
    const ComplexMatrix& q = tri.edges[(block + 1) % nn];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m(block * n + r, col_block * n + c) -= q(r, c);
  }
  return DiscreteDirac{nn, n, std::move(m)};
}

/// Numeric spectrum of iM. iM = I - C with C unitary (a block permutation of
/// unitary blocks), so the eigenvalues are 1 - e^{-i theta_j} with theta_j
/// the eigenphases of C; they lie on the circle |z - 1| = 1.
inline std::vector<Complex> dirac_spectrum(const DiscreteDirac& dd) {
  const std::size_t dim = dd.matrix.rows();
  ComplexMatrix c(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      c(i, j) = -dd.matrix(i, j);
      if (i == j) c(i, j) += 1.0;
    }
  const auto phases = linalg::eig_unitary(c);
  std::vector<Complex> mu;
  mu.reserve(dim);
  for (double theta : phases) mu.push_back(Complex(1.0, 0.0) - std::polar(1.0, -theta));
  return mu;
}

/// The paper's k-range [(1-N)/2] .. [(N-1)/2] with floor semantics.
inline std::vector<long> paper_k_range(long n_edges) {
  if (n_edges < 1) throw ArgumentError("paper_k_range: N must be positive");
  const long lo = static_cast<long>(floor_div(1 - n_edges, 2));
  const long hi = static_cast<long>(floor_div(n_edges - 1, 2));
  std::vector<long> ks;
  for (long k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

inline Complex discrete_eigenvalue_u1(double theta, long n_edges, long k) {
  return Complex(1.0, 0.0) -
         std::polar(1.0, -(theta + 2.0 * std::numbers::pi * double(k)) / double(n_edges));
}

/// Exactly N distinct eigenvalues mu_k = 1 - e^{-i (theta + 2 pi k)/N}.
inline std::vector<Complex> discrete_spectrum_u1(double theta, long n_edges) {
  std::vector<Complex> mu;
  for (long k : paper_k_range(n_edges)) mu.push_back(discrete_eigenvalue_u1(theta, n_edges, k));
  return mu;
}

/// Total phase of a U(1) edge configuration: holonomy = e^{-i theta},
/// theta in [0, 2 pi).
inline double u1_theta(const std::vector<Complex>& edges) {
  Complex q(1.0, 0.0);
  for (Complex e : edges) q *= e;
  double theta = -std::arg(q);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return theta;
}

/// Eigenvector of iM for eigenvalue 1 - alpha_k, alpha_k the principal N-th
/// root of the holonomy times e^{-2 pi i k / N}: components
/// v_j = alpha_k^{j-1} (Q_j ... Q_1)^{-1}.
inline std::vector<Complex> eigenvector_u1(double theta, long n_edges, long k,
                                           const std::vector<Complex>& edges) {
  if (static_cast<long>(edges.size()) != n_edges)
    throw ArgumentError("eigenvector_u1: edge count mismatch");
  const double phase = (theta + 2.0 * std::numbers::pi * double(k)) / double(n_edges);
  const Complex alpha = std::polar(1.0, -phase);
  std::vector<Complex> v(edges.size());
  Complex alpha_pow(1.0, 0.0);
  Complex prefix_inv(1.0, 0.0);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    prefix_inv /= edges[j];
    v[j] = alpha_pow * prefix_inv;
    alpha_pow *= alpha;
  }
  return v;
}

/// Continuum Dirac eigenvalues lambda_k = 2 pi (k + a) / l; mu_k = i lambda_k.
struct ContinuumSpectrum {
  std::vector<long> k;
  std::vector<double> lambda;
  std::vector<Complex> mu;
  bool zero_mode = false;
};

inline ContinuumSpectrum continuum_spectrum_u1(double a, double l, long k_min,
                                               long k_max) {
  if (!(l > 0.0)) throw ArgumentError("continuum_spectrum_u1: l must be positive");
  if (!(a >= 0.0 && a < 1.0))
    throw ArgumentError("continuum_spectrum_u1: a must lie in [0,1)");
  if (k_min > k_max) throw ArgumentError("continuum_spectrum_u1: empty k range");
  ContinuumSpectrum out;
  out.zero_mode = a < 1e-14;
  for (long k = k_min; k <= k_max; ++k) {
    const double lambda = 2.0 * std::numbers::pi * (double(k) + a) / l;
    out.k.push_back(k);
    out.lambda.push_back(lambda);
    out.mu.push_back(Complex(0.0, lambda));
  }
  return out;
}

/// Side-by-side discrete/continuum eigenvalues with deviations.
struct SpectrumReport {
  double theta = 0.0;
  long n_edges = 0;
  double l = 0.0;
  std::vector<long> k;
  std::vector<Complex> discrete;
  std::vector<Complex> continuum;
  std::vector<double> deviation;
  Complex discrete_product;   // over the full paper k-range (all N eigenvalues)
  Complex closed_partition;   // 1 - e^{-i theta}
  double deviation_order = 0.0;  // log-log slope of deviation vs |theta+2pi k|/N
};

/// Compare the U(1) discrete spectrum with the continuum one over
/// k = -k_max .. k_max. The circle length defaults to l = N, the
/// identification under which small eigenvalues coincide.
inline SpectrumReport compare_spectra(double theta, long n_edges, long k_max,
                                      std::optional<double> l_opt = std::nullopt) {
  if (n_edges < 1) throw ArgumentError("compare_spectra: N must be positive");
  const auto range = paper_k_range(n_edges);
  if (k_max < 0 || k_max > range.back())
    throw ArgumentError("compare_spectra: k_max must satisfy 0 <= k_max <= [(N-1)/2]");
  const double l = l_opt.value_or(double(n_edges));

  SpectrumReport report;
  report.theta = theta;
  report.n_edges = n_edges;
  report.l = l;

  std::vector<double> log_x, log_dev;
  for (long k = -k_max; k <= k_max; ++k) {
    const Complex mu_disc = discrete_eigenvalue_u1(theta, n_edges, k);
    const double lambda = (theta + 2.0 * std::numbers::pi * double(k)) / l;
    const Complex mu_cont(0.0, lambda);
    report.k.push_back(k);
    report.discrete.push_back(mu_disc);
    report.continuum.push_back(mu_cont);
    report.deviation.push_back(std::abs(mu_disc - mu_cont));
    const double x = std::abs(theta + 2.0 * std::numbers::pi * double(k)) / double(n_edges);
    if (x > 1e-12 && report.deviation.back() > 0.0) {
      log_x.push_back(std::log(x));
      log_dev.push_back(std::log(report.deviation.back()));
    }
  }

  report.discrete_product = Complex(1.0, 0.0);
  for (long k : range) report.discrete_product *= discrete_eigenvalue_u1(theta, n_edges, k);
  report.closed_partition = Complex(1.0, 0.0) - std::polar(1.0, -theta);

  if (log_x.size() >= 2) report.deviation_order = fit_line(log_x, log_dev).slope;
  return report;
}

enum class CutoffScheme { kSharp };

/// One sharp-cutoff sample: the exact finite sum of log|lambda_k| over the
/// continuum eigenvalues with |lambda_k| <= c (boundary ties included).
struct CutoffEntry {
  double c = 0.0;
  double log_det = 0.0;
  long modes = 0;
};

inline CutoffEntry cutoff_log_det(double a, double l, double c,
                                  CutoffScheme scheme = CutoffScheme::kSharp) {
  if (scheme != CutoffScheme::kSharp)
    throw ArgumentError("cutoff_log_det: only the sharp scheme is implemented");
  if (!(a > 0.0 && a < 1.0)) throw ArgumentError("cutoff_log_det: a must lie in (0,1)");
  if (!(l > 0.0)) throw ArgumentError("cutoff_log_det: l must be positive");
  if (!(c > 2.0 * std::numbers::pi / l))
    throw ArgumentError("cutoff_log_det: cutoff must exceed 2 pi / l");

  const double bound = c * l / (2.0 * std::numbers::pi);  // |k + a| <= bound
  const long k_lo = static_cast<long>(std::ceil(-bound - a));
  const long k_hi = static_cast<long>(std::floor(bound - a));
  CutoffEntry entry;
  entry.c = c;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double lambda = 2.0 * std::numbers::pi * (double(k) + a) / l;
    entry.log_det += std::log(std::abs(lambda));
    ++entry.modes;
  }
  return entry;
}

/// Cutoff scan with the divergence fit. The leading coefficient kappa of
/// c log c is extracted by least squares in the basis
/// {c log c, c, log c, 1}; the counterterm Lambda(c) = -(kappa c log c +
/// beta c)/l removes the divergent part proportional to l.
struct CutoffReport {
  double a = 0.0;
  double l = 0.0;
  std::vector<CutoffEntry> entries;
  double kappa = 0.0;  // fitted coefficient of c log c
  double beta = 0.0;   // fitted coefficient of c
  double gamma = 0.0;  // fitted coefficient of log c
  double delta = 0.0;  // fitted constant
  std::vector<double> residual_after_leading;  // log_det - kappa c log c
  std::vector<double> lambda_counterterm;      // -(kappa c log c + beta c)/l
};

namespace detail {

/// Least squares for a tiny fixed basis via column-scaled normal equations.
inline std::array<double, 4> solve_least_squares_4(
    const std::vector<std::array<double, 4>>& rows, const std::vector<double>& y) {
  std::array<double, 4> scale{};
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    for (const auto& r : rows) s += r[j] * r[j];
    scale[j] = std::sqrt(s);
    if (scale[j] == 0.0) scale[j] = 1.0;
  }
  long double ata[4][4] = {};
  long double aty[4] = {};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q)
        ata[p][q] += (long double)(rows[i][p] / scale[p]) * (rows[i][q] / scale[q]);
      aty[p] += (long double)(rows[i][p] / scale[p]) * y[i];
    }
  // Gaussian elimination with partial pivoting on the 4x4 system.
  int perm[4] = {0, 1, 2, 3};
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs((double)ata[perm[r]][col]) > std::abs((double)ata[perm[pivot]][col]))
        pivot = r;
    std::swap(perm[col], perm[pivot]);
    for (int r = col + 1; r < 4; ++r) {
      const long double f = ata[perm[r]][col] / ata[perm[col]][col];
      for (int q = col; q < 4; ++q) ata[perm[r]][q] -= f * ata[perm[col]][q];
      aty[perm[r]] -= f * aty[perm[col]];
    }
  }
  std::array<double, 4> x{};
  for (int col = 3; col >= 0; --col) {
    long double v = aty[perm[col]];
    for (int q = col + 1; q < 4; ++q) v -= ata[perm[col]][q] * (long double)x[q];
    x[col] = (double)(v / ata[perm[col]][col]);
  }
  for (int j = 0; j < 4; ++j) x[j] /= scale[j];
  return x;
}

}  // namespace detail

inline CutoffReport cutoff_scan(double a, double l, const std::vector<double>& grid,
                                CutoffScheme scheme = CutoffScheme::kSharp) {
  if (grid.size() < 4) throw ArgumentError("cutoff_scan: need at least four grid points");
  CutoffReport report;
  report.a = a;
  report.l = l;

  std::vector<std::array<double, 4>> rows;
  std::vector<double> y;
  for (double c : grid) {
    const auto entry = cutoff_log_det(a, l, c, scheme);
    report.entries.push_back(entry);
    rows.push_back({c * std::log(c), c, std::log(c), 1.0});
    y.push_back(entry.log_det);
  }
  const auto coeffs = detail::solve_least_squares_4(rows, y);
  report.kappa = coeffs[0];
  report.beta = coeffs[1];
  report.gamma = coeffs[2];
  report.delta = coeffs[3];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    report.residual_after_leading.push_back(y[i] - report.kappa * rows[i][0]);
    report.lambda_counterterm.push_back(
        -(report.kappa * rows[i][0] + report.beta * rows[i][1]) / l);
  }
  return report;
}

/// CSV renderings of the external interfaces (column order is fixed).
inline std::string spectrum_csv(const SpectrumReport& report) {
  std::ostringstream os;
  os << "k,re_disc,im_disc,re_cont,im_cont,abs_dev\n";
  for (std::size_t i = 0; i < report.k.size(); ++i) {
    os << report.k[i] << ',' << format_float17(report.discrete[i].real()) << ','
       << format_float17(report.discrete[i].imag()) << ','
       << format_float17(report.continuum[i].real()) << ','
       << format_float17(report.continuum[i].imag()) << ','
       << format_float17(report.deviation[i]) << '\n';
  }
  return os.str();
}

inline std::string cutoff_csv(const CutoffReport& report) {
  std::ostringstream os;
  os << "c,logdet,fitted_leading,residual\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    const double leading = report.kappa * e.c * std::log(e.c);
    os << format_float17(e.c) << ',' << format_float17(e.log_det) << ','
       << format_float17(leading) << ','
       << format_float17(report.residual_after_leading[i]) << '\n';
  }
  return os.str();
}

}  // namespace fermisum::spectral
