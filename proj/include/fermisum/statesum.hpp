#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fermisum/errors.hpp"
#include "fermisum/grassmann.hpp"
#include "fermisum/linalg.hpp"
#include "fermisum/util.hpp"

namespace fermisum::statesum {

using grassmann::AlgebraContext;
using grassmann::FermionLattice;
using grassmann::GeneratorVector;
using grassmann::GrassmannElement;
using grassmann::VertexPair;
using linalg::ComplexMatrix;

/// Oriented interval triangulated by N edges carrying matrices Q_1..Q_N.
struct TriangulatedInterval {
  std::size_t fibre_dim = 1;
  std::vector<ComplexMatrix> edges;

  std::size_t edge_count() const { return edges.size(); }
};

/// Oriented circle triangulated by N edges; the holonomy is the ordered edge
/// product from edge 1 (conjugation-invariant quantities do not depend on
/// the basepoint). The circumference enters only through dt = l/N.
struct TriangulatedCircle {
  std::size_t fibre_dim = 1;
  std::vector<ComplexMatrix> edges;
  double circumference = 1.0;

  std::size_t edge_count() const { return edges.size(); }

  ComplexMatrix holonomy() const {
    ComplexMatrix q = ComplexMatrix::identity(fibre_dim);
    for (const auto& e : edges) q = q * e;
    return q;
  }
};

namespace detail {

inline void validate_edges(std::size_t fibre_dim, const std::vector<ComplexMatrix>& edges) {
  if (edges.empty()) throw ArgumentError("triangulation needs at least one edge");
  for (const auto& e : edges)
    if (e.rows() != fibre_dim || e.cols() != fibre_dim)
      throw ArgumentError("edge matrix dimension differs from fibre dimension");
}

}  // namespace detail

inline TriangulatedInterval make_interval(std::size_t fibre_dim,
                                          std::vector<ComplexMatrix> edges) {
  detail::validate_edges(fibre_dim, edges);
  return TriangulatedInterval{fibre_dim, std::move(edges)};
}

inline TriangulatedCircle make_circle(std::size_t fibre_dim,
                                      std::vector<ComplexMatrix> edges,
                                      double circumference = 1.0) {
  detail::validate_edges(fibre_dim, edges);
  if (!(circumference > 0.0)) throw ArgumentError("circumference must be positive");
  return TriangulatedCircle{fibre_dim, std::move(edges), circumference};
}

/// U(1) circle with N equal edge phases e^{-i theta / N}, holonomy e^{-i theta}.
inline TriangulatedCircle u1_circle(double theta, std::size_t n_edges,
                                    double circumference = 1.0) {
  std::vector<ComplexMatrix> edges(
      n_edges, ComplexMatrix::scalar(std::polar(1.0, -theta / double(n_edges))));
  return make_circle(1, std::move(edges), circumference);
}

/// Edge partition function Z^Q = exp(-psibar_0 Q psi_1).
inline GrassmannElement edge_partition(const AlgebraContext& ctx, const ComplexMatrix& q,
                                       const GeneratorVector& psibar0,
                                       const GeneratorVector& psi1) {
  if (q.rows() != psibar0.dim() || q.cols() != psi1.dim())
    throw ArgumentError("edge_partition: matrix shape does not match boundary vectors");
  return grassmann::exp_even(-grassmann::bilinear(ctx, psibar0, q, psi1));
}

/// Glue two states along a shared vertex with the bilinear pairing.
inline GrassmannElement glue(const GrassmannElement& z1, const GrassmannElement& z2,
                             const VertexPair& shared) {
  return grassmann::bilinear_pair(z1, z2, shared.psi, shared.psibar);
}

/// Iterated gluing of the edge partition functions over a lattice with
/// vertices 0..N. The result equals edge_partition of the ordered product
/// Q_1 Q_2 ... Q_N; that equality is the triangulation-independence statement
/// and is asserted by tests, not assumed here.
inline GrassmannElement interval_partition(const TriangulatedInterval& tri,
                                           const FermionLattice& lattice) {
  detail::validate_edges(tri.fibre_dim, tri.edges);
  const std::size_t n_edges = tri.edge_count();
  if (lattice.vertex_count() != static_cast<int>(n_edges) + 1)
    throw ArgumentError("interval_partition: lattice must have one vertex per edge endpoint");
  if (lattice.fibre_dim() != static_cast<int>(tri.fibre_dim))
    throw ArgumentError("interval_partition: lattice fibre dimension mismatch");

  GrassmannElement z = edge_partition(lattice.context(), tri.edges[0],
                                      lattice.vertex(0).psibar, lattice.vertex(1).psi);
  for (std::size_t j = 1; j < n_edges; ++j) {
    const GrassmannElement zj =
        edge_partition(lattice.context(), tri.edges[j], lattice.vertex(j).psibar,
                       lattice.vertex(j + 1).psi);
    z = glue(z, zj, lattice.vertex(j));
  }
  return z;
}

/// Convenience overload owning its lattice.
struct IntervalPartition {
  FermionLattice lattice;
  GrassmannElement element;
};

inline IntervalPartition interval_partition(const TriangulatedInterval& tri) {
  FermionLattice lattice(static_cast<int>(tri.fibre_dim),
                         static_cast<int>(tri.edge_count()) + 1);
  GrassmannElement z = interval_partition(tri, lattice);
  return IntervalPartition{std::move(lattice), std::move(z)};
}

namespace detail {

/// Symbolic circle evaluation. Vertices carry psi_1..psi_N (internally
/// 0..N-1) with psi_0 identified with psi_N. `vertex_weight` scales the
/// e^{w psibar_j psi_j} factors: w = 1 massless, w = 1 - i m dt massive.
inline Complex circle_symbolic(const TriangulatedCircle& tri, Complex vertex_weight) {
  validate_edges(tri.fibre_dim, tri.edges);
  const int n = static_cast<int>(tri.fibre_dim);
  const int nv = static_cast<int>(tri.edge_count());
  FermionLattice lattice(n, nv);  // throws CapacityError when 2 n N > capacity
  const AlgebraContext& ctx = lattice.context();

  GrassmannElement integrand = GrassmannElement::one(ctx);
  for (int j = 1; j <= nv; ++j) {
    // edge j couples psibar_{j-1} (paper vertex 0 == N) to psi_j
    const int from = (j - 2 + nv) % nv;
    const int to = j - 1;
    integrand = integrand * edge_partition(ctx, tri.edges[j - 1],
                                           lattice.vertex(from).psibar,
                                           lattice.vertex(to).psi);
  }
  const auto weight = vertex_weight * ComplexMatrix::identity(tri.fibre_dim);
  for (int v = 0; v < nv; ++v)
    integrand = integrand * grassmann::exp_even(grassmann::bilinear(
                                ctx, lattice.vertex(v).psibar, weight,
                                lattice.vertex(v).psi));

  std::vector<grassmann::GeneratorId> measure;
  for (int v = 0; v < nv; ++v)
    for (grassmann::GeneratorId id : grassmann::measure_order(lattice.vertex(v)))
      measure.push_back(id);

  const GrassmannElement z = grassmann::berezin(integrand, measure);
  if (!z.is_scalar())
    throw Error("circle_symbolic: residual non-scalar terms after full integration");
  return z.scalar_part();
}

}  // namespace detail

/// Circle partition function by explicit Berezin integration of the full
/// state sum integrand (capacity-limited to 2 n N <= 24 generators).
inline Complex circle_partition_symbolic(const TriangulatedCircle& tri) {
  return detail::circle_symbolic(tri, Complex(1.0, 0.0));
}

/// Closed form det(I - Q_1 Q_2 ... Q_N).
inline Complex circle_partition_closed(const TriangulatedCircle& tri) {
  detail::validate_edges(tri.fibre_dim, tri.edges);
  return linalg::det(ComplexMatrix::identity(tri.fibre_dim) - tri.holonomy());
}

/// Vertex-wise linear change of variables. maps[v] acts at vertex v; an
/// interval with N edges takes N+1 maps, a circle takes N (the basepoint map
/// appears once and wraps) or N+1 with first == last.
struct GaugeTransformation {
  std::vector<ComplexMatrix> vertex_maps;
};

namespace detail {

inline ComplexMatrix checked_inverse(const ComplexMatrix& u) {
  ComplexMatrix inv(0, 0);
  try {
    inv = linalg::inverse(u);
  } catch (const SingularMatrixError&) {
    throw ConditionError("gauge_transform: singular vertex map");
  }
  // scale-invariant conditioning proxy; 1/cond below 1e-10 counts as singular
  if (u.max_abs() * inv.max_abs() > 1e10)
    throw ConditionError("gauge_transform: vertex map fails the 1e-10 condition check");
  return inv;
}

}  // namespace detail

inline TriangulatedInterval gauge_transform(const TriangulatedInterval& tri,
                                            const GaugeTransformation& g) {
  const std::size_t n_edges = tri.edge_count();
  if (g.vertex_maps.size() != n_edges + 1)
    throw ArgumentError("gauge_transform: interval with N edges needs N+1 vertex maps");
  TriangulatedInterval out = tri;
  for (std::size_t j = 0; j < n_edges; ++j)
    out.edges[j] =
        g.vertex_maps[j] * tri.edges[j] * detail::checked_inverse(g.vertex_maps[j + 1]);
  return out;
}

inline TriangulatedCircle gauge_transform(const TriangulatedCircle& tri,
                                          const GaugeTransformation& g) {
  const std::size_t n_edges = tri.edge_count();
  std::vector<ComplexMatrix> maps = g.vertex_maps;
  if (maps.size() == n_edges + 1) {
    if ((maps.front() - maps.back()).max_abs() > 1e-12)
      throw ArgumentError("gauge_transform: circle requires U_0 = U_N");
    maps.pop_back();
  }
  if (maps.size() != n_edges)
    throw ArgumentError("gauge_transform: circle with N edges needs N vertex maps");
  TriangulatedCircle out = tri;
  for (std::size_t j = 0; j < n_edges; ++j)
    out.edges[j] =
        maps[j] * tri.edges[j] * detail::checked_inverse(maps[(j + 1) % n_edges]);
  return out;
}

/// Circle model with a mass term. In the standard mode the per-vertex factor
/// is 1 - i m dt with m real and fixed. The exponential mode replaces it by
/// e^{-i m' l / N}, equivalent to a complex, N-dependent m (non-physical; it
/// exists to restore exact triangulation independence).
struct MassiveModel {
  TriangulatedCircle circle;
  double mass = 0.0;
  bool exponential_mode = false;
  double mass_prime = 0.0;

  double dt() const { return circle.circumference / double(circle.edge_count()); }

  Complex vertex_weight() const {
    if (exponential_mode)
      return std::polar(1.0, -mass_prime * circle.circumference /
                                 double(circle.edge_count()));
    return Complex(1.0, -mass * dt());
  }
};

inline MassiveModel make_massive(TriangulatedCircle circle, double mass) {
  if (!(circle.circumference > 0.0))
    throw ArgumentError("massive model: circumference must be positive");
  MassiveModel mm;
  mm.circle = std::move(circle);
  mm.mass = mass;
  return mm;
}

inline MassiveModel make_exponential_mass(TriangulatedCircle circle, double mass_prime) {
  MassiveModel mm;
  mm.circle = std::move(circle);
  mm.exponential_mode = true;
  mm.mass_prime = mass_prime;
  return mm;
}

/// Closed form det(w^N I - Q_1...Q_N) with w the per-vertex weight.
inline Complex massive_circle_partition(const MassiveModel& mm) {
  detail::validate_edges(mm.circle.fibre_dim, mm.circle.edges);
  const Complex wn = std::pow(mm.vertex_weight(),
                              static_cast<int>(mm.circle.edge_count()));
  return linalg::det(wn * ComplexMatrix::identity(mm.circle.fibre_dim) -
                     mm.circle.holonomy());
}

/// Symbolic cross-check of the massive partition function (capacity-limited).
inline Complex massive_circle_partition_symbolic(const MassiveModel& mm) {
  return detail::circle_symbolic(mm.circle, mm.vertex_weight());
}

/// N -> infinity limit det(e^{-i m l} I - Q) of the massive state sum.
inline Complex massive_limit(const ComplexMatrix& q, double mass, double l) {
  if (!q.square()) throw ArgumentError("massive_limit: holonomy must be square");
  if (!(l > 0.0)) throw ArgumentError("massive_limit: circumference must be positive");
  return linalg::det(std::polar(1.0, -mass * l) * ComplexMatrix::identity(q.rows()) - q);
}

/// Exponential-mass partition function det(e^{-i m' l} I - Q_1...Q_N);
/// identical for every N by (e^{-i m' l/N})^N = e^{-i m' l}.
inline Complex exponential_mass_partition(const TriangulatedCircle& tri,
                                          double mass_prime) {
  detail::validate_edges(tri.fibre_dim, tri.edges);
  return linalg::det(std::polar(1.0, -mass_prime * tri.circumference) *
                         ComplexMatrix::identity(tri.fibre_dim) -
                     tri.holonomy());
}

/// Haar average of the circle partition function over the gauge group U(n).
struct HaarAverage {
  Complex estimate;
  double std_error = 0.0;
  long samples = 0;
  std::string method;  // "quadrature" or "montecarlo"
};

inline constexpr int kU1QuadratureNodes = 256;  // 2^8 uniform phase nodes

inline HaarAverage haar_average_circle(std::size_t fibre_dim, long samples,
                                       std::uint64_t seed) {
  if (fibre_dim == 0) throw ArgumentError("haar_average_circle: n must be positive");
  if (samples < 1) throw ArgumentError("haar_average_circle: samples must be positive");

  if (fibre_dim == 1) {
    // Uniform trapezoidal quadrature in the phase; exact for the trigonometric
    // polynomial integrand 1 - e^{-i theta}.
    std::vector<Complex> vals(kU1QuadratureNodes);
    for (int j = 0; j < kU1QuadratureNodes; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / kU1QuadratureNodes;
      vals[j] = Complex(1.0, 0.0) - std::polar(1.0, -theta);
    }
    HaarAverage out;
    out.estimate = pairwise_sum(vals) * (1.0 / kU1QuadratureNodes);
    out.samples = kU1QuadratureNodes;
    out.method = "quadrature";
    return out;
  }

  CounterRng root(seed);
  std::vector<Complex> vals(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    const ComplexMatrix q = linalg::detail::haar_unitary_rng(fibre_dim, rng);
    vals[static_cast<std::size_t>(i)] =
        linalg::det(ComplexMatrix::identity(fibre_dim) - q);
  }
  const Complex mean = pairwise_sum(vals) * (1.0 / double(samples));
  double var = 0.0;
  if (samples > 1) {
    std::vector<double> sq(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) sq[i] = std::norm(vals[i] - mean);
    var = pairwise_sum(std::span<const double>(sq)) / double(samples - 1);
  }

  HaarAverage out;
  out.estimate = mean;
  out.std_error = std::sqrt(var / double(samples));
  out.samples = samples;
  out.method = "montecarlo";
  return out;
}

/// Symbolic check that the Haar-averaged edge state T is a projector:
/// T glued with T equals T. Only n = 1 is symbolically feasible here.
struct ProjectorReport {
  bool is_projector = false;
  double projector_deviation = 0.0;   // max |(T,T) - T| coefficientwise
  double average_deviation = 0.0;     // max |T - 1| coefficientwise
  double control_deviation = 0.0;     // |(Z,Z) - Z| for a fixed-phase control
};

inline ProjectorReport haar_projector_check(int quadrature_nodes = kU1QuadratureNodes) {
  if (quadrature_nodes < 2)
    throw ArgumentError("haar_projector_check: need at least two nodes");
  FermionLattice lattice(1, 3);  // vertices 0,1,2; glue across vertex 1
  const AlgebraContext& ctx = lattice.context();

  auto averaged_edge = [&](int from, int to) {
    GrassmannElement acc = GrassmannElement::zero(ctx);
    for (int j = 0; j < quadrature_nodes; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / quadrature_nodes;
      acc += edge_partition(ctx, ComplexMatrix::scalar(std::polar(1.0, -theta)),
                            lattice.vertex(from).psibar, lattice.vertex(to).psi);
    }
    return acc * Complex(1.0 / quadrature_nodes, 0.0);
  };

  const GrassmannElement t01 = averaged_edge(0, 1);
  const GrassmannElement t12 = averaged_edge(1, 2);
  const GrassmannElement t02 = averaged_edge(0, 2);
  const GrassmannElement tt = glue(t01, t12, lattice.vertex(1));

  ProjectorReport report;
  report.projector_deviation = grassmann::max_coeff_distance(tt, t02);
  report.average_deviation =
      grassmann::max_coeff_distance(t02, GrassmannElement::one(ctx));
  report.is_projector = report.projector_deviation <= 1e-10;

  // Control: a fixed-phase edge state is not idempotent under gluing.
  const double theta0 = 1.0;
  const auto q0 = ComplexMatrix::scalar(std::polar(1.0, -theta0));
  const auto z01 = edge_partition(ctx, q0, lattice.vertex(0).psibar, lattice.vertex(1).psi);
  const auto z12 = edge_partition(ctx, q0, lattice.vertex(1).psibar, lattice.vertex(2).psi);
  const auto z02 = edge_partition(ctx, q0, lattice.vertex(0).psibar, lattice.vertex(2).psi);
  report.control_deviation =
      grassmann::max_coeff_distance(glue(z01, z12, lattice.vertex(1)), z02);
  return report;
}

}  // namespace fermisum::statesum
