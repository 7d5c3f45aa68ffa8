#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fermisum/errors.hpp"
#include "fermisum/linalg.hpp"
#include "fermisum/util.hpp"

namespace fermisum::grassmann {

/// Hard cap on generators per algebra context (2^24 potential monomials).
inline constexpr int kGeneratorCapacity = 24;

/// One anticommuting generator, identified by its position in the fixed
/// global ordering of its algebra context.
struct GeneratorId {
  int index = 0;
  friend bool operator==(GeneratorId a, GeneratorId b) { return a.index == b.index; }
  friend auto operator<=>(GeneratorId a, GeneratorId b) { return a.index <=> b.index; }
};

/// Identity of a finite Grassmann algebra: the generator count plus a unique
/// tag so that elements of independently created contexts never mix.
class AlgebraContext {
 public:
  explicit AlgebraContext(int generator_count)
      : generator_count_(generator_count), id_(next_id()) {
    if (generator_count < 0) throw ArgumentError("AlgebraContext: negative generator count");
    if (generator_count > kGeneratorCapacity)
      throw CapacityError("AlgebraContext: " + std::to_string(generator_count) +
                          " generators exceeds capacity " +
                          std::to_string(kGeneratorCapacity));
  }

  int generator_count() const { return generator_count_; }
  std::uint64_t id() const { return id_; }

  bool contains(GeneratorId g) const { return g.index >= 0 && g.index < generator_count_; }

  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
    return a.id_ == b.id_;
  }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }

  int generator_count_;
  std::uint64_t id_;
};

namespace detail {

using Mask = std::uint32_t;

inline Mask bit(GeneratorId g) { return Mask{1} << g.index; }

/// Generators of `m` strictly below index x.
inline Mask below(Mask m, GeneratorId x) { return m & (bit(x) - 1); }

/// Sign of reordering the concatenation (ascending p)(ascending q) into a
/// single ascending word: parity of the merge inversion count.
inline int merge_sign(Mask p, Mask q) {
  int inversions = 0;
  while (q) {
    const int j = std::countr_zero(q);
    inversions += std::popcount(p >> (j + 1));
    q &= q - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

/// Test hook used by the verification driver: deliberately mis-signs single
/// Berezin integration so suites can prove they detect a broken convention.
inline std::atomic<bool>& berezin_sign_mutation() {
  static std::atomic<bool> flag{false};
  return flag;
}

}  // namespace detail

/// Element of a finite Grassmann algebra: a sparse complex linear combination
/// of canonical (ascending-index) monomials. Value semantics throughout; no
/// operation mutates its inputs.
class GrassmannElement {
 public:
  using Mask = detail::Mask;
  using TermMap = std::map<Mask, Complex>;

  explicit GrassmannElement(AlgebraContext ctx) : ctx_(ctx) {}

  static GrassmannElement zero(const AlgebraContext& ctx) { return GrassmannElement(ctx); }

  static GrassmannElement scalar(const AlgebraContext& ctx, Complex value) {
    GrassmannElement e(ctx);
    if (value != Complex(0.0, 0.0)) e.terms_[0] = value;
    return e;
  }

  static GrassmannElement one(const AlgebraContext& ctx) { return scalar(ctx, 1.0); }

  static GrassmannElement generator(const AlgebraContext& ctx, GeneratorId g) {
    if (!ctx.contains(g))
      throw ArgumentError("generator index " + std::to_string(g.index) +
                          " outside algebra context");
    GrassmannElement e(ctx);
    e.terms_[detail::bit(g)] = Complex(1.0, 0.0);
    return e;
  }

  /// Canonical monomial with the given generator set and coefficient.
  static GrassmannElement monomial(const AlgebraContext& ctx, Mask mask, Complex coeff) {
    if (ctx.generator_count() < 32 && (mask >> ctx.generator_count()) != 0)
      throw ArgumentError("monomial mask outside algebra context");
    GrassmannElement e(ctx);
    if (coeff != Complex(0.0, 0.0)) e.terms_[mask] = coeff;
    return e;
  }

  const AlgebraContext& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  Complex coefficient(Mask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  Complex scalar_part() const { return coefficient(0); }

  bool is_zero() const { return terms_.empty(); }

  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [mask, c] : terms_) d = std::max(d, std::popcount(mask));
    return d;
  }

  bool is_even() const {
    for (const auto& [mask, c] : terms_)
      if (std::popcount(mask) % 2 != 0) return false;
    return true;
  }

  bool is_odd() const {
    for (const auto& [mask, c] : terms_)
      if (std::popcount(mask) % 2 == 0) return false;
    return true;
  }

  bool depends_on(GeneratorId g) const {
    for (const auto& [mask, c] : terms_)
      if (mask & detail::bit(g)) return true;
    return false;
  }

  GrassmannElement& operator+=(const GrassmannElement& other) {
    require_same_context(other);
    for (const auto& [mask, c] : other.terms_) add_term(mask, c);
    return *this;
  }

  GrassmannElement& operator-=(const GrassmannElement& other) {
    require_same_context(other);
    for (const auto& [mask, c] : other.terms_) add_term(mask, -c);
    return *this;
  }

  GrassmannElement& operator*=(Complex s) {
    if (s == Complex(0.0, 0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [mask, c] : terms_) c *= s;
    return *this;
  }

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) {
    a += b;
    return a;
  }

  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) {
    a -= b;
    return a;
  }

  friend GrassmannElement operator-(GrassmannElement a) {
    for (auto& [mask, c] : a.terms_) c = -c;
    return a;
  }

  friend GrassmannElement operator*(GrassmannElement a, Complex s) {
    a *= s;
    return a;
  }

  friend GrassmannElement operator*(Complex s, GrassmannElement a) {
    a *= s;
    return a;
  }

  /// Associative bilinear product; signs come from canonical reordering and
  /// repeated generators annihilate.
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    a.require_same_context(b);
    GrassmannElement r(a.ctx_);
    for (const auto& [pm, pc] : a.terms_)
      for (const auto& [qm, qc] : b.terms_) {
        if (pm & qm) continue;  // nilpotency
        const int sign = detail::merge_sign(pm, qm);
        r.add_term(pm | qm, static_cast<double>(sign) * pc * qc);
      }
    return r;
  }

  /// Diagnostic rendering: terms sorted by degree then mask, "(re,im)·a3a7".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Mask, Complex>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
      const int dx = std::popcount(x.first), dy = std::popcount(y.first);
      return dx != dy ? dx < dy : x.first < y.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : sorted) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real() << "," << c.imag() << ")";
      Mask m = mask;
      if (m) os << "·";
      while (m) {
        os << "a" << std::countr_zero(m);
        m &= m - 1;
      }
    }
    return os.str();
  }

  void require_same_context(const GrassmannElement& other) const {
    if (!(ctx_ == other.ctx_))
      throw ContextError("elements belong to different algebra contexts");
  }

 private:
  void add_term(Mask mask, Complex c) {
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
    } else if (c == Complex(0.0, 0.0)) {
      terms_.erase(it);
    }
  }

  AlgebraContext ctx_;
  TermMap terms_;
};

/// Largest coefficient difference over the union of monomials of f and g.
inline double max_coeff_distance(const GrassmannElement& f, const GrassmannElement& g) {
  f.require_same_context(g);
  double d = 0.0;
  for (const auto& [mask, c] : f.terms()) d = std::max(d, std::abs(c - g.coefficient(mask)));
  for (const auto& [mask, c] : g.terms()) d = std::max(d, std::abs(c - f.coefficient(mask)));
  return d;
}

/// Single Berezin integration over x: terms without x die; terms with x keep
/// the coefficient signed by anticommuting x to the leftmost position.
inline GrassmannElement berezin_single(const GrassmannElement& f, GeneratorId x) {
  if (!f.context().contains(x))
    throw ArgumentError("berezin: generator outside algebra context");
  GrassmannElement r(f.context());
  const detail::Mask xb = detail::bit(x);
  const bool mutated = detail::berezin_sign_mutation().load(std::memory_order_relaxed);
  for (const auto& [mask, c] : f.terms()) {
    if (!(mask & xb)) continue;
    const int hops = mutated ? std::popcount(mask >> (x.index + 1))
                             : std::popcount(detail::below(mask, x));
    const double sign = (hops & 1) ? -1.0 : 1.0;
    r += GrassmannElement::monomial(f.context(), mask & ~xb, sign * c);
  }
  return r;
}

/// Iterated Berezin integral with the measure written left to right:
/// the last listed generator is integrated first, so that
/// berezin(f, {x1, x2}) computes the iterated integral with dx2 innermost.
inline GrassmannElement berezin(const GrassmannElement& f, std::span<const GeneratorId> order) {
  detail::Mask seen = 0;
  for (GeneratorId g : order) {
    if (!f.context().contains(g))
      throw ArgumentError("berezin: generator outside algebra context");
    if (seen & detail::bit(g))
      throw ArgumentError("berezin: repeated generator a" + std::to_string(g.index) +
                          " in integration order");
    seen |= detail::bit(g);
  }
  GrassmannElement r = f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) r = berezin_single(r, *it);
  return r;
}

inline GrassmannElement berezin(const GrassmannElement& f,
                                const std::vector<GeneratorId>& order) {
  return berezin(f, std::span<const GeneratorId>(order));
}

/// Replace every occurrence of x by an odd element, simultaneously across all
/// terms of f. x may appear in the replacement only as the bare linear
/// monomial (the translation case x -> x + c); any appearance inside a
/// higher-degree term is rejected.
inline GrassmannElement substitute(const GrassmannElement& f, GeneratorId x,
                                   const GrassmannElement& replacement) {
  f.require_same_context(replacement);
  if (!f.context().contains(x))
    throw ArgumentError("substitute: generator outside algebra context");
  if (!replacement.is_odd() && !replacement.is_zero())
    throw ArgumentError("substitute: replacement must be of odd degree");
  for (const auto& [mask, c] : replacement.terms())
    if ((mask & detail::bit(x)) && mask != detail::bit(x))
      throw ArgumentError(
          "substitute: replacement may contain the substituted generator only linearly");

  const detail::Mask xb = detail::bit(x);
  GrassmannElement r(f.context());
  for (const auto& [mask, c] : f.terms()) {
    if (!(mask & xb)) {
      r += GrassmannElement::monomial(f.context(), mask, c);
      continue;
    }
    // mask = prefix · x · suffix in canonical order; splice the replacement
    // in place of x and let the product take care of all signs.
    const auto prefix = GrassmannElement::monomial(f.context(), detail::below(mask, x), c);
    const auto suffix =
        GrassmannElement::monomial(f.context(), mask & ~(xb | detail::below(mask, x)), 1.0);
    r += prefix * replacement * suffix;
  }
  return r;
}

/// Exponential of an even element with vanishing scalar part. The series is
/// exact: it terminates by nilpotency after at most generator_count/2 steps.
inline GrassmannElement exp_even(const GrassmannElement& f) {
  if (!f.is_even()) throw ArgumentError("exp_even: element has odd-degree terms");
  if (f.scalar_part() != Complex(0.0, 0.0))
    throw ArgumentError("exp_even: element has a nonzero scalar part");
  GrassmannElement result = GrassmannElement::one(f.context());
  GrassmannElement power = GrassmannElement::one(f.context());
  const int kmax = f.context().generator_count() / 2;
  for (int k = 1; k <= kmax; ++k) {
    power = power * f;
    power *= Complex(1.0 / static_cast<double>(k), 0.0);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

/// n-dimensional vector of generators; partner lists the components of the
/// conjugate vector, fixing the interleaved measure pairing at construction.
struct GeneratorVector {
  enum class Role { kPsi, kPsiBar };

  Role role = Role::kPsi;
  std::vector<GeneratorId> components;
  std::vector<GeneratorId> partner;

  std::size_t dim() const { return components.size(); }
};

/// The vectors psi_v, psibar_v attached to one vertex.
struct VertexPair {
  GeneratorVector psi;
  GeneratorVector psibar;
};

inline VertexPair make_vertex_pair(std::vector<GeneratorId> psi_ids,
                                   std::vector<GeneratorId> psibar_ids) {
  if (psi_ids.size() != psibar_ids.size())
    throw ArgumentError("make_vertex_pair: component counts disagree");
  VertexPair v;
  v.psi = GeneratorVector{GeneratorVector::Role::kPsi, psi_ids, psibar_ids};
  v.psibar = GeneratorVector{GeneratorVector::Role::kPsiBar, psibar_ids, psi_ids};
  return v;
}

/// Measure order for d(psi) d(psibar) = da_1 db_1 ... da_n db_n.
inline std::vector<GeneratorId> measure_order(const GeneratorVector& psi,
                                              const GeneratorVector& psibar) {
  if (psi.dim() != psibar.dim())
    throw ArgumentError("measure_order: vector dimensions disagree");
  std::vector<GeneratorId> order;
  order.reserve(2 * psi.dim());
  for (std::size_t c = 0; c < psi.dim(); ++c) {
    order.push_back(psi.components[c]);
    order.push_back(psibar.components[c]);
  }
  return order;
}

inline std::vector<GeneratorId> measure_order(const VertexPair& v) {
  return measure_order(v.psi, v.psibar);
}

/// Lattice of fermionic vertex variables over a shared algebra context.
/// Vertex v, component c maps to generators a = 2(v n + c) (psi) and
/// b = a + 1 (psibar), so the global ordering interleaves each pair.
class FermionLattice {
 public:
  FermionLattice(int fibre_dim, int vertex_count)
      : fibre_dim_(fibre_dim),
        vertex_count_(vertex_count),
        ctx_(2 * fibre_dim * vertex_count) {
    if (fibre_dim <= 0 || vertex_count <= 0)
      throw ArgumentError("FermionLattice: dimensions must be positive");
    vertices_.reserve(vertex_count);
    for (int v = 0; v < vertex_count; ++v) {
      std::vector<GeneratorId> psi, psibar;
      for (int c = 0; c < fibre_dim; ++c) {
        psi.push_back(GeneratorId{2 * (v * fibre_dim + c)});
        psibar.push_back(GeneratorId{2 * (v * fibre_dim + c) + 1});
      }
      vertices_.push_back(make_vertex_pair(std::move(psi), std::move(psibar)));
    }
  }

  int fibre_dim() const { return fibre_dim_; }
  int vertex_count() const { return vertex_count_; }
  const AlgebraContext& context() const { return ctx_; }
  const VertexPair& vertex(int v) const { return vertices_.at(v); }

 private:
  int fibre_dim_;
  int vertex_count_;
  AlgebraContext ctx_;
  std::vector<VertexPair> vertices_;
};

/// The bilinear psibar · M · psi as an algebra element.
inline GrassmannElement bilinear(const AlgebraContext& ctx, const GeneratorVector& psibar,
                                 const linalg::ComplexMatrix& m, const GeneratorVector& psi) {
  if (m.rows() != psibar.dim() || m.cols() != psi.dim())
    throw ArgumentError("bilinear: matrix shape does not match vectors");
  GrassmannElement r(ctx);
  for (std::size_t i = 0; i < psibar.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) {
      const Complex mij = m(i, j);
      if (mij == Complex(0.0, 0.0)) continue;
      r += mij * (GrassmannElement::generator(ctx, psibar.components[i]) *
                  GrassmannElement::generator(ctx, psi.components[j]));
    }
  return r;
}

/// Gaussian Berezin integral with optional fermionic sources, computed by
/// explicit expansion of the exponential followed by integration:
///   ∫ d(psi) d(psibar) exp(psibar M psi + cbar psi + psibar d).
/// Sources are odd elements in spectator generators; M must be invertible
/// when sources are present.
inline GrassmannElement gaussian_berezin(
    const AlgebraContext& ctx, const linalg::ComplexMatrix& m, const GeneratorVector& psi,
    const GeneratorVector& psibar,
    const std::vector<GrassmannElement>& cbar = {},
    const std::vector<GrassmannElement>& d = {}) {
  const std::size_t n = psi.dim();
  if (psibar.dim() != n || m.rows() != n || m.cols() != n)
    throw ArgumentError("gaussian_berezin: dimension mismatch");

  const bool has_sources = !cbar.empty() || !d.empty();
  if (!cbar.empty() && cbar.size() != n)
    throw ArgumentError("gaussian_berezin: cbar has wrong length");
  if (!d.empty() && d.size() != n)
    throw ArgumentError("gaussian_berezin: d has wrong length");

  auto check_source = [&](const GrassmannElement& s) {
    if (!s.is_odd() && !s.is_zero())
      throw ArgumentError("gaussian_berezin: sources must be odd elements");
    for (std::size_t c = 0; c < n; ++c)
      if (s.depends_on(psi.components[c]) || s.depends_on(psibar.components[c]))
        throw ArgumentError("gaussian_berezin: sources must not contain psi/psibar");
  };
  for (const auto& s : cbar) check_source(s);
  for (const auto& s : d) check_source(s);

  if (has_sources) {
    const Complex detm = linalg::det(m);
    if (std::abs(detm) <= 1e-12 * std::max(1.0, std::pow(m.max_abs(), double(n))))
      throw SingularMatrixError("gaussian_berezin: singular matrix with sources present");
  }

  GrassmannElement action = bilinear(ctx, psibar, m, psi);
  for (std::size_t i = 0; i < cbar.size(); ++i)
    action += cbar[i] * GrassmannElement::generator(ctx, psi.components[i]);
  for (std::size_t i = 0; i < d.size(); ++i)
    action += GrassmannElement::generator(ctx, psibar.components[i]) * d[i];

  return berezin(exp_even(action), measure_order(psi, psibar));
}

/// Convenience overload on a fresh minimal context (no spectators).
inline GrassmannElement gaussian_berezin(const linalg::ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  FermionLattice lattice(n, 1);
  return gaussian_berezin(lattice.context(), m, lattice.vertex(0).psi,
                          lattice.vertex(0).psibar);
}

/// Gluing pairing on fermionic states: (f,g) = ∫ d(psi) d(psibar) f e^{psibar psi} g,
/// where f may depend on psi but not psibar, and g on psibar but not psi.
inline GrassmannElement bilinear_pair(const GrassmannElement& f, const GrassmannElement& g,
                                      const GeneratorVector& psi,
                                      const GeneratorVector& psibar) {
  f.require_same_context(g);
  if (psi.dim() != psibar.dim())
    throw ArgumentError("bilinear_pair: vector dimensions disagree");
  for (std::size_t c = 0; c < psi.dim(); ++c) {
    if (f.depends_on(psibar.components[c]))
      throw ArgumentError("bilinear_pair: left state depends on psibar");
    if (g.depends_on(psi.components[c]))
      throw ArgumentError("bilinear_pair: right state depends on psi");
  }
  const AlgebraContext& ctx = f.context();
  const GrassmannElement metric =
      exp_even(bilinear(ctx, psibar, linalg::ComplexMatrix::identity(psi.dim()), psi));
  return berezin(f * metric * g, measure_order(psi, psibar));
}

}  // namespace fermisum::grassmann
