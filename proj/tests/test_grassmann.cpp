#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "dense_oracle.hpp"
#include "fermisum/grassmann.hpp"
#include "fermisum/linalg.hpp"
#include "fermisum/util.hpp"

using namespace fermisum;
using namespace fermisum::grassmann;
using linalg::ComplexMatrix;

namespace {

GeneratorId g(int i) { return GeneratorId{i}; }

GrassmannElement gen(const AlgebraContext& ctx, int i) {
  return GrassmannElement::generator(ctx, g(i));
}

// Random element with small Gaussian-integer coefficients so that products
// of up to three factors stay exact in double precision.
GrassmannElement random_int_element(const AlgebraContext& ctx, CounterRng& rng,
                                    int max_terms) {
  GrassmannElement e = GrassmannElement::zero(ctx);
  const std::uint32_t full = (std::uint32_t(1) << ctx.generator_count()) - 1;
  for (int t = 0; t < max_terms; ++t) {
    const std::uint32_t mask = static_cast<std::uint32_t>(rng.next_u64()) & full;
    const double re = static_cast<double>(static_cast<int>(rng.next_below(5)) - 2);
    const double im = static_cast<double>(static_cast<int>(rng.next_below(5)) - 2);
    e += GrassmannElement::monomial(ctx, mask, Complex(re, im));
  }
  return e;
}

GrassmannElement random_even_element(const AlgebraContext& ctx, CounterRng& rng,
                                     int max_terms) {
  GrassmannElement e = GrassmannElement::zero(ctx);
  const std::uint32_t full = (std::uint32_t(1) << ctx.generator_count()) - 1;
  int placed = 0;
  while (placed < max_terms) {
    const std::uint32_t mask = static_cast<std::uint32_t>(rng.next_u64()) & full;
    if (mask == 0 || std::popcount(mask) % 2 != 0) continue;
    const double re = static_cast<double>(static_cast<int>(rng.next_below(5)) - 2);
    const double im = static_cast<double>(static_cast<int>(rng.next_below(5)) - 2);
    e += GrassmannElement::monomial(ctx, mask, Complex(re, im));
    ++placed;
  }
  return e;
}

GrassmannElement random_odd_element(const AlgebraContext& ctx, CounterRng& rng,
                                    std::uint32_t excluded_mask, int max_terms) {
  GrassmannElement e = GrassmannElement::zero(ctx);
  const std::uint32_t full = (std::uint32_t(1) << ctx.generator_count()) - 1;
  int placed = 0;
  while (placed < max_terms) {
    const std::uint32_t mask = static_cast<std::uint32_t>(rng.next_u64()) & full;
    if (mask == 0 || (mask & excluded_mask) || std::popcount(mask) % 2 == 0) continue;
    const double re = static_cast<double>(static_cast<int>(rng.next_below(5)) - 2);
    const double im = static_cast<double>(static_cast<int>(rng.next_below(5)) - 2);
    e += GrassmannElement::monomial(ctx, mask, Complex(re, im));
    ++placed;
  }
  return e;
}

ComplexMatrix random_matrix(std::size_t n, CounterRng& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = Complex(rng.next_uniform(-1.0, 1.0), rng.next_uniform(-1.0, 1.0));
  return m;
}

Complex cofactor_det(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Complex sum(0.0, 0.0);
  double sign = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    sum += sign * m(0, j) * cofactor_det(minor);
    sign = -sign;
  }
  return sum;
}

}  // namespace

TEST_CASE("algebra context capacity guard") {
  CHECK_NOTHROW(AlgebraContext(24));
  CHECK_THROWS_AS(AlgebraContext(25), CapacityError);
  CHECK_THROWS_AS(FermionLattice(3, 5), CapacityError);  // 30 generators
}

TEST_CASE("product axioms on generators") {
  AlgebraContext ctx(4);
  const auto a1 = gen(ctx, 0), a2 = gen(ctx, 1), a3 = gen(ctx, 2);

  CHECK((a1 * a1).is_zero());
  CHECK((a1 * a2 + a2 * a1).is_zero());

  const auto triple = (a1 * a2) * a3;
  CHECK(triple.terms().size() == 1);
  CHECK(std::abs(triple.coefficient(0b111) - Complex(1.0, 0.0)) == 0.0);

  AlgebraContext other(4);
  CHECK_THROWS_AS(a1 * GrassmannElement::generator(other, g(1)), ContextError);
}

TEST_CASE("product is associative, distributive, and matches the dense oracle") {
  AlgebraContext ctx(6);
  CounterRng rng(2024);
  for (int rep = 0; rep < 40; ++rep) {
    const auto f = random_int_element(ctx, rng, 6);
    const auto h = random_int_element(ctx, rng, 6);
    const auto k = random_int_element(ctx, rng, 6);

    // Exact coefficient equality: coefficients are Gaussian integers.
    CHECK(max_coeff_distance((f * h) * k, f * (h * k)) == 0.0);
    CHECK(max_coeff_distance(f * (h + k), f * h + f * k) == 0.0);

    const auto ref = oracle::mul(oracle::from_element(f), oracle::from_element(h));
    CHECK(oracle::max_distance(ref, f * h) == 0.0);
  }

  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      const auto gx = gen(ctx, x), gy = gen(ctx, y);
      if (x == y)
        CHECK((gx * gy).is_zero());
      else
        CHECK((gx * gy + gy * gx).is_zero());
    }
}

TEST_CASE("single and iterated Berezin integrals") {
  AlgebraContext ctx(3);
  const auto a1 = gen(ctx, 0), a2 = gen(ctx, 1);

  // Coefficient definition at l = 1.
  const auto i1 = berezin(a1, std::vector<GeneratorId>{g(0)});
  CHECK(max_coeff_distance(i1, GrassmannElement::one(ctx)) == 0.0);
  CHECK(berezin(GrassmannElement::one(ctx), std::vector<GeneratorId>{g(0)}).is_zero());

  // Coefficient of a2 a1 under the measure da1 da2.
  const auto f = a2 * a1;
  const auto i12 = berezin(f, std::vector<GeneratorId>{g(0), g(1)});
  CHECK(max_coeff_distance(i12, GrassmannElement::one(ctx)) == 0.0);

  // Transposing neighbouring differentials flips the sign.
  const auto i21 = berezin(f, std::vector<GeneratorId>{g(1), g(0)});
  CHECK(max_coeff_distance(i21, -GrassmannElement::one(ctx)) == 0.0);

  CHECK_THROWS_AS(berezin(f, std::vector<GeneratorId>{g(0), g(0)}), ArgumentError);
}

TEST_CASE("berezin iteration, transposition, and oracle agreement on random input") {
  AlgebraContext ctx(6);
  CounterRng rng(77);
  for (int rep = 0; rep < 40; ++rep) {
    const auto f = random_int_element(ctx, rng, 8);

    // Iterated-integral consistency.
    const int x1 = static_cast<int>(rng.next_below(6));
    int x2 = static_cast<int>(rng.next_below(6));
    while (x2 == x1) x2 = static_cast<int>(rng.next_below(6));
    const auto joint = berezin(f, std::vector<GeneratorId>{g(x1), g(x2)});
    const auto nested =
        berezin(berezin(f, std::vector<GeneratorId>{g(x2)}), std::vector<GeneratorId>{g(x1)});
    CHECK(max_coeff_distance(joint, nested) == 0.0);

    // Neighbouring transposition flips the overall sign.
    const auto swapped = berezin(f, std::vector<GeneratorId>{g(x2), g(x1)});
    CHECK(max_coeff_distance(joint, -swapped) == 0.0);

    // The iterated convention reproduces the top-coefficient definition.
    const auto ref = oracle::integrate(oracle::from_element(f), {x1, x2});
    CHECK(oracle::max_distance(ref, joint) == 0.0);
  }

  // Full-measure integral against the definition, random orders.
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = random_int_element(ctx, rng, 10);
    std::vector<int> order{0, 1, 2, 3, 4, 5};
    for (int i = 5; i > 0; --i)
      std::swap(order[i], order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<GeneratorId> ids;
    for (int x : order) ids.push_back(g(x));
    CHECK(oracle::max_distance(oracle::integrate(oracle::from_element(f), order),
                               berezin(f, ids)) == 0.0);
  }
}

TEST_CASE("substitution and translation invariance") {
  AlgebraContext ctx(4);
  const auto a1 = gen(ctx, 0), a2 = gen(ctx, 1), a3 = gen(ctx, 2), a4 = gen(ctx, 3);

  const auto repl = a1 + a2 * a3 * a4;
  const auto subbed = substitute(a1, g(0), repl);
  CHECK(max_coeff_distance(subbed, repl) == 0.0);

  CHECK_THROWS_AS(substitute(a1, g(0), a2 * a3), ArgumentError);  // even replacement
  CHECK_THROWS_AS(substitute(a1, g(0), a1 * a2 * a3 + a2), ArgumentError);  // nonlinear x

  CounterRng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const auto f = random_int_element(ctx, rng, 6);
    const auto shift = random_odd_element(ctx, rng, 0b1, 2);  // excludes a1

    // translation invariance of the integral
    const auto translated = substitute(f, g(0), a1 + shift);
    CHECK(max_coeff_distance(berezin(translated, std::vector<GeneratorId>{g(0)}),
                             berezin(f, std::vector<GeneratorId>{g(0)})) == 0.0);

    // substituting the shift back is the identity
    const auto back = substitute(translated, g(0), a1 - shift);
    CHECK(max_coeff_distance(back, f) == 0.0);
  }
}

TEST_CASE("exp_even basics") {
  FermionLattice lattice(1, 1);
  const AlgebraContext& ctx = lattice.context();
  const auto a = GrassmannElement::generator(ctx, lattice.vertex(0).psi.components[0]);
  const auto b = GrassmannElement::generator(ctx, lattice.vertex(0).psibar.components[0]);

  CHECK(max_coeff_distance(exp_even(GrassmannElement::zero(ctx)),
                           GrassmannElement::one(ctx)) == 0.0);

  const Complex m(0.75, -0.25);
  const auto f = m * (b * a);
  CHECK(max_coeff_distance(exp_even(f), GrassmannElement::one(ctx) + f) == 0.0);

  CHECK_THROWS_AS(exp_even(a), ArgumentError);
  CHECK_THROWS_AS(exp_even(GrassmannElement::one(ctx)), ArgumentError);
}

TEST_CASE("exp_even is a homomorphism on even elements and inverts") {
  AlgebraContext ctx(8);
  CounterRng rng(5150);
  for (int rep = 0; rep < 20; ++rep) {
    const auto f = random_even_element(ctx, rng, 3);
    const auto h = random_even_element(ctx, rng, 3);
    CHECK(max_coeff_distance(exp_even(f) * exp_even(-f), GrassmannElement::one(ctx)) <=
          1e-12);
    CHECK(max_coeff_distance(exp_even(f) * exp_even(h), exp_even(f + h)) <= 1e-12);
    CHECK(oracle::max_distance(oracle::exp_series(oracle::from_element(f)), exp_even(f)) <=
          1e-13);
  }
}

TEST_CASE("gaussian integral reproduces the determinant") {
  SECTION("1x1") {
    const Complex m(0.3, 1.7);
    const auto z = gaussian_berezin(ComplexMatrix::scalar(m));
    REQUIRE(z.is_scalar());
    CHECK(std::abs(z.scalar_part() - m) <= 1e-15);
  }

  SECTION("random n up to 3, cofactor oracle") {
    CounterRng rng(99);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int rep = 0; rep < 25; ++rep) {
        const auto m = random_matrix(n, rng);
        const auto z = gaussian_berezin(m);
        REQUIRE(z.is_scalar());
        CHECK(std::abs(z.scalar_part() - cofactor_det(m)) <= 1e-12);
      }
  }
}

TEST_CASE("gaussian integral with sources completes the square") {
  SECTION("hand-checked n=1 with unit matrix") {
    FermionLattice lattice(1, 2);  // vertex 0 integrated, vertex 1 spectator
    const AlgebraContext& ctx = lattice.context();
    const auto& v0 = lattice.vertex(0);
    const auto& v1 = lattice.vertex(1);
    const auto spec_a = GrassmannElement::generator(ctx, v1.psi.components[0]);
    const auto spec_b = GrassmannElement::generator(ctx, v1.psibar.components[0]);

    const auto z = gaussian_berezin(ctx, ComplexMatrix::identity(1), v0.psi, v0.psibar,
                                    {spec_b}, {spec_a});
    const auto expected = GrassmannElement::one(ctx) - spec_b * spec_a;
    CHECK(max_coeff_distance(z, expected) <= 1e-15);
  }

  SECTION("random n up to 2 with one or two spectator pairs") {
    CounterRng rng(123);
    for (std::size_t n = 1; n <= 2; ++n)
      for (int spectators = 1; spectators <= 2; ++spectators)
        for (int rep = 0; rep < 10; ++rep) {
          FermionLattice lattice(static_cast<int>(n), 1 + spectators);
          const AlgebraContext& ctx = lattice.context();
          const auto& v0 = lattice.vertex(0);

          std::uint32_t integrated_mask = 0;
          for (std::size_t c = 0; c < n; ++c) {
            integrated_mask |= std::uint32_t(1) << v0.psi.components[c].index;
            integrated_mask |= std::uint32_t(1) << v0.psibar.components[c].index;
          }

          ComplexMatrix m = random_matrix(n, rng);
          // keep comfortably invertible
          for (std::size_t i = 0; i < n; ++i) m(i, i) += Complex(2.0, 0.0);

          std::vector<GrassmannElement> cbar, d;
          for (std::size_t i = 0; i < n; ++i) {
            cbar.push_back(random_odd_element(ctx, rng, integrated_mask, 2));
            d.push_back(random_odd_element(ctx, rng, integrated_mask, 2));
          }

          const auto z = gaussian_berezin(ctx, m, v0.psi, v0.psibar, cbar, d);

          // Independent route: det M * exp(-cbar M^{-1} d).
          const auto minv = linalg::inverse(m);
          auto quad = GrassmannElement::zero(ctx);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              quad += (-minv(i, j)) * (cbar[i] * d[j]);
          const auto expected = linalg::det(m) * exp_even(quad);
          CHECK(max_coeff_distance(z, expected) <= 1e-12);
        }
  }

  SECTION("singular matrix with sources is rejected") {
    FermionLattice lattice(1, 2);
    const auto& v0 = lattice.vertex(0);
    const auto spec_a =
        GrassmannElement::generator(lattice.context(), lattice.vertex(1).psi.components[0]);
    const auto spec_b = GrassmannElement::generator(lattice.context(),
                                                    lattice.vertex(1).psibar.components[0]);
    CHECK_THROWS_AS(gaussian_berezin(lattice.context(), ComplexMatrix(1, 1), v0.psi,
                                     v0.psibar, {spec_b}, {spec_a}),
                    SingularMatrixError);
  }
}

TEST_CASE("bilinear pairing") {
  SECTION("pairing of units is det I = 1") {
    FermionLattice lattice(1, 1);
    const auto one = GrassmannElement::one(lattice.context());
    const auto z = bilinear_pair(one, one, lattice.vertex(0).psi, lattice.vertex(0).psibar);
    REQUIRE(z.is_scalar());
    CHECK(std::abs(z.scalar_part() - Complex(1.0, 0.0)) <= 1e-15);
  }

  SECTION("pairing of single components fixes the sign convention") {
    FermionLattice lattice(1, 1);
    const AlgebraContext& ctx = lattice.context();
    const auto a = GrassmannElement::generator(ctx, lattice.vertex(0).psi.components[0]);
    const auto b = GrassmannElement::generator(ctx, lattice.vertex(0).psibar.components[0]);
    const auto z = bilinear_pair(a, b, lattice.vertex(0).psi, lattice.vertex(0).psibar);
    REQUIRE(z.is_scalar());
    // da db (a b) integrates to -1 under the interleaved measure convention.
    CHECK(std::abs(z.scalar_part() - Complex(-1.0, 0.0)) <= 1e-15);
  }

  SECTION("dependency preconditions") {
    FermionLattice lattice(1, 1);
    const AlgebraContext& ctx = lattice.context();
    const auto a = GrassmannElement::generator(ctx, lattice.vertex(0).psi.components[0]);
    const auto b = GrassmannElement::generator(ctx, lattice.vertex(0).psibar.components[0]);
    CHECK_THROWS_AS(bilinear_pair(b, b, lattice.vertex(0).psi, lattice.vertex(0).psibar),
                    ArgumentError);
    CHECK_THROWS_AS(bilinear_pair(a, a, lattice.vertex(0).psi, lattice.vertex(0).psibar),
                    ArgumentError);
  }
}

TEST_CASE("debug rendering") {
  AlgebraContext ctx(4);
  CHECK(GrassmannElement::zero(ctx).to_string() == "0");
  const auto e = GrassmannElement::one(ctx) +
                 GrassmannElement::monomial(ctx, 0b1010, Complex(0.0, -1.0));
  CHECK(e.to_string() == "(1,0) + (0,-1)·a1a3");
}
