#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fermisum/linalg.hpp"
#include "fermisum/util.hpp"

using namespace fermisum;
using namespace fermisum::linalg;

namespace {

constexpr double kPi = std::numbers::pi;

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

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("determinant basics and cofactor oracle") {
  CHECK(std::abs(det(ComplexMatrix::identity(3)) - Complex(1.0, 0.0)) == 0.0);

  const double t1 = 0.7, t2 = 2.1;
  const auto d2 = ComplexMatrix::diagonal(
      {std::polar(1.0, -t1), std::polar(1.0, -t2)});
  CHECK(std::abs(det(d2) - std::polar(1.0, -(t1 + t2))) <= 1e-15);

  CHECK_THROWS_AS(det(ComplexMatrix(2, 3)), ArgumentError);

  CounterRng rng(31337);
  for (int rep = 0; rep < 50; ++rep) {
    const auto m = random_matrix(3, rng);
    CHECK(std::abs(det(m) - cofactor_det(m)) <= 1e-12);
  }
}

TEST_CASE("determinant is multiplicative and accurate at n = 64") {
  CounterRng rng(4242);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_matrix(4, rng);
    const auto b = random_matrix(4, rng);
    CHECK(std::abs(det(a * b) - det(a) * det(b)) <= 1e-11);
  }

  // Triangular factor construction gives an exactly known determinant.
  const std::size_t n = 64;
  ComplexMatrix lower = ComplexMatrix::identity(n);
  ComplexMatrix upper(n, n);
  Complex expected(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    upper(i, i) = Complex(rng.next_uniform(0.5, 1.5), rng.next_uniform(-0.5, 0.5));
    expected *= upper(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      upper(i, j) = Complex(rng.next_uniform(-0.5, 0.5), rng.next_uniform(-0.5, 0.5));
      lower(j, i) = Complex(rng.next_uniform(-0.5, 0.5), rng.next_uniform(-0.5, 0.5));
    }
  }
  const Complex got = det(lower * upper);
  CHECK(std::abs(got - expected) / std::abs(expected) <= 1e-12);
}

TEST_CASE("matrix inverse round-trips") {
  CounterRng rng(8080);
  for (int rep = 0; rep < 20; ++rep) {
    auto m = random_matrix(4, rng);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) += Complex(2.0, 0.0);
    const auto r = m * inverse(m) - ComplexMatrix::identity(4);
    CHECK(r.max_abs() <= 1e-12);
  }
  CHECK_THROWS_AS(inverse(ComplexMatrix(3, 3)), SingularMatrixError);
}

TEST_CASE("unitary eigenphases") {
  SECTION("1x1 phase") {
    const auto u = ComplexMatrix::scalar(std::polar(1.0, -kPi / 2.0));
    const auto phases = eig_unitary(u);
    REQUIRE(phases.size() == 1);
    CHECK(std::abs(phases[0] - kPi / 2.0) <= 1e-14);
  }

  SECTION("2d rotation gives a conjugate pair") {
    const double phi = 0.83;
    ComplexMatrix r(2, 2);
    r(0, 0) = std::cos(phi);
    r(0, 1) = -std::sin(phi);
    r(1, 0) = std::sin(phi);
    r(1, 1) = std::cos(phi);
    auto phases = eig_unitary(r);
    REQUIRE(phases.size() == 2);
    CHECK(std::abs(phases[0] - phi) <= 1e-12);
    CHECK(std::abs(phases[1] - (2.0 * kPi - phi)) <= 1e-12);
  }

  SECTION("phase product reproduces the determinant, basis reconstructs U") {
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
      const auto u = haar_unitary(3, seed);
      const auto eg = eig_unitary_full(u);
      Complex prod(1.0, 0.0);
      for (double t : eg.phases) prod *= std::polar(1.0, -t);
      CHECK(std::abs(prod - det(u)) <= 1e-10);

      std::vector<Complex> evals;
      for (double t : eg.phases) evals.push_back(std::polar(1.0, -t));
      const auto rebuilt =
          eg.vectors * ComplexMatrix::diagonal(evals) * eg.vectors.adjoint();
      CHECK((rebuilt - u).max_abs() <= 1e-9);
    }
  }

  SECTION("non-unitary input is rejected") {
    ComplexMatrix m(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 1.0;
    CHECK_THROWS_AS(eig_unitary(m), ClassificationError);
  }
}

TEST_CASE("haar unitary sampling") {
  SECTION("samples are unitary") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto u = haar_unitary(1 + seed % 4, seed);
      CHECK(check_unitary(u).deviation <= 1e-10);
    }
  }

  SECTION("first moment of the n=1 phase vanishes") {
    const int samples = 100000;
    CounterRng root(555);
    std::vector<Complex> vals(samples);
    for (int i = 0; i < samples; ++i) {
      CounterRng rng = root.split(i);
      vals[i] = linalg::detail::haar_unitary_rng(1, rng)(0, 0);
    }
    const Complex mean = pairwise_sum(vals) * (1.0 / samples);
    // E|z|^2 = 1, so the complex mean has standard error 1/sqrt(S).
    CHECK(std::abs(mean) <= 3.0 / std::sqrt(double(samples)));
  }

  SECTION("|U_11|^2 averages to 1/n") {
    const int samples = 100000;
    const std::size_t n = 2;
    CounterRng root(777);
    std::vector<double> vals(samples);
    for (int i = 0; i < samples; ++i) {
      CounterRng rng = root.split(i);
      vals[i] = std::norm(linalg::detail::haar_unitary_rng(n, rng)(0, 0));
    }
    const double mean = pairwise_sum(vals) / samples;
    // |U_11|^2 ~ Beta(1, n-1); variance (n-1)/(n^2 (n+1)).
    const double sigma = std::sqrt((n - 1.0) / (n * n * (n + 1.0)) / samples);
    CHECK(std::abs(mean - 1.0 / n) <= 3.0 * sigma);
  }

  SECTION("trace statistics invariant under fixed left multiplication") {
    const int samples = 10000;
    const auto left = haar_unitary(3, 2718);
    CounterRng root(999);
    std::vector<double> plain(samples), shifted(samples);
    for (int i = 0; i < samples; ++i) {
      CounterRng rng = root.split(i);
      const auto u = linalg::detail::haar_unitary_rng(3, rng);
      Complex tr(0.0, 0.0), trl(0.0, 0.0);
      const auto lu = left * u;
      for (std::size_t k = 0; k < 3; ++k) {
        tr += u(k, k);
        trl += lu(k, k);
      }
      plain[i] = tr.real();
      shifted[i] = trl.real();
    }
    // Two-sample KS at the 1% level.
    const double critical = 1.628 * std::sqrt(2.0 / samples);
    CHECK(ks_statistic(plain, shifted) <= critical);
  }
}

TEST_CASE("special orthogonal sampling") {
  SECTION("n=1 is the identity") {
    const auto q = random_special_orthogonal(1, 3);
    CHECK(std::abs(q(0, 0) - Complex(1.0, 0.0)) <= 1e-14);
  }

  SECTION("odd dimension fixes an axis") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
      const auto q = random_special_orthogonal(3, seed);
      CHECK(std::abs(det(q) - Complex(1.0, 0.0)) <= 1e-12);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(q(i, j).imag() == 0.0);
      const auto phases = eig_unitary(q);
      double closest = 2.0 * kPi;
      for (double t : phases)
        closest = std::min(closest, std::abs(std::polar(1.0, -t) - Complex(1.0, 0.0)));
      CHECK(closest <= 1e-10);
    }
  }

  SECTION("rotations come in conjugate pairs") {
    const auto q = random_special_orthogonal(2, 12);
    const auto phases = eig_unitary(q);
    REQUIRE(phases.size() == 2);
    const Complex l0 = std::polar(1.0, -phases[0]);
    const Complex l1 = std::polar(1.0, -phases[1]);
    CHECK(std::abs(l0 - std::conj(l1)) <= 1e-12);
  }
}
