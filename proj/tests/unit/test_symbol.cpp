#include <doctest.h>

#include <cmath>
#include <numbers>

#include "perisolve/symbol.hpp"
#include "test_support.hpp"

using namespace perisolve;
namespace pt = perisolve::testing;

namespace {
constexpr double kPi = std::numbers::pi;

Mat scalar_mat(Complex z) {
  Mat m(1, 1);
  m(0, 0) = z;
  return m;
}

ProblemSpec scalar_problem(int n, Complex a) {
  return ProblemSpec(n, 1, scalar_mat(a), DelaySpec(1, 1));
}

ProblemSpec pi_delay_problem() {
  DelaySpec L(1, 1);
  L.add_discrete(kPi, scalar_mat(-1.0));
  return ProblemSpec(1, 1, scalar_mat(0.0), std::move(L));
}

// Collapsed binomial sums; an algebraically different route than the
// term-by-term evaluation under test.
Complex oracle_b(int n, int k) {
  const Complex ik(0.0, k);
  const Complex beta = std::pow(Complex(1.0 + 1.0 / k, 0.0), n) - 1.0;
  Complex gamma(0.0, 0.0);
  for (int j = 1; j <= n - 1; ++j) gamma += int_pow(ik, j - n);
  Complex mixed(0.0, 0.0);
  for (int j = 1; j <= n - 1; ++j)
    mixed += int_pow(ik, j - n) * std::pow(Complex(1.0 + 1.0 / k, 0.0), j);
  return 2.0 * beta + gamma + mixed + beta * gamma;
}

Complex oracle_c(int n, int k) {
  const Complex ik(0.0, k);
  const Complex ik1(0.0, k + 1.0);
  Complex sum_ik(0.0, 0.0), sum_ik1(0.0, 0.0);
  for (int j = 1; j <= n; ++j) {
    sum_ik += int_pow(ik, j);
    sum_ik1 += int_pow(ik1, j);
  }
  return int_pow(ik1, n) * sum_ik - int_pow(ik, n) * sum_ik1;
}
}  // namespace

TEST_SUITE("symbol") {

TEST_CASE("characteristic matrix closed forms") {
  CHECK(std::abs(char_matrix(scalar_problem(1, -1.0), 0)(0, 0) -
                 Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(char_matrix(scalar_problem(2, -1.0), 1)(0, 0) -
                 Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(char_matrix(pi_delay_problem(), 1)(0, 0) -
                 Complex(-1.0, 1.0)) < 1e-14);
}

TEST_CASE("resolvent inverts the characteristic matrix") {
  const Resolvent r0 = resolvent(scalar_problem(1, -1.0), 0);
  CHECK(std::abs(r0.N(0, 0) - Complex(1.0, 0.0)) < 1e-15);

  const Resolvent r1 = resolvent(pi_delay_problem(), 1);
  CHECK(std::abs(r1.N(0, 0) - Complex(-0.5, -0.5)) < 1e-14);
  const Mat product = r1.N * char_matrix(pi_delay_problem(), 1);
  CHECK((product - Mat::Identity(1, 1)).norm() < 1e-14);

  CHECK_THROWS_AS(resolvent(scalar_problem(1, 0.0), 0), Resonance);
}

TEST_CASE("family for x' = -x matches the scalar formulas") {
  const SymbolFamily fam = build_family(scalar_problem(1, -1.0), 2);
  CHECK(fam.records.size() == 5);
  for (int k = -2; k <= 2; ++k) {
    const Complex expect = 1.0 / Complex(1.0, k);
    CHECK(std::abs(fam.records.at(k).N(0, 0) - expect) < 1e-14);
  }
  const Complex s2 = Complex(0.0, 2.0) / Complex(1.0, 2.0);
  CHECK(std::abs(fam.records.at(2).S(0, 0) - s2) < 1e-14);
}

TEST_CASE("family reports the smallest resonant frequency") {
  try {
    build_family(scalar_problem(1, 0.0), 4);
    FAIL("expected resonance");
  } catch (const Resonance& r) {
    CHECK(r.k == 0);
  }
}

TEST_CASE("second-order record satisfies the defining identity") {
  const SymbolFamily fam = build_family(scalar_problem(2, -1.0), 1);
  const SymbolRecord& rec = fam.records.at(1);
  CHECK(std::abs(rec.P(0, 0) - Complex(1.0, 1.0)) < 1e-14);
  const Mat identity = rec.P - scalar_mat(-1.0) * rec.N - rec.T;
  CHECK((identity - Mat::Identity(1, 1)).norm() < 1e-14);
}

TEST_CASE("family identities hold on random problems") {
  pt::Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const ProblemSpec p = pt::random_nonresonant_problem(rng, 3, 3, 8);
    const SymbolFamily fam = build_family(p, 6);
    const Mat eye = Mat::Identity(p.dim, p.dim);
    for (const auto& [k, rec] : fam.records) {
      const double tol = 1e-10 * rec.cond;
      CHECK((rec.D * rec.N - eye).norm() < tol);
      CHECK((rec.N * rec.D - eye).norm() < tol);
      CHECK((rec.P - p.A * rec.N - rec.T - eye).norm() < tol);
      CHECK((rec.S - int_pow(Complex(0.0, k), p.order) * rec.N).norm() < tol);
    }
  }
}

TEST_CASE("characteristic matrix is conjugate-symmetric for real data") {
  pt::Rng rng(103);
  DelaySpec L(2, 1);
  L.add_discrete(1.1, pt::random_mat(rng, 2, /*real_only=*/true));
  const ProblemSpec p(2, 2, pt::random_mat(rng, 2, /*real_only=*/true),
                      std::move(L));
  for (int k : {1, 2, 5}) {
    const Mat dk = char_matrix(p, k);
    const Mat dmk = char_matrix(p, -k);
    CHECK((dmk - dk.conjugate()).norm() < 1e-13);
  }
}

TEST_CASE("sequence values match the independent oracle table") {
  struct Entry {
    int n, k;
    Complex a, b, c;
  };
  // Frozen from an exact symbolic evaluation of the three displayed sums.
  const Entry table[] = {
      {1, 1, {1, 0}, {2, 0}, {0, 0}},
      {1, -1, {1, 0}, {-2, 0}, {0, 0}},
      {1, 3, {1, 0}, {2.0 / 3.0, 0}, {0, 0}},
      {2, 1, {3, -1}, {6, -6}, {0, -2}},
      {2, -1, {1, 1}, {-2, 0}, {0, 0}},
      {2, 2, {2.5, -0.5}, {2.5, -1.875}, {0, -6}},
      {3, 1, {6, -3}, {4, -12}, {6, 4}},
      {3, -2, {1.5, 0.75}, {-1.90625, 0.1875}, {-6, 4}},
      {3, 4, {3.75, -0.5625}, {1.7060546875, -0.87890625}, {180, 400}},
      {4, 1, {12, -6}, {10, -6}, {-12, 6}},
      {4, -5, {2.88, 0.48}, {-1.2227840000000001, 0.1746432}, {3600, -6780}},
  };
  for (const Entry& e : table) {
    CAPTURE(e.n);
    CAPTURE(e.k);
    CHECK(std::abs(seq_a(e.n, e.k) - e.a) < 1e-12 * (1.0 + std::abs(e.a)));
    CHECK(std::abs(seq_b(e.n, e.k) - e.b) < 1e-12 * (1.0 + std::abs(e.b)));
    CHECK(std::abs(seq_c(e.n, e.k) - e.c) < 1e-12 * (1.0 + std::abs(e.c)));
  }
}

TEST_CASE("first-order sequences collapse to the empty-sum values") {
  for (int k : {-9, -2, 1, 5, 40}) {
    CHECK(std::abs(seq_a(1, k) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(seq_b(1, k) - Complex(2.0 / k, 0.0)) < 1e-14);
    CHECK(std::abs(seq_c(1, k)) < 1e-12);
  }
}

TEST_CASE("zero frequency is rejected where negative powers appear") {
  CHECK_THROWS_AS(seq_a(2, 0), ZeroFrequency);
  CHECK_THROWS_AS(seq_b(3, 0), ZeroFrequency);
  CHECK(std::abs(seq_c(2, 0)) == 0.0);
}

TEST_CASE("c_k agrees with its collapsed two-factor evaluation") {
  for (int n = 1; n <= 6; ++n)
    for (int k : {-17, -4, -1, 1, 2, 9, 33}) {
      const Complex lhs = seq_c(n, k);
      const Complex rhs = oracle_c(n, k);
      CHECK(std::abs(lhs - rhs) <=
            1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs)));
    }
}

TEST_CASE("b_k agrees with its collapsed evaluation") {
  for (int n = 1; n <= 6; ++n)
    for (int k : {-17, -4, -1, 1, 2, 9, 33}) {
      const Complex lhs = seq_b(n, k);
      const Complex rhs = oracle_b(n, k);
      CHECK(std::abs(lhs - rhs) <=
            1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs)));
    }
}

TEST_CASE("binomial coefficients are the standard ones") {
  CHECK(binomial(4, 2) == 6.0);
  CHECK(binomial(5, 0) == 1.0);
  CHECK(binomial(5, 5) == 1.0);
  CHECK(binomial(3, 4) == 0.0);
  CHECK(binomial(10, 3) == 120.0);
}

}  // TEST_SUITE
