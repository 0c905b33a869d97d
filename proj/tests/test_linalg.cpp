#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddforge/linalg.hpp"
#include "test_util.hpp"

using namespace ddforge;
using namespace ddforge::testing;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
}  // namespace

TEST_CASE("pauli matrices") {
  const ComplexMatrix x = pauli(Axis::X);
  CHECK(x(0, 0) == Complex{0.0});
  CHECK(x(0, 1) == Complex{1.0});
  CHECK(x(1, 0) == Complex{1.0});

  const ComplexMatrix y = pauli(Axis::Y);
  CHECK(y(0, 1) == -kI);
  CHECK(y(1, 0) == kI);

  const ComplexMatrix z = pauli(Axis::Z);
  CHECK(z(0, 0) == Complex{1.0});
  CHECK(z(1, 1) == Complex{-1.0});
}

TEST_CASE("matmul basics and errors") {
  CHECK(max_diff(matmul(pauli(Axis::X), pauli(Axis::X)), identity(2)) == 0.0);

  // sx sz = [[0,-1],[1,0]] = -i sy
  ComplexMatrix expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK(max_diff(matmul(pauli(Axis::X), pauli(Axis::Z)), expected) == 0.0);
  CHECK(max_diff(expected, ComplexMatrix(-kI * pauli(Axis::Y))) == 0.0);

  CHECK_THROWS_AS(matmul(identity(2), identity(4)), std::invalid_argument);
}

TEST_CASE("matmul unitarity oracle") {
  RandomStream rng(11);
  const ComplexMatrix u = expm_hermitian(random_hermitian(rng, 4), 0.7);
  CHECK(max_diff(matmul(dagger(u), u), identity(4)) < 1e-12);
}

TEST_CASE("kron examples") {
  ComplexMatrix zz(4, 4);
  zz.setZero();
  zz(0, 0) = 1;
  zz(1, 1) = -1;
  zz(2, 2) = -1;
  zz(3, 3) = 1;
  CHECK(max_diff(kron(pauli(Axis::Z), pauli(Axis::Z)), zz) == 0.0);

  const ComplexMatrix ix = kron(identity(2), pauli(Axis::X));
  CHECK(ix(0, 1) == Complex{1.0});
  CHECK(ix(1, 0) == Complex{1.0});
  CHECK(ix(2, 3) == Complex{1.0});
  CHECK(ix(3, 2) == Complex{1.0});
  CHECK(ix(0, 2) == Complex{0.0});

  const ComplexMatrix xx = kron(pauli(Axis::X), pauli(Axis::X));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(xx(i, j) == Complex{i + j == 3 ? 1.0 : 0.0});
    }
  }
}

TEST_CASE("kron associativity on random matrices") {
  RandomStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_hermitian(rng, 2);
    const ComplexMatrix b = random_hermitian(rng, 2);
    const ComplexMatrix c = random_hermitian(rng, 2);
    CHECK(max_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
  }
}

TEST_CASE("kron_state ordering") {
  ComplexVector zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  const ComplexVector v = kron_state(zero, one);
  CHECK(v(1) == Complex{1.0});
  CHECK(v.cwiseAbs().sum() == 1.0);
}

TEST_CASE("dagger") {
  CHECK(max_diff(dagger(pauli(Axis::Y)), pauli(Axis::Y)) == 0.0);

  ComplexMatrix d(2, 2);
  d.setZero();
  d(0, 0) = kI;
  d(1, 1) = -kI;
  ComplexMatrix expected(2, 2);
  expected.setZero();
  expected(0, 0) = -kI;
  expected(1, 1) = kI;
  CHECK(max_diff(dagger(d), expected) == 0.0);

  RandomStream rng(3);
  ComplexMatrix a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = rng.gauss();
  CHECK(max_diff(dagger(dagger(a)), a) == 0.0);
}

TEST_CASE("expm_hermitian closed forms") {
  // exp(-i sz pi/2) = diag(-i, i)
  const ComplexMatrix u = expm_hermitian(pauli(Axis::Z), kPi / 2.0);
  CHECK(std::abs(u(0, 0) - (-kI)) < 1e-14);
  CHECK(std::abs(u(1, 1) - kI) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-14);

  RandomStream rng(17);
  const ComplexMatrix h = random_hermitian(rng, 4);
  CHECK(max_diff(expm_hermitian(h, 0.0), identity(4)) < 1e-13);

  const ComplexMatrix uzz =
      expm_hermitian(kron(pauli(Axis::Z), pauli(Axis::Z)), kPi / 4.0);
  const Complex m = std::polar(1.0, -kPi / 4.0);
  const Complex p = std::polar(1.0, kPi / 4.0);
  CHECK(std::abs(uzz(0, 0) - m) < 1e-13);
  CHECK(std::abs(uzz(1, 1) - p) < 1e-13);
  CHECK(std::abs(uzz(2, 2) - p) < 1e-13);
  CHECK(std::abs(uzz(3, 3) - m) < 1e-13);
}

TEST_CASE("expm_hermitian matches entrywise exponential on diagonals") {
  RandomStream rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    const double t = 2.0 * rng.uniform01();
    for (int i = 0; i < 4; ++i) {
      const double lambda = rng.uniform_symmetric(3.0);
      d(i, i) = lambda;
      expected(i, i) = std::polar(1.0, -lambda * t);
    }
    CHECK(max_diff(expm_hermitian(d, t), expected) < 1e-12);
  }
}

TEST_CASE("expm_hermitian matches series oracle") {
  RandomStream rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index dim = trial % 2 == 0 ? 4 : 8;
    const ComplexMatrix h = random_hermitian(rng, dim);
    const double t = 0.1 + rng.uniform01();
    CHECK(max_diff(expm_hermitian(h, t), expm_taylor(h, t)) < 1e-12);
  }
}

TEST_CASE("expm_hermitian unitarity, group and inverse properties") {
  RandomStream rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, 4, 2.0);
    const double t1 = rng.uniform01();
    const double t2 = rng.uniform01();
    const ComplexMatrix u = expm_hermitian(h, t1);
    CHECK(max_diff(ComplexMatrix(dagger(u) * u), identity(4)) < 1e-10);
    CHECK(max_diff(expm_hermitian(h, t1 + t2),
                   ComplexMatrix(u * expm_hermitian(h, t2))) < 1e-9);
    CHECK(max_diff(ComplexMatrix(u * expm_hermitian(h, -t1)), identity(4)) <
          1e-10);
  }
}

TEST_CASE("expm_hermitian rejects non-Hermitian input") {
  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(expm_hermitian(bad, 1.0), std::invalid_argument);

  ComplexMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(expm_hermitian(rect, 1.0), std::invalid_argument);
}

TEST_CASE("embed_single") {
  CHECK(max_diff(embed_single(Axis::Z, 1, 2), kron(pauli(Axis::Z), identity(2))) ==
        0.0);
  CHECK(max_diff(embed_single(Axis::X, 2, 2), kron(identity(2), pauli(Axis::X))) ==
        0.0);
  CHECK(max_diff(embed_single(Axis::Y, 2, 3),
                 kron(identity(2), kron(pauli(Axis::Y), identity(2)))) == 0.0);

  CHECK_THROWS_AS(embed_single(Axis::X, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed_single(Axis::X, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed_single(Axis::X, 1, 4), std::invalid_argument);
}
