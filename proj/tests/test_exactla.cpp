#include <doctest.h>

#include <random>

#include "tps/exactla.hpp"

using tps::Fp;
using tps::Matrix;
using tps::Rat;

namespace {

Matrix<Rat> random_rational(int rows, int cols, std::mt19937_64& gen) {
  Matrix<Rat> A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      A(i, j) = tps::kfrom_fraction<Rat>(
          mpz_class(static_cast<long>(tps::rand_range(gen, -9, 9))),
          mpz_class(static_cast<long>(1 + tps::rand_range(gen, 0, 4))));
  return A;
}

}  // namespace

TEST_CASE("rref of a known matrix") {
  Matrix<Rat> A(2, 3);
  A(0, 0) = 1; A(0, 1) = 2; A(0, 2) = 3;
  A(1, 0) = 2; A(1, 1) = 4; A(1, 2) = 7;
  auto R = tps::rref(A);
  CHECK(R.rank() == 2);
  CHECK(R.pivots == std::vector<int>{0, 2});
  CHECK(R.mat(0, 0) == Rat(1));
  CHECK(R.mat(0, 1) == Rat(2));
  CHECK(R.mat(0, 2) == Rat(0));
  CHECK(R.mat(1, 2) == Rat(1));
}

TEST_CASE("fraction-free elimination agrees with the division path") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = 3 + static_cast<int>(tps::rand_range(gen, 0, 5));
    int cols = 3 + static_cast<int>(tps::rand_range(gen, 0, 5));
    Matrix<Rat> A = random_rational(rows, cols, gen);
    auto fast = tps::rref(A);
    auto slow = tps::rref_naive(A);
    CHECK(fast.pivots == slow.pivots);
    CHECK(fast.mat == slow.mat);
  }
}

TEST_CASE("fraction-free elimination on rank-deficient stacks") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Rat> B = random_rational(3, 6, gen);
    // stack rows plus two linear combinations: rank stays at most 3
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(B.row(i));
    std::vector<Rat> c1(6), c2(6);
    for (int j = 0; j < 6; ++j) {
      c1[j] = B(0, j) * Rat(2) - B(1, j);
      c2[j] = B(0, j) + B(1, j) - B(2, j) * Rat(3);
    }
    rows.push_back(c1);
    rows.push_back(c2);
    auto A = Matrix<Rat>::from_rows(rows);
    auto fast = tps::rref(A);
    auto slow = tps::rref_naive(A);
    CHECK(fast.rank() <= 3);
    CHECK(fast.pivots == slow.pivots);
    CHECK(fast.mat == slow.mat);
  }
}

TEST_CASE("rank agrees between the rationals and a large prime field") {
  Fp::set_modulus(Fp::default_modulus);
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Rat> A(6, 8);
    Matrix<Fp> B(6, 8);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 8; ++j) {
        int v = static_cast<int>(tps::rand_range(gen, -20, 20));
        A(i, j) = Rat(v);
        B(i, j) = Fp(v);
      }
    CHECK(tps::rank_of(A) == tps::rank_of(B));
  }
}

TEST_CASE("kernel basis is canonical and annihilates the matrix") {
  Matrix<Rat> A(2, 4);
  A(0, 0) = 1; A(0, 1) = 0; A(0, 2) = 2; A(0, 3) = -1;
  A(1, 0) = 0; A(1, 1) = 1; A(1, 2) = -1; A(1, 3) = 3;
  auto ker = tps::kernel_basis(A);
  REQUIRE(ker.size() == 2);
  // free variables get a unit in ascending column order
  CHECK(ker[0][2] == Rat(1));
  CHECK(ker[0][3] == Rat(0));
  CHECK(ker[1][2] == Rat(0));
  CHECK(ker[1][3] == Rat(1));
  for (const auto& v : ker)
    for (int i = 0; i < 2; ++i) {
      Rat acc(0);
      for (int j = 0; j < 4; ++j) acc += A(i, j) * v[j];
      CHECK(acc == Rat(0));
    }
}

TEST_CASE("solve finds the unique witness or reports inconsistency") {
  Matrix<Rat> A(3, 2);
  A(0, 0) = 1; A(0, 1) = 1;
  A(1, 0) = 1; A(1, 1) = -1;
  A(2, 0) = 2; A(2, 1) = 0;
  std::vector<Rat> b{Rat(3), Rat(1), Rat(4)};
  auto x = tps::solve(A, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(2));
  CHECK((*x)[1] == Rat(1));
  b[2] = Rat(5);
  CHECK_FALSE(tps::solve(A, b).has_value());
}

TEST_CASE("determinants over both fields") {
  std::mt19937_64 gen(17);
  Fp::set_modulus(Fp::default_modulus);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4;
    Matrix<Rat> A(n, n);
    Matrix<Fp> B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int v = static_cast<int>(tps::rand_range(gen, -6, 6));
        A(i, j) = Rat(v);
        B(i, j) = Fp(v);
      }
    Rat da = tps::det(A);
    Fp db = tps::det(B);
    CHECK(tps::kfrom_mpz<Fp>(da.get_num()) == db * tps::kfrom_mpz<Fp>(da.get_den()));
  }
  Matrix<Rat> S(2, 2);
  S(0, 0) = Rat(1, 2); S(0, 1) = Rat(1, 3);
  S(1, 0) = Rat(1, 4); S(1, 1) = Rat(1, 5);
  CHECK(tps::det(S) == Rat(1, 10) - Rat(1, 12));
  Matrix<Rat> Z(0, 0);
  CHECK(tps::det(Z) == Rat(1));
}

TEST_CASE("singular determinant is exactly zero") {
  Matrix<Rat> A(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = Rat(i + j);
  CHECK(tps::det(A) == Rat(0));
}
