#include <doctest.h>

#include "tps/field.hpp"

using tps::Fp;
using tps::Rat;

TEST_CASE("prime field arithmetic round trips") {
  Fp::set_modulus(Fp::default_modulus);
  Fp a(7), b(-3);
  CHECK(a + b == Fp(4));
  CHECK(a * b == Fp(-21));
  CHECK((a - a) == Fp(0));
  CHECK(tps::kis_zero(a - a));
  Fp inv = b.inverse();
  CHECK(inv * b == Fp(1));
  CHECK(a / b * b == a);
}

TEST_CASE("negative values reduce into range") {
  Fp::set_modulus(Fp::default_modulus);
  Fp x(-1);
  CHECK(x.value() == Fp::modulus() - 1);
  CHECK(tps::kstr(x) == "-1");
  CHECK(tps::kstr(Fp(5)) == "5");
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(Fp::set_modulus(10), tps::input_error);     // composite
  CHECK_THROWS_AS(Fp::set_modulus(1ull << 62), tps::input_error);
  Fp::set_modulus(2305843009213693951ull);  // 2^61 - 1
  CHECK(Fp(2).inverse() * Fp(2) == Fp(1));
  Fp::set_modulus(Fp::default_modulus);
}

TEST_CASE("rational helpers") {
  Rat a(3), b(-6);
  CHECK(tps::kstr(a / b) == "-1/2");
  CHECK(tps::kis_zero(a + a + b));
  CHECK(tps::kinv(Rat(4)) == Rat(1, 4));
}

TEST_CASE("fraction embedding respects the field") {
  Fp::set_modulus(Fp::default_modulus);
  mpz_class num(1), den(2);
  Fp half = tps::kfrom_fraction<Fp>(num, den);
  CHECK(half * Fp(2) == Fp(1));
  Rat h = tps::kfrom_fraction<Rat>(num, den);
  CHECK(h == Rat(1, 2));
  mpz_class p(Fp::modulus());
  CHECK_THROWS_AS(tps::kfrom_fraction<Fp>(num, p), tps::input_error);
}

TEST_CASE("deterministic draws are platform independent") {
  std::mt19937_64 g(42);
  long long a = tps::rand_range(g, -10, 10);
  std::mt19937_64 h(42);
  long long b = tps::rand_range(h, -10, 10);
  CHECK(a == b);
  CHECK(a >= -10);
  CHECK(a <= 10);
  for (int i = 0; i < 50; ++i) {
    long long v = tps::rand_nonzero(g, 1000);
    CHECK(v != 0);
    CHECK(std::abs(v) <= 1000);
  }
}
