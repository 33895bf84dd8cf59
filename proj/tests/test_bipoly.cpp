#include <doctest.h>

#include "tps/bipoly.hpp"

using tps::BiPoly;
using tps::Rat;
using tps::XForm;

TEST_CASE("parse and render round trip") {
  // rendering sorts terms by s1-power, then t1-power; re-parsing the
  // canonical string reproduces the polynomial
  std::string src = "-s0^3*t0^2 - 2*s1^3*t0^2 + s0^3*t1^2 + 2*s1^3*t1^2";
  auto p = tps::parse_bipoly<Rat>(src, 3, 2);
  CHECK(tps::render(p) ==
        "-s0^3*t0^2 + s0^3*t1^2 - 2*s1^3*t0^2 + 2*s1^3*t1^2");
  auto again = tps::parse_bipoly<Rat>(tps::render(p), 3, 2);
  CHECK(p == again);
  CHECK(tps::render(again) == tps::render(p));
}

TEST_CASE("monomial order is ascending with the t-index fastest") {
  auto basis = tps::monomial_basis(1, 1);
  REQUIRE(basis.size() == 4);
  CHECK(basis[0] == std::pair<int, int>{0, 0});
  CHECK(basis[1] == std::pair<int, int>{0, 1});
  CHECK(basis[2] == std::pair<int, int>{1, 0});
  CHECK(basis[3] == std::pair<int, int>{1, 1});
}

TEST_CASE("parser reports bidegree mismatches by term") {
  CHECK_THROWS_WITH_AS(tps::parse_bipoly<Rat>("s0*t0 + s0^2*t0", 1, 1),
                       doctest::Contains("s0^2*t0"), tps::input_error);
  CHECK_THROWS_WITH_AS(tps::parse_bipoly<Rat>("x0*t0", 1, 1),
                       doctest::Contains("unknown variable"), tps::input_error);
}

TEST_CASE("parser reports syntax errors with positions") {
  CHECK_THROWS_WITH_AS(tps::parse_bipoly<Rat>("s0*t0 + ", 1, 1),
                       doctest::Contains("position 8"), tps::input_error);
  CHECK_THROWS_AS(tps::parse_bipoly<Rat>("", 1, 1), tps::input_error);
  CHECK_THROWS_WITH_AS(tps::parse_bipoly<Rat>("s0*t0 % s1", 1, 1),
                       doctest::Contains("position 6"), tps::input_error);
  CHECK_THROWS_WITH_AS(tps::parse_xform<Rat>("x0 + x1*x2"),
                       doctest::Contains("degree"), tps::input_error);
}

TEST_CASE("rational coefficients and bare constants") {
  auto p = tps::parse_bipoly<Rat>("1/2*s0*t0 - 3*s1*t1", 1, 1);
  CHECK(p.coef.at({0, 0}) == Rat(1, 2));
  CHECK(p.coef.at({1, 1}) == Rat(-3));
  auto f = tps::parse_xform<Rat>("2", 0);
  CHECK(f.eval({Rat(0), Rat(0), Rat(0), Rat(0)}) == Rat(2));
}

TEST_CASE("x-form terms are kept in descending lexicographic order") {
  auto f = tps::parse_xform<Rat>("x3^2 + x0*x3 - x1*x2");
  auto it = f.coef.begin();
  CHECK(it->first == std::array<int, 4>{1, 0, 0, 1});  // x0*x3 leads
  ++it;
  CHECK(it->first == std::array<int, 4>{0, 1, 1, 0});
  ++it;
  CHECK(it->first == std::array<int, 4>{0, 0, 0, 2});
  CHECK(tps::render(f) == "x0*x3 - x1*x2 + x3^2");
  CHECK(tps::render(f.normalized()) == "x0*x3 - x1*x2 + x3^2");
  CHECK(tps::render(f.scaled(Rat(-2)).normalized()) ==
        "x0*x3 - x1*x2 + x3^2");
}

TEST_CASE("arithmetic matches evaluation") {
  auto a = tps::parse_bipoly<Rat>("s0*t0 + 2*s1*t1", 1, 1);
  auto b = tps::parse_bipoly<Rat>("s0*t1 - s1*t0", 1, 1);
  auto prod = a * b;
  CHECK(prod.sdeg == 2);
  CHECK(prod.tdeg == 2);
  Rat s0(3), s1(-2), t0(1), t1(5);
  CHECK(prod.eval(s0, s1, t0, t1) == a.eval(s0, s1, t0, t1) * b.eval(s0, s1, t0, t1));
  auto sum = a + b.scaled(Rat(4)) * tps::parse_bipoly<Rat>("1", 0, 0);
  CHECK(sum.eval(s0, s1, t0, t1) ==
        a.eval(s0, s1, t0, t1) + Rat(4) * b.eval(s0, s1, t0, t1));
}

TEST_CASE("transposition swaps the parameter roles") {
  auto p = tps::parse_bipoly<Rat>("s0^2*t1 - s1^2*t0", 2, 1);
  auto q = p.transposed();
  CHECK(q.sdeg == 1);
  CHECK(q.tdeg == 2);
  CHECK(q.eval(Rat(2), Rat(3), Rat(5), Rat(7)) ==
        p.eval(Rat(5), Rat(7), Rat(2), Rat(3)));
}

TEST_CASE("exact division of forms") {
  auto f = tps::parse_xform<Rat>("x0*x3 - x1*x2");
  auto g = tps::parse_xform<Rat>("x0 + x1");
  auto prod = f * g;
  auto q = tps::divide_exact(prod, f);
  REQUIRE(q.has_value());
  CHECK(*q == g);
  auto bad = tps::divide_exact(prod + XForm<Rat>::variable(0).pow(3), f);
  CHECK_FALSE(bad.has_value());
}

TEST_CASE("moving form flattening round trips") {
  std::vector<Rat> flat(4 * 4, Rat(0));
  flat[1 * 4 + 2] = Rat(5);   // x1 block, monomial s1*t0
  flat[3 * 4 + 0] = Rat(-2);  // x3 block, monomial s0*t0
  auto f = tps::MovingForm<Rat>::from_flat(1, 1, 1, flat);
  CHECK(f.entries[2] == XForm<Rat>::variable(1).scaled(Rat(5)));
  CHECK(f.to_flat() == flat);
  auto blocks = tps::moving_form_blocks(f);
  CHECK(tps::render(blocks[1]) == "5*s1*t0");
  CHECK(tps::render(blocks[3]) == "-2*s0*t0");
  CHECK(blocks[0].is_zero());
}

TEST_CASE("quadric pair table is consistent") {
  for (int idx = 0; idx < 10; ++idx) {
    auto [i, j] = tps::quad_pairs()[idx];
    CHECK(tps::quad_pair_index(i, j) == idx);
    CHECK(tps::quad_pair_index(j, i) == idx);
  }
}
