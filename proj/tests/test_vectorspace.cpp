#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selbal/construction.hpp"
#include "selbal/instance_io.hpp"
#include "selbal/vectorspace.hpp"

using namespace selbal;

namespace {

UnitVectorFamily duplicate_basis() {
  const ScaledVector e1(2, 2, 0, {{0, 1}});
  return UnitVectorFamily(2, 2, {e1, e1});
}

}  // namespace

TEST_CASE("scaled vectors keep a sparse canonical form") {
  const ScaledVector v(10, 2, 1, {{5, 1}, {2, 3}, {5, -1}, {7, 0}});
  REQUIRE(v.nnz() == 1);
  CHECK(v.entries()[0] == Entry{2, 3});
  CHECK(v.numerator_at(5) == 0);
  CHECK_THROWS_AS(ScaledVector(4, 2, 0, {{4, 1}}), ContractViolation);
  CHECK_THROWS_AS(ScaledVector(4, 1, 0, {}), ContractViolation);
}

TEST_CASE("rescaling is exact and addition works at the common scale") {
  const ScaledVector a(3, 2, 0, {{0, 1}});
  const ScaledVector b(3, 2, 2, {{0, 1}, {1, 2}});
  const ScaledVector s = a + b;
  CHECK(s.exponent() == 2);
  CHECK(s.numerator_at(0) == 5);
  CHECK(s.numerator_at(1) == 2);
  CHECK(a.rescaled(3).numerator_at(0) == 8);
  CHECK_THROWS_AS(b.rescaled(1), ContractViolation);
}

TEST_CASE("norm_sq_scaled is exact and overflow is reported") {
  CHECK(norm_sq_scaled(ScaledVector::zero(4, 2, 3)) == 0);
  CHECK(norm_sq_scaled(ScaledVector(4, 2, 1, {{0, 1}, {1, -1}, {3, 1}, {2, 1}})) == 4);
  const std::int64_t big = std::int64_t{1} << 62;
  std::vector<Entry> entries;
  for (int i = 0; i < 64; ++i) entries.push_back({i, big});
  CHECK_THROWS_AS(norm_sq_scaled(ScaledVector(64, 2, 0, entries)), ArithmeticOverflow);
}

TEST_CASE("sign vectors: canonical form and lexicographic order") {
  const SignVector a({0, -1, 1});
  CHECK(a.canonical() == SignVector({0, 1, -1}));
  CHECK(SignVector({-1, 1}) < SignVector({0, -1}));
  CHECK(SignVector({0, 0}) < SignVector({0, 1}));
  CHECK_FALSE(SignVector::zeros(3).nontrivial());
  CHECK(a.support_size() == 2);
  CHECK_THROWS_AS(SignVector({2}), ContractViolation);
}

TEST_CASE("families reject vectors that are not exactly unit") {
  CHECK_THROWS_AS(UnitVectorFamily(2, 2, {ScaledVector(2, 2, 1, {{0, 1}, {1, 1}})}), ContractViolation);
  // Mixed exponents are brought to the largest one.
  const UnitVectorFamily f(4, 2, {ScaledVector(4, 2, 0, {{0, 1}}), ScaledVector(4, 2, 1, {{0, 1}, {1, 1}, {2, 1}, {3, 1}})});
  CHECK(f.exponent() == 1);
  CHECK(f.scale_sq() == 4);
  CHECK(f[0].numerator_at(0) == 2);
}

TEST_CASE("combine and the balancing predicate") {
  const auto U = duplicate_basis();
  CHECK(combine(U, SignVector::zeros(2)).is_zero());
  CHECK(combine(U, SignVector::unit(2, 1)) == U[1]);
  CHECK_FALSE(is_balancing_witness(U, SignVector::zeros(2)));
  CHECK_FALSE(is_balancing_witness(U, SignVector::unit(2, 0)));
  CHECK(is_balancing_witness(U, SignVector({1, -1})));
  CHECK_THROWS_AS(combine(U, SignVector({1})), ContractViolation);
}

TEST_CASE("figure example: one type-2 vector minus basis vectors keeps four halves") {
  const auto U = figure_example();
  // Vector 25 is the type-2 vector at t = (2,2); its support is the four
  // neighbours. Subtract the basis vectors at those neighbours.
  std::vector<std::int8_t> eps(34, 0);
  eps[25] = 1;
  // Basis vectors are ordered by translate, lexicographically.
  for (const auto& e : U[25].entries()) {
    const Point x = lattice_point(e.index, 5, 2);
    eps[static_cast<std::size_t>((x[0] - 1) * 5 + (x[1] - 1))] = -1;
  }
  const ScaledVector v = combine(U, SignVector(eps));
  int halves = 0;
  for (const auto& e : v.entries()) halves += (e.numerator == 1 || e.numerator == -1) ? 1 : 0;
  CHECK(halves == 4);
}

TEST_CASE("balancing is invariant under eps -> -eps") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto U = oracle::random_family(rng, 8, 6);
    std::vector<std::int8_t> c(U.size());
    for (auto& x : c) x = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
    const SignVector eps(c);
    CHECK(is_balancing_witness(U, eps) == is_balancing_witness(U, eps.negated()));
  }
}

TEST_CASE("combine is linear where coefficients stay in {-1,0,1}") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto U = oracle::random_family(rng, 8, 6);
    std::vector<std::int8_t> a(U.size()), b(U.size()), s(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) {
      a[i] = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
      b[i] = a[i] == 0 ? static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1) : 0;
      s[i] = static_cast<std::int8_t>(a[i] + b[i]);
    }
    CHECK(combine(U, SignVector(a)) + combine(U, SignVector(b)) == combine(U, SignVector(s)));
  }
}

TEST_CASE("exact norms agree with floating recomputation (m <= 20)") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto U = oracle::random_family(rng, 20, 10);
    std::vector<std::int8_t> c(U.size());
    for (auto& x : c) x = static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1);
    const auto exact = static_cast<double>(norm_sq_scaled(combine(U, SignVector(c))));
    const double real = oracle::float_norm_sq(U, c) * static_cast<double>(U.scale_sq());
    CHECK(std::abs(exact - real) <= 1e-9 * std::max(1.0, exact));
  }
}

TEST_CASE("coordinate index uses little-endian mixed radix") {
  CHECK(coordinate_index(Point{1, 1, 1}, 4) == 0);
  CHECK(coordinate_index(Point{3, 2}, 5) == 7);
  CHECK(coordinate_index(Point{9}, 9) == 8);
  CHECK_THROWS_AS(coordinate_index(Point{0, 1}, 5), ContractViolation);
  CHECK_THROWS_AS(coordinate_index(Point{6, 1}, 5), ContractViolation);
  for (std::int64_t i = 0; i < 125; ++i) CHECK(coordinate_index(lattice_point(i, 5, 3), 5) == i);
}

TEST_CASE("instances round-trip through JSON") {
  const auto U = build_instance(figure_example_params());
  const auto back = family_from_json(to_json(U));
  CHECK(back.vectors() == U.vectors());
  REQUIRE(back.provenance().has_value());
  CHECK(*back.provenance() == *U.provenance());
  CHECK(to_json(back) == to_json(U));

  const ScaledVector v(9, 3, 2, {{0, 4}, {8, -5}});
  CHECK(scaled_vector_from_json(to_json(v)) == v);
}

TEST_CASE("malformed instances name the offending field") {
  auto j = to_json(duplicate_basis());
  j["vectors"][1][0][1] = "x";
  try {
    family_from_json(j);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.field() == "vectors[1][0][1]");
  }
  auto k = to_json(duplicate_basis());
  k["vectors"][0][0][1] = 2;
  try {
    family_from_json(k);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.field() == "vectors");
  }
  auto m = to_json(duplicate_basis());
  m["m"] = 3;
  CHECK_THROWS_AS(family_from_json(m), ParseError);
}

TEST_CASE("real families round-trip and check unit norm") {
  const RealFamily f(2, {{{0, 0.6}, {1, 0.8}}, {{1, 1.0}}});
  const auto back = real_family_from_json(to_json(f));
  CHECK(back.vectors() == f.vectors());
  CHECK_THROWS_AS(RealFamily(2, {{{0, 0.5}}}), ContractViolation);
  CHECK(std::holds_alternative<RealFamily>(any_family_from_json(to_json(f))));
}
