#include <cmath>

#include "doctest.h"
#include "selbal/construction.hpp"
#include "selbal/instance_io.hpp"

using namespace selbal;

namespace {

const std::vector<Point> kCross = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};

LatticeShell cross() { return make_shell(2, kCross, 1); }

}  // namespace

TEST_CASE("nested subsets are lexicographic prefixes") {
  const auto chain = nested_subsets(cross(), 1, 2);
  REQUIRE(chain.size() == 2);
  CHECK(chain[0] == std::vector<Point>{{-1, 0}});
  CHECK(chain[1] == kCross);
  CHECK(nested_subsets(cross(), 0, 2).size() == 1);
  try {
    nested_subsets(cross(), 2, 2);
    FAIL("expected a parameter error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("p^{2k} = 16") != std::string::npos);
  }
  const auto big = nested_subsets(find_shell(3, 8), 3, 2);
  for (std::size_t i = 0; i < big.size(); ++i) CHECK(big[i].size() == std::size_t{1} << (2 * i));
}

TEST_CASE("parameter invariants are enforced") {
  CHECK_THROWS_AS(make_params(2, 2, 1, 2, cross()), ParameterError);
  CHECK_THROWS_WITH_AS(make_params(2, 2, 1, 2, cross()), doctest::Contains("must exceed 2r"), ParameterError);
  CHECK_NOTHROW(make_params(2, 2, 1, 3, cross()));
  CHECK_THROWS_AS(make_params(3, 2, 1, 5, cross()), ParameterError);
}

TEST_CASE("instance sizes follow (k+1)(L-2r)^d") {
  const auto u5 = build_instance(make_params(2, 2, 1, 5, cross()));
  CHECK(u5.size() == 18);
  CHECK(u5.dimension() == 25);
  const auto u4 = build_instance(make_params(2, 2, 1, 4, cross()));
  CHECK(u4.size() == 8);
  CHECK(u4.dimension() == 16);
  for (const auto& v : u4.vectors()) CHECK(norm_sq_scaled(v) == 4);
}

TEST_CASE("vectors have p^{2i} entries of numerator p^{k-i}") {
  for (std::int64_t p : {2, 3, 5}) {
    const int k = 1;
    const auto shell = smallest_shell(2, static_cast<std::uint64_t>(p * p));
    const auto params = make_params(2, p, k, 2 * shell.r + 2, shell);
    const auto U = build_instance(params);
    const auto labels = vector_labels(params);
    REQUIRE(labels.size() == U.size());
    for (std::size_t i = 0; i < U.size(); ++i) {
      const int level = labels[i].level;
      CHECK(U[i].nnz() == static_cast<std::size_t>(ipow64(p, 2 * level)));
      for (const auto& e : U[i].entries()) CHECK(e.numerator == ipow64(p, k - level));
      CHECK(norm_sq_scaled(U[i]) == ipow128(p, 2 * k));
    }
  }
}

TEST_CASE("supports stay inside [1, L]^d") {
  const auto params = make_params(2, 2, 2, 2 * smallest_shell(2, 16).r + 2, smallest_shell(2, 16));
  const auto U = build_instance(params);
  const auto labels = vector_labels(params);
  for (std::size_t i = 0; i < U.size(); ++i) {
    for (const auto& e : U[i].entries()) {
      const Point x = lattice_point(e.index, params.L, params.d);
      bool from_offset = false;
      for (const auto& y : params.chain[static_cast<std::size_t>(labels[i].level)]) {
        if (x[0] == labels[i].t[0] + y[0] && x[1] == labels[i].t[1] + y[1]) from_offset = true;
      }
      CHECK(from_offset);
    }
  }
}

TEST_CASE("generation is deterministic") {
  const auto a = to_json(build_instance(make_params(2, 2, 1, 6, cross()))).dump();
  const auto b = to_json(build_instance(make_params(2, 2, 1, 6, cross()))).dump();
  CHECK(a == b);
}

TEST_CASE("figure example: 25 basis vectors and 9 half-sums") {
  const auto U = figure_example();
  CHECK(U.size() == 34);
  CHECK(U.dimension() == 25);
  CHECK(U.exponent() == 1);
  int basis = 0, halves = 0;
  for (const auto& v : U.vectors()) {
    if (v.nnz() == 1 && v.entries()[0].numerator == 2) ++basis;
    if (v.nnz() == 4) {
      bool all_half = true;
      for (const auto& e : v.entries()) all_half = all_half && e.numerator == 1;
      halves += all_half ? 1 : 0;
    }
  }
  CHECK(basis == 25);
  CHECK(halves == 9);
  // The type-2 vector at t = (3,3) is half the sum of its four neighbours.
  const ScaledVector& centre = U[25 + 4];
  for (const Point& x : std::vector<Point>{{2, 3}, {4, 3}, {3, 2}, {3, 4}}) {
    CHECK(centre.numerator_at(coordinate_index(x, 5)) == 1);
  }
}

TEST_CASE("planned parameters") {
  const auto plan = plan_parameters(2.0, 2);
  CHECK(plan.D == 4);
  CHECK(plan.shell.count == 8);
  CHECK(plan.shell.radius_sq == 25);
  CHECK(plan.k == 1);
  CHECK(plan.L == 16);
  CHECK(plan.m == 2 * 8 * 8);
  CHECK(plan.n == 256);
  const auto built = build_instance(planned_construction(plan));
  CHECK(static_cast<Int128>(built.size()) == plan.m);

  CHECK_THROWS_WITH_AS(plan_parameters(1.5, 2), doctest::Contains("d too small"), ParameterError);
  const auto p3 = plan_parameters(1.5, 3);
  CHECK(p3.L == 22);
  CHECK(p3.mu_low == doctest::Approx(std::sqrt(1.5)));
  CHECK(p3.mu_high == 1.5);
}

TEST_CASE("the shell bound guarantees k >= floor((d^2 - d - log2 d)/2)") {
  for (int d = 2; d <= 4; ++d) {
    const auto plan = plan_parameters(3.0, d);
    const double guaranteed = std::floor((d * d - d - std::log2(static_cast<double>(d))) / 2.0);
    CHECK(plan.k >= guaranteed);
  }
}

TEST_CASE("planned ratio rises with d at lambda = 2") {
  double previous = 0.0;
  for (int d = 2; d <= 5; ++d) {
    const auto plan = plan_parameters(2.0, d);
    CHECK(plan.ratio > previous);
    CHECK(plan.ratio < 1.0 / (2.0 * 2.0));
    previous = plan.ratio;
  }
}
