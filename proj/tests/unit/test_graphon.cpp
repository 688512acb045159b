#include <doctest.h>

#include <cmath>

#include "gspec/error.hpp"
#include "gspec/graph.hpp"
#include "gspec/graphon.hpp"
#include "gspec/graphon_json.hpp"
#include "gspec/rng.hpp"

using namespace gspec;

namespace {

// Composite midpoint rule with m cells, used as an independent oracle for
// the closed-form integrals.
double midpoint_1d(const std::function<double(double)>& f, int m = 200000) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += f((i + 0.5) / m);
  return s / m;
}

BlockKernel random_symmetric_kernel(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 7);
  BlockKernel k = BlockKernel::filled(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = rng.uniform();
      k.at(i, j) = v;
      k.at(j, i) = v;
    }
  return k;
}

}  // namespace

TEST_CASE("profiles evaluate and integrate") {
  const auto s = Profile1D::sqrt();
  CHECK(s(0.25) == doctest::Approx(0.5));
  CHECK(s.integral_power(1) == doctest::Approx(2.0 / 3.0));
  CHECK(s.integral_power(2) == doctest::Approx(0.5));
  CHECK(s.integral(0.25, 1.0) == doctest::Approx(midpoint_1d([](double x) { return x >= 0.25 ? std::sqrt(x) : 0.0; })).epsilon(1e-4));

  const auto a = Profile1D::affine(0.2, 0.5);
  CHECK(a(1.0) == doctest::Approx(0.7));
  for (int d = 1; d <= 4; ++d) {
    CAPTURE(d);
    CHECK(a.integral_power(d) == doctest::Approx(midpoint_1d([&](double x) { return std::pow(0.2 + 0.5 * x, d); })).epsilon(1e-9));
  }

  const auto p = Profile1D::sampled({0.0, 1.0, 0.5});
  CHECK(p(0.25) == doctest::Approx(0.5));
  CHECK(p(0.75) == doctest::Approx(0.75));
  CHECK(p.integral(0.0, 1.0) == doctest::Approx(0.25 + 0.375));
  CHECK(p.integral_power(2) == doctest::Approx(midpoint_1d([&](double x) { return p(x) * p(x); })).epsilon(1e-5));
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(Profile1D::affine(0.5, 0.8), ValidationError);
  CHECK_THROWS_AS(Profile1D::affine(-0.1, 0.2), ValidationError);
  CHECK_THROWS_AS(Profile1D::sampled({0.5}), ValidationError);
  CHECK_THROWS_AS(Profile1D::sampled({0.5, 1.5}), ValidationError);
}

TEST_CASE("graphon construction and evaluation") {
  CHECK(Graphon::constant(0.3)(0.1, 0.9) == 0.3);
  CHECK_THROWS_AS(Graphon::constant(1.5), ValidationError);
  CHECK(Graphon::product(Profile1D::sqrt())(0.25, 1.0) == doctest::Approx(0.5));
  CHECK(Graphon::named_kernel("mixed")(0.2, 0.6) == doctest::Approx(0.5 * (0.2 * 0.4 + 0.6 * 0.8)));
  CHECK_THROWS_AS(Graphon::named_kernel("nope"), ValidationError);

  BlockKernel asym(2, {0.1, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(Graphon::step(asym), ValidationError);
  CHECK_THROWS_AS(Graphon::step(BlockKernel(2, {0.1, 1.2, 1.2, 0.4})), ValidationError);

  const auto w = Graphon::step(BlockKernel(2, {0.1, 0.2, 0.2, 0.4}));
  CHECK(w(0.25, 0.75) == 0.2);
  CHECK(w(1.0, 1.0) == 0.4);  // last interval closed
  CHECK(w(0.5, 0.0) == 0.2);  // half-open at the interior edge

  CHECK_THROWS_AS(eval(w, -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(eval(w, 0.5, 1.01), DomainError);
  CHECK(eval(w, 0.0, 0.0) == 0.1);
}

TEST_CASE("block index convention") {
  CHECK(block_index(0.0, 4) == 0);
  CHECK(block_index(0.25, 4) == 1);
  CHECK(block_index(0.2499, 4) == 0);
  CHECK(block_index(1.0, 4) == 3);
}

TEST_CASE("sup and describe") {
  CHECK(Graphon::constant(0.25).describe() == "constant(0.25)");
  CHECK(Graphon::product(Profile1D::sqrt()).describe() == "product(sqrt)");
  CHECK(Graphon::product(Profile1D::affine(0.1, 0.5)).sup() == doctest::Approx(0.36));
  CHECK(Graphon::named_kernel("mixed").sup() == doctest::Approx(0.5));
}

TEST_CASE("empirical graphon of a matrix") {
  const auto w = empirical_graphon(std::vector<std::vector<double>>{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  CHECK(w(0.1, 0.5) == 1.0);
  CHECK(w(0.1, 0.9) == 0.0);
  CHECK_THROWS_AS(empirical_graphon(std::vector<std::vector<double>>{{0, 1}, {0, 0}}), ValidationError);
}

TEST_CASE("discretize and l1 distance") {
  const auto s = Graphon::product(Profile1D::identity());
  const auto k = discretize(s, 4);
  CHECK(k(0, 3) == doctest::Approx(0.125 * 0.875));

  // Step vs step uses the common refinement; oracle: fine midpoint grid.
  const auto a = Graphon::step(random_symmetric_kernel(3, 1));
  const auto b = Graphon::step(random_symmetric_kernel(2, 2));
  double oracle = 0.0;
  const int m = 600;  // multiple of 2 and 3, so cells never straddle a block edge
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) oracle += std::abs(a((i + 0.5) / m, (j + 0.5) / m) - b((i + 0.5) / m, (j + 0.5) / m));
  CHECK(l1_distance(a, b) == doctest::Approx(oracle / (m * m)).epsilon(1e-12));
  CHECK(l1_distance(a, a) == 0.0);
  CHECK(l1_distance(Graphon::constant(0.2), Graphon::constant(0.5)) == doctest::Approx(0.3));
  // sqrt(xy) vs xy: \int\int sqrt(xy) - xy = 4/9 - 1/4.
  CHECK(l1_distance(Graphon::product(Profile1D::sqrt()), s) == doctest::Approx(4.0 / 9.0 - 0.25).epsilon(1e-4));
}

TEST_CASE("bernoulli variance kernel") {
  const auto v = bernoulli_variance_kernel(Graphon::constant(0.8), 0.25);
  CHECK(v.is_constant());
  CHECK(v(0.3, 0.3) == doctest::Approx(0.8 - 0.25 * 0.64));
  const auto f = Graphon::product(Profile1D::sqrt());
  const auto g = bernoulli_variance_kernel(f, 0.25);
  CHECK(g(0.25, 1.0) == doctest::Approx(0.5 - 0.25 * 0.25));
}

TEST_CASE("graphon JSON round trip") {
  const std::vector<Graphon> cases{
      Graphon::constant(0.4),
      Graphon::product(Profile1D::sqrt()),
      Graphon::product(Profile1D::identity()),
      Graphon::product(Profile1D::affine(0.1, 0.6)),
      Graphon::product(Profile1D::sampled({0.0, 0.5, 1.0, 0.2})),
      Graphon::step(random_symmetric_kernel(3, 5)),
      Graphon::named_kernel("mixed"),
  };
  for (const auto& w : cases) {
    CAPTURE(w.describe());
    const auto j = to_json(w);
    const auto back = graphon_from_json(j);
    CHECK(to_json(back) == j);
    for (double x : {0.0, 0.3, 0.71, 1.0})
      for (double y : {0.05, 0.5, 0.99}) CHECK(back(x, y) == w(x, y));
  }
  CHECK_THROWS_AS(graphon_from_json(nlohmann::json{{"type", "wavy"}}), ValidationError);
  CHECK_THROWS_AS(graphon_from_json(nlohmann::json{{"type", "constant"}}), ValidationError);
  CHECK_THROWS_AS(graphon_from_json(nlohmann::json{{"type", "constant"}, {"value", "x"}}), ValidationError);
  CHECK_THROWS_AS(graphon_from_json(nlohmann::json{{"type", "step"}, {"n", 3}, {"values", {{0.1}}}}), ValidationError);
}

TEST_CASE("simple graphs") {
  CHECK_THROWS_AS(SimpleGraph(2, {{0, 0}}), ValidationError);
  CHECK_THROWS_AS(SimpleGraph(2, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(SimpleGraph(2, {{0, 2}}), ValidationError);
  const auto p = SimpleGraph::path(4);
  CHECK(p.edge_count() == 3);
  CHECK(p.is_forest());
  const auto s = SimpleGraph::star(3);
  CHECK(s.degrees() == std::vector<std::size_t>{3, 1, 1, 1});
  SimpleGraph c = SimpleGraph::path(3);
  c.add_edge(0, 2);
  CHECK_FALSE(c.is_forest());
  CHECK_THROWS_AS(canonical_forest_code(c), UnsupportedError);
}

TEST_CASE("canonical forest codes identify isomorphic forests") {
  // Path on 4 vertices relabelled arbitrarily keeps its code; the star on 4
  // vertices gets a different one.
  const auto p = SimpleGraph::path(4);
  CHECK(canonical_forest_code(p) == canonical_forest_code(p.relabeled({2, 0, 3, 1})));
  CHECK(canonical_forest_code(p) != canonical_forest_code(SimpleGraph::star(3)));
  // Components are order-independent.
  SimpleGraph f1(5, {{0, 1}, {2, 3}, {3, 4}});
  SimpleGraph f2(5, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(canonical_forest_code(f1) == canonical_forest_code(f2));
  // Bicentral vs unicentral trees of equal size differ.
  CHECK(canonical_forest_code(SimpleGraph::path(5)) != canonical_forest_code(SimpleGraph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}})));
}
