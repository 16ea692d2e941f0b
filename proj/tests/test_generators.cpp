#include <doctest.h>

#include <cmath>
#include <vector>

#include "ksigraph/er_theory.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/graph.hpp"
#include "ksigraph/serialize.hpp"
#include "ksigraph/stats.hpp"

using namespace ksigraph;

namespace {

bool is_simple_symmetric(const Graph& g) {
  for (NodeId i = 0; i < static_cast<NodeId>(g.node_count()); ++i) {
    const auto nb = g.neighbors(i);
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) return false;
    for (NodeId j : nb)
      if (j == i || !g.has_edge(j, i)) return false;
  }
  return true;
}

std::vector<double> degrees(const Graph& g) {
  std::vector<double> d(g.node_count());
  for (NodeId i = 0; i < static_cast<NodeId>(d.size()); ++i) d[i] = static_cast<double>(g.degree(i));
  return d;
}

}  // namespace

TEST_CASE("erdos-renyi extremes") {
  const Graph empty = erdos_renyi(5, 0.0, 1);
  CHECK(empty.node_count() == 5);
  CHECK(empty.edge_count() == 0);
  const Graph full = erdos_renyi(5, 1.0, 1);
  CHECK(full.edge_count() == 10);
  CHECK(full == fixture(Model::complete, 5));
  CHECK(erdos_renyi(1, 0.5, 3).node_count() == 1);
}

TEST_CASE("erdos-renyi edge count is binomial") {
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    counts.push_back(static_cast<double>(erdos_renyi(1000, 0.01, seed).edge_count()));
  const auto est = estimate(counts);
  const double expected = 4995.0 * 0.01 * 100.0;  // C(1000,2) p
  const double sigma_of_mean = std::sqrt(499500.0 * 0.01 * 0.99 / 100.0);
  CHECK(std::abs(est.mean - expected) <= 3.0 * sigma_of_mean);
}

TEST_CASE("erdos-renyi pairs are unbiased across positions") {
  // Every pair should appear with frequency p; check the first and last pair.
  int first = 0, last = 0;
  const int reps = 4000;
  for (int s = 0; s < reps; ++s) {
    const Graph g = erdos_renyi(6, 0.3, static_cast<std::uint64_t>(s));
    first += g.has_edge(0, 1);
    last += g.has_edge(4, 5);
  }
  const double sd = std::sqrt(reps * 0.3 * 0.7);
  CHECK(std::abs(first - 0.3 * reps) <= 4.0 * sd);
  CHECK(std::abs(last - 0.3 * reps) <= 4.0 * sd);
}

TEST_CASE("watts-strogatz lattice and rewiring") {
  const Graph ring = watts_strogatz(6, 2, 0.0, 5);
  CHECK(ring == fixture(Model::cycle, 6));
  const Graph lattice = watts_strogatz(6, 4, 0.0, 5);
  for (NodeId i = 0; i < 6; ++i) CHECK(lattice.degree(i) == 4);
  CHECK(lattice.has_edge(0, 2));
  CHECK(lattice.has_edge(0, 4));
  CHECK_FALSE(lattice.has_edge(0, 3));

  const Graph rewired = watts_strogatz(2000, 20, 0.3, 9);
  CHECK(rewired.node_count() == 2000);
  CHECK(rewired.edge_count() == 20000);
  CHECK(is_simple_symmetric(rewired));
  CHECK(rewired != watts_strogatz(2000, 20, 0.0, 9));
}

TEST_CASE("barabasi-albert") {
  SUBCASE("no growth gives the seed star") {
    const Graph g = barabasi_albert(5, 4, 3);
    CHECK(g == fixture(Model::star, 4));
  }
  SUBCASE("edge count") {
    const Graph g = barabasi_albert(100, 3, 3);
    CHECK(g.node_count() == 100);
    CHECK(g.edge_count() == 291);
    CHECK(is_connected(g));
    CHECK(is_simple_symmetric(g));
    for (NodeId i = 4; i < 100; ++i) CHECK(g.degree(i) >= 3);
  }
  SUBCASE("degree distribution is right-skewed") {
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      CHECK(skewness(degrees(barabasi_albert(2000, 5, seed))) > 1.0);
  }
}

TEST_CASE("bhl growth") {
  const Graph core = bhl(5, 2, 5, 1);
  CHECK(core == fixture(Model::complete, 5));

  const Graph g = bhl(100, 20, 4000, 1);
  CHECK(g.node_count() == 4000);
  CHECK(g.edge_count() == 4950 + 3900 * 20);
  CHECK(is_connected(g));
  CHECK(is_simple_symmetric(g));

  // Every new node's targets are its first target plus neighbours of it.
  const Graph small = bhl(6, 3, 40, 8);
  for (NodeId v = 6; v < 40; ++v) {
    std::vector<NodeId> earlier;
    for (NodeId u : small.neighbors(v))
      if (u < v) earlier.push_back(u);
    REQUIRE(earlier.size() == 3);
    bool some_hub = false;
    for (NodeId h : earlier) {
      bool all = true;
      for (NodeId u : earlier)
        if (u != h && !small.has_edge(h, u)) all = false;
      some_hub = some_hub || all;
    }
    CHECK(some_hub);
  }
}

TEST_CASE("fixtures") {
  const Graph star = fixture(Model::star, 5);
  CHECK(star.node_count() == 6);
  CHECK(star.edge_count() == 5);
  CHECK(star.degree(0) == 5);
  const Graph c4 = fixture(Model::cycle, 4);
  CHECK(c4.edge_count() == 4);
  for (NodeId i = 0; i < 4; ++i) CHECK(c4.degree(i) == 2);
  CHECK(fixture(Model::complete, 4).edge_count() == 6);
  CHECK(fixture(Model::path, 1).edge_count() == 0);
  CHECK(fixture(Model::path, 4).edge_count() == 3);
}

TEST_CASE("generators are reproducible per seed") {
  const std::vector<GeneratorSpec> specs{
      {Model::er, 300, 0, 0, 0, 0.05, 42},  {Model::ws, 300, 6, 0, 0, 0.2, 42},
      {Model::ba, 300, 0, 3, 0, 0.0, 42},   {Model::bhl, 300, 0, 4, 10, 0.0, 42},
  };
  for (const auto& spec : specs) {
    const Graph a = generate(spec);
    CHECK(a == generate(spec));
    CHECK(is_simple_symmetric(a));
    auto other = spec;
    other.seed = 43;
    CHECK(a != generate(other));
  }
}

TEST_CASE("spec validation") {
  auto bad = [](GeneratorSpec s) { CHECK_THROWS_AS(generate(s), std::invalid_argument); };
  bad({Model::er, 10, 0, 0, 0, 1.5, 0});
  bad({Model::er, 0, 0, 0, 0, 0.5, 0});
  bad({Model::ws, 10, 3, 0, 0, 0.1, 0});
  bad({Model::ws, 10, 10, 0, 0, 0.1, 0});
  bad({Model::ws, 10, 0, 0, 0, 0.1, 0});
  bad({Model::ba, 10, 0, 10, 0, 0.0, 0});
  bad({Model::ba, 10, 0, 0, 0, 0.0, 0});
  bad({Model::bhl, 10, 0, 5, 4, 0.0, 0});
  bad({Model::bhl, 10, 0, 2, 11, 0.0, 0});
  bad({Model::star, 0, 0, 0, 0, 0.0, 0});
  bad({Model::cycle, 2, 0, 0, 0, 0.0, 0});
}

TEST_CASE("model names and spec json") {
  for (Model m : {Model::er, Model::ws, Model::ba, Model::bhl, Model::star, Model::complete,
                  Model::path, Model::cycle})
    CHECK(parse_model(to_string(m)) == m);
  CHECK_FALSE(parse_model("lattice"));

  const GeneratorSpec spec{Model::bhl, 4000, 0, 20, 100, 0.0, 77};
  const json j = spec;
  CHECK(j["model"] == "bhl");
  CHECK(j["params"]["n0"] == 100);
  CHECK(j["seed"] == 77);
  CHECK_FALSE(j["params"].contains("p"));
  const auto back = j.get<GeneratorSpec>();
  CHECK(back.model == spec.model);
  CHECK(back.n == spec.n);
  CHECK(back.m == spec.m);
  CHECK(back.n0 == spec.n0);
  CHECK(back.seed == spec.seed);
}
