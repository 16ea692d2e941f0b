#include <doctest.h>

#include <sstream>
#include <vector>

#include "ksigraph/centrality.hpp"
#include "ksigraph/centrality_matrix.hpp"
#include "ksigraph/errors.hpp"
#include "ksigraph/generators.hpp"
#include "ksigraph/serialize.hpp"
#include "support.hpp"

using namespace ksigraph;

TEST_CASE("ksi on fixtures") {
  for (std::size_t n : {1u, 2u, 5u, 17u}) {
    const Graph star = fixture(Model::star, n);
    CHECK(ksi(star, 0) == 1.0);
    for (NodeId leaf = 1; leaf <= static_cast<NodeId>(n); ++leaf) {
      CHECK(ksi(star, leaf) == static_cast<double>(n));
      CHECK(normalized_ksi(star, leaf) == 1.0);
    }
    CHECK(normalized_ksi(star, 0) == 1.0);
  }
  const Graph c4 = fixture(Model::cycle, 4);
  for (NodeId i = 0; i < 4; ++i) CHECK(ksi(c4, i) == 2.0);
  const Graph k6 = fixture(Model::complete, 6);
  for (NodeId i = 0; i < 6; ++i) CHECK(normalized_ksi(k6, i) == 1.0);
}

TEST_CASE("isolated node conventions") {
  const std::vector<Edge> edges{{0, 1}};
  const Graph g = Graph::from_edges(4, edges);
  CHECK(ksi(g, 3) == 1.0);
  CHECK(normalized_ksi(g, 3) == 0.25);
  const auto v = centrality_all(g, CentralityKind::normalized_ksi);
  CHECK(v.numerators[3] == 1);
  CHECK(v.denominators[3] == 4);
}

TEST_CASE("averages on fixtures") {
  for (std::int64_t n : {3, 5, 50}) {
    const Graph star = fixture(Model::star, static_cast<std::size_t>(n));
    const auto x = centrality_all(star, CentralityKind::ksi);
    CHECK(x.average == doctest::Approx(static_cast<double>(n * n + 1) / static_cast<double>(n + 1)));
    const auto y = centrality_all(star, CentralityKind::normalized_ksi);
    CHECK(y.average == 1.0);
  }
  const Graph c4 = fixture(Model::cycle, 4);
  CHECK(centrality_all(c4, CentralityKind::ksi).average == 2.0);
  CHECK(centrality_all(c4, CentralityKind::normalized_ksi).average == 1.0);
}

TEST_CASE("dense matrix form agrees exactly") {
  SUBCASE("star") {
    const Graph star = fixture(Model::star, 5);
    const auto dense = ksi_matrix(star);
    const auto sparse = centrality_all(star, CentralityKind::ksi);
    CHECK(dense.numerators == sparse.numerators);
    CHECK(dense.denominators == sparse.denominators);
    CHECK(dense.values == sparse.values);
  }
  SUBCASE("empty graph") {
    const auto dense = ksi_matrix(Graph::from_edges(3, {}));
    CHECK(dense.values == std::vector<double>{1.0, 1.0, 1.0});
  }
  SUBCASE("random ER(20, 0.3)") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Graph g = erdos_renyi(20, 0.3, seed);
      const auto dense = ksi_matrix(g);
      const auto sparse = centrality_all(g, CentralityKind::ksi);
      REQUIRE(dense.numerators == sparse.numerators);
      REQUIRE(dense.denominators == sparse.denominators);
    }
  }
  SUBCASE("floating-point scalar gives the same values") {
    const Graph g = barabasi_albert(30, 2, 4);
    CHECK(ksi_matrix<double>(g).values == centrality_all(g, CentralityKind::ksi).values);
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(ksi_matrix(fixture(Model::path, 10), 9), DomainError);
  }
}

TEST_CASE("centrality bounds and identities on random graphs") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = testing::random_graph(rng, 1 + rng.below(50));
    const auto n = static_cast<std::int64_t>(g.node_count());
    const auto x = centrality_all(g, CentralityKind::ksi);
    const auto y = centrality_all(g, CentralityKind::normalized_ksi);
    for (NodeId i = 0; i < static_cast<NodeId>(n); ++i) {
      const auto d = static_cast<std::int64_t>(g.degree(i));
      const auto b = boundary_edge_count(g, i);
      if (d == 0) {
        CHECK(x.values[i] == 1.0);
        CHECK(y.numerators[i] == 1);
        CHECK(y.denominators[i] == n);
        continue;
      }
      CHECK(x.numerators[i] == b);
      CHECK(x.denominators[i] == d);
      CHECK(y.numerators[i] == b);
      CHECK(y.denominators[i] == d * (n - d));
      CHECK(x.values[i] >= 1.0);
      CHECK(x.values[i] <= static_cast<double>(n - d));
      CHECK(y.values[i] <= 1.0);
      CHECK(y.values[i] * static_cast<double>(n - d) >= 1.0 - 1e-12);
      CHECK(x.values[i] == doctest::Approx(y.values[i] * static_cast<double>(n - d)));
    }
  }
}

TEST_CASE("thread count never changes values") {
  const Graph g = barabasi_albert(3000, 4, 17);
  const auto one = centrality_all(g, CentralityKind::normalized_ksi, 1);
  for (std::size_t t : {2u, 3u, 8u}) {
    const auto many = centrality_all(g, CentralityKind::normalized_ksi, t);
    CHECK(many.values == one.values);
    CHECK(many.average == one.average);
  }
}

TEST_CASE("csv and summary export") {
  const Graph star = fixture(Model::star, 3);
  const auto b = boundary_edge_counts(star);
  const auto x = centrality_from_boundary(star, b, CentralityKind::ksi);
  const auto y = centrality_from_boundary(star, b, CentralityKind::normalized_ksi);
  std::ostringstream out;
  write_centrality_csv(out, star, b, x, y);
  CHECK(out.str() ==
        "node_label,degree,boundary_edges,ksi,normalized_ksi\n"
        "0,3,3,1,1\n"
        "1,1,3,3,1\n"
        "2,1,3,3,1\n"
        "3,1,3,3,1\n");
  const json s = centrality_summary(star, x, y);
  CHECK(s["n"] == 4);
  CHECK(s["m_edges"] == 3);
  CHECK(s["avg_ksi"].get<double>() == doctest::Approx(2.5));
  CHECK(s["avg_normalized_ksi"].get<double>() == 1.0);
}
