#include "ksigraph/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ksigraph/random.hpp"

namespace ksigraph {

namespace {

constexpr std::array<std::pair<Model, std::string_view>, 8> kModelNames{{
    {Model::er, "er"},
    {Model::ws, "ws"},
    {Model::ba, "ba"},
    {Model::bhl, "bhl"},
    {Model::star, "star"},
    {Model::complete, "complete"},
    {Model::path, "path"},
    {Model::cycle, "cycle"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool contains(const std::vector<NodeId>& v, NodeId x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::string_view to_string(Model model) {
  for (auto [m, name] : kModelNames)
    if (m == model) return name;
  return "unknown";
}

std::optional<Model> parse_model(std::string_view name) {
  for (auto [m, s] : kModelNames)
    if (s == name) return m;
  return std::nullopt;
}

void GeneratorSpec::validate() const {
  switch (model) {
    case Model::er:
      require(n >= 1, "ER: n must be >= 1");
      require(p >= 0.0 && p <= 1.0, "ER: p must lie in [0, 1]");
      break;
    case Model::ws:
      require(k % 2 == 0, "WS: k must be even");
      require(k > 0 && k < n, "WS: need 0 < k < n");
      require(p >= 0.0 && p <= 1.0, "WS: p must lie in [0, 1]");
      break;
    case Model::ba:
      require(m >= 1 && m < n, "BA: need 1 <= m < n");
      break;
    case Model::bhl:
      require(m >= 1 && m <= n0 && n0 <= n, "BHL: need 1 <= m <= n0 <= n");
      break;
    case Model::cycle:
      require(n >= 3, "cycle: n must be >= 3");
      break;
    case Model::star:
    case Model::complete:
    case Model::path:
      require(n >= 1, "fixture: n must be >= 1");
      break;
  }
}

Graph generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.model) {
    case Model::er:
      return erdos_renyi(spec.n, spec.p, spec.seed);
    case Model::ws:
      return watts_strogatz(spec.n, spec.k, spec.p, spec.seed);
    case Model::ba:
      return barabasi_albert(spec.n, spec.m, spec.seed);
    case Model::bhl:
      return bhl(spec.n0, spec.m, spec.n, spec.seed);
    default:
      return fixture(spec.model, spec.n);
  }
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  GeneratorSpec{.model = Model::er, .n = n, .p = p}.validate();
  std::vector<Edge> edges;
  if (p >= 1.0) {
    for (std::size_t v = 1; v < n; ++v)
      for (std::size_t w = 0; w < v; ++w)
        edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
    return Graph::from_edges(n, edges);
  }
  if (p <= 0.0) return Graph::from_edges(n, edges);

  // Walk pairs (w, v), w < v, in row order, jumping by geometric gaps.
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.uniform();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  GeneratorSpec{.model = Model::ws, .n = n, .k = k, .p = p}.validate();
  std::vector<std::unordered_set<NodeId>> adj(n);
  auto link = [&](NodeId a, NodeId b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t j = 1; j <= k / 2; ++j)
      link(static_cast<NodeId>(u), static_cast<NodeId>((u + j) % n));

  Rng rng(seed);
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t ui = 0; ui < n; ++ui) {
      const auto u = static_cast<NodeId>(ui);
      const auto v = static_cast<NodeId>((ui + j) % n);
      if (rng.uniform() >= p) continue;
      if (!adj[u].contains(v)) continue;
      if (adj[u].size() >= n - 1) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(rng.below(n));
      } while (w == u || adj[u].contains(w));
      adj[u].erase(v);
      adj[v].erase(u);
      link(u, w);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(n * k / 2);
  for (std::size_t u = 0; u < n; ++u)
    for (NodeId v : adj[u])
      if (static_cast<NodeId>(u) < v) edges.emplace_back(static_cast<NodeId>(u), v);
  return Graph::from_edges(n, edges);
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  GeneratorSpec{.model = Model::ba, .n = n, .m = m}.validate();
  std::vector<Edge> edges;
  edges.reserve(m + (n - m - 1) * m);
  // One entry per edge endpoint: a uniform pick is a degree-weighted pick.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * (m + (n - m - 1) * m));
  for (std::size_t leaf = 1; leaf <= m; ++leaf) {
    edges.emplace_back(0, static_cast<NodeId>(leaf));
    endpoints.push_back(0);
    endpoints.push_back(static_cast<NodeId>(leaf));
  }

  Rng rng(seed);
  std::vector<NodeId> targets;
  targets.reserve(m);
  for (std::size_t v = m + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId t = endpoints[rng.below(endpoints.size())];
      if (!contains(targets, t)) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, static_cast<NodeId>(v));
      endpoints.push_back(t);
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph bhl(std::size_t n0, std::size_t m, std::size_t n, std::uint64_t seed) {
  GeneratorSpec{.model = Model::bhl, .n = n, .m = m, .n0 = n0}.validate();
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<NodeId> endpoints;
  auto link = [&](NodeId a, NodeId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  for (std::size_t a = 0; a < n0; ++a)
    for (std::size_t b = a + 1; b < n0; ++b)
      link(static_cast<NodeId>(a), static_cast<NodeId>(b));

  Rng rng(seed);
  std::vector<NodeId> targets;
  std::vector<double> cumulative;
  for (std::size_t vi = n0; vi < n; ++vi) {
    const auto v = static_cast<NodeId>(vi);
    targets.clear();
    const NodeId first = endpoints[rng.below(endpoints.size())];
    targets.push_back(first);

    const auto& pool = adj[first];
    cumulative.resize(pool.size());
    double total = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      total += static_cast<double>(adj[pool[i]].size());
      cumulative[i] = total;
    }
    while (targets.size() < m) {
      const double r = rng.uniform() * total;
      const auto idx = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), r) -
          cumulative.begin());
      const NodeId t = pool[std::min(idx, pool.size() - 1)];
      if (!contains(targets, t)) targets.push_back(t);
    }
    for (NodeId t : targets) link(t, v);
  }

  std::vector<Edge> edges;
  edges.reserve(endpoints.size() / 2);
  for (std::size_t i = 0; i < endpoints.size(); i += 2)
    edges.emplace_back(endpoints[i], endpoints[i + 1]);
  return Graph::from_edges(n, edges);
}

Graph fixture(Model model, std::size_t n) {
  GeneratorSpec{.model = model, .n = n}.validate();
  std::vector<Edge> edges;
  std::size_t nodes = n;
  switch (model) {
    case Model::star:
      nodes = n + 1;
      for (std::size_t leaf = 1; leaf <= n; ++leaf)
        edges.emplace_back(0, static_cast<NodeId>(leaf));
      break;
    case Model::complete:
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
      break;
    case Model::path:
      for (std::size_t a = 0; a + 1 < n; ++a)
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(a + 1));
      break;
    case Model::cycle:
      for (std::size_t a = 0; a < n; ++a)
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>((a + 1) % n));
      break;
    default:
      throw std::invalid_argument("not a fixture model: " +
                                  std::string(to_string(model)));
  }
  return Graph::from_edges(nodes, edges);
}

}  // namespace ksigraph
