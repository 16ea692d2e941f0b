#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ksigraph/graph.hpp"

namespace ksigraph {

enum class Model { er, ws, ba, bhl, star, complete, path, cycle };

std::string_view to_string(Model model);
std::optional<Model> parse_model(std::string_view name);

// Parameters not used by `model` are ignored. Field names follow the usual
// notation: ER(n, p), WS(n, k, p), BA(n, m), BHL(n0, m, n), fixtures (n).
struct GeneratorSpec {
  Model model = Model::er;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t n0 = 0;
  double p = 0.0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

Graph generate(const GeneratorSpec& spec);

// Every one of the n(n-1)/2 pairs independently with probability p, drawn by
// geometric skipping over the pair sequence.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Ring lattice of degree k, then one pass over lattice offsets 1..k/2 that
// rewires (u, u+j) to a uniform non-neighbor of u with probability p.
Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

// Preferential attachment grown from a star on m+1 nodes (hub 0). Each new
// node draws m distinct targets with probability proportional to degree,
// rejecting repeats.
Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

/// Boccaletti-Hwang-Latora growth: hierarchical, small-world and scale-free.
///
/// Starts from a complete core on n0 nodes. Every new node attaches with m
/// edges. The first target is chosen over the whole graph with probability
/// proportional to degree. The remaining m-1 targets are distinct neighbors
/// of that first target, again drawn proportionally to degree. Requires
/// 1 <= m <= n0 <= n; n == n0 returns the core.
Graph bhl(std::size_t n0, std::size_t m, std::size_t n, std::uint64_t seed);

// star: hub 0 plus n leaves (n+1 nodes); complete, path, cycle: n nodes.
Graph fixture(Model model, std::size_t n);

}  // namespace ksigraph
