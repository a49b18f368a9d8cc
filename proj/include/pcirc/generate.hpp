#pragma once
// Circuit families for benchmarks, demos and tests.

#include "pcirc/circuit.hpp"

#include <random>

namespace pcirc {

struct RandomCircuitParams {
    std::size_t vertices = 10;
    double edge_prob = 0.3;
    double negative_prob = 0.0;  // fraction of edges labelled -1
    double mark_prob = 0.3;
    double negative_mark_prob = 0.5;
    std::size_t max_out = 0;  // 0: unbounded
    bool single_zero = false;  // vertex 0 is the only leaf
};

// Vertex i only has edges to vertices below i; sinks become zero leaves,
// or get one edge to a random lower vertex under single_zero.
// At least one vertex is marked.
Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitParams& p);

// Chain 0 <- 1 <- ... <- k of + edges from the zero leaf. Vertex 0 has value 0
// and vertex j >= 1 has value tower(j - 1), where tower(0) = 1 and
// tower(j + 1) = 2^tower(j).
Circuit tower_chain(std::size_t k);

// tower(k): the chain up to k + 1, marked at the top.
Circuit tower_circuit(std::size_t k);

// The chain up to n >= 2 marked at 1 and n: tower(n - 1) + 1.
Circuit tower_plus_one(std::size_t n);

}  // namespace pcirc
