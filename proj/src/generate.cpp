#include "pcirc/generate.hpp"

namespace pcirc {

Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitParams& p) {
    Circuit c;
    std::bernoulli_distribution edge(p.edge_prob), neg(p.negative_prob), mark(p.mark_prob),
        neg_mark(p.negative_mark_prob);
    std::size_t n = std::max<std::size_t>(p.vertices, 1);
    for (std::size_t i = 0; i < n; ++i) {
        VertexId x = c.add_vertex();
        for (VertexId y = 0; y < x; ++y) {
            if (p.max_out && c.v[x].out.size() >= p.max_out) break;
            if (edge(rng)) c.v[x].out.push_back({y, neg(rng) ? -1 : 1});
        }
        if (c.v[x].out.empty() && x > 0 && p.single_zero) {
            std::uniform_int_distribution<VertexId> below(0, x - 1);
            c.v[x].out.push_back({below(rng), neg(rng) ? -1 : 1});
        }
        if (c.v[x].out.empty()) c.v[x].leaf = LeafKind::Zero;
        if (mark(rng)) c.v[x].mark = neg_mark(rng) ? -1 : 1;
    }
    if (c.num_marks() == 0) {
        std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n) - 1);
        c.v[pick(rng)].mark = neg_mark(rng) ? -1 : 1;
    }
    return c;
}

Circuit tower_chain(std::size_t k) {
    Circuit c;
    VertexId prev = c.add_zero();
    for (std::size_t i = 0; i < k; ++i) {
        VertexId x = c.add_vertex();
        c.add_edge(x, prev, 1);
        prev = x;
    }
    return c;
}

Circuit tower_circuit(std::size_t k) {
    Circuit c = tower_chain(k + 1);
    c.set_mark(static_cast<VertexId>(k + 1), 1);
    return c;
}

Circuit tower_plus_one(std::size_t n) {
    Circuit c = tower_chain(n);
    c.set_mark(1, 1);
    c.set_mark(static_cast<VertexId>(n), 1);
    return c;
}

}  // namespace pcirc
