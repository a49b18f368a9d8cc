#pragma once
// Power circuits: DAGs with +-1 edge labels, zero/variable leaves and a
// signed set of marked vertices. A vertex v denotes 2^(sum of mu(e) * E(child))
// and the circuit denotes the signed sum of its marked vertices.

#include "pcirc/bigint.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcirc {

using VertexId = std::int32_t;

struct CircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation that needs a constant circuit met a variable leaf.
struct VariableLeafError : CircuitError {
    using CircuitError::CircuitError;
};

// Raised when a size or bit budget is exhausted.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LeafKind : std::uint8_t { None, Zero, Var };

struct Edge {
    VertexId to;
    int sign;
};

struct Vertex {
    std::vector<Edge> out;
    LeafKind leaf = LeafKind::None;
    std::string var;
    int mark = 0;  // 0 = unmarked, else nu(v)
    bool alive = true;
};

enum class CircuitKind { General, Standard, Reduced, Normal };

// Vertices sorted by strictly increasing value, and doubles[i] == true iff
// E(order[i+1]) == 2 * E(order[i]).
struct Certificate {
    std::vector<VertexId> order;
    std::vector<bool> doubles;
};

class Circuit {
public:
    std::vector<Vertex> v;
    CircuitKind kind = CircuitKind::General;
    std::optional<Certificate> cert;

    VertexId add_vertex();
    VertexId add_zero();
    VertexId add_var(const std::string& name);

    // Out-edges of a leaf make it an inner vertex; the caller keeps leaf labels consistent.
    void add_edge(VertexId from, VertexId to, int sign);
    bool remove_edge(VertexId from, VertexId to);
    std::optional<int> edge_sign(VertexId from, VertexId to) const;
    void set_mark(VertexId x, int sign) { v[x].mark = sign; }
    void kill(VertexId x);

    std::size_t size() const { return v.size(); }
    std::size_t num_vertices() const;
    std::size_t num_edges() const;
    std::size_t num_marks() const;
    std::vector<VertexId> alive_ids() const;
    std::vector<VertexId> marked() const;
    bool has_vars() const;

    // Drops dead vertices and renumbers in index order. Returns old -> new (-1 for dead).
    std::vector<VertexId> compact();

    // Structure checks: acyclic, no multi-edges, leaf labels consistent,
    // at least one mark. Throws CircuitError.
    void validate() const;

    // A single marked zero leaf.
    bool is_trivial() const;
};

// Number of vertices, edges, marks of the live part.
struct CircuitStats {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t marks = 0;
};
CircuitStats stats(const Circuit& c);

Circuit trivial_circuit();

// Topological order with every edge pointing backwards; ties by index.
// Only live vertices. Throws CircuitError on a cycle.
std::vector<VertexId> geometric_order(const Circuit& c);

// Removes every vertex not reachable from a mark. `keep` stays alive regardless.
// Returns the number of removed vertices.
std::size_t trim(Circuit& c, VertexId keep = -1);

Circuit standardize(const Circuit& c);
Circuit marked_to_sources(const Circuit& c);

// Normal circuit of n with |V| <= ceil(log2 |n|) + 2.
Circuit from_integer(const BigInt& n);

enum class EvalStatus { Ok, Improper, BudgetExceeded, Unbound };

struct EvalResult {
    EvalStatus status = EvalStatus::Ok;
    BigInt value;
};

// Exact evaluation over vertices reachable from the marks. Exponents above
// budget_bits give BudgetExceeded, negative exponents give Improper.
EvalResult eval_bignum(const Circuit& c, std::uint64_t budget_bits = (1u << 20),
                       const std::map<std::string, BigInt>* vars = nullptr);

// Serialization of a Normal circuit in certificate order; equal iff isomorphic.
std::vector<std::uint8_t> canonical_bytes(const Circuit& c);
bool isomorphic(const Circuit& a, const Circuit& b);
std::uint64_t canonical_hash(const Circuit& c);

}  // namespace pcirc
