#pragma once
// Reduction of constant power circuits to pairwise-distinct vertex values,
// normal forms, and sign/comparison without evaluating.

#include "pcirc/circuit.hpp"
#include "pcirc/signed_binary.hpp"

#include <cstdint>
#include <optional>

namespace pcirc {

// Instrumentation for the reduction process.
struct ReduceStats {
    std::uint64_t compare_iterations = 0;
    std::uint64_t edge_scans = 0;
    std::uint64_t trim_visits = 0;
    std::uint64_t doublings = 0;
    std::uint64_t aux_vertices = 0;
    std::uint64_t ops() const { return compare_iterations + edge_scans + trim_visits; }
};

// The processed set C: vertices sorted by value with their doubles bits.
// Rank 0 is the zero vertex.
class PrefixOrder {
public:
    std::vector<VertexId> order;
    std::vector<char> dbl;  // dbl[i]: E(order[i+1]) == 2 E(order[i]); dbl.size() == order.size()

    void init(VertexId zero, VertexId unit, std::size_t nvertices);
    bool contains(VertexId x) const { return x >= 0 && static_cast<std::size_t>(x) < rank_.size() && rank_[x] >= 0; }
    std::int64_t rank(VertexId x) const { return rank_[x]; }
    std::size_t size() const { return order.size(); }
    void insert(std::size_t pos, VertexId x);
    void erase(VertexId x);
    // Rank of the vertex with value 1, or -1.
    std::int64_t unit_rank(const Circuit& c) const;

private:
    void renumber(std::size_t from);
    std::vector<std::int64_t> rank_;
};

// Key domain over ranks of a PrefixOrder.
struct RankDomain {
    using key_type = std::int64_t;
    const PrefixOrder* C;
    std::int64_t unit;
    bool less(key_type a, key_type b) const { return a < b; }
    bool is_double(key_type hi, key_type lo) const { return hi == lo + 1 && lo >= 0 && C->dbl[lo]; }
    std::optional<key_type> half(key_type k) const {
        if (k > 0 && C->dbl[k - 1]) return k - 1;
        return std::nullopt;
    }
    bool is_unit(key_type k) const { return k == unit; }
};

using RankSum = SignedSum<std::int64_t>;

// Exponent sum of x over ranks of C, zero targets skipped. All targets must be in C.
RankSum rank_sum(const Circuit& c, const PrefixOrder& C, VertexId x);

// If one of vi, vj reaches the other, replace the reaching vertex's out-edges
// by copies of the other's. Requires E(vi) == E(vj).
void make_unreachable(Circuit& c, VertexId vi, VertexId vj, ReduceStats* st = nullptr);

// Doubles E(vj) keeping every other value and the circuit value; vi is the
// equivalent vertex in C. May insert one auxiliary vertex into c and C.
void double_vertex(Circuit& c, PrefixOrder& C, VertexId vi, VertexId vj, ReduceStats* st = nullptr);

// Doubles vj until its value is unique in C, trimming in between, then
// inserts vj into C unless it was trimmed away.
void separate(Circuit& c, PrefixOrder& C, VertexId vi, VertexId vj, ReduceStats* st = nullptr);

// Reduced equivalent circuit with certificate, or nullopt when improper.
// Throws VariableLeafError on variable leaves.
std::optional<Circuit> reduce(const Circuit& c, ReduceStats* st = nullptr);

// Unique normal form with certificate, or nullopt when improper.
std::optional<Circuit> normalize(const Circuit& c, ReduceStats* st = nullptr);

// Sign of the value of a reduced circuit, read off its certificate.
int sign_of_reduced(const Circuit& r);

// Sign of the value, or nullopt when improper.
std::optional<int> sign(const Circuit& c);

// -1, 0, +1 for a < b, a == b, a > b; nullopt when either is improper.
std::optional<int> compare_circuits(const Circuit& a, const Circuit& b);

}  // namespace pcirc
