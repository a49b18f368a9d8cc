#include "checks.hpp"
#include "fuzz.hpp"
#include "oracle.hpp"

#include "pcirc/arithmetic.hpp"
#include "pcirc/generate.hpp"
#include "pcirc/reduction.hpp"

#include <doctest.h>

using namespace pcirc;

namespace {

// zero, 1, 2 and two vertices of value 8 built alike: 8 = 2^(1 + 2).
struct Eights {
    Circuit c;
    VertexId z, one, two, v3, v4;
    PrefixOrder C;
    Eights() {
        z = c.add_zero();
        one = c.add_vertex();
        c.add_edge(one, z, 1);
        two = c.add_vertex();
        c.add_edge(two, one, 1);
        v3 = c.add_vertex();
        c.add_edge(v3, one, 1);
        c.add_edge(v3, two, 1);
        v4 = c.add_vertex();
        c.add_edge(v4, one, 1);
        c.add_edge(v4, two, 1);
        c.set_mark(v3, 1);
        c.set_mark(v4, 1);
        C.init(z, one, c.size());
        C.insert(2, two);
        C.dbl[1] = 1;
        C.insert(3, v3);
    }
};

std::map<VertexId, BigInt> values(const Circuit& c) { return *checks::all_values(c, 4096); }

RandomCircuitParams reduce_params(fuzz::Rng& rng, std::size_t max_vertices) {
    RandomCircuitParams p;
    p.vertices = static_cast<std::size_t>(fuzz::uniform(rng, 1, static_cast<std::int64_t>(max_vertices)));
    p.edge_prob = 0.3;
    p.negative_prob = 0.25;
    p.mark_prob = 0.35;
    return p;
}

}  // namespace

TEST_CASE("make_unreachable copies the reached vertex's edges") {
    Circuit c;
    VertexId z = c.add_zero();
    VertexId a = c.add_vertex();
    c.add_edge(a, z, 1);
    VertexId vi = c.add_vertex();  // 2 = 2^1
    c.add_edge(vi, a, 1);
    VertexId vj = c.add_vertex();  // 2 = 2^(2 - 1), reaches vi
    c.add_edge(vj, vi, 1);
    c.add_edge(vj, a, -1);
    c.set_mark(vj, 1);
    c.set_mark(vi, 1);
    auto before = values(c);
    make_unreachable(c, vi, vj);
    CHECK(values(c) == before);
    CHECK_FALSE(c.edge_sign(vj, vi).has_value());

    Circuit d = c;
    make_unreachable(d, vi, vj);
    CHECK(values(d) == before);
    CHECK(d.num_edges() == c.num_edges());
}

TEST_CASE("double_vertex creates an auxiliary vertex for a missing power") {
    Eights e;
    BigInt total = oracle::eval(e.c).value;
    auto before = values(e.c);
    ReduceStats st;
    double_vertex(e.c, e.C, e.v3, e.v4, &st);
    auto after = values(e.c);
    CHECK(after.at(e.v4) == 16);
    for (VertexId x : {e.z, e.one, e.two}) CHECK(after.at(x) == before.at(x));
    CHECK(st.aux_vertices == 1);
    bool found = false;
    for (const auto& [x, val] : after) found |= (x > e.v4 && val == 4);
    CHECK(found);
    CHECK(oracle::eval(e.c).value == total);
}

TEST_CASE("double_vertex reuses an existing power") {
    Eights e;
    VertexId four = e.c.add_vertex();
    e.c.add_edge(four, e.two, 1);
    VertexId m = e.c.add_vertex();
    e.c.add_edge(m, four, 1);
    e.c.set_mark(m, 1);
    e.C.insert(3, four);
    e.C.dbl[2] = 1;
    e.C.dbl[3] = 1;
    BigInt total = oracle::eval(e.c).value;
    ReduceStats st;
    double_vertex(e.c, e.C, e.v3, e.v4, &st);
    CHECK(st.aux_vertices == 0);
    CHECK(values(e.c).at(e.v4) == 16);
    CHECK(oracle::eval(e.c).value == total);
}

TEST_CASE("double_vertex unmarks opposite marks") {
    Eights e;
    e.c.set_mark(e.v4, -1);
    VertexId keep = e.c.add_vertex();
    e.c.add_edge(keep, e.two, 1);
    e.c.set_mark(keep, 1);
    BigInt total = oracle::eval(e.c).value;
    double_vertex(e.c, e.C, e.v3, e.v4);
    CHECK(e.c.v[e.v3].mark == 0);
    CHECK(oracle::eval(e.c).value == total);
}

TEST_CASE("reduce of a normal circuit keeps its size") {
    for (std::int64_t n : {1, 2, 3, 35, -35, 1000, 65537}) {
        Circuit c = from_integer(n);
        auto r = reduce(c);
        REQUIRE(r);
        CHECK(r->num_vertices() == c.num_vertices());
        CHECK(checks::reduced(*r).empty());
        CHECK(oracle::eval(*r).value == n);
    }
}

TEST_CASE("reduce on two equal vertices over a missing power") {
    Circuit c = Eights().c;
    ReduceStats st;
    auto r = reduce(c, &st);
    REQUIRE(r);
    CHECK(oracle::eval(*r).value == 16);
    CHECK(checks::reduced(*r) == "");
    CHECK(r->num_vertices() <= c.num_vertices() + 1);
}

TEST_CASE("reduce is sound on random small circuits") {
    fuzz::Rng rng(31);
    int evaluated = 0;
    for (int t = 0; t < 4000; ++t) {
        Circuit c = random_circuit(rng, reduce_params(rng, 12));
        oracle::Value o = oracle::eval(c, 1024);
        if (o.status == oracle::Status::TooBig) continue;
        auto r = reduce(c);
        if (o.status == oracle::Status::Improper) {
            CHECK_FALSE(r.has_value());
            continue;
        }
        REQUIRE(r.has_value());
        ++evaluated;
        CHECK(r->num_vertices() <= c.num_vertices() + 1);
        REQUIRE(oracle::eval(*r, 4096).value == o.value);
        std::string why = checks::reduced(*r);
        CHECK_MESSAGE(why.empty(), why);
        auto s = sign(c);
        REQUIRE(s);
        CHECK(*s == (o.value > 0) - (o.value < 0));
    }
    CHECK(evaluated > 2000);
}

TEST_CASE("normalize yields normal circuits within the size bound") {
    fuzz::Rng rng(32);
    for (int t = 0; t < 3000; ++t) {
        Circuit c = random_circuit(rng, reduce_params(rng, 10));
        oracle::Value o = oracle::eval(c, 1024);
        if (o.status != oracle::Status::Ok) continue;
        auto r = reduce(c);
        auto n = normalize(c);
        REQUIRE(r);
        REQUIRE(n);
        CHECK(n->num_vertices() <= 2 * r->num_vertices() + 1);
        REQUIRE(oracle::eval(*n, 4096).value == o.value);
        std::string why = checks::normal(*n);
        CHECK_MESSAGE(why.empty(), why);
        CHECK(isomorphic(*n, from_integer(o.value)));
    }
}

TEST_CASE("normalize examples") {
    for (std::int64_t n : {0, 1, 7, 35, -100, 65537}) {
        auto r = normalize(from_integer(n));
        REQUIRE(r);
        CHECK(isomorphic(*r, from_integer(n)));
    }
    auto seven = normalize(add(from_integer(3), from_integer(4)));
    REQUIRE(seven);
    CHECK(isomorphic(*seven, from_integer(7)));

    // One vertex with exponent 4 + 2 + 1 becomes 8 - 1 with a new double.
    Circuit c;
    VertexId z = c.add_zero();
    VertexId one = c.add_vertex();
    c.add_edge(one, z, 1);
    VertexId two = c.add_vertex();
    c.add_edge(two, one, 1);
    VertexId four = c.add_vertex();
    c.add_edge(four, two, 1);
    VertexId top = c.add_vertex();
    c.add_edge(top, one, 1);
    c.add_edge(top, two, 1);
    c.add_edge(top, four, 1);
    c.set_mark(top, 1);
    auto n = normalize(c);
    REQUIRE(n);
    CHECK(oracle::eval(*n).value == 128);
    CHECK(checks::normal(*n) == "");
}

TEST_CASE("sign and compare") {
    CHECK(sign(from_integer(0)) == 0);
    fuzz::Rng rng(33);
    for (int t = 0; t < 200; ++t) {
        Circuit x = from_integer(fuzz::uniform(rng, -100000, 100000));
        CHECK(sign(subtract(x, x)) == 0);
    }
    Circuit t50 = tower_circuit(50);
    CHECK(sign(subtract(add(t50, from_integer(1)), t50)) == 1);
    CHECK(compare_circuits(from_integer(35), from_integer(35)) == 0);
    CHECK(compare_circuits(from_integer(BigInt(1) << 40), from_integer((BigInt(1) << 40) + 1)) == -1);
    CHECK(compare_circuits(tower_circuit(30), tower_circuit(29)) == 1);
    CHECK(compare_circuits(tower_circuit(29), tower_circuit(30)) == -1);
}

TEST_CASE("improper circuits are detected") {
    Circuit c;
    VertexId z = c.add_zero();
    VertexId one = c.add_vertex();
    c.add_edge(one, z, 1);
    VertexId half = c.add_vertex();
    c.add_edge(half, one, -1);
    VertexId h2 = c.add_vertex();
    c.add_edge(h2, half, 1);  // 2^(1/2) hangs below a mark
    c.set_mark(h2, 1);
    CHECK_FALSE(reduce(c).has_value());
    CHECK_FALSE(normalize(c).has_value());
    CHECK_FALSE(sign(c).has_value());
}

TEST_CASE("variable leaves are rejected") {
    Circuit c;
    c.set_mark(c.add_var("x"), 1);
    CHECK_THROWS_AS(reduce(c), VariableLeafError);
}
