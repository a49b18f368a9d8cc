#include "checks.hpp"
#include "fuzz.hpp"
#include "oracle.hpp"

#include "pcirc/arithmetic.hpp"
#include "pcirc/generate.hpp"
#include "pcirc/reduction.hpp"

#include <doctest.h>

using namespace pcirc;

namespace {

BigInt val(const Circuit& c) {
    oracle::Value v = oracle::eval(c, 1 << 16);
    REQUIRE(v.status == oracle::Status::Ok);
    return v.value;
}

BigInt val(const std::optional<Circuit>& c) {
    REQUIRE(c.has_value());
    return val(*c);
}

Circuit random_operand(fuzz::Rng& rng) {
    switch (fuzz::uniform(rng, 0, 2)) {
        case 0: return from_integer(fuzz::uniform(rng, -5000, 5000));
        case 1: return add(from_integer(fuzz::uniform(rng, -50, 50)), from_integer(fuzz::uniform(rng, -50, 50)));
        default: {
            auto r = reduce(subtract(from_integer(fuzz::uniform(rng, -900, 900)), from_integer(fuzz::uniform(rng, 0, 9))));
            return *r;
        }
    }
}

}  // namespace

TEST_CASE("add and subtract") {
    auto two = normalize(add(from_integer(1), from_integer(1)));
    REQUIRE(two);
    CHECK(isomorphic(*two, from_integer(2)));
    Circuit x = from_integer(12345);
    CHECK(val(add(x, from_integer(0))) == 12345);
    CHECK(sign(subtract(from_integer(35), from_integer(35))) == 0);
    CHECK(val(negate(from_integer(35))) == -35);
}

TEST_CASE("sizes of disjoint unions add up exactly") {
    fuzz::Rng rng(41);
    for (int t = 0; t < 2000; ++t) {
        Circuit a = random_operand(rng), b = random_operand(rng);
        for (const Circuit& r : {add(a, b), subtract(a, b)}) {
            CHECK(r.num_vertices() == a.num_vertices() + b.num_vertices());
            CHECK(r.num_edges() == a.num_edges() + b.num_edges());
            CHECK(r.num_marks() == a.num_marks() + b.num_marks());
        }
    }
}

TEST_CASE("exp2") {
    CHECK(val(exp2(from_integer(0))) == 1);
    CHECK(val(exp2(from_integer(3))) == 8);
    Circuit c = from_integer(1);
    BigInt expect = 1;
    for (int k = 1; k <= 4; ++k) {
        c = exp2(c);
        expect = BigInt(1) << static_cast<unsigned>(expect);
        CHECK(c.num_vertices() <= static_cast<std::size_t>(k) + 2);
        CHECK(val(c) == expect);
    }
    fuzz::Rng rng(42);
    for (int t = 0; t < 500; ++t) {
        Circuit a = random_operand(rng);
        Circuit e = exp2(a);
        CHECK(e.num_vertices() == a.num_vertices() + 1);
        CHECK(e.num_edges() <= a.num_edges() + a.num_vertices());
        CHECK(e.num_marks() == 1);
    }
}

TEST_CASE("multiply") {
    CHECK(val(multiply(from_integer(1), from_integer(-77))) == -77);
    Circuit p4 = tower_plus_one(4);
    CHECK(val(p4) == 17);
    CHECK(val(multiply(p4, p4)) == 289);
    CHECK(val(multiply(from_integer(0), from_integer(5))) == 0);
    fuzz::Rng rng(43);
    for (int t = 0; t < 1000; ++t) {
        Circuit a = random_operand(rng), b = random_operand(rng);
        Circuit m = multiply(a, b);
        CHECK(val(m) == val(a) * val(b));
        CHECK(m.num_marks() == a.num_marks() * b.num_marks());
        CHECK(m.num_vertices() <= a.num_vertices() + b.num_vertices() + a.num_marks() * b.num_marks());
    }
}

TEST_CASE("mul_pow2") {
    CHECK(val(mul_pow2(from_integer(3), from_integer(4))) == 48);
    CHECK(val(mul_pow2(from_integer(-9), from_integer(0))) == -9);
    for (int k = 0; k <= 16; ++k) CHECK(val(mul_pow2(from_integer(1), from_integer(k))) == val(exp2(from_integer(k))));
    fuzz::Rng rng(44);
    for (int t = 0; t < 1000; ++t) {
        Circuit a = random_operand(rng);
        Circuit b = from_integer(fuzz::uniform(rng, 0, 40));
        Circuit m = mul_pow2(a, b);
        CHECK(val(m) == val(a) << static_cast<unsigned>(val(b)));
        CHECK(m.num_vertices() <= a.num_vertices() + b.num_vertices() + a.num_marks());
        CHECK(m.num_marks() == marked_to_sources(a).num_marks());
    }
}

TEST_CASE("div_pow2 exact") {
    CHECK(val(div_pow2(from_integer(48), from_integer(4))) == 3);
    CHECK_FALSE(div_pow2(from_integer(3), from_integer(1)).has_value());
    CHECK(val(div_pow2(from_integer(-7), from_integer(0))) == -7);
    fuzz::Rng rng(45);
    for (int t = 0; t < 1500; ++t) {
        Circuit a = random_operand(rng);
        std::int64_t k = fuzz::uniform(rng, 0, 14);
        BigInt x = val(a);
        auto q = div_pow2(a, from_integer(k));
        BigInt den = BigInt(1) << static_cast<unsigned>(k);
        if (x % den == 0) {
            REQUIRE(q.has_value());
            CHECK(val(q) == x / den);
            CHECK(checks::reduced(*q).empty());
        } else {
            CHECK_FALSE(q.has_value());
        }
    }
}

TEST_CASE("div_pow2 dropping summands below the divisor") {
    // 3 is 4 - 1 in compact form; the summand 1 goes.
    CHECK(val(div_pow2(from_integer(3), from_integer(1), DivMode::Drop)) == 2);
    // 7 = 8 - 1 gives 4 where the floor would be 3.
    CHECK(val(div_pow2(from_integer(7), from_integer(1), DivMode::Drop)) == 4);
    CHECK(val(div_pow2(from_integer(1), from_integer(5), DivMode::Drop)) == 0);
    fuzz::Rng rng(46);
    for (int t = 0; t < 1500; ++t) {
        Circuit a = random_operand(rng);
        std::int64_t k = fuzz::uniform(rng, 0, 14);
        auto ra = reduce(a);
        REQUIRE(ra);
        BigInt kept = 0;
        bool same_sign = true;
        int first = 0;
        auto vals = *checks::all_values(*ra, 1 << 16);
        for (VertexId m : ra->marked()) {
            const BigInt& v = vals.at(m);
            if (v == 0) continue;
            if (first == 0) first = ra->v[m].mark;
            same_sign &= ra->v[m].mark == first;
            if (v >= (BigInt(1) << static_cast<unsigned>(k))) kept += ra->v[m].mark * v;
        }
        auto q = div_pow2(a, from_integer(k), DivMode::Drop);
        REQUIRE(q.has_value());
        BigInt den = BigInt(1) << static_cast<unsigned>(k);
        CHECK(val(q) == kept / den);
        BigInt x = val(a);
        if (same_sign) {
            BigInt fl = x / den;
            if (x < 0 && x % den != 0) fl -= 1;
            // Summands of one sign truncate toward zero.
            CHECK(val(q) == (x >= 0 ? fl : BigInt(x / den)));
        }
    }
}

TEST_CASE("operations on improper inputs") {
    Circuit half = div_pow2_unchecked(from_integer(1), from_integer(1));
    CHECK_FALSE(reduce(half).has_value());
    CHECK_FALSE(div_pow2(half, from_integer(0)).has_value());
}

TEST_CASE("scaling a marked variable leaf is rejected") {
    Circuit x;
    x.set_mark(x.add_var("x"), 1);
    CHECK_THROWS_AS(mul_pow2(x, from_integer(2)), VariableLeafError);
    CHECK_THROWS_AS(multiply(x, from_integer(2)), VariableLeafError);
    Circuit s = add(x, from_integer(2));
    CHECK(s.num_marks() == 1 + from_integer(2).num_marks());
    std::map<std::string, BigInt> vars{{"x", 5}};
    CHECK(eval_bignum(s, 64, &vars).value == 7);
    Circuit e = mul_pow2(from_integer(3), x);
    CHECK(eval_bignum(e, 64, &vars).value == 96);
}
