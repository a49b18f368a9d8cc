#include "checks.hpp"
#include "fuzz.hpp"
#include "oracle.hpp"

#include "pcirc/reduction.hpp"
#include "pcirc/term.hpp"

#include <doctest.h>

using namespace pcirc;

namespace {

TermPtr term(const std::string& s) { return parse_term(s); }

FormulaPtr formula(const std::string& s) {
    Parsed p = parse(s);
    REQUIRE(std::holds_alternative<FormulaPtr>(p));
    return std::get<FormulaPtr>(p);
}

BigInt realized_value(const std::string& s, const Assignment& eta = {}) {
    Realized r = realize(term(s), eta);
    REQUIRE(r.circuit.has_value());
    return eval_bignum(*r.circuit).value;
}

}  // namespace

TEST_CASE("parser precedence and associativity") {
    CHECK(to_string(term("1+2*3")) == to_string(term("1+(2*3)")));
    CHECK(to_string(term("1-2-3")) == to_string(term("(1-2)-3")));
    CHECK(to_string(term("1 <<^ 2 <<^ 3")) == to_string(term("1 <<^ (2 <<^ 3)")));
    CHECK(to_string(term("2^2^3")) == to_string(term("2^(2^3)")));
    CHECK(realized_value("0b1011") == 11);
    CHECK(realized_value("2^2^3") == 256);
    CHECK(realized_value("-3*4") == -12);
    CHECK(realized_value("tower(3)") == 16);
}

TEST_CASE("parse errors carry a position") {
    for (const char* bad : {"", "1+", "(1", "1 <= ", "2^", "1 ** 2", "x y", "1 <= 2 <= 3", "tower(", "0b", "1 $ 2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse(bad), ParseError);
    }
    try {
        parse("1 + * 2");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);  // 1-based column of '*'
    }
}

TEST_CASE("printing round trips through the parser") {
    fuzz::Rng rng(51);
    for (int t = 0; t < 2000; ++t) {
        FormulaPtr f = fuzz::random_formula(rng, 3, 3);
        std::string s = to_string(f);
        Parsed back = parse(s);
        REQUIRE(std::holds_alternative<FormulaPtr>(back));
        CHECK(to_string(std::get<FormulaPtr>(back)) == s);
    }
}

TEST_CASE("tau size bounds") {
    fuzz::Rng rng(52);
    for (int t = 0; t < 5000; ++t) {
        TermPtr u = fuzz::random_unit_term(rng, 5);
        std::size_t n = term_size(u);
        Circuit c = tau(u);
        CHECK(c.num_marks() <= n + 1);
        CHECK(c.num_vertices() <= 2 * n + 2);
        std::vector<int> indeg(c.size(), 0);
        for (VertexId i : c.alive_ids())
            for (const auto& e : c.v[i].out) ++indeg[e.to];
        for (VertexId m : c.marked()) CHECK(indeg[m] == 0);
    }
}

TEST_CASE("tau evaluates like the term") {
    fuzz::Rng rng(53);
    int checked = 0;
    for (int t = 0; t < 3000; ++t) {
        TermPtr u = fuzz::random_term(rng, 4, true, false);
        oracle::Value o = oracle::eval_term(u, {}, 256);
        oracle::Value c = oracle::eval(tau(u), 256);
        if (o.status == oracle::Status::TooBig || c.status == oracle::Status::TooBig) continue;
        if (o.status == oracle::Status::Ok && c.status == oracle::Status::Ok) {
            CHECK(o.value == c.value);
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("realize examples") {
    CHECK(realized_value("x+y", {{"x", 3}, {"y", 4}}) == 7);
    CHECK(realized_value("x <<^ x", {{"x", 0}}) == 0);
    CHECK(realized_value("48 >>^ 4") == 3);
    CHECK(realized_value("17*17") == 289);
    Realized r = realize(term("1 >>^ 1"));
    CHECK_FALSE(r.circuit.has_value());
    REQUIRE(r.undefined.has_value());
    CHECK(r.undefined->subterm.find(">>^") != std::string::npos);
    Realized deep = realize(term("5 + (3 >>^ 1)"));
    REQUIRE(deep.undefined.has_value());
    CHECK(deep.undefined->path == "1");
    CHECK_THROWS_AS(realize(term("x + 1")), UnboundVariable);
}

TEST_CASE("realized circuits are normal and match the oracle") {
    fuzz::Rng rng(54);
    int checked = 0;
    for (int t = 0; t < 2000; ++t) {
        TermPtr u = fuzz::random_term(rng, 4, true, true);
        Assignment eta{{"x", fuzz::uniform(rng, -20, 20)}, {"y", fuzz::uniform(rng, 0, 12)}};
        oracle::Value o = oracle::eval_term(u, eta, 512);
        if (o.status == oracle::Status::TooBig) continue;
        Realized r = realize(u, eta);
        if (o.status == oracle::Status::Improper) {
            CHECK_FALSE(r.circuit.has_value());
            continue;
        }
        REQUIRE(r.circuit.has_value());
        CHECK(oracle::eval(*r.circuit, 4096).value == o.value);
        std::string why = checks::normal(*r.circuit);
        CHECK_MESSAGE(why.empty(), why);
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("formula examples") {
    CHECK(eval_formula(formula("1+1=2")).value == Truth::True);
    CHECK(eval_formula(formula("1+1=3")).value == Truth::False);
    CHECK(eval_formula(formula("3 >>^ 1 = 1")).value == Truth::Undefined);
    CHECK(eval_formula(formula("1 = 2 & 3 >>^ 1 = 1")).value == Truth::False);
    CHECK(eval_formula(formula("1 = 1 | 3 >>^ 1 = 1")).value == Truth::True);
    CHECK(eval_formula(formula("!(3 >>^ 1 = 1)")).value == Truth::Undefined);
    CHECK(eval_formula(formula("2 < 3 & 3 > 2 & 3 >= 3 & !(3 < 3)")).value == Truth::True);
    CHECK(eval_formula(formula("x*x <= 2^x"), {{"x", 4}}).value == Truth::True);
    CHECK(eval_formula(formula("x*x <= 2^x"), {{"x", 3}}).value == Truth::False);
    CHECK(eval_formula(formula("tower(x)+1 > tower(x)"), {{"x", 30}}).value == Truth::True);
    EvalOutcome u = eval_formula(formula("0 <= 1 >>^ 2"));
    CHECK(u.value == Truth::Undefined);
    CHECK(u.witness.has_value());
}

TEST_CASE("formula evaluation agrees with the oracle") {
    fuzz::Rng rng(55);
    int checked = 0;
    for (int t = 0; t < 1500; ++t) {
        FormulaPtr f = fuzz::random_formula(rng, 2, 3);
        Assignment eta{{"x", fuzz::uniform(rng, -20, 20)}, {"y", fuzz::uniform(rng, 0, 12)}};
        auto o = oracle::eval_formula(f, eta, 512);
        if (!o) continue;
        CHECK(eval_formula(f, eta).value == *o);
        ++checked;
    }
    CHECK(checked > 700);
}

TEST_CASE("tower macro") {
    CHECK(to_string(expand_macros(term("tower(2)"))) == to_string(term("2^2^1")));
    CHECK(realized_value("tower(0)") == 1);
    CHECK(realized_value("tower(n)", {{"n", 4}}) == 65536);
    CHECK_THROWS(expand_macros(term("tower(-1)")));
    Realized big = realize(term("tower(60) - tower(60)"));
    REQUIRE(big.circuit);
    CHECK(sign(*big.circuit) == 0);
}
