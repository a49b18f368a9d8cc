#pragma once
// Terms over +, -, *, x*2^y, x*2^(-y) with integer constants, quantifier-free
// formulas over <=, = and their evaluation through normal circuits.
//
// Grammar, loosest binding first:
//   formula  :=  formula '|' formula  |  formula '&' formula  |  '!' formula
//             |  term rel term            rel in  <=  =  <  >=  >
//   term     :=  term ('+' | '-') term  |  term '*' term
//             |  term ('<<^' | '>>^') term        (right associative)
//             |  '-' term  |  primary
//   primary  :=  '2^' primary  |  integer  |  0b binary  |  identifier
//             |  'tower(' term ')'  |  '(' formula-or-term ')'

#include "pcirc/bigint.hpp"
#include "pcirc/circuit.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace pcirc {

enum class TermOp { Const, Var, Add, Sub, Mul, MulPow2, DivPow2, Neg, Tower };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermOp op;
    BigInt value;      // Const
    std::string name;  // Var
    TermPtr a, b;      // operands; Neg and Tower use a only
    std::size_t pos = 0;
};

TermPtr make_const(const BigInt& n);
TermPtr make_var(const std::string& name);
TermPtr make_op(TermOp op, TermPtr a, TermPtr b = nullptr);

enum class Rel { Le, Eq };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, And, Or, Not } kind;
    Rel rel = Rel::Le;
    TermPtr lhs, rhs;  // Atom
    FormulaPtr a, b;   // connectives; Not uses a only
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t p, const std::string& msg);
};

using Parsed = std::variant<TermPtr, FormulaPtr>;

// `a < b` becomes `a <= b & !(a = b)`; `>` and `>=` swap their sides.
Parsed parse(const std::string& src);
TermPtr parse_term(const std::string& src);

std::string to_string(const TermPtr& t);
std::string to_string(const FormulaPtr& f);

// Number of operations in t.
std::size_t term_size(const TermPtr& t);

// Term whose value is the circuit's value: 2^(sum of children) per vertex,
// children in index order.
TermPtr term_of(const Circuit& c);

using Assignment = std::map<std::string, BigInt>;

struct UnboundVariable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Replaces tower(k) by k nested 2^(...); k must evaluate to a constant in [0, 100000].
TermPtr expand_macros(const TermPtr& t, const Assignment& lets = {});

// Structural circuit of t without any reduction. Without an assignment,
// variables become marked variable leaves.
Circuit tau(const TermPtr& t, const Assignment* eta = nullptr);

struct Witness {
    std::string path;  // child indices from the root, e.g. "0.1"
    std::string subterm;
};

struct RealizeOptions {
    std::size_t max_vertices = 1000000;
};

struct Realized {
    std::optional<Circuit> circuit;  // normal circuit when defined
    std::optional<Witness> undefined;
};

// Bottom-up realization with a reduction after every step; the final
// circuit is normal. Throws BudgetExceeded past max_vertices.
Realized realize(const TermPtr& t, const Assignment& eta = {}, const RealizeOptions& opt = {});

enum class Truth { False, True, Undefined };

struct EvalOutcome {
    Truth value;
    std::optional<Witness> witness;
};

// Each atom is decided by the sign of the normal circuit of lhs - rhs.
EvalOutcome eval_formula(const FormulaPtr& f, const Assignment& eta = {}, const RealizeOptions& opt = {});

const char* to_string(Truth t);

}  // namespace pcirc
