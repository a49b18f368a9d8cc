#pragma once
// Circuit constructions for +, -, *, 2^x, x*2^y and x*2^(-y).
// Results are not reduced unless stated.

#include "pcirc/circuit.hpp"

#include <optional>

namespace pcirc {

// Appends a copy of src's live vertices to dst, returning src id -> dst id.
std::vector<VertexId> append(Circuit& dst, const Circuit& src, int mark_factor = 1);

// Disjoint union; |V|, |E| and |M| add up exactly.
Circuit add(const Circuit& a, const Circuit& b);
Circuit subtract(const Circuit& a, const Circuit& b);
Circuit negate(const Circuit& a);

// New apex with an edge of sign nu(u) to every mark u; the apex is the only mark.
Circuit exp2(const Circuit& a);

// Product; pair vertices for every pair of marks. Marked variable leaves
// cannot be paired and throw VariableLeafError.
Circuit multiply(const Circuit& a, const Circuit& b);

// a * 2^b.
Circuit mul_pow2(const Circuit& a, const Circuit& b);

// a * 2^(-b) without any check; the result may be improper.
Circuit div_pow2_unchecked(const Circuit& a, const Circuit& b);

enum class DivMode {
    Exact,  // nullopt unless the quotient is an integer
    Drop,   // unmark every summand of reduced a whose exponent is below b
};

// Reduced quotient, or nullopt when improper (Exact) or when a or b is improper.
std::optional<Circuit> div_pow2(const Circuit& a, const Circuit& b, DivMode mode = DivMode::Exact);

}  // namespace pcirc
