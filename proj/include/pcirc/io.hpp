#pragma once
// JSON circuit format and DOT export.
//
// {"vertices": [{"id": 0, "leaf": "zero"}, {"id": 1, "leaf": null}, {"id": 2, "leaf": {"var": "x"}}],
//  "edges":    [{"from": 1, "to": 0, "sign": 1}],
//  "marks":    [{"vertex": 1, "sign": 1}],
//  "kind": "normal",                                        optional
//  "certificate": {"order": [0, 1], "doubles": "0"}}        optional

#include "pcirc/circuit.hpp"

#include <stdexcept>
#include <string>

namespace pcirc {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses and validates; throws FormatError.
Circuit circuit_from_json(const std::string& text);

// Deterministic: ids are renumbered 0..n-1 in index order.
std::string circuit_to_json(const Circuit& c);

std::string circuit_to_dot(const Circuit& c);

std::string hash_hex(std::uint64_t h);

const char* kind_name(CircuitKind k);

}  // namespace pcirc
