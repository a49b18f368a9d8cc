#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pcirc {

using BigInt = boost::multiprecision::cpp_int;

// Number of bits in |n|; 0 for n == 0.
inline std::uint64_t bit_length(const BigInt& n) {
    if (n == 0) return 0;
    return boost::multiprecision::msb(boost::multiprecision::abs(n)) + 1;
}

// ceil(log2 |n|) for n != 0.
inline std::uint64_t ceil_log2(const BigInt& n) {
    BigInt a = boost::multiprecision::abs(n);
    std::uint64_t b = bit_length(a);
    if (b == 0) return 0;
    return (a == (BigInt(1) << (b - 1))) ? b - 1 : b;
}

inline std::string to_string(const BigInt& n) { return n.str(); }

}  // namespace pcirc
