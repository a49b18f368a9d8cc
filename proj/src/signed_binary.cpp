#include "pcirc/signed_binary.hpp"

#include <map>

namespace pcirc {

IntSum reduce_sum(const std::vector<Digit<Exponent>>& digits) {
    std::map<Exponent, std::int64_t> count;
    for (const auto& d : digits) count[d.key] += d.sign;
    IntSum asc;
    for (auto it = count.begin(); it != count.end(); ++it) {
        std::int64_t c = it->second;
        if (c == 0) continue;
        int r = (c % 2 == 0) ? 0 : (c > 0 ? 1 : -1);
        std::int64_t q = (c - r) / 2;
        if (q != 0) count[it->first + 1] += q;
        if (r != 0) asc.push_back({it->first, r});
    }
    return IntSum(asc.rbegin(), asc.rend());
}

IntSum remove_superfluous(const IntSum& s) { return remove_superfluous(s, IntDomain{}); }

int compare(const IntSum& a, const IntSum& b, std::size_t* iterations) {
    return compare(a, b, IntDomain{}, iterations);
}

IntSum make_compact(const IntSum& s) {
    IntDomain dom;
    return make_compact(s, dom);
}

bool divisible_by_pow2(const IntSum& s, Exponent n) {
    if (s.empty()) return true;
    return s.back().key >= n;
}

IntSum compact_of_integer(const BigInt& n) {
    IntSum asc;
    int sign = n < 0 ? -1 : 1;
    BigInt x = boost::multiprecision::abs(n);
    Exponent pos = 0;
    while (x != 0) {
        if (boost::multiprecision::bit_test(x, 0)) {
            // x mod 4 == 1 -> digit +1, x mod 4 == 3 -> digit -1
            int z = boost::multiprecision::bit_test(x, 1) ? -1 : 1;
            asc.push_back({pos, z * sign});
            if (z == 1)
                x -= 1;
            else
                x += 1;
        }
        x >>= 1;
        ++pos;
    }
    return IntSum(asc.rbegin(), asc.rend());
}

IntSum compact_of_integer(std::int64_t n) { return compact_of_integer(BigInt(n)); }

BigInt value_of(const IntSum& s) {
    BigInt v = 0;
    for (const auto& d : s) {
        BigInt p = BigInt(1) << static_cast<unsigned>(d.key);
        if (d.sign > 0)
            v += p;
        else
            v -= p;
    }
    return v;
}

bool is_reduced(const IntSum& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].sign != 1 && s[i].sign != -1) return false;
        if (s[i].key < 0) return false;
        if (i > 0 && s[i - 1].key <= s[i].key) return false;
    }
    return true;
}

bool is_compact(const IntSum& s) {
    if (!is_reduced(s)) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1].key - s[i].key < 2) return false;
    return true;
}

std::string to_string(const IntSum& s) {
    if (s.empty()) return "0";
    std::string out;
    for (const auto& d : s) {
        if (!out.empty()) out += ' ';
        out += d.sign > 0 ? '+' : '-';
        out += "2^" + std::to_string(d.key);
    }
    return out;
}

}  // namespace pcirc
