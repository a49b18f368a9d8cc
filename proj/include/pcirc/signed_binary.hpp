#pragma once
// Signed binary sums: sequences of (key, +-1) digits over an ordered
// exponent domain. Digits are stored most significant first.
//
// A domain D supplies
//   key_type
//   bool less(a, b)                    strict order on keys
//   bool is_double(hi, lo)             value(hi) == 2 * value(lo)
//   std::optional<key_type> half(k)    key whose value is value(k) / 2
//   bool is_unit(k)                    value(k) == 1, i.e. exponent 0
//   std::optional<key_type> find_double(k)
//   key_type double_of(k)              may create the key (make_compact only)

#include "pcirc/bigint.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcirc {

template <class K>
struct Digit {
    K key;
    int sign;  // -1 or +1
    friend bool operator==(const Digit&, const Digit&) = default;
};

template <class K>
using SignedSum = std::vector<Digit<K>>;

using Exponent = std::int64_t;
using IntSum = SignedSum<Exponent>;

// Keys are the exponents themselves.
struct IntDomain {
    using key_type = Exponent;
    bool less(Exponent a, Exponent b) const { return a < b; }
    bool is_double(Exponent hi, Exponent lo) const { return hi == lo + 1; }
    std::optional<Exponent> half(Exponent k) const {
        if (k > 0) return k - 1;
        return std::nullopt;
    }
    bool is_unit(Exponent k) const { return k == 0; }
    std::optional<Exponent> find_double(Exponent k) const { return k + 1; }
    Exponent double_of(Exponent k) const { return k + 1; }
};

// Replaces every adjacent pair  e*2^(q+1) - e*2^q  by  e*2^q until none is left.
template <class D>
SignedSum<typename D::key_type> remove_superfluous(const SignedSum<typename D::key_type>& s, const D& dom,
                                                   std::size_t* merges = nullptr) {
    SignedSum<typename D::key_type> out;
    out.reserve(s.size());
    for (auto cur : s) {
        while (!out.empty() && out.back().sign == -cur.sign && dom.is_double(out.back().key, cur.key)) {
            cur.sign = out.back().sign;
            out.pop_back();
            if (merges) ++*merges;
        }
        out.push_back(cur);
    }
    return out;
}

namespace detail {

// Five-way classification of a non-empty sum without superfluous pairs,
// read through the sign multiplier s. Stack order: back() is the leading digit.
template <class D, class K>
int classify_nonempty(const std::vector<Digit<K>>& st, int s, const D& dom) {
    int lead = st.back().sign * s;
    if (st.size() == 1 && dom.is_unit(st.back().key)) return lead;
    return 2 * lead;
}

}  // namespace detail

// Returns -2, -1, 0, 1, 2 according to N(a) - N(b) being < -1, == -1, == 0, == 1, > 1.
// Both inputs must be reduced. Superfluous pairs are removed first.
template <class D>
int compare(const SignedSum<typename D::key_type>& a, const SignedSum<typename D::key_type>& b, const D& dom,
            std::size_t* iterations = nullptr) {
    using K = typename D::key_type;
    std::size_t it = 0;
    SignedSum<K> ra = remove_superfluous(a, dom, &it);
    SignedSum<K> rb = remove_superfluous(b, dom, &it);
    std::vector<Digit<K>> A(ra.rbegin(), ra.rend());
    std::vector<Digit<K>> B(rb.rbegin(), rb.rend());

    // Effective digit sign is stored sign * s; the answer is multiplied by outer.
    int outer = 1;
    int s = 1;
    auto done = [&](int r) {
        if (iterations) *iterations += it;
        return outer * r;
    };
    for (;;) {
        ++it;
        if (A.empty() && B.empty()) return done(0);
        if (B.empty()) return done(detail::classify_nonempty(A, s, dom));
        if (A.empty()) return done(-detail::classify_nonempty(B, s, dom));

        const K ka = A.back().key;
        const K kb = B.back().key;
        if (ka == kb) {
            int al = A.back().sign * s;
            int be = B.back().sign * s;
            if (al == be) {
                A.pop_back();
                B.pop_back();
                continue;
            }
            return done(2 * al);
        }
        if (dom.less(ka, kb)) {
            std::swap(A, B);
            outer = -outer;
        }
        if (A.back().sign * s < 0) {
            s = -s;
            outer = -outer;
        }
        // Now A leads with +1 and B has no digit at that key.
        const K n = A.back().key;
        const std::optional<K> h = dom.half(n);
        int a2 = 0;
        int b2 = 0;
        if (h) {
            if (A.size() >= 2 && A[A.size() - 2].key == *h) a2 = A[A.size() - 2].sign * s;
            if (B.back().key == *h) b2 = B.back().sign * s;
        }
        if (a2 == -1) throw std::logic_error("compare: superfluous pair survived");
        if (a2 == 1 || b2 < 1) return done(2);
        // 2^n + tail(A) vs 2^(n-1) + tail(B): move one 2^(n-1) across.
        A.back() = Digit<K>{*h, s};
        B.pop_back();
        while (A.size() >= 2) {
            auto& hi = A[A.size() - 1];
            auto& lo = A[A.size() - 2];
            if (hi.sign == -lo.sign && dom.is_double(hi.key, lo.key)) {
                lo.sign = hi.sign;
                A.pop_back();
                ++it;
            } else {
                break;
            }
        }
    }
}

// Unique compact form (no two keys at adjacent exponents). The input must be
// reduced; superfluous pairs are allowed. Only keys k with k or half(k) in
// the input are ever requested from dom.double_of.
template <class D>
SignedSum<typename D::key_type> make_compact(const SignedSum<typename D::key_type>& s, D& dom) {
    using K = typename D::key_type;
    std::vector<Digit<K>> asc(s.rbegin(), s.rend());
    std::vector<Digit<K>> out;
    std::size_t i = 0;
    int carry = 0;
    K cur{};
    for (;;) {
        if (carry == 0) {
            if (i == asc.size()) break;
            cur = asc[i].key;
        }
        int d = 0;
        if (i < asc.size() && asc[i].key == cur) d = asc[i++].sign;
        int t = carry + d;
        if (t % 2 == 0) {
            carry = t / 2;
        } else {
            int d1 = 0;
            if (i < asc.size()) {
                std::optional<K> nx = dom.find_double(cur);
                if (nx && asc[i].key == *nx) d1 = asc[i].sign;
            }
            int m = ((t + 2 * d1) % 4 + 4) % 4;
            int z = (m == 1) ? 1 : -1;
            out.push_back(Digit<K>{cur, z});
            carry = (t - z) / 2;
        }
        if (carry != 0) cur = dom.double_of(cur);
    }
    return SignedSum<K>(out.rbegin(), out.rend());
}

// Leading coefficient, 0 for the empty sum.
template <class K>
int sum_sign(const SignedSum<K>& s) {
    return s.empty() ? 0 : s.front().sign;
}

// Merges an unordered digit multiset into a reduced integer-exponent sum.
// Equal signs at one exponent carry into the next exponent.
IntSum reduce_sum(const std::vector<Digit<Exponent>>& digits);

IntSum remove_superfluous(const IntSum& s);
int compare(const IntSum& a, const IntSum& b, std::size_t* iterations = nullptr);
IntSum make_compact(const IntSum& s);

// True iff N(s) is divisible by 2^n. s must be reduced.
bool divisible_by_pow2(const IntSum& s, Exponent n);

IntSum compact_of_integer(const BigInt& n);
IntSum compact_of_integer(std::int64_t n);

BigInt value_of(const IntSum& s);

bool is_reduced(const IntSum& s);
bool is_compact(const IntSum& s);

// "+2^5 -2^3 +2^0"; "0" for the empty sum.
std::string to_string(const IntSum& s);

}  // namespace pcirc
