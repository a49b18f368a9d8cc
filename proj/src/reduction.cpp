#include "pcirc/reduction.hpp"

#include "pcirc/arithmetic.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcirc {

void PrefixOrder::init(VertexId zero, VertexId unit, std::size_t nvertices) {
    rank_.assign(nvertices, -1);
    order = {zero};
    dbl = {0};
    rank_[zero] = 0;
    if (unit >= 0) {
        order.push_back(unit);
        dbl.push_back(0);
        rank_[unit] = 1;
    }
}

void PrefixOrder::renumber(std::size_t from) {
    for (std::size_t i = from; i < order.size(); ++i) rank_[order[i]] = static_cast<std::int64_t>(i);
}

void PrefixOrder::insert(std::size_t pos, VertexId x) {
    if (static_cast<std::size_t>(x) >= rank_.size()) rank_.resize(static_cast<std::size_t>(x) + 1, -1);
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), x);
    dbl.insert(dbl.begin() + static_cast<std::ptrdiff_t>(pos), 0);
    renumber(pos);
}

void PrefixOrder::erase(VertexId x) {
    auto pos = static_cast<std::size_t>(rank_[x]);
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(pos));
    dbl.erase(dbl.begin() + static_cast<std::ptrdiff_t>(pos));
    // Removing a value strictly between two powers of two leaves a gap of at least 4x.
    if (pos > 0) dbl[pos - 1] = 0;
    rank_[x] = -1;
    renumber(pos);
}

std::int64_t PrefixOrder::unit_rank(const Circuit& c) const {
    if (order.size() < 2) return -1;
    for (const auto& e : c.v[order[1]].out)
        if (e.to != order[0]) return -1;
    return 1;
}

RankSum rank_sum(const Circuit& c, const PrefixOrder& C, VertexId x) {
    RankSum s;
    s.reserve(c.v[x].out.size());
    for (const auto& e : c.v[x].out) {
        if (e.to == C.order[0]) continue;
        if (!C.contains(e.to)) throw std::logic_error("rank_sum: child outside the processed set");
        s.push_back({C.rank(e.to), e.sign});
    }
    std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.key > b.key; });
    return s;
}

namespace {

RankDomain domain(const Circuit& c, const PrefixOrder& C) { return RankDomain{&C, C.unit_rank(c)}; }

int cmp(const RankSum& a, const RankSum& b, const RankDomain& dom, ReduceStats* st) {
    std::size_t it = 0;
    int r = compare(a, b, dom, &it);
    if (st) st->compare_iterations += it;
    return r;
}

void set_edges(Circuit& c, const PrefixOrder& C, VertexId x, const RankSum& s) {
    c.v[x].out.clear();
    for (const auto& d : s) c.v[x].out.push_back({C.order[static_cast<std::size_t>(d.key)], d.sign});
    if (s.empty()) c.v[x].out.push_back({C.order[0], 1});
}

// Keeps the zero edge exactly when it is the only edge.
void fix_zero_edge(Circuit& c, VertexId x, VertexId zero) {
    auto& out = c.v[x].out;
    if (out.empty()) {
        out.push_back({zero, 1});
        return;
    }
    if (out.size() > 1) std::erase_if(out, [&](const Edge& e) { return e.to == zero; });
}

bool reaches(const Circuit& c, VertexId from, VertexId target, ReduceStats* st) {
    std::vector<char> seen(c.size(), 0);
    std::vector<VertexId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (x == target) return true;
        for (const auto& e : c.v[x].out) {
            if (st) ++st->edge_scans;
            if (!seen[e.to]) {
                seen[e.to] = 1;
                stack.push_back(e.to);
            }
        }
    }
    return false;
}

// Removes superfluous pairs among x's edges; returns the rank sum afterwards.
RankSum tidy_vertex(Circuit& c, const PrefixOrder& C, VertexId x, ReduceStats* st) {
    RankDomain dom = domain(c, C);
    RankSum s = rank_sum(c, C, x);
    std::size_t merges = 0;
    RankSum t = remove_superfluous(s, dom, &merges);
    if (st) st->edge_scans += s.size();
    if (merges) set_edges(c, C, x, t);
    return t;
}

// Binary search for x's slot in C. Returns (position, colliding vertex or -1).
std::pair<std::size_t, VertexId> locate(const Circuit& c, const PrefixOrder& C, const RankSum& s,
                                        ReduceStats* st) {
    RankDomain dom = domain(c, C);
    std::int64_t lo = 1;
    auto hi = static_cast<std::int64_t>(C.size()) - 1;
    while (lo <= hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        int r = cmp(s, rank_sum(c, C, C.order[static_cast<std::size_t>(mid)]), dom, st);
        if (r == 0) return {static_cast<std::size_t>(mid), C.order[static_cast<std::size_t>(mid)]};
        if (r > 0)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return {static_cast<std::size_t>(lo), -1};
}

// Inserts x at pos, filling the doubles bits on both sides.
void insert_at(const Circuit& c, PrefixOrder& C, std::size_t pos, VertexId x, const RankSum& s, ReduceStats* st) {
    RankDomain dom = domain(c, C);
    bool prev = pos >= 2 && cmp(s, rank_sum(c, C, C.order[pos - 1]), dom, st) == 1;
    bool next = pos < C.size() && cmp(s, rank_sum(c, C, C.order[pos]), dom, st) == -1;
    C.insert(pos, x);
    C.dbl[pos - 1] = prev;
    C.dbl[pos] = next;
}

void drop_dead(const Circuit& c, PrefixOrder& C) {
    std::vector<VertexId> dead;
    for (VertexId x : C.order)
        if (!c.v[x].alive) dead.push_back(x);
    for (VertexId x : dead) C.erase(x);
}

Certificate certificate_of(const PrefixOrder& C) {
    Certificate cert;
    cert.order = C.order;
    cert.doubles.assign(C.dbl.begin(), C.dbl.end() - 1);
    return cert;
}

}  // namespace

void make_unreachable(Circuit& c, VertexId vi, VertexId vj, ReduceStats* st) {
    if (reaches(c, vj, vi, st))
        c.v[vj].out = c.v[vi].out;
    else if (reaches(c, vi, vj, st))
        c.v[vi].out = c.v[vj].out;
}

void double_vertex(Circuit& c, PrefixOrder& C, VertexId u, VertexId v, ReduceStats* st) {
    make_unreachable(c, u, v, st);
    const VertexId zero = C.order[0];

    // Chain 2^0, 2^1, ..., 2^(L-1) sits at ranks 1..L.
    std::size_t L = 0;
    if (C.unit_rank(c) == 1) {
        L = 1;
        while (L + 1 < C.size() && C.dbl[L]) ++L;
    }
    std::size_t N = 0;
    while (N < L && c.edge_sign(v, C.order[N + 1]) == 1) ++N;
    for (std::size_t k = 0; k < N; ++k) c.remove_edge(v, C.order[k + 1]);
    if (st) st->edge_scans += c.v[v].out.size() + N;

    if (N < L) {
        // Exponent p - (2^N - 1) plus 2^N from t either way.
        VertexId t = C.order[N + 1];
        if (c.edge_sign(v, t) == -1)
            c.remove_edge(v, t);
        else
            c.add_edge(v, t, 1);
    } else {
        VertexId d = c.add_vertex();
        if (N == 0) {
            c.add_edge(d, zero, 1);
        } else {
            for (std::size_t b = 0; (std::size_t{1} << b) <= N; ++b)
                if (N & (std::size_t{1} << b)) c.add_edge(d, C.order[b + 1], 1);
        }
        RankSum ds = rank_sum(c, C, d);
        insert_at(c, C, N + 1, d, ds, st);
        c.add_edge(v, d, 1);
        if (st) ++st->aux_vertices;
    }
    fix_zero_edge(c, v, zero);

    for (VertexId k = 0; k < static_cast<VertexId>(c.size()); ++k) {
        if (k == u || k == v || !c.v[k].alive) continue;
        if (st) st->edge_scans += c.v[k].out.size();
        auto su = c.edge_sign(k, u);
        auto sv = c.edge_sign(k, v);
        if (su && sv) {
            if (*su == *sv) {
                c.remove_edge(k, u);
            } else {
                c.remove_edge(k, u);
                c.remove_edge(k, v);
                fix_zero_edge(c, k, zero);
            }
        } else if (sv) {
            c.remove_edge(k, v);
            c.add_edge(k, u, *sv);
        }
    }

    int mu = c.v[u].mark;
    int mv = c.v[v].mark;
    if (mu != 0 && mv != 0) {
        if (mu == mv) {
            c.v[u].mark = 0;
        } else {
            c.v[u].mark = 0;
            c.v[v].mark = 0;
        }
    } else if (mv != 0) {
        c.v[u].mark = mv;
        c.v[v].mark = 0;
    }
}

void separate(Circuit& c, PrefixOrder& C, VertexId u, VertexId v, ReduceStats* st) {
    const VertexId zero = C.order[0];
    for (;;) {
        double_vertex(c, C, u, v, st);
        if (st) {
            ++st->doublings;
            st->trim_visits += c.num_vertices() + c.num_edges();
        }
        trim(c, zero);
        drop_dead(c, C);
        if (!c.v[v].alive) return;
        RankSum s = tidy_vertex(c, C, v, st);
        if (c.v[u].alive) {
            auto r = static_cast<std::size_t>(C.rank(u));
            if (r + 1 < C.size() && C.dbl[r]) {
                u = C.order[r + 1];
                continue;
            }
            RankDomain dom = domain(c, C);
            bool next = r + 1 < C.size() && cmp(s, rank_sum(c, C, C.order[r + 1]), dom, st) == -1;
            C.insert(r + 1, v);
            C.dbl[r] = 1;
            C.dbl[r + 1] = next;
            return;
        }
        auto [pos, hit] = locate(c, C, s, st);
        if (hit >= 0) {
            u = hit;
            continue;
        }
        insert_at(c, C, pos, v, s, st);
        return;
    }
}

std::optional<Circuit> reduce(const Circuit& in, ReduceStats* st) {
    if (in.has_vars()) throw VariableLeafError("reduce: circuit has variable leaves");
    Circuit c = standardize(in);
    if (c.is_trivial()) {
        c.kind = CircuitKind::Reduced;
        c.cert = Certificate{{c.alive_ids().front()}, {}};
        return c;
    }
    const std::vector<VertexId> geo = geometric_order(c);
    PrefixOrder C;
    C.init(geo[0], geo[1], c.size());
    for (std::size_t i = 2; i < geo.size(); ++i) {
        VertexId v = geo[i];
        if (!c.v[v].alive) continue;
        RankSum s = tidy_vertex(c, C, v, st);
        if (sum_sign(s) < 0) return std::nullopt;
        auto [pos, hit] = locate(c, C, s, st);
        if (hit >= 0)
            separate(c, C, hit, v, st);
        else
            insert_at(c, C, pos, v, s, st);
    }
    if (st) st->trim_visits += c.num_vertices() + c.num_edges();
    trim(c);
    if (c.num_marks() == 0) {
        Circuit t = trivial_circuit();
        t.kind = CircuitKind::Reduced;
        return t;
    }
    drop_dead(c, C);
    c.cert = certificate_of(C);
    c.compact();
    c.kind = CircuitKind::Reduced;
    return c;
}

namespace {

// Builds a normal circuit bottom-up; keys are vertex ids of `out`.
class NormalBuilder {
public:
    using key_type = VertexId;
    using Sum = SignedSum<VertexId>;

    Circuit out;

    NormalBuilder() {
        zero_ = out.add_zero();
        ord_ = {zero_};
        dbl_ = {0};
        rank_ = {0};
        sums_.emplace_back();
    }

    bool less(VertexId a, VertexId b) const { return rank_[a] < rank_[b]; }
    bool is_double(VertexId hi, VertexId lo) const { return rank_[hi] == rank_[lo] + 1 && dbl_[rank_[lo]]; }
    std::optional<VertexId> half(VertexId k) const {
        auto r = rank_[k];
        if (r > 0 && dbl_[r - 1]) return ord_[r - 1];
        return std::nullopt;
    }
    bool is_unit(VertexId k) const { return rank_[k] == 1 && sums_[k].empty(); }
    std::optional<VertexId> find_double(VertexId k) const {
        auto r = static_cast<std::size_t>(rank_[k]);
        if (r + 1 < ord_.size() && dbl_[r]) return ord_[r + 1];
        return std::nullopt;
    }

    VertexId double_of(VertexId k) {
        if (auto d = find_double(k)) return *d;
        Sum s = sums_[k];
        VertexId carry = unit();
        while (carry >= 0 && !s.empty() && s.back().key == carry) {
            if (s.back().sign < 0) {
                s.pop_back();
                carry = -1;
            } else {
                s.pop_back();
                carry = double_of(carry);
            }
        }
        if (carry >= 0) s.push_back({carry, 1});
        Sum t = make_compact(s, *this);
        return place(t);
    }

    VertexId unit() {
        if (ord_.size() > 1 && sums_[ord_[1]].empty()) return ord_[1];
        return place({});
    }

    // Vertex with compact exponent sum t, created if absent.
    VertexId place(const Sum& t) {
        std::int64_t lo = 1;
        auto hi = static_cast<std::int64_t>(ord_.size()) - 1;
        while (lo <= hi) {
            std::int64_t mid = lo + (hi - lo) / 2;
            VertexId m = ord_[static_cast<std::size_t>(mid)];
            int r = cmp(t, sums_[m]);
            if (r == 0) return m;
            if (r > 0)
                lo = mid + 1;
            else
                hi = mid - 1;
        }
        auto pos = static_cast<std::size_t>(lo);
        bool prev = pos >= 2 && cmp(t, sums_[ord_[pos - 1]]) == 1;
        bool next = pos < ord_.size() && cmp(t, sums_[ord_[pos]]) == -1;
        VertexId x = out.add_vertex();
        for (const auto& d : t) out.add_edge(x, d.key, d.sign);
        if (t.empty()) out.add_edge(x, zero_, 1);
        sums_.push_back(t);
        rank_.push_back(0);
        ord_.insert(ord_.begin() + static_cast<std::ptrdiff_t>(pos), x);
        dbl_.insert(dbl_.begin() + static_cast<std::ptrdiff_t>(pos), 0);
        dbl_[pos - 1] = prev;
        dbl_[pos] = next;
        for (std::size_t i = pos; i < ord_.size(); ++i) rank_[ord_[i]] = static_cast<std::int64_t>(i);
        return x;
    }

    Sum sorted(Sum s) const {
        std::sort(s.begin(), s.end(), [&](const auto& a, const auto& b) { return rank_[a.key] > rank_[b.key]; });
        return s;
    }

    VertexId zero() const { return zero_; }

    // Trims unused vertices and attaches the certificate.
    Circuit finish() {
        trim(out);
        Certificate cert;
        std::int64_t prev = -1;
        for (std::size_t i = 0; i < ord_.size(); ++i) {
            if (!out.v[ord_[i]].alive) continue;
            if (prev >= 0) cert.doubles.push_back(static_cast<std::size_t>(prev) + 1 == i && dbl_[prev]);
            cert.order.push_back(ord_[i]);
            prev = static_cast<std::int64_t>(i);
        }
        out.cert = std::move(cert);
        out.compact();
        out.kind = CircuitKind::Normal;
        return std::move(out);
    }

private:
    int cmp(const Sum& a, const Sum& b) const { return compare(a, b, *this); }

    VertexId zero_;
    std::vector<VertexId> ord_;
    std::vector<char> dbl_;
    std::vector<std::int64_t> rank_;
    std::vector<Sum> sums_;
};

}  // namespace

std::optional<Circuit> normalize(const Circuit& in, ReduceStats* st) {
    auto r = reduce(in, st);
    if (!r) return std::nullopt;
    if (r->is_trivial()) return trivial_circuit();
    const Circuit& c = *r;
    const auto& order = c.cert->order;
    NormalBuilder b;
    std::vector<VertexId> image(c.size(), -1);
    image[order[0]] = b.zero();
    for (std::size_t i = 1; i < order.size(); ++i) {
        VertexId x = order[i];
        NormalBuilder::Sum s;
        for (const auto& e : c.v[x].out)
            if (e.to != order[0]) s.push_back({image[e.to], e.sign});
        image[x] = b.place(make_compact(b.sorted(s), b));
    }
    NormalBuilder::Sum m;
    for (VertexId x : c.marked()) m.push_back({image[x], c.v[x].mark});
    for (const auto& d : make_compact(b.sorted(m), b)) b.out.set_mark(d.key, d.sign);
    return b.finish();
}

int sign_of_reduced(const Circuit& r) {
    if (r.is_trivial()) return 0;
    if (!r.cert) throw CircuitError("sign_of_reduced: circuit has no certificate");
    const auto& order = r.cert->order;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (r.v[*it].mark != 0) return r.v[*it].mark;
    return 0;
}

std::optional<int> sign(const Circuit& c) {
    auto r = reduce(c);
    if (!r) return std::nullopt;
    return sign_of_reduced(*r);
}

std::optional<int> compare_circuits(const Circuit& a, const Circuit& b) { return sign(subtract(a, b)); }

}  // namespace pcirc
