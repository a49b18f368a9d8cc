#include "pcirc/circuit.hpp"

#include "pcirc/signed_binary.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace pcirc {

VertexId Circuit::add_vertex() {
    v.emplace_back();
    return static_cast<VertexId>(v.size() - 1);
}

VertexId Circuit::add_zero() {
    VertexId x = add_vertex();
    v[x].leaf = LeafKind::Zero;
    return x;
}

VertexId Circuit::add_var(const std::string& name) {
    VertexId x = add_vertex();
    v[x].leaf = LeafKind::Var;
    v[x].var = name;
    return x;
}

void Circuit::add_edge(VertexId from, VertexId to, int sign) {
    for (const auto& e : v[from].out)
        if (e.to == to) throw CircuitError("multi-edge " + std::to_string(from) + "->" + std::to_string(to));
    v[from].out.push_back({to, sign});
}

bool Circuit::remove_edge(VertexId from, VertexId to) {
    auto& out = v[from].out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].to == to) {
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
            return true;
        }
    }
    return false;
}

std::optional<int> Circuit::edge_sign(VertexId from, VertexId to) const {
    for (const auto& e : v[from].out)
        if (e.to == to) return e.sign;
    return std::nullopt;
}

void Circuit::kill(VertexId x) {
    v[x].alive = false;
    v[x].out.clear();
    v[x].mark = 0;
}

std::size_t Circuit::num_vertices() const {
    std::size_t n = 0;
    for (const auto& x : v) n += x.alive;
    return n;
}

std::size_t Circuit::num_edges() const {
    std::size_t n = 0;
    for (const auto& x : v)
        if (x.alive) n += x.out.size();
    return n;
}

std::size_t Circuit::num_marks() const {
    std::size_t n = 0;
    for (const auto& x : v) n += (x.alive && x.mark != 0);
    return n;
}

std::vector<VertexId> Circuit::alive_ids() const {
    std::vector<VertexId> r;
    for (VertexId i = 0; i < static_cast<VertexId>(v.size()); ++i)
        if (v[i].alive) r.push_back(i);
    return r;
}

std::vector<VertexId> Circuit::marked() const {
    std::vector<VertexId> r;
    for (VertexId i = 0; i < static_cast<VertexId>(v.size()); ++i)
        if (v[i].alive && v[i].mark != 0) r.push_back(i);
    return r;
}

bool Circuit::has_vars() const {
    for (const auto& x : v)
        if (x.alive && x.leaf == LeafKind::Var) return true;
    return false;
}

std::vector<VertexId> Circuit::compact() {
    std::vector<VertexId> remap(v.size(), -1);
    VertexId next = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].alive) remap[i] = next++;
    std::vector<Vertex> nv;
    nv.reserve(static_cast<std::size_t>(next));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].alive) continue;
        Vertex x = std::move(v[i]);
        for (auto& e : x.out) e.to = remap[e.to];
        nv.push_back(std::move(x));
    }
    v = std::move(nv);
    if (cert) {
        for (auto& id : cert->order) id = remap[id];
    }
    return remap;
}

void Circuit::validate() const {
    const auto n = static_cast<VertexId>(v.size());
    for (VertexId i = 0; i < n; ++i) {
        const auto& x = v[i];
        if (!x.alive) continue;
        if (x.mark < -1 || x.mark > 1) throw CircuitError("vertex " + std::to_string(i) + ": bad mark");
        if (x.out.empty() && x.leaf == LeafKind::None)
            throw CircuitError("vertex " + std::to_string(i) + " has no out-edges and no leaf label");
        if (!x.out.empty() && x.leaf != LeafKind::None)
            throw CircuitError("vertex " + std::to_string(i) + " is labelled as a leaf but has out-edges");
        std::vector<VertexId> seen;
        for (const auto& e : x.out) {
            if (e.to < 0 || e.to >= n || !v[e.to].alive)
                throw CircuitError("vertex " + std::to_string(i) + ": edge to missing vertex");
            if (e.sign != 1 && e.sign != -1) throw CircuitError("vertex " + std::to_string(i) + ": bad edge sign");
            seen.push_back(e.to);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw CircuitError("vertex " + std::to_string(i) + ": multiple edges to one target");
    }
    if (num_marks() == 0) throw CircuitError("circuit has no marked vertex");
    (void)geometric_order(*this);
}

bool Circuit::is_trivial() const {
    return num_vertices() == 1 && num_marks() == 1 && [&] {
        for (const auto& x : v)
            if (x.alive) return x.leaf == LeafKind::Zero;
        return false;
    }();
}

CircuitStats stats(const Circuit& c) { return {c.num_vertices(), c.num_edges(), c.num_marks()}; }

Circuit trivial_circuit() {
    Circuit c;
    VertexId z = c.add_zero();
    c.set_mark(z, 1);
    c.kind = CircuitKind::Normal;
    c.cert = Certificate{{z}, {}};
    return c;
}

std::vector<VertexId> geometric_order(const Circuit& c) {
    const std::size_t n = c.size();
    std::vector<std::size_t> pending(n, 0);
    std::vector<std::vector<VertexId>> parents(n);
    std::size_t alive = 0;
    for (VertexId i = 0; i < static_cast<VertexId>(n); ++i) {
        if (!c.v[i].alive) continue;
        ++alive;
        pending[i] = c.v[i].out.size();
        for (const auto& e : c.v[i].out) parents[e.to].push_back(i);
    }
    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (VertexId i = 0; i < static_cast<VertexId>(n); ++i)
        if (c.v[i].alive && pending[i] == 0) ready.push(i);
    std::vector<VertexId> order;
    order.reserve(alive);
    while (!ready.empty()) {
        VertexId x = ready.top();
        ready.pop();
        order.push_back(x);
        for (VertexId p : parents[x])
            if (--pending[p] == 0) ready.push(p);
    }
    if (order.size() != alive) throw CircuitError("circuit contains a cycle");
    return order;
}

std::size_t trim(Circuit& c, VertexId keep) {
    std::vector<char> seen(c.size(), 0);
    std::vector<VertexId> stack;
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        if (c.v[i].alive && c.v[i].mark != 0) {
            seen[i] = 1;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const auto& e : c.v[x].out) {
            if (!seen[e.to]) {
                seen[e.to] = 1;
                stack.push_back(e.to);
            }
        }
    }
    std::size_t removed = 0;
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        if (c.v[i].alive && !seen[i] && i != keep) {
            c.kill(i);
            ++removed;
        }
    }
    return removed;
}

Circuit standardize(const Circuit& in) {
    Circuit c = in;
    c.cert.reset();
    VertexId z = -1;
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i)
        if (c.v[i].alive && c.v[i].leaf == LeafKind::Zero) {
            z = i;
            break;
        }
    if (z >= 0) {
        std::vector<char> is_zero(c.size(), 0);
        for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i)
            is_zero[i] = c.v[i].alive && c.v[i].leaf == LeafKind::Zero;
        for (auto& x : c.v) {
            if (!x.alive) continue;
            bool has_z = false;
            std::vector<Edge> out;
            out.reserve(x.out.size());
            for (auto e : x.out) {
                if (is_zero[e.to]) {
                    if (has_z) continue;
                    has_z = true;
                    e.to = z;
                }
                out.push_back(e);
            }
            x.out = std::move(out);
        }
        for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i)
            if (is_zero[i] && i != z) c.kill(i);
        c.v[z].mark = 0;
    }
    if (c.num_marks() == 0) return trivial_circuit();
    if (z >= 0) {
        for (auto& x : c.v) {
            if (!x.alive || x.out.size() <= 1) continue;
            std::erase_if(x.out, [&](const Edge& e) { return e.to == z; });
        }
    }
    trim(c);
    c.compact();
    c.kind = CircuitKind::Standard;
    return c;
}

Circuit marked_to_sources(const Circuit& in) {
    Circuit c = in;
    c.cert.reset();
    c.kind = CircuitKind::General;
    std::vector<char> has_in(c.size(), 0);
    for (const auto& x : c.v)
        if (x.alive)
            for (const auto& e : x.out) has_in[e.to] = 1;
    const auto n = static_cast<VertexId>(c.size());
    for (VertexId i = 0; i < n; ++i) {
        if (!c.v[i].alive || c.v[i].mark == 0 || !has_in[i]) continue;
        VertexId cp = c.add_vertex();
        c.v[cp].out = c.v[i].out;
        c.v[cp].leaf = c.v[i].leaf;
        c.v[cp].var = c.v[i].var;
        c.v[cp].mark = c.v[i].mark;
        c.v[i].mark = 0;
    }
    return c;
}

Circuit from_integer(const BigInt& n) {
    if (n == 0) return trivial_circuit();
    const auto k = static_cast<Exponent>(ceil_log2(n));
    Circuit c;
    VertexId z = c.add_zero();
    std::vector<VertexId> pw(static_cast<std::size_t>(k) + 1);
    for (Exponent q = 0; q <= k; ++q) pw[q] = c.add_vertex();
    c.add_edge(pw[0], z, 1);
    for (Exponent q = 1; q <= k; ++q)
        for (const auto& d : compact_of_integer(q)) c.add_edge(pw[q], pw[d.key], d.sign);
    const int s = n < 0 ? -1 : 1;
    for (const auto& d : compact_of_integer(BigInt(boost::multiprecision::abs(n)))) c.set_mark(pw[d.key], d.sign * s);
    trim(c);
    Certificate cert;
    cert.order.push_back(z);
    Exponent prev = -2;
    for (Exponent q = 0; q <= k; ++q) {
        if (!c.v[pw[q]].alive) continue;
        cert.doubles.push_back(prev == q - 1);
        cert.order.push_back(pw[q]);
        prev = q;
    }
    c.cert = std::move(cert);
    c.compact();
    c.kind = CircuitKind::Normal;
    return c;
}

EvalResult eval_bignum(const Circuit& c, std::uint64_t budget_bits, const std::map<std::string, BigInt>* vars) {
    std::vector<char> reach(c.size(), 0);
    std::vector<VertexId> stack;
    for (VertexId m : c.marked()) {
        reach[m] = 1;
        stack.push_back(m);
    }
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const auto& e : c.v[x].out)
            if (!reach[e.to]) {
                reach[e.to] = 1;
                stack.push_back(e.to);
            }
    }
    std::vector<BigInt> val(c.size());
    for (VertexId x : geometric_order(c)) {
        if (!reach[x]) continue;
        const Vertex& vx = c.v[x];
        if (vx.leaf == LeafKind::Zero) {
            val[x] = 0;
            continue;
        }
        if (vx.leaf == LeafKind::Var) {
            if (!vars) return {EvalStatus::Unbound, 0};
            auto it = vars->find(vx.var);
            if (it == vars->end()) return {EvalStatus::Unbound, 0};
            val[x] = it->second;
            continue;
        }
        BigInt ex = 0;
        for (const auto& e : vx.out) {
            if (e.sign > 0)
                ex += val[e.to];
            else
                ex -= val[e.to];
        }
        if (ex < 0) return {EvalStatus::Improper, 0};
        if (ex > budget_bits) return {EvalStatus::BudgetExceeded, 0};
        val[x] = BigInt(1) << static_cast<unsigned>(ex);
    }
    BigInt total = 0;
    for (VertexId m : c.marked()) {
        if (c.v[m].mark > 0)
            total += val[m];
        else
            total -= val[m];
    }
    return {EvalStatus::Ok, total};
}

namespace {

void put_leb(std::vector<std::uint8_t>& out, std::uint64_t x) {
    do {
        std::uint8_t b = x & 0x7f;
        x >>= 7;
        if (x) b |= 0x80;
        out.push_back(b);
    } while (x);
}

}  // namespace

std::vector<std::uint8_t> canonical_bytes(const Circuit& c) {
    if (c.kind != CircuitKind::Normal || !c.cert) throw CircuitError("canonical_bytes needs a normal circuit");
    const auto& order = c.cert->order;
    std::vector<std::int64_t> pos(c.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<std::int64_t>(i);
    std::vector<std::uint8_t> out;
    out.push_back(1);
    put_leb(out, order.size());
    for (VertexId x : order) {
        const Vertex& vx = c.v[x];
        out.push_back(vx.mark == 0 ? 0 : (vx.mark > 0 ? 1 : 2));
        std::vector<std::uint64_t> edges;
        for (const auto& e : vx.out)
            edges.push_back(static_cast<std::uint64_t>(pos[e.to]) * 2 + (e.sign < 0 ? 1 : 0));
        std::sort(edges.begin(), edges.end());
        put_leb(out, edges.size());
        for (auto e : edges) put_leb(out, e);
    }
    return out;
}

bool isomorphic(const Circuit& a, const Circuit& b) { return canonical_bytes(a) == canonical_bytes(b); }

std::uint64_t canonical_hash(const Circuit& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : canonical_bytes(c)) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace pcirc
