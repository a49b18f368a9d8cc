#include "pcirc/arithmetic.hpp"

#include "pcirc/reduction.hpp"

#include <algorithm>

namespace pcirc {

std::vector<VertexId> append(Circuit& dst, const Circuit& src, int mark_factor) {
    std::vector<VertexId> map(src.size(), -1);
    for (VertexId i = 0; i < static_cast<VertexId>(src.size()); ++i) {
        if (!src.v[i].alive) continue;
        map[i] = dst.add_vertex();
        Vertex& x = dst.v[map[i]];
        x.leaf = src.v[i].leaf;
        x.var = src.v[i].var;
        x.mark = src.v[i].mark * mark_factor;
    }
    for (VertexId i = 0; i < static_cast<VertexId>(src.size()); ++i) {
        if (!src.v[i].alive) continue;
        for (const auto& e : src.v[i].out) dst.v[map[i]].out.push_back({map[e.to], e.sign});
    }
    return map;
}

Circuit add(const Circuit& a, const Circuit& b) {
    Circuit r;
    append(r, a);
    append(r, b);
    return r;
}

Circuit subtract(const Circuit& a, const Circuit& b) {
    Circuit r;
    append(r, a);
    append(r, b, -1);
    return r;
}

Circuit negate(const Circuit& a) {
    Circuit r;
    append(r, a, -1);
    return r;
}

Circuit exp2(const Circuit& a) {
    Circuit r;
    append(r, a);
    std::vector<VertexId> marks = r.marked();
    VertexId apex = r.add_vertex();
    for (VertexId m : marks) {
        r.v[apex].out.push_back({m, r.v[m].mark});
        r.v[m].mark = 0;
    }
    r.v[apex].mark = 1;
    return r;
}

namespace {

void reject_var_mark(const Circuit& c, VertexId m, const char* op) {
    if (c.v[m].leaf == LeafKind::Var)
        throw VariableLeafError(std::string(op) + ": variable '" + c.v[m].var + "' cannot be scaled");
}

// Wires every mark of a to every mark of b with sign factor * nu(b-mark).
Circuit scale(const Circuit& a, const Circuit& b, int factor, const char* op) {
    Circuit a1 = marked_to_sources(a);
    Circuit r;
    std::vector<VertexId> ma = append(r, a1);
    std::vector<VertexId> mb = append(r, b);
    std::vector<Edge> marks_b;
    for (VertexId m : b.marked()) {
        marks_b.push_back({mb[m], factor * b.v[m].mark});
        r.v[mb[m]].mark = 0;
    }
    for (VertexId m : a1.marked()) {
        reject_var_mark(a1, m, op);
        if (a1.v[m].leaf == LeafKind::Zero) continue;
        for (const auto& t : marks_b) r.v[ma[m]].out.push_back(t);
    }
    return r;
}

}  // namespace

Circuit multiply(const Circuit& a, const Circuit& b) {
    Circuit a1 = marked_to_sources(a);
    Circuit b1 = marked_to_sources(b);
    Circuit r;
    std::vector<VertexId> ma(a1.size(), -1);
    std::vector<VertexId> mb(b1.size(), -1);
    auto copy_unmarked = [&r](const Circuit& src, std::vector<VertexId>& map) {
        for (VertexId i = 0; i < static_cast<VertexId>(src.size()); ++i) {
            if (!src.v[i].alive || src.v[i].mark != 0) continue;
            map[i] = r.add_vertex();
            r.v[map[i]].leaf = src.v[i].leaf;
            r.v[map[i]].var = src.v[i].var;
        }
        for (VertexId i = 0; i < static_cast<VertexId>(src.size()); ++i) {
            if (map[i] < 0) continue;
            for (const auto& e : src.v[i].out) r.v[map[i]].out.push_back({map[e.to], e.sign});
        }
    };
    copy_unmarked(a1, ma);
    copy_unmarked(b1, mb);
    for (VertexId x : a1.marked()) {
        reject_var_mark(a1, x, "multiply");
        for (VertexId y : b1.marked()) {
            reject_var_mark(b1, y, "multiply");
            VertexId p = r.add_vertex();
            r.v[p].mark = a1.v[x].mark * b1.v[y].mark;
            if (a1.v[x].leaf == LeafKind::Zero || b1.v[y].leaf == LeafKind::Zero) {
                r.v[p].leaf = LeafKind::Zero;
                continue;
            }
            for (const auto& e : a1.v[x].out) r.v[p].out.push_back({ma[e.to], e.sign});
            for (const auto& e : b1.v[y].out) r.v[p].out.push_back({mb[e.to], e.sign});
        }
    }
    return r;
}

Circuit mul_pow2(const Circuit& a, const Circuit& b) { return scale(a, b, 1, "mul_pow2"); }

namespace {

// Folds all zero leaves into the first one, dropping duplicate edges.
void collapse_zeros(Circuit& c) {
    VertexId z = -1;
    std::vector<char> is_zero(c.size(), 0);
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        if (!c.v[i].alive || c.v[i].leaf != LeafKind::Zero) continue;
        is_zero[i] = 1;
        if (z < 0) z = i;
    }
    if (z < 0) return;
    int zmark = 0;
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i)
        if (is_zero[i] && c.v[i].mark != 0) zmark = c.v[i].mark;
    for (auto& x : c.v) {
        if (!x.alive) continue;
        bool has_z = false;
        std::erase_if(x.out, [&](Edge& e) {
            if (!is_zero[e.to]) return false;
            if (has_z) return true;
            has_z = true;
            e.to = z;
            return false;
        });
    }
    bool reached = false;
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        if (is_zero[i] && i != z) c.kill(i);
        if (c.v[i].alive)
            for (const auto& e : c.v[i].out) reached |= e.to == z;
    }
    // Marks stay on sources: a reached zero hands its mark to a fresh zero leaf.
    c.v[z].mark = reached ? 0 : zmark;
    if (reached && zmark != 0) c.set_mark(c.add_zero(), zmark);
}

}  // namespace

Circuit div_pow2_unchecked(const Circuit& a, const Circuit& b) {
    Circuit r = scale(a, b, -1, "div_pow2");
    collapse_zeros(r);
    r.compact();
    return r;
}

std::optional<Circuit> div_pow2(const Circuit& a, const Circuit& b, DivMode mode) {
    auto ra = reduce(a);
    if (!ra) return std::nullopt;
    if (mode == DivMode::Drop) {
        if (!sign(b)) return std::nullopt;
        for (VertexId x : ra->marked()) {
            if (ra->v[x].leaf == LeafKind::Zero) continue;
            // Exponent of x as its own circuit: the children of x, signed by the edges.
            Circuit ex = *ra;
            ex.cert.reset();
            for (auto& y : ex.v) y.mark = 0;
            for (const auto& e : ra->v[x].out) ex.v[e.to].mark = e.sign;
            auto s = sign(subtract(ex, b));
            if (!s) return std::nullopt;
            if (*s < 0) ra->v[x].mark = 0;
        }
        if (ra->num_marks() == 0) return reduce(trivial_circuit());
    }
    return reduce(div_pow2_unchecked(*ra, b));
}

}  // namespace pcirc
