// pcirc: evaluate, compare and normalize power circuits from the command line.
//
// Exit codes: 0 defined result, 1 Undefined, 2 parse or malformed input,
// 3 budget exceeded.

#include "pcirc/arithmetic.hpp"
#include "pcirc/generate.hpp"
#include "pcirc/io.hpp"
#include "pcirc/reduction.hpp"
#include "pcirc/signed_binary.hpp"
#include "pcirc/term.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace pcirc;

namespace {

enum Exit { kDefined = 0, kUndefined = 1, kInput = 2, kBudget = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> lets;
    std::size_t max_vertices = 1000000;
    std::uint64_t oracle_bits = 1u << 20;
    std::string format = "text";
    std::string expr, expr2;
    std::string input;
    std::string integer;
    std::string family = "tower";
    std::size_t from = 10, to = 60, step = 10;
    std::uint64_t seed = 1;
    std::size_t n = 9;
    std::size_t j = 2;
};

Assignment parse_lets(const std::vector<std::string>& lets) {
    Assignment eta;
    for (const auto& l : lets) {
        auto eq = l.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--let expects name=value, got '" + l + "'");
        std::string name = l.substr(0, eq);
        BigInt value;
        try {
            value = BigInt(l.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("--let " + name + ": not an integer");
        }
        eta[name] = value;
    }
    return eta;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

RealizeOptions realize_options(const Options& o) {
    RealizeOptions r;
    r.max_vertices = o.max_vertices;
    return r;
}

// Circuit named by --int, --expr (realized) or a JSON path.
struct Loaded {
    std::optional<Circuit> circuit;  // empty when the expression is undefined
    std::optional<Witness> undefined;
};

Loaded load(const Options& o) {
    int given = !o.integer.empty() + !o.expr.empty() + !o.input.empty();
    if (given != 1) throw InputError("give exactly one of a JSON path, --expr or --int");
    if (!o.integer.empty()) {
        try {
            return {from_integer(BigInt(o.integer)), std::nullopt};
        } catch (const std::runtime_error&) {
            throw InputError("--int: not an integer");
        }
    }
    if (!o.expr.empty()) {
        Realized r = realize(parse_term(o.expr), parse_lets(o.lets), realize_options(o));
        return {std::move(r.circuit), std::move(r.undefined)};
    }
    return {circuit_from_json(read_input(o.input)), std::nullopt};
}

void print_circuit(const Circuit& c, const std::string& format) {
    if (format == "json") {
        std::cout << circuit_to_json(c);
    } else if (format == "dot") {
        std::cout << circuit_to_dot(c);
    } else {
        CircuitStats s = stats(c);
        std::cout << "vertices=" << s.vertices << " edges=" << s.edges << " marks=" << s.marks;
        if (c.kind == CircuitKind::Normal) std::cout << " hash=" << hash_hex(canonical_hash(c));
        std::cout << "\n";
    }
}

int report_undefined(const std::optional<Witness>& w) {
    std::cout << "Undefined\n";
    if (w) std::cerr << "undefined at " << w->path << ": " << w->subterm << "\n";
    return kUndefined;
}

int cmd_eval(const Options& o) {
    Assignment eta = parse_lets(o.lets);
    Parsed p = parse(o.expr);
    if (auto* f = std::get_if<FormulaPtr>(&p)) {
        EvalOutcome r = eval_formula(*f, eta, realize_options(o));
        if (r.value == Truth::Undefined) return report_undefined(r.witness);
        std::cout << to_string(r.value) << "\n";
        return kDefined;
    }
    Realized r = realize(std::get<TermPtr>(p), eta, realize_options(o));
    if (!r.circuit) return report_undefined(r.undefined);
    if (o.format == "text") {
        EvalResult v = eval_bignum(*r.circuit, o.oracle_bits);
        if (v.status == EvalStatus::Ok) {
            std::cout << v.value << "\n";
            return kDefined;
        }
    }
    print_circuit(*r.circuit, o.format);
    return kDefined;
}

int cmd_cmp(const Options& o) {
    Assignment eta = parse_lets(o.lets);
    TermPtr a = parse_term(o.expr);
    TermPtr b = parse_term(o.expr2);
    Realized d = realize(make_op(TermOp::Sub, a, b), eta, realize_options(o));
    if (!d.circuit) return report_undefined(d.undefined);
    int s = sign_of_reduced(*d.circuit);
    std::cout << (s < 0 ? "<" : s == 0 ? "=" : ">") << "\n";
    return kDefined;
}

int cmd_normalize(const Options& o) {
    Loaded l = load(o);
    if (!l.circuit) return report_undefined(l.undefined);
    if (l.circuit->has_vars()) throw InputError("normalize needs a constant circuit");
    auto n = normalize(*l.circuit);
    if (!n) return report_undefined(std::nullopt);
    if (n->num_vertices() > o.max_vertices) throw BudgetExceeded("normal form exceeds --max-vertices");
    print_circuit(*n, o.format == "text" ? "json" : o.format);
    return kDefined;
}

int cmd_stats(const Options& o) {
    Loaded l = load(o);
    if (!l.circuit) return report_undefined(l.undefined);
    const Circuit& c = *l.circuit;
    CircuitStats s = stats(c);
    std::cout << "kind " << kind_name(c.kind) << "\n";
    std::cout << "vertices " << s.vertices << "\nedges " << s.edges << "\nmarks " << s.marks << "\n";
    if (c.has_vars()) return kDefined;
    ReduceStats rs;
    auto n = normalize(c, &rs);
    if (!n) {
        std::cout << "proper no\n";
        return kUndefined;
    }
    CircuitStats ns = stats(*n);
    int sg = sign_of_reduced(*n);
    std::cout << "proper yes\nsign " << sg << "\n";
    std::cout << "normal_vertices " << ns.vertices << "\nnormal_edges " << ns.edges << "\nnormal_marks " << ns.marks
              << "\n";
    std::cout << "hash " << hash_hex(canonical_hash(*n)) << "\n";
    std::cout << "reduce_ops " << rs.ops() << "\n";
    EvalResult v = eval_bignum(c, o.oracle_bits);
    if (v.status == EvalStatus::Ok) std::cout << "value " << v.value << "\n";
    return kDefined;
}

int cmd_export(const Options& o) {
    Loaded l = load(o);
    if (!l.circuit) return report_undefined(l.undefined);
    print_circuit(*l.circuit, o.format == "text" ? "dot" : o.format);
    return kDefined;
}

int cmd_bench(const Options& o) {
    if (o.step == 0 || o.from > o.to) throw InputError("bench needs --from <= --to and --step > 0");
    if (o.family != "tower" && o.family != "random") throw InputError("unknown family '" + o.family + "'");
    std::cout << "n,vertices,ops,wall_ms\n";
    std::mt19937_64 rng(o.seed);
    for (std::size_t n = o.from; n <= o.to; n += o.step) {
        Circuit c;
        if (o.family == "tower") {
            c = subtract(add(tower_circuit(n), from_integer(1)), tower_circuit(n));
        } else {
            RandomCircuitParams p;
            p.vertices = n;
            p.edge_prob = 3.0 / static_cast<double>(n);
            c = random_circuit(rng, p);
        }
        ReduceStats st;
        auto t0 = std::chrono::steady_clock::now();
        auto r = reduce(c, &st);
        auto t1 = std::chrono::steady_clock::now();
        if (!r) throw std::logic_error("bench circuit is improper");
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", ms);
        std::cout << n << "," << c.num_vertices() << "," << st.ops() << "," << buf << "\n";
    }
    return kDefined;
}

// Product of (tower(i - 1) + 1) for i = 4..n needs 2^(n-3) marks in any circuit.
int demo_blowup(const Options& o) {
    if (o.n < 4) throw InputError("blowup needs --n >= 4");
    std::cout << "n,factors,vertices,marks,lower_bound\n";
    Circuit prod = tower_plus_one(4);
    for (std::size_t i = 4; i <= o.n; ++i) {
        if (i > 4) {
            auto r = reduce(multiply(prod, tower_plus_one(i)));
            if (!r) throw std::logic_error("product is improper");
            prod = std::move(*r);
        }
        auto nf = normalize(prod);
        if (!nf) throw std::logic_error("product is improper");
        if (nf->num_vertices() > o.max_vertices) throw BudgetExceeded("normal form exceeds --max-vertices");
        CircuitStats s = stats(*nf);
        std::cout << i << "," << i - 3 << "," << s.vertices << "," << s.marks << "," << (1ull << (i - 3)) << "\n";
    }
    return kDefined;
}

// 3 * N_i = 4^(i+1) - 1 has a circuit of about j vertices for i = tower(j),
// while N_i needs i + 1 marks.
int demo_div3(const Options& o) {
    std::cout << "j,i,circuit_vertices_3N,compact_terms_N\n";
    for (std::size_t j = 0; j <= o.j; ++j) {
        Assignment eta{{"j", BigInt(j)}};
        Realized r = realize(parse_term("2^(2*(tower(j)+1)) - 1"), eta, realize_options(o));
        if (!r.circuit) throw std::logic_error("4^(i+1) - 1 is undefined");
        EvalResult ie = eval_bignum(tower_circuit(j), o.oracle_bits);
        if (ie.status != EvalStatus::Ok || 2 * (ie.value + 1) > o.oracle_bits)
            throw BudgetExceeded("N_i exceeds --oracle-bits for j = " + std::to_string(j));
        const BigInt& i = ie.value;
        BigInt three_n = (BigInt(1) << static_cast<unsigned>(2 * (i + 1))) - 1;
        std::size_t terms = compact_of_integer(three_n / 3).size();
        std::cout << j << "," << i << "," << r.circuit->num_vertices() << "," << terms << "\n";
    }
    return kDefined;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power circuits: exact arithmetic on compressed integers"};
    app.require_subcommand(1);
    Options o;

    auto budgets = [&o](CLI::App* s) {
        s->add_option("--let", o.lets, "Bind a variable, name=value")->allow_extra_args(false);
        s->add_option("--max-vertices", o.max_vertices, "Vertex budget")->check(CLI::PositiveNumber);
        s->add_option("--oracle-bits", o.oracle_bits, "Bit budget for printing integers")->check(CLI::PositiveNumber);
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    };
    auto source = [&o](CLI::App* s) {
        s->add_option("input", o.input, "JSON circuit file, or - for stdin");
        s->add_option("-e,--expr", o.expr, "Term to realize");
        s->add_option("--int", o.integer, "Integer to encode");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a term or formula");
    eval->add_option("expr", o.expr, "Term or formula")->required();
    budgets(eval);

    auto* cmp = app.add_subcommand("cmp", "Compare two terms, printing <, = or >");
    cmp->add_option("a", o.expr, "Left term")->required();
    cmp->add_option("b", o.expr2, "Right term")->required();
    budgets(cmp);

    auto* norm = app.add_subcommand("normalize", "Normal form of a circuit");
    source(norm);
    budgets(norm);

    auto* st = app.add_subcommand("stats", "Sizes, sign and hash of a circuit");
    source(st);
    budgets(st);

    auto* exp = app.add_subcommand("export", "Write a circuit as DOT or JSON");
    source(exp);
    budgets(exp);

    auto* bench = app.add_subcommand("bench", "CSV of reduction cost over a circuit family");
    bench->add_option("--family", o.family, "tower or random")->check(CLI::IsMember({"tower", "random"}));
    bench->add_option("--from", o.from);
    bench->add_option("--to", o.to);
    bench->add_option("--step", o.step);
    bench->add_option("--seed", o.seed);

    auto* demo = app.add_subcommand("demo", "Size blowup demonstrations");
    demo->require_subcommand(1);
    auto* blowup = demo->add_subcommand("blowup", "Product of tower(i - 1) + 1 for i = 4..n");
    blowup->add_option("--n", o.n)->check(CLI::Range(4, 62));
    budgets(blowup);
    auto* div3 = demo->add_subcommand("div3", "Circuit of 4^(i+1) - 1 against the compact length of its third");
    div3->add_option("--j", o.j);
    budgets(div3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kDefined : kInput;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*cmp) return cmd_cmp(o);
        if (*norm) return cmd_normalize(o);
        if (*st) return cmd_stats(o);
        if (*exp) return cmd_export(o);
        if (*bench) return cmd_bench(o);
        if (*blowup) return demo_blowup(o);
        if (*div3) return demo_div3(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInput;
    } catch (const FormatError& e) {
        std::cerr << "malformed circuit: " << e.what() << "\n";
        return kInput;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kInput;
    } catch (const UnboundVariable& e) {
        std::cerr << e.what() << "\n";
        return kInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const VariableLeafError& e) {
        std::cerr << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
