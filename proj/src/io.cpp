#include "tqhp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tqhp {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

struct TokenReader {
    std::istringstream in;
    std::size_t line = 1;
    explicit TokenReader(const std::string& s) : in(s) {}
    long next(const char* what) {
        long v;
        // track line numbers through whitespace
        while (true) {
            int c = in.peek();
            if (c == '\n') { ++line; in.get(); continue; }
            if (c == ' ' || c == '\t' || c == '\r') { in.get(); continue; }
            break;
        }
        if (!(in >> v)) throw ParseError(std::string("expected ") + what, line);
        return v;
    }
};

}  // namespace

BitMatrix parse_alist(const std::string& text) {
    TokenReader tr(text);
    long n = tr.next("bit count");
    long m = tr.next("check count");
    if (n <= 0 || m <= 0) throw ParseError("nonpositive dimensions", tr.line);
    long dmax_col = tr.next("max column degree");
    long dmax_row = tr.next("max row degree");
    std::vector<long> col_deg(n), row_deg(m);
    for (long i = 0; i < n; ++i) {
        col_deg[i] = tr.next("column degree");
        if (col_deg[i] < 0 || col_deg[i] > dmax_col) throw ParseError("column degree out of range", tr.line);
    }
    for (long i = 0; i < m; ++i) {
        row_deg[i] = tr.next("row degree");
        if (row_deg[i] < 0 || row_deg[i] > dmax_row) throw ParseError("row degree out of range", tr.line);
    }
    BitMatrix h(m, n);
    for (long b = 0; b < n; ++b) {
        long seen = 0;
        for (long j = 0; j < dmax_col; ++j) {
            long c = tr.next("check index");
            if (c == 0) continue;  // padding
            if (c < 1 || c > m) throw ParseError("check index out of range", tr.line);
            h.set(c - 1, b, true);
            ++seen;
        }
        if (seen != col_deg[b])
            throw ParseError("column " + std::to_string(b) + ": degree mismatch", tr.line);
    }
    for (long c = 0; c < m; ++c) {
        long seen = 0;
        for (long j = 0; j < dmax_row; ++j) {
            long b = tr.next("bit index");
            if (b == 0) continue;
            if (b < 1 || b > n) throw ParseError("bit index out of range", tr.line);
            if (!h.get(c, b - 1))
                throw ParseError("row list disagrees with column list", tr.line);
            ++seen;
        }
        if (seen != row_deg[c])
            throw ParseError("row " + std::to_string(c) + ": degree mismatch", tr.line);
    }
    return h;
}

std::string write_alist(const BitMatrix& h) {
    const std::size_t m = h.rows(), n = h.cols();
    std::vector<std::vector<std::size_t>> cols(n), rows(m);
    std::size_t dc = 0, dr = 0;
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t b = 0; b < n; ++b)
            if (h.get(c, b)) {
                cols[b].push_back(c + 1);
                rows[c].push_back(b + 1);
            }
    for (auto& v : cols) dc = std::max(dc, v.size());
    for (auto& v : rows) dr = std::max(dr, v.size());
    std::ostringstream out;
    out << n << " " << m << "\n" << dc << " " << dr << "\n";
    for (std::size_t b = 0; b < n; ++b) out << cols[b].size() << (b + 1 < n ? " " : "\n");
    for (std::size_t c = 0; c < m; ++c) out << rows[c].size() << (c + 1 < m ? " " : "\n");
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t j = 0; j < dc; ++j)
            out << (j < cols[b].size() ? cols[b][j] : 0) << (j + 1 < dc ? " " : "\n");
    }
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t j = 0; j < dr; ++j)
            out << (j < rows[c].size() ? rows[c][j] : 0) << (j + 1 < dr ? " " : "\n");
    }
    return out.str();
}

BitMatrix parse_dense01(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string clean;
        for (char ch : line) {
            if (ch == '0' || ch == '1') clean += ch;
            else if (ch != ' ' && ch != '\t' && ch != '\r')
                throw ParseError("unexpected character in 0/1 row", lineno);
        }
        if (!clean.empty()) rows.push_back(clean);
    }
    if (rows.empty()) throw ParseError("no rows", lineno);
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw ParseError("ragged row widths", lineno);
    BitMatrix h(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] == '1') h.set(r, c, true);
    return h;
}

std::string write_dense01(const BitMatrix& h) {
    std::ostringstream out;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t c = 0; c < h.cols(); ++c) out << (h.get(r, c) ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

BitMatrix load_matrix_file(const std::string& path, const std::string& format) {
    std::string text = read_file(path);
    if (format == "alist") return parse_alist(text);
    if (format == "dense01") return parse_dense01(text);
    if (format == "json") {
        json j = json::parse(text);
        BitMatrix h(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
        for (const auto& e : j.at("entries")) h.set(e[0].get<std::size_t>(), e[1].get<std::size_t>(), true);
        return h;
    }
    throw std::invalid_argument("unknown matrix format: " + format);
}

namespace {

ordered_json matrix_to_json(const BitMatrix& h) {
    ordered_json j;
    j["rows"] = h.rows();
    j["cols"] = h.cols();
    ordered_json entries = ordered_json::array();
    for (auto [r, c] : h.triplets()) entries.push_back({r, c});
    j["entries"] = std::move(entries);
    return j;
}

ordered_json complex_to_json(const ChainComplex& cx) {
    ordered_json j;
    j["grades"] = cx.grades();
    j["cells"] = cx.cell_count;
    ordered_json labels = ordered_json::array();
    for (const auto& l : cx.labels) labels.push_back(l);
    j["labels"] = std::move(labels);
    ordered_json bnd = ordered_json::object();
    for (std::size_t k = 1; k <= cx.grades(); ++k) {
        ordered_json trip = ordered_json::array();
        for (auto [r, c] : cx.boundary[k].triplets()) trip.push_back({r, c});
        bnd[std::to_string(k)] = std::move(trip);
    }
    j["boundary"] = std::move(bnd);
    return j;
}

ordered_json bitvec_strings(const std::vector<BitVector>& vs) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : vs) arr.push_back(v.to_string());
    return arr;
}

}  // namespace

std::string complex_json(const ChainComplex& cx) { return complex_to_json(cx).dump(2) + "\n"; }

std::string descriptor_json(const TripleCode& tc) {
    ordered_json j;
    j["adjacency"] = to_string(tc.conv);
    j["hx"] = matrix_to_json(tc.fx.H);
    j["hy"] = matrix_to_json(tc.fy.H);
    ordered_json cs;
    cs["r"] = complex_to_json(tc.Xr);
    cs["b"] = complex_to_json(tc.Xb);
    cs["g"] = complex_to_json(tc.Xg);
    j["complexes"] = std::move(cs);
    ordered_json q;
    for (auto [name, c] : {std::pair{"r", Copy::R}, {"b", Copy::B}, {"g", Copy::G}}) {
        ordered_json e;
        e["offset"] = tc.qubit_offset(c);
        e["count"] = tc.qubits(c);
        q[name] = std::move(e);
    }
    j["qubits"] = std::move(q);

    auto classes_to_json = [](const std::vector<ClassInfo>& cls) {
        ordered_json arr = ordered_json::array();
        for (const ClassInfo& ci : cls) {
            ordered_json e;
            e["cocycle"] = ci.cocycle.to_string();
            e["cycle"] = ci.cycle.to_string();
            e["decomposable"] = ci.decomposable;
            e["spurious"] = ci.spurious;
            e["xfactor"] = ci.xfactor;
            e["yfactor"] = ci.yfactor;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    ordered_json bases;
    bases["alpha"] = classes_to_json(tc.alpha);
    bases["beta"] = classes_to_json(tc.beta);
    bases["gamma"] = bitvec_strings(tc.gamma);
    bases["xi_cycles"] = bitvec_strings(tc.xi_cycles);
    j["bases"] = std::move(bases);

    IntersectionTensor t = intersection_tensor(tc);
    ordered_json tens = ordered_json::array();
    for (std::size_t a = 0; a < t.na; ++a)
        for (std::size_t b = 0; b < t.nb; ++b)
            for (std::size_t g = 0; g < t.ng; ++g)
                if (t.get(a, b, g)) tens.push_back({a, b, g});
    j["tensor"] = std::move(tens);
    return j.dump(2) + "\n";
}

TripleCode load_descriptor(const std::string& json_text) {
    json j = json::parse(json_text);
    auto conv = adjacency_from_string(j.at("adjacency").get<std::string>());
    if (!conv) throw std::invalid_argument("load_descriptor: unknown adjacency convention");
    auto mat = [](const json& m) {
        BitMatrix h(m.at("rows").get<std::size_t>(), m.at("cols").get<std::size_t>());
        for (const auto& e : m.at("entries")) h.set(e[0].get<std::size_t>(), e[1].get<std::size_t>(), true);
        return h;
    };
    return triple_code(mat(j.at("hx")), mat(j.at("hy")), *conv);
}

std::string stabilizers_json(const TripleCode& tc, const StabilizerSet& set) {
    ordered_json arr = ordered_json::array();
    auto copy_name = [](Copy c) { return c == Copy::R ? "r" : (c == Copy::B ? "b" : "g"); };
    for (const Generator& g : set.generators) {
        ordered_json e;
        e["role"] = (g.role == StabRole::B ? "B" : (g.role == StabRole::A ? "A" : "A~")) +
                    std::string("^") + copy_name(g.copy);
        e["cell"] = g.cell;
        e["sign"] = g.op.sign_bit() ? -1 : 1;
        ordered_json xs = ordered_json::array(), zs = ordered_json::array(),
                     czs = ordered_json::array();
        for (std::size_t i : g.op.x_support().support()) xs.push_back(i);
        for (std::size_t i : g.op.z_linear().support()) zs.push_back(i);
        for (auto [i, jd] : g.op.cz_pairs()) czs.push_back({i, jd});
        e["x"] = std::move(xs);
        e["z"] = std::move(zs);
        e["cz"] = std::move(czs);
        arr.push_back(std::move(e));
    }
    ordered_json out;
    out["total_qubits"] = tc.total_qubits();
    out["generators"] = std::move(arr);
    return out.dump(2) + "\n";
}

std::string tensor_json(const IntersectionTensor& t) {
    ordered_json j;
    j["na"] = t.na;
    j["nb"] = t.nb;
    j["ng"] = t.ng;
    ordered_json arr = ordered_json::array();
    for (std::size_t a = 0; a < t.na; ++a)
        for (std::size_t b = 0; b < t.nb; ++b)
            for (std::size_t g = 0; g < t.ng; ++g)
                if (t.get(a, b, g)) arr.push_back({a, b, g});
    j["entries"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string logical_action_json(const IntersectionTensor& t) {
    if (t.na + t.nb > 16 || t.ng > 10)
        throw std::invalid_argument("logical_action_json: logical space too large to enumerate");
    ordered_json j;
    j["na"] = t.na;
    j["nb"] = t.nb;
    j["ng"] = t.ng;
    ordered_json diags = ordered_json::object();
    for (uint64_t r = 0; r < (uint64_t(1) << t.ng); ++r) {
        BitVector rho(t.ng);
        for (std::size_t g = 0; g < t.ng; ++g) rho.set(g, (r >> g) & 1);
        LogicalAction la = logical_action(t, rho);
        diags[rho.to_string()] = la.diag;
    }
    j["diagonals"] = std::move(diags);
    return j.dump(2) + "\n";
}

std::string transcript_json(const ProtocolTranscript& tr) {
    ordered_json j;
    j["seed"] = tr.seed;
    j["backend"] = tr.backend;
    ordered_json plan;
    plan["red_plus"] = tr.plan.red_plus;
    plan["blue_plus"] = tr.plan.blue_plus;
    plan["disjoint_certificate"] = tr.plan.disjoint_certificate;
    j["plan"] = std::move(plan);
    j["mu"] = tr.mu;
    j["rho"] = tr.rho;
    j["z"] = tr.z_outcomes;
    j["correction"] = tr.correction;
    j["leakage"] = tr.leakage;
    ordered_json st = ordered_json::array();
    for (const auto& a : tr.logical_state) st.push_back({a.real(), a.imag()});
    j["logical_state"] = std::move(st);
    ordered_json pairs = ordered_json::array();
    for (const auto& p : tr.pairs) {
        ordered_json e;
        e["alpha"] = p.alpha;
        e["beta"] = p.beta;
        e["gamma"] = p.gamma;
        e["outcome"] = p.outcome;
        e["fidelity_to_magic"] = p.fidelity_to_magic;
        e["purity"] = p.purity;
        pairs.push_back(std::move(e));
    }
    j["logical_pairs"] = std::move(pairs);
    return j.dump(2) + "\n";
}

namespace {

ordered_json copy_metrics_json(const CopyMetrics& cm) {
    ordered_json j;
    j["n"] = cm.n;
    j["k"] = cm.k;
    auto dist = [](const DistanceResult& d) {
        ordered_json e;
        e["exact"] = d.exact;
        e["no_logical"] = d.no_logical;
        e["weight"] = d.no_logical ? ordered_json(nullptr) : ordered_json(d.weight);
        return e;
    };
    j["d_z"] = dist(cm.d_z);
    j["d_x"] = dist(cm.d_x);
    j["class_min_weights"] = cm.class_min_weights;
    j["spurious_flag"] = cm.spurious_flag;
    return j;
}

}  // namespace

std::string report_json(const CodeReport& rep) {
    ordered_json j;
    j["k_r"] = rep.k_r;
    j["k_b"] = rep.k_b;
    j["gamma_count"] = rep.gamma_count;
    j["k_twisted"] = rep.k_twisted;
    j["red"] = copy_metrics_json(rep.red);
    j["blue"] = copy_metrics_json(rep.blue);
    j["green"] = copy_metrics_json(rep.green);
    return j.dump(2) + "\n";
}

std::string report_table(const CodeReport& rep) {
    std::ostringstream out;
    out << "copy   n      k      d_Z    d_X    note\n";
    auto row = [&](const char* name, const CopyMetrics& cm) {
        auto dstr = [](const DistanceResult& d) {
            if (d.no_logical) return std::string("inf");
            std::string s = std::to_string(d.weight);
            if (!d.exact) s += "*";
            return s;
        };
        out << name << "    " << cm.n << "      " << cm.k << "      " << dstr(cm.d_z) << "      "
            << dstr(cm.d_x);
        std::size_t flagged = 0;
        for (uint8_t f : cm.spurious_flag) flagged += f;
        if (flagged) out << "    " << flagged << " spurious class(es) flagged";
        out << "\n";
    };
    row("red ", rep.red);
    row("blue", rep.blue);
    row("grn ", rep.green);
    out << "k_r + k_b = " << (rep.k_r + rep.k_b) << ", |gamma| = " << rep.gamma_count
        << ", k_twisted = " << rep.k_twisted << "\n";
    out << "(* = budget exhausted, upper bound only)\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace tqhp
