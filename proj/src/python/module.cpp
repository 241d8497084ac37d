#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tqhp/io.hpp"

namespace py = pybind11;
using namespace tqhp;

namespace {

BitMatrix matrix_from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size())
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c]) m.set(r, c, true);
    }
    return m;
}

std::vector<std::vector<int>> matrix_to_rows(const BitMatrix& m) {
    std::vector<std::vector<int>> rows(m.rows(), std::vector<int>(m.cols(), 0));
    for (auto [r, c] : m.triplets()) rows[r][c] = 1;
    return rows;
}

py::dict transcript_to_dict(const ProtocolTranscript& tr) {
    py::dict d;
    d["seed"] = tr.seed;
    d["backend"] = tr.backend;
    d["mu"] = tr.mu;
    d["rho"] = tr.rho;
    d["z"] = tr.z_outcomes;
    d["correction"] = tr.correction;
    d["leakage"] = tr.leakage;
    d["logical_state"] = tr.logical_state;
    py::list pairs;
    for (const auto& p : tr.pairs) {
        py::dict e;
        e["alpha"] = p.alpha;
        e["beta"] = p.beta;
        e["gamma"] = p.gamma;
        e["outcome"] = p.outcome;
        e["fidelity_to_magic"] = p.fidelity_to_magic;
        pairs.append(e);
    }
    d["logical_pairs"] = pairs;
    return d;
}

}  // namespace

PYBIND11_MODULE(_tqhp, m) {
    m.doc() = "twisted 2D hypergraph-product code toolkit";

    py::class_<TripleCode>(m, "TripleCode")
        .def_property_readonly("total_qubits", &TripleCode::total_qubits)
        .def_property_readonly("qubits",
                               [](const TripleCode& tc) {
                                   return py::make_tuple(tc.qubits(Copy::R), tc.qubits(Copy::B),
                                                         tc.qubits(Copy::G));
                               })
        .def_property_readonly("num_alpha", [](const TripleCode& tc) { return tc.alpha.size(); })
        .def_property_readonly("num_beta", [](const TripleCode& tc) { return tc.beta.size(); })
        .def_property_readonly("num_gamma", [](const TripleCode& tc) { return tc.gamma.size(); })
        .def_property_readonly("adjacency", [](const TripleCode& tc) { return to_string(tc.conv); })
        .def("descriptor_json", [](const TripleCode& tc) { return descriptor_json(tc); })
        .def("tensor_entries",
             [](const TripleCode& tc) {
                 IntersectionTensor t = intersection_tensor(tc);
                 std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> entries;
                 for (std::size_t a = 0; a < t.na; ++a)
                     for (std::size_t b = 0; b < t.nb; ++b)
                         for (std::size_t g = 0; g < t.ng; ++g)
                             if (t.get(a, b, g)) entries.emplace_back(a, b, g);
                 return entries;
             })
        .def("stabilizers_json",
             [](const TripleCode& tc, bool twisted) {
                 return stabilizers_json(tc, twisted ? twisted_stabilizers(tc)
                                                     : untwisted_stabilizers(tc));
             },
             py::arg("twisted") = true)
        .def("verify",
             [](const TripleCode& tc, std::size_t trials, uint64_t seed) {
                 py::dict d;
                 StokesReport st = stokes_check(tc, trials, seed);
                 d["cohomology_invariance"] = st.ok();
                 ClosureReport cl = commutation_closure(tc, twisted_stabilizers(tc));
                 d["commutation_closure"] = cl.ok();
                 EntanglerResult en = entangler(tc);
                 d["entangler"] = en.rotation_consistent && en.conjugation_ok && en.gauss_commute_ok;
                 return d;
             },
             py::arg("trials") = 50, py::arg("seed") = 1)
        .def("rate_report",
             [](const TripleCode& tc) {
                 CodeReport rep = rate_report(tc);
                 py::dict d;
                 d["k_r"] = rep.k_r;
                 d["k_b"] = rep.k_b;
                 d["gamma_count"] = rep.gamma_count;
                 d["k_twisted"] = rep.k_twisted;
                 return d;
             })
        .def("distance_report", [](const TripleCode& tc,
                                   uint64_t budget) { return report_json(full_report(tc, budget)); },
             py::arg("budget") = uint64_t(1) << 26)
        .def("fountain_plan",
             [](const TripleCode& tc) {
                 InitPlan plan = plan_fountain(tc);
                 py::dict d;
                 d["red_plus"] = plan.red_plus;
                 d["blue_plus"] = plan.blue_plus;
                 d["disjoint_certificate"] = plan.disjoint_certificate;
                 std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;
                 for (const auto& p : plan.active_pairs) pairs.emplace_back(p.alpha, p.beta, p.gamma);
                 d["active_pairs"] = pairs;
                 return d;
             })
        .def("simulate",
             [](const TripleCode& tc, std::size_t trials, uint64_t seed, const std::string& mode) {
                 InitPlan plan = plan_fountain(tc);
                 py::list out;
                 for (std::size_t k = 0; k < trials; ++k) {
                     ProtocolTranscript tr =
                         mode == "dense" ? run_dense(tc, plan, seed + k)
                                         : run_ledger(tc, plan, std::nullopt, std::nullopt, seed + k)
                                               .transcript;
                     out.append(transcript_to_dict(tr));
                 }
                 return out;
             },
             py::arg("trials") = 1, py::arg("seed") = 1, py::arg("mode") = "dense")
        .def("twisted_ground_space_dim",
             [](const TripleCode& tc, bool fix_spurious) {
                 return twisted_ground_space_dim(tc, fix_spurious);
             },
             py::arg("fix_spurious") = false);

    m.def(
        "build",
        [](const std::vector<std::vector<int>>& hx,
           const std::optional<std::vector<std::vector<int>>>& hy, const std::string& adjacency) {
            auto conv = adjacency_from_string(adjacency);
            if (!conv) throw std::invalid_argument("unknown adjacency convention: " + adjacency);
            BitMatrix mx = matrix_from_rows(hx);
            BitMatrix my = hy ? matrix_from_rows(*hy) : mx;
            return triple_code(mx, my, *conv);
        },
        py::arg("hx"), py::arg("hy") = py::none(), py::arg("adjacency") = "min-index");

    m.def("repetition_code", [](std::size_t l) {
        BitMatrix h(l, l);
        for (std::size_t b = 0; b < l; ++b) {
            h.set(b, b, true);
            h.set((b + 1) % l, b, true);
        }
        return matrix_to_rows(h);
    });
    m.def("parse_alist", [](const std::string& text) { return matrix_to_rows(parse_alist(text)); });
    m.def("write_alist",
          [](const std::vector<std::vector<int>>& rows) { return write_alist(matrix_from_rows(rows)); });
    m.def("rank", [](const std::vector<std::vector<int>>& rows) { return rank(matrix_from_rows(rows)); });
    m.def("kernel_basis", [](const std::vector<std::vector<int>>& rows) {
        std::vector<std::string> out;
        for (const BitVector& v : kernel_basis(matrix_from_rows(rows))) out.push_back(v.to_string());
        return out;
    });
}
