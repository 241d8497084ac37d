#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

#include "tqhp/io.hpp"

using namespace tqhp;
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitIo = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
    std::string x_path, y_path;
    std::string format = "alist";
    std::string adjacency = "min-index";
    uint64_t seed = 1;
    std::size_t dense_cap = 26;
    uint64_t budget = uint64_t(1) << 26;
    std::string out = ".";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
    auto* x = cmd->add_option("--x", o.x_path, "classical code for the x factor");
    if (needs_input) x->required();
    cmd->add_option("--y", o.y_path, "classical code for the y factor (defaults to --x)");
    cmd->add_option("--format", o.format, "input format: alist | dense01 | json")
        ->check(CLI::IsMember({"alist", "dense01", "json"}));
    cmd->add_option("--adjacency", o.adjacency, "type-B site convention: min-index | symmetrized")
        ->check(CLI::IsMember({"min-index", "symmetrized"}));
    cmd->add_option("--seed", o.seed, "seed recorded in every artifact");
    cmd->add_option("--dense-cap", o.dense_cap, "dense backend qubit cap (<= 26)");
    cmd->add_option("--budget", o.budget, "distance search budget");
    cmd->add_option("--out", o.out, "output directory");
}

TripleCode build_code(const CommonOpts& o) {
    BitMatrix hx = load_matrix_file(o.x_path, o.format);
    BitMatrix hy = o.y_path.empty() ? hx : load_matrix_file(o.y_path, o.format);
    auto conv = adjacency_from_string(o.adjacency);
    if (!conv) throw std::invalid_argument("unknown adjacency convention: " + o.adjacency);
    if (o.dense_cap > 26) throw std::invalid_argument("--dense-cap must be <= 26");
    return triple_code(hx, hy, *conv);
}

void emit(const CommonOpts& o, const std::string& name, const std::string& content) {
    fs::create_directories(o.out);
    write_file((fs::path(o.out) / name).string(), content);
}

// Wall-clock metadata lives in a side file so the main artifacts stay
// byte-identical across reruns.
void emit_meta(const CommonOpts& o, const std::string& command) {
    ordered_json m;
    m["command"] = command;
    m["seed"] = o.seed;
    m["adjacency"] = o.adjacency;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    m["unix_time"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    emit(o, "meta.json", m.dump(2) + "\n");
}

int cmd_build(const CommonOpts& o) {
    TripleCode tc = build_code(o);
    emit(o, "descriptor.json", descriptor_json(tc));
    emit_meta(o, "build");
    std::cout << "built triple code: " << tc.qubits(Copy::R) << "+" << tc.qubits(Copy::B) << "+"
              << tc.qubits(Copy::G) << " qubits, |alpha|=" << tc.alpha.size()
              << " |beta|=" << tc.beta.size() << " |gamma|=" << tc.gamma.size() << "\n";
    return kExitOk;
}

int cmd_stabilizers(const CommonOpts& o) {
    TripleCode tc = build_code(o);
    emit(o, "stabilizers_untwisted.json", stabilizers_json(tc, untwisted_stabilizers(tc)));
    StabilizerSet tw = twisted_stabilizers(tc);
    emit(o, "stabilizers_twisted.json", stabilizers_json(tc, tw));
    emit_meta(o, "stabilizers");
    std::size_t cz = 0;
    for (const Generator& g : tw.generators) cz += g.op.cz_pairs().size();
    std::cout << "twisted generators: " << tw.generators.size() << ", total CZ pairs: " << cz
              << "\n";
    return kExitOk;
}

int cmd_intersections(const CommonOpts& o) {
    TripleCode tc = build_code(o);
    IntersectionTensor t = intersection_tensor(tc);
    emit(o, "tensor.json", tensor_json(t));
    if (t.na + t.nb <= 16 && t.ng <= 10)
        emit(o, "action.json", logical_action_json(t));
    emit_meta(o, "intersections");
    return kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    TripleCode tc = build_code(o);
    bool all_ok = true;
    ordered_json out;

    StokesReport st = stokes_check(tc, 100, o.seed);
    bool st_ok = st.ok();
    all_ok &= st_ok;
    std::cout << (st_ok ? "PASS" : "FAIL") << " cohomology invariance (coboundary shifts, "
              << st.trials << " trials)\n";
    out["cohomology_invariance"] = st_ok;
    if (!st_ok)
        for (std::size_t i = 0; i < st.witnesses.size() && i < 4; ++i)
            std::cout << "       witness: " << st.witnesses[i] << "\n";

    StabilizerSet tw = twisted_stabilizers(tc);
    ClosureReport cl = commutation_closure(tc, tw);
    all_ok &= cl.ok();
    std::cout << (cl.ok() ? "PASS" : "FAIL") << " commutation closure (" << cl.pairs_checked
              << " pairs, " << cl.nontrivial_commutators << " nontrivial)\n";
    out["commutation_closure"] = cl.ok();
    for (std::size_t i = 0; i < cl.failures.size() && i < 6; ++i)
        std::cout << "       witness: cells " << cl.failures[i].cell_i << ","
                  << cl.failures[i].cell_j << ": " << cl.failures[i].reason << "\n";
    if (cl.failures.size() > 6)
        std::cout << "       (" << cl.failures.size() - 6 << " more witnesses suppressed)\n";

    // charge parity: X cancellation over every 0-cocycle basis element
    bool cp_ok = true;
    std::size_t cp_checked = 0;
    for (Copy c : {Copy::R, Copy::B, Copy::G}) {
        HomologyBasis h0 = homology_basis(tc.complex_of(c), 0);
        for (const BitVector& v : h0.cocycle_reps) {
            PhasePolyOp op = charge_parity(tc, c, Cochain{c, 0, v});
            cp_ok &= op.is_diagonal();
            ++cp_checked;
        }
    }
    if (cp_checked == 0) {
        std::cout << "SKIP charge-parity reduction (no 0-cocycle classes)\n";
        out["charge_parity_reduction"] = "skipped";
    } else {
        all_ok &= cp_ok;
        std::cout << (cp_ok ? "PASS" : "FAIL") << " charge-parity reduction (" << cp_checked
                  << " cocycles)\n";
        out["charge_parity_reduction"] = cp_ok;
    }

    EntanglerResult en = entangler(tc);
    bool en_ok = en.rotation_consistent && en.conjugation_ok && en.gauss_commute_ok;
    all_ok &= en_ok;
    std::cout << (en_ok ? "PASS" : "FAIL") << " entangler conjugation (" << en.ccz.size()
              << " CCZ triples)\n";
    out["entangler"] = en_ok;

    emit(o, "verify.json", out.dump(2) + "\n");
    emit_meta(o, "verify");
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_distance(const CommonOpts& o) {
    TripleCode tc = build_code(o);
    CodeReport rep = full_report(tc, o.budget);
    emit(o, "distance.json", report_json(rep));
    emit_meta(o, "distance");
    std::cout << report_table(rep);
    return kExitOk;
}

int cmd_report(const CommonOpts& o) { return cmd_distance(o); }

int cmd_fountain(const CommonOpts& o) {
    TripleCode tc = build_code(o);
    InitPlan plan = plan_fountain(tc);
    ordered_json j;
    j["red_plus"] = plan.red_plus;
    j["blue_plus"] = plan.blue_plus;
    j["clusters"] = plan.cluster_of_alpha;
    j["disjoint_certificate"] = plan.disjoint_certificate;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : plan.active_pairs) pairs.push_back({p.alpha, p.beta, p.gamma});
    j["active_pairs"] = std::move(pairs);
    emit(o, "fountain.json", j.dump(2) + "\n");
    emit_meta(o, "fountain");
    std::cout << "fountain plan: " << plan.active_pairs.size() << " disjoint CZ pair(s), certificate "
              << (plan.disjoint_certificate ? "ok" : "FAILED") << "\n";
    return plan.disjoint_certificate ? kExitOk : kExitVerifyFailed;
}

int cmd_simulate(const CommonOpts& o, std::size_t trials, const std::string& mode,
                 const std::string& replay_path) {
    TripleCode tc = build_code(o);
    InitPlan plan = plan_fountain(tc);
    bool dense = mode == "dense";
    if (dense && tc.total_qubits() > o.dense_cap) {
        std::cerr << "error: " << tc.total_qubits() << " qubits exceed --dense-cap " << o.dense_cap
                  << "; rerun with --mode ledger\n";
        return kExitBudget;
    }

    std::optional<std::vector<uint8_t>> replay_mu, replay_z;
    if (!replay_path.empty()) {
        nlohmann::json j = nlohmann::json::parse(read_file(replay_path));
        replay_mu = j.at("mu").get<std::vector<uint8_t>>();
        replay_z = j.at("z").get<std::vector<uint8_t>>();
    }

    fs::create_directories(o.out);
    std::size_t plus_branches = 0;
    double fidelity_sum = 0;
    std::size_t fidelity_count = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        ProtocolTranscript tr;
        if (dense)
            tr = run_dense(tc, plan, o.seed + k, nullptr, replay_mu);
        else
            tr = run_ledger(tc, plan, replay_mu, replay_z, o.seed + k).transcript;
        emit(o, "transcript_" + std::to_string(k) + ".json", transcript_json(tr));
        bool all_plus = true;
        for (uint8_t r : tr.rho) all_plus &= r == 0;
        plus_branches += all_plus;
        for (const auto& p : tr.pairs) {
            fidelity_sum += p.fidelity_to_magic;
            ++fidelity_count;
        }
    }
    ordered_json sum;
    sum["trials"] = trials;
    sum["mode"] = mode;
    sum["rho_zero_fraction"] = trials ? double(plus_branches) / trials : 0.0;
    sum["mean_pair_fidelity"] = fidelity_count ? fidelity_sum / fidelity_count : 0.0;
    sum["pairs_per_trial"] = plan.active_pairs.size();
    emit(o, "summary.json", sum.dump(2) + "\n");
    emit_meta(o, "simulate");
    std::cout << "simulate: " << trials << " " << mode << " trial(s), rho=0 fraction "
              << sum["rho_zero_fraction"] << ", mean pair fidelity " << sum["mean_pair_fidelity"]
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted 2D hypergraph-product code toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::size_t trials = 1;
    std::string mode = "dense";
    std::string replay;

    auto* c_build = app.add_subcommand("build", "construct the triple code and write its descriptor");
    add_common(c_build, o);
    auto* c_stab = app.add_subcommand("stabilizers", "export untwisted and twisted stabilizers");
    add_common(c_stab, o);
    auto* c_verify = app.add_subcommand("verify", "run the invariant checks");
    add_common(c_verify, o);
    auto* c_inter = app.add_subcommand("intersections", "export the triple intersection tensor");
    add_common(c_inter, o);
    auto* c_dist = app.add_subcommand("distance", "rate and distance report");
    add_common(c_dist, o);
    auto* c_rep = app.add_subcommand("report", "alias of distance");
    add_common(c_rep, o);
    auto* c_fount = app.add_subcommand("fountain", "fountain initialization plan");
    add_common(c_fount, o);
    auto* c_sim = app.add_subcommand("simulate", "run the gauging measurement protocol");
    add_common(c_sim, o);
    c_sim->add_option("--trials", trials, "number of seeded trials");
    c_sim->add_option("--mode", mode, "dense | ledger")->check(CLI::IsMember({"dense", "ledger"}));
    c_sim->add_option("--replay", replay, "transcript JSON with fixed outcomes to replay");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_build->parsed()) return cmd_build(o);
        if (c_stab->parsed()) return cmd_stabilizers(o);
        if (c_verify->parsed()) return cmd_verify(o);
        if (c_inter->parsed()) return cmd_intersections(o);
        if (c_dist->parsed()) return cmd_distance(o);
        if (c_rep->parsed()) return cmd_report(o);
        if (c_fount->parsed()) return cmd_fountain(o);
        if (c_sim->parsed()) return cmd_simulate(o, trials, mode, replay);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
