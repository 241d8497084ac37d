#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tqhp/dense.hpp"
#include "tqhp/operators.hpp"
#include "tqhp/pathintegral.hpp"
#include "tqhp/skeleton.hpp"

namespace tqhp {

// Logical initialization: one |+> red logical per cluster (red decomposable
// classes sharing an x-side label), all decomposable blue logicals |+>, the
// rest |0>; green physical register all |0>.
struct InitPlan {
    std::vector<uint8_t> red_plus;   // per alpha class
    std::vector<uint8_t> blue_plus;  // per beta class

    struct Pair {
        std::size_t alpha, beta, gamma;
    };
    std::vector<Pair> active_pairs;   // unique (alpha,beta) per covered gamma
    bool disjoint_certificate = false;
    std::vector<int> cluster_of_alpha;  // x-side label per alpha; -1 for mixed classes
};

InitPlan plan_fountain(const TripleCode& tc);
// All-|0> plan (no active pairs).
InitPlan plan_all_zero(const TripleCode& tc);

// Recompute the active pairs and the disjointness certificate for a plan:
// every gamma class must see at most one (+,+) pair in the tensor, and pairs
// must not share logical qubits.
void certify_plan(const TripleCode& tc, InitPlan& plan);

struct LedgerStage {
    std::string name;  // S1..S4
    std::vector<std::string> generators;
};

struct ProtocolTranscript {
    uint64_t seed = 0;
    std::string backend;                 // "ledger" or "dense"
    InitPlan plan;
    std::vector<uint8_t> mu;             // dressed green measurement outcomes, per 0-cell
    std::vector<uint8_t> rho;            // per gamma class
    std::vector<uint8_t> z_outcomes;     // green single-qubit Z outcomes, per 1-cell
    std::vector<std::size_t> correction; // green 0-cells of the applied correction
    std::vector<std::complex<double>> logical_state;  // 2^(|alpha|+|beta|), normalized
    double leakage = 0.0;                // weight outside the logical code space (dense)

    struct PairResult {
        std::size_t alpha, beta, gamma;
        int outcome;               // +1 / -1
        double fidelity_to_magic;  // vs CZ magic state for +1, |11> for -1
        double purity;             // tr(rho_pair^2) of the reduced pair state
    };
    std::vector<PairResult> pairs;
};

struct LedgerRun {
    ProtocolTranscript transcript;
    std::vector<LedgerStage> stages;
};

// Symbolic stabilizer-ledger execution. If outcomes are supplied they are
// validated (mu length/consistency; z pattern must be a coboundary orthogonal
// to the spurious cycles), otherwise sampled from the exact distribution.
LedgerRun run_ledger(const TripleCode& tc, const InitPlan& plan,
                     const std::optional<std::vector<uint8_t>>& forced_mu = std::nullopt,
                     const std::optional<std::vector<uint8_t>>& forced_z = std::nullopt,
                     uint64_t seed = 1);

// Exact dense execution: encode, measure every dressed green stabilizer with
// Born sampling, measure the green register in Z, solve and apply the
// correction, extract the logical state.
ProtocolTranscript run_dense(const TripleCode& tc, const InitPlan& plan, uint64_t seed,
                             const std::vector<std::size_t>* measurement_order = nullptr,
                             const std::optional<std::vector<uint8_t>>& forced_mu = std::nullopt);

// Encoded logical basis state |v> of the red+blue register (green excluded),
// v indexed over alpha bits then beta bits.
DenseState encoded_rb_state(const TripleCode& tc, uint64_t v_bits);
// Initial dense state for a plan (red/blue logicals set, green all |0>).
DenseState initial_state(const TripleCode& tc, const InitPlan& plan);

struct LogicalReadout {
    std::vector<std::complex<double>> amplitudes;  // over 2^(|alpha|+|beta|)
    double leakage = 0.0;
};

// Projects a dense state (green register in |0>) onto the encoded logical
// basis. Throws if more than `tol` weight lies outside the code space.
LogicalReadout extract_logical(const TripleCode& tc, const DenseState& state, double tol = 1e-9);

// Logical-space evolution of the projector formula: P_rho applied to the
// plan's logical input state, normalized. Ground truth for the dense backend.
std::vector<std::complex<double>> projected_logical_state(const TripleCode& tc,
                                                          const IntersectionTensor& t,
                                                          const InitPlan& plan,
                                                          const std::vector<uint8_t>& rho);

// Exact outcome distribution over the 2^(|gamma|) rho patterns for a plan.
std::vector<double> rho_distribution(const TripleCode& tc, const IntersectionTensor& t,
                                     const InitPlan& plan);

struct CrossCheckReport {
    std::size_t trials = 0;
    bool state_match = true;        // dense output vs projector formula
    bool stats_match = true;        // dense rho frequencies vs exact, 3 sigma
    bool order_invariant = true;    // permuted measurement order, same branch
    double worst_fidelity = 1.0;
    std::vector<std::string> notes;
    bool ok() const { return state_match && stats_match && order_invariant; }
};

CrossCheckReport crosscheck(const TripleCode& tc, const InitPlan& plan, std::size_t trials,
                            uint64_t seed = 1);

}  // namespace tqhp
