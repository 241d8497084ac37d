#include "tqhp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tqhp {

namespace {

// Diagonal of the charge-parity transversal CZ of one gamma class on the
// logical computational basis: (-1)^{sum_{a,b} T[a][b][g] n_a m_b}.
bool logical_cz_diag(const IntersectionTensor& t, std::size_t g, uint64_t v, std::size_t na) {
    bool acc = false;
    for (std::size_t a = 0; a < na; ++a) {
        if (!((v >> a) & 1)) continue;
        for (std::size_t b = 0; b < t.nb; ++b)
            if (((v >> (na + b)) & 1) && t.get(a, b, g)) acc = !acc;
    }
    return acc;
}

std::vector<std::complex<double>> plan_logical_vector(const InitPlan& plan) {
    const std::size_t ka = plan.red_plus.size(), kb = plan.blue_plus.size();
    const std::size_t dim = std::size_t(1) << (ka + kb);
    std::vector<std::complex<double>> v(dim, 0.0);
    double amp = 1.0;
    std::size_t nplus = 0;
    for (uint8_t p : plan.red_plus) nplus += p;
    for (uint8_t p : plan.blue_plus) nplus += p;
    amp = std::pow(0.5, double(nplus) / 2.0);
    for (std::size_t s = 0; s < dim; ++s) {
        bool ok = true;
        for (std::size_t a = 0; a < ka && ok; ++a)
            if (((s >> a) & 1) && !plan.red_plus[a]) ok = false;
        for (std::size_t b = 0; b < kb && ok; ++b)
            if (((s >> (ka + b)) & 1) && !plan.blue_plus[b]) ok = false;
        if (ok) v[s] = amp;
    }
    return v;
}

double fidelity_to(const std::vector<std::complex<double>>& state,
                   const std::vector<std::complex<double>>& target) {
    std::complex<double> ov = 0;
    for (std::size_t i = 0; i < state.size(); ++i) ov += std::conj(target[i]) * state[i];
    return std::norm(ov);
}

}  // namespace

InitPlan plan_all_zero(const TripleCode& tc) {
    InitPlan p;
    p.red_plus.assign(tc.alpha.size(), 0);
    p.blue_plus.assign(tc.beta.size(), 0);
    p.disjoint_certificate = true;
    p.cluster_of_alpha.assign(tc.alpha.size(), -1);
    for (std::size_t a = 0; a < tc.alpha.size(); ++a)
        if (tc.alpha[a].decomposable) p.cluster_of_alpha[a] = tc.alpha[a].xfactor;
    return p;
}

InitPlan plan_fountain(const TripleCode& tc) {
    InitPlan p = plan_all_zero(tc);

    bool any_decomposable = false;
    for (const ClassInfo& ci : tc.alpha) any_decomposable |= ci.decomposable;
    if (!any_decomposable)
        throw std::invalid_argument("plan_fountain: no decomposable red basis available");

    // One |+> per cluster, chosen with pairwise-distinct y labels so each
    // gamma class sees at most one active pair.
    std::vector<bool> y_used;
    for (std::size_t a = 0; a < tc.alpha.size(); ++a) {
        const ClassInfo& ci = tc.alpha[a];
        if (!ci.decomposable) continue;
        if (static_cast<std::size_t>(ci.yfactor) >= y_used.size())
            y_used.resize(ci.yfactor + 1, false);
    }
    std::vector<bool> cluster_done;
    for (std::size_t a = 0; a < tc.alpha.size(); ++a) {
        const ClassInfo& ci = tc.alpha[a];
        if (!ci.decomposable) continue;
        if (static_cast<std::size_t>(ci.xfactor) >= cluster_done.size())
            cluster_done.resize(ci.xfactor + 1, false);
        if (cluster_done[ci.xfactor] || y_used[ci.yfactor]) continue;
        p.red_plus[a] = 1;
        cluster_done[ci.xfactor] = true;
        y_used[ci.yfactor] = true;
    }
    for (std::size_t b = 0; b < tc.beta.size(); ++b)
        if (tc.beta[b].decomposable) p.blue_plus[b] = 1;

    certify_plan(tc, p);
    return p;
}

void certify_plan(const TripleCode& tc, InitPlan& plan) {
    IntersectionTensor t = intersection_tensor(tc);
    std::vector<bool> alpha_used(tc.alpha.size(), false), beta_used(tc.beta.size(), false);
    plan.active_pairs.clear();
    plan.disjoint_certificate = true;
    for (std::size_t g = 0; g < t.ng; ++g) {
        std::vector<std::pair<std::size_t, std::size_t>> hits;
        for (std::size_t a = 0; a < t.na; ++a)
            for (std::size_t b = 0; b < t.nb; ++b)
                if (t.get(a, b, g) && plan.red_plus[a] && plan.blue_plus[b]) hits.emplace_back(a, b);
        if (hits.empty()) continue;
        if (hits.size() > 1) {
            plan.disjoint_certificate = false;
            continue;
        }
        auto [a, b] = hits.front();
        if (alpha_used[a] || beta_used[b]) plan.disjoint_certificate = false;
        alpha_used[a] = true;
        beta_used[b] = true;
        plan.active_pairs.push_back({a, b, g});
    }
}

std::vector<double> rho_distribution(const TripleCode& tc, const IntersectionTensor& t,
                                     const InitPlan& plan) {
    const std::size_t ka = tc.alpha.size();
    std::vector<std::complex<double>> psi = plan_logical_vector(plan);
    const std::size_t ng = t.ng;
    std::vector<double> probs(std::size_t(1) << ng, 0.0);
    for (uint64_t r = 0; r < probs.size(); ++r) {
        std::vector<std::complex<double>> branch = psi;
        for (std::size_t g = 0; g < ng; ++g) {
            const double sgn = ((r >> g) & 1) ? -1.0 : 1.0;
            for (std::size_t v = 0; v < branch.size(); ++v) {
                double d = logical_cz_diag(t, g, v, ka) ? -1.0 : 1.0;
                branch[v] *= 0.5 * (1.0 + sgn * d);
            }
        }
        double p = 0;
        for (const auto& a : branch) p += std::norm(a);
        probs[r] = p;
    }
    return probs;
}

std::vector<std::complex<double>> projected_logical_state(const TripleCode& tc,
                                                          const IntersectionTensor& t,
                                                          const InitPlan& plan,
                                                          const std::vector<uint8_t>& rho) {
    const std::size_t ka = tc.alpha.size();
    std::vector<std::complex<double>> psi = plan_logical_vector(plan);
    for (std::size_t g = 0; g < t.ng; ++g) {
        const double sgn = rho[g] ? -1.0 : 1.0;
        for (std::size_t v = 0; v < psi.size(); ++v) {
            double d = logical_cz_diag(t, g, v, ka) ? -1.0 : 1.0;
            psi[v] *= 0.5 * (1.0 + sgn * d);
        }
    }
    double n2 = 0;
    for (const auto& a : psi) n2 += std::norm(a);
    if (n2 <= 1e-300) throw std::runtime_error("projected_logical_state: branch has zero weight");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi) a *= inv;
    return psi;
}

namespace {

// 2-qubit reduced density matrix of logical pair (a, b) from a pure logical
// state, then fidelity against the post-measurement target.
double pair_fidelity(const std::vector<std::complex<double>>& psi, std::size_t ka, std::size_t a,
                     std::size_t b_local, int outcome, double* purity) {
    // rho_pair[(x,y)][(x',y')], x = alpha bit, y = beta bit
    std::complex<double> rho01[4][4] = {};
    const std::size_t bbit = ka + b_local;
    for (std::size_t v = 0; v < psi.size(); ++v) {
        if (psi[v] == std::complex<double>(0.0)) continue;
        std::size_t xa = (v >> a) & 1, yb = (v >> bbit) & 1;
        for (std::size_t w = 0; w < psi.size(); ++w) {
            // same assignment outside the pair
            std::size_t mask = ~((std::size_t(1) << a) | (std::size_t(1) << bbit));
            if ((v & mask) != (w & mask)) continue;
            std::size_t xa2 = (w >> a) & 1, yb2 = (w >> bbit) & 1;
            rho01[xa * 2 + yb][xa2 * 2 + yb2] += psi[v] * std::conj(psi[w]);
        }
    }
    std::complex<double> target[4];
    if (outcome > 0) {
        const double inv = 1.0 / std::sqrt(3.0);
        target[0] = inv; target[1] = inv; target[2] = inv; target[3] = 0.0;
    } else {
        target[0] = target[1] = target[2] = 0.0;
        target[3] = 1.0;
    }
    std::complex<double> acc = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += std::conj(target[i]) * rho01[i][j] * target[j];
    if (purity) {
        std::complex<double> p2 = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) p2 += rho01[i][j] * rho01[j][i];
        *purity = p2.real();
    }
    return acc.real();
}

void fill_pair_results(const TripleCode& tc, ProtocolTranscript& tr, const InitPlan& plan) {
    for (const InitPlan::Pair& pr : plan.active_pairs) {
        ProtocolTranscript::PairResult res;
        res.alpha = pr.alpha;
        res.beta = pr.beta;
        res.gamma = pr.gamma;
        res.outcome = tr.rho[pr.gamma] ? -1 : +1;
        res.fidelity_to_magic = pair_fidelity(tr.logical_state, tc.alpha.size(), pr.alpha, pr.beta,
                                              res.outcome, &res.purity);
        tr.pairs.push_back(res);
    }
}

std::string support_string(const BitVector& v) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i : v.support()) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

}  // namespace

LedgerRun run_ledger(const TripleCode& tc, const InitPlan& plan,
                     const std::optional<std::vector<uint8_t>>& forced_mu,
                     const std::optional<std::vector<uint8_t>>& forced_z, uint64_t seed) {
    LedgerRun run;
    ProtocolTranscript& tr = run.transcript;
    tr.seed = seed;
    tr.backend = "ledger";
    tr.plan = plan;
    std::mt19937_64 rng(seed);

    const std::size_t n0g = tc.Xg.cells(0);
    const std::size_t n1g = tc.Xg.cells(1);
    const std::size_t ng_classes = tc.gamma.size();
    IntersectionTensor t = intersection_tensor(tc);

    // Gamma parity matrix: rho = G mu.
    BitMatrix gmat(ng_classes, n0g);
    for (std::size_t g = 0; g < ng_classes; ++g)
        for (std::size_t i : tc.gamma[g].support()) gmat.set(g, i, true);

    // Stage S1.
    LedgerStage s1{"S1", {}};
    s1.generators.push_back("A^r (bare, all 0-cells), B^r (all 2-cells)");
    s1.generators.push_back("A^b (bare, all 0-cells), B^b (all 2-cells)");
    s1.generators.push_back("Z^g on every 1-cell, B^g (all 2-cells)");
    for (std::size_t x = 0; x < tc.xi_cycles.size(); ++x)
        s1.generators.push_back("Zbar^g_xi" + std::to_string(x) + " " +
                                support_string(tc.xi_cycles[x]));
    s1.generators.push_back("plan logical constraints (Xbar for |+>, Zbar for |0>)");
    run.stages.push_back(std::move(s1));

    // Outcomes mu.
    if (forced_mu) {
        if (forced_mu->size() != n0g)
            throw std::invalid_argument("run_ledger: forced mu has wrong length");
        tr.mu = *forced_mu;
    } else {
        // Sample the class parities from the exact distribution, then a uniform
        // lift of the gauge directions.
        std::vector<double> probs = rho_distribution(tc, t, plan);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double u = uni(rng), acc = 0;
        uint64_t pick = 0;
        for (uint64_t r = 0; r < probs.size(); ++r) {
            acc += probs[r];
            if (u < acc) { pick = r; break; }
            if (r + 1 == probs.size()) pick = r;
        }
        BitVector rho_bits(ng_classes);
        for (std::size_t g = 0; g < ng_classes; ++g) rho_bits.set(g, (pick >> g) & 1);
        auto mu_part = solve(gmat, rho_bits);
        if (!mu_part) throw std::logic_error("run_ledger: gamma system unsolvable");
        BitVector mu = *mu_part;
        for (const BitVector& k : kernel_basis(gmat))
            if (rng() & 1) mu ^= k;
        tr.mu.assign(n0g, 0);
        for (std::size_t i = 0; i < n0g; ++i) tr.mu[i] = mu.get(i);
    }

    // rho from mu.
    tr.rho.assign(ng_classes, 0);
    for (std::size_t g = 0; g < ng_classes; ++g) {
        uint8_t acc = 0;
        for (std::size_t i : tc.gamma[g].support()) acc ^= tr.mu[i];
        tr.rho[g] = acc;
    }
    {
        // Outcome pattern must have nonzero branch weight.
        std::vector<double> probs = rho_distribution(tc, t, plan);
        uint64_t r = 0;
        for (std::size_t g = 0; g < ng_classes; ++g) r |= uint64_t(tr.rho[g]) << g;
        if (probs[r] <= 1e-12)
            throw std::invalid_argument("run_ledger: supplied outcomes are inconsistent (zero-weight branch)");
    }

    LedgerStage s2{"S2", {}};
    s2.generators.push_back("Atilde^r, B^r, Atilde^b, B^b (dressed red/blue kept)");
    for (std::size_t i = 0; i < n0g; ++i)
        s2.generators.push_back(std::string(tr.mu[i] ? "-" : "+") + "Atilde^g_" + std::to_string(i));
    s2.generators.push_back("B^g, Zbar^g_xi");
    run.stages.push_back(std::move(s2));

    // Green single-qubit Z outcomes: a uniformly random coboundary in the
    // noiseless run; forced patterns are validated against the flux and
    // spurious-cycle constraints.
    const BitMatrix d0g = tc.Xg.coboundary(0);
    BitVector eta(n1g);
    if (forced_z) {
        if (forced_z->size() != n1g)
            throw std::invalid_argument("run_ledger: forced z pattern has wrong length");
        for (std::size_t i = 0; i < n1g; ++i) eta.set(i, (*forced_z)[i]);
        BitVector deta = tc.Xg.coboundary(1).mul(eta);
        if (!deta.empty_support())
            throw std::invalid_argument("run_ledger: z outcomes violate the B^g cocycle constraint");
        for (const BitVector& xi : tc.xi_cycles)
            if (eta.dot(xi))
                throw std::invalid_argument("run_ledger: z outcomes violate a spurious-cycle constraint");
        if (!solve(d0g, eta))
            throw std::runtime_error("run_ledger: z outcomes lie in a nontrivial class");
    } else {
        BitVector v0(n0g);
        for (std::size_t i = 0; i < n0g; ++i) v0.set(i, rng() & 1);
        eta = d0g.mul(v0);
    }
    tr.z_outcomes.assign(n1g, 0);
    for (std::size_t i = 0; i < n1g; ++i) tr.z_outcomes[i] = eta.get(i);

    auto corr = solve(d0g, eta);
    if (!corr) throw std::runtime_error("run_ledger: correction system unsolvable");
    tr.correction = corr->support();

    LedgerStage s3{"S3", {}};
    s3.generators.push_back("Atilde^r, B^r, Atilde^b, B^b");
    for (std::size_t i = 0; i < n1g; ++i)
        if (tr.z_outcomes[i]) s3.generators.push_back("-Z^g_" + std::to_string(i));
    s3.generators.push_back("+Z^g elsewhere, B^g, Zbar^g_xi");
    for (std::size_t g = 0; g < ng_classes; ++g)
        s3.generators.push_back(std::string(tr.rho[g] ? "-" : "+") + "C^g_gamma" + std::to_string(g) +
                                " (charge parity)");
    s3.generators.push_back("correction V0 = " +
                            support_string(BitVector::from_indices(n0g, tr.correction)));
    run.stages.push_back(std::move(s3));

    LedgerStage s4{"S4", {}};
    s4.generators.push_back("A^r, B^r, A^b, B^b (bare; green decoupled to |0>)");
    s4.generators.push_back("Z^g on every 1-cell, B^g, Zbar^g_xi");
    for (std::size_t g = 0; g < ng_classes; ++g)
        s4.generators.push_back(std::string(tr.rho[g] ? "-" : "+") +
                                "CZtilde_gamma" + std::to_string(g));
    run.stages.push_back(std::move(s4));

    tr.logical_state = projected_logical_state(tc, t, plan, tr.rho);
    tr.leakage = 0.0;
    fill_pair_results(tc, tr, plan);
    return run;
}

namespace {

DenseState encode_copy(const ChainComplex& cx, const std::vector<ClassInfo>& classes,
                       const std::vector<uint8_t>& plus, uint64_t xbar_bits) {
    const std::size_t n = cx.cells(1);
    DenseState st(n);
    // X-logical layer on |0...0>, then the A projectors.
    BitVector xsup(n);
    for (std::size_t i = 0; i < classes.size(); ++i)
        if ((xbar_bits >> i) & 1) xsup ^= classes[i].cocycle;
    st.apply(PhasePolyOp::x_string(n, xsup));
    BitMatrix d0 = cx.coboundary(0);
    for (std::size_t v = 0; v < cx.cells(0); ++v) {
        BitVector sup = d0.mul(BitVector::from_indices(cx.cells(0), {v}));
        st.project(PhasePolyOp::x_string(n, sup), +1);
    }
    st.normalize();
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (plus[i]) {
            st.project(PhasePolyOp::x_string(n, [&] {
                           BitVector s(n);
                           s ^= classes[i].cocycle;
                           return s;
                       }()),
                       +1);
            st.normalize();
        }
    return st;
}

}  // namespace

DenseState encoded_rb_state(const TripleCode& tc, uint64_t v_bits) {
    const std::size_t ka = tc.alpha.size();
    std::vector<uint8_t> no_plus_r(tc.alpha.size(), 0), no_plus_b(tc.beta.size(), 0);
    DenseState r = encode_copy(tc.Xr, tc.alpha, no_plus_r, v_bits & ((uint64_t(1) << ka) - 1));
    DenseState b = encode_copy(tc.Xb, tc.beta, no_plus_b, v_bits >> ka);
    return DenseState::kron(r, b);
}

DenseState initial_state(const TripleCode& tc, const InitPlan& plan) {
    if (tc.total_qubits() > DenseState::kMaxQubits)
        throw std::invalid_argument("initial_state: qubit budget exceeded (" +
                                    std::to_string(tc.total_qubits()) + " > " +
                                    std::to_string(DenseState::kMaxQubits) + ")");
    DenseState r = encode_copy(tc.Xr, tc.alpha, plan.red_plus, 0);
    DenseState b = encode_copy(tc.Xb, tc.beta, plan.blue_plus, 0);
    DenseState g(tc.Xg.cells(1));  // |0...0>
    return DenseState::kron(DenseState::kron(r, b), g);
}

LogicalReadout extract_logical(const TripleCode& tc, const DenseState& state, double tol) {
    const std::size_t ka = tc.alpha.size(), kb = tc.beta.size();
    const std::size_t nrb = tc.qubits(Copy::R) + tc.qubits(Copy::B);
    LogicalReadout out;
    out.amplitudes.assign(std::size_t(1) << (ka + kb), 0.0);
    double captured = 0;
    for (uint64_t v = 0; v < out.amplitudes.size(); ++v) {
        DenseState basis = encoded_rb_state(tc, v);
        std::complex<double> ov = 0;
        for (std::size_t s = 0; s < basis.amps().size(); ++s)
            ov += std::conj(basis.amps()[s]) * state.amps()[s];  // green bits all zero
        out.amplitudes[v] = ov;
        captured += std::norm(ov);
    }
    out.leakage = state.norm2() - captured;
    if (out.leakage > tol)
        throw std::runtime_error("extract_logical: state outside the code space (leakage " +
                                 std::to_string(out.leakage) + ")");
    (void)nrb;
    return out;
}

ProtocolTranscript run_dense(const TripleCode& tc, const InitPlan& plan, uint64_t seed,
                             const std::vector<std::size_t>* measurement_order,
                             const std::optional<std::vector<uint8_t>>& forced_mu) {
    ProtocolTranscript tr;
    tr.seed = seed;
    tr.backend = "dense";
    tr.plan = plan;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const std::size_t n0g = tc.Xg.cells(0);
    const std::size_t n1g = tc.Xg.cells(1);
    const std::size_t goff = tc.qubit_offset(Copy::G);

    StabilizerSet tw = twisted_stabilizers(tc);
    std::vector<const Generator*> green_gens(n0g, nullptr);
    for (const Generator& g : tw.generators)
        if (g.copy == Copy::G && g.role == StabRole::ATilde) green_gens[g.cell] = &g;

    DenseState st = initial_state(tc, plan);

    std::vector<std::size_t> order(n0g);
    std::iota(order.begin(), order.end(), 0);
    if (measurement_order) order = *measurement_order;

    tr.mu.assign(n0g, 0);
    for (std::size_t cell : order) {
        if (forced_mu) {
            int sgn = (*forced_mu)[cell] ? -1 : +1;
            st.project(green_gens[cell]->op, sgn);
            double n2 = st.norm2();
            if (n2 < 1e-20)
                throw std::invalid_argument("run_dense: forced outcome branch has zero weight");
            st.normalize();
            tr.mu[cell] = (*forced_mu)[cell];
        } else {
            int outcome = st.measure(green_gens[cell]->op, uni(rng));
            tr.mu[cell] = outcome < 0;
        }
    }

    tr.rho.assign(tc.gamma.size(), 0);
    for (std::size_t g = 0; g < tc.gamma.size(); ++g) {
        uint8_t acc = 0;
        for (std::size_t i : tc.gamma[g].support()) acc ^= tr.mu[i];
        tr.rho[g] = acc;
    }

    tr.z_outcomes.assign(n1g, 0);
    BitVector eta(n1g);
    std::vector<std::size_t> green_qubits(n1g);
    for (std::size_t q = 0; q < n1g; ++q) green_qubits[q] = goff + q;
    std::vector<int> zbits = st.measure_qubits_z(green_qubits, uni(rng));
    for (std::size_t q = 0; q < n1g; ++q) {
        tr.z_outcomes[q] = zbits[q];
        eta.set(q, zbits[q]);
    }

    auto corr = solve(tc.Xg.coboundary(0), eta);
    if (!corr)
        throw std::runtime_error("run_dense: measured green pattern lies in a nontrivial class");
    tr.correction = corr->support();

    PhasePolyOp corr_op = PhasePolyOp::identity(tc.total_qubits());
    for (std::size_t cell : tr.correction) corr_op = multiply(corr_op, green_gens[cell]->op);
    st.apply(corr_op);

    LogicalReadout ro = extract_logical(tc, st);
    tr.leakage = ro.leakage;
    tr.logical_state = std::move(ro.amplitudes);
    double n2 = 0;
    for (const auto& a : tr.logical_state) n2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : tr.logical_state) a *= inv;

    fill_pair_results(tc, tr, plan);
    return tr;
}

CrossCheckReport crosscheck(const TripleCode& tc, const InitPlan& plan, std::size_t trials,
                            uint64_t seed) {
    CrossCheckReport rep;
    rep.trials = trials;
    IntersectionTensor t = intersection_tensor(tc);
    std::mt19937_64 rng(seed);

    // (i) dense output equals the projector formula, trial by trial.
    std::vector<uint64_t> rho_counts(std::size_t(1) << tc.gamma.size(), 0);
    for (std::size_t k = 0; k < trials; ++k) {
        ProtocolTranscript tr = run_dense(tc, plan, rng());
        uint64_t r = 0;
        for (std::size_t g = 0; g < tr.rho.size(); ++g) r |= uint64_t(tr.rho[g]) << g;
        ++rho_counts[r];
        std::vector<std::complex<double>> expected =
            projected_logical_state(tc, t, plan, std::vector<uint8_t>(tr.rho));
        double f = fidelity_to(tr.logical_state, expected);
        rep.worst_fidelity = std::min(rep.worst_fidelity, f);
        if (f < 1.0 - 1e-9) {
            rep.state_match = false;
            if (rep.notes.size() < 4)
                rep.notes.push_back("state mismatch at trial " + std::to_string(k) +
                                    " fidelity " + std::to_string(f));
        }
    }

    // (ii) rho statistics vs the exact Born distribution, 3 sigma per pattern.
    std::vector<double> probs = rho_distribution(tc, t, plan);
    for (std::size_t r = 0; r < probs.size(); ++r) {
        double mean = trials * probs[r];
        double sigma = std::sqrt(std::max(1e-12, trials * probs[r] * (1 - probs[r])));
        if (std::abs(double(rho_counts[r]) - mean) > 3 * sigma + 1e-9) {
            rep.stats_match = false;
            rep.notes.push_back("rho pattern " + std::to_string(r) + ": count " +
                                std::to_string(rho_counts[r]) + " vs mean " + std::to_string(mean));
        }
    }

    // (iii) measurement-order invariance: identical forced outcomes through a
    // permuted order must give the same state exactly.
    {
        const std::size_t n0g = tc.Xg.cells(0);
        ProtocolTranscript base = run_dense(tc, plan, seed + 17);
        std::vector<std::size_t> order(n0g);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        ProtocolTranscript permuted = run_dense(tc, plan, seed + 17, &order,
                                                std::vector<uint8_t>(base.mu));
        // z outcomes are resampled; compare the logical content conditioned on rho.
        if (permuted.rho != base.rho) {
            rep.order_invariant = false;
            rep.notes.push_back("order permutation changed rho");
        } else {
            std::vector<std::complex<double>> e1 = base.logical_state;
            double f = fidelity_to(permuted.logical_state, e1);
            if (f < 1.0 - 1e-9) {
                rep.order_invariant = false;
                rep.notes.push_back("order permutation changed the logical state, fidelity " +
                                    std::to_string(f));
            }
        }
    }
    return rep;
}

}  // namespace tqhp
