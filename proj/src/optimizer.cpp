#include "sigspec/optimizer.hpp"

#include "sigspec/numerics.hpp"
#include "sigspec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>

namespace sigspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct SlotEig {
    ComplexMatrix u;         // eigenvectors of theta^dag theta
    std::vector<double> w;   // eigenvalues ascending
    ComplexMatrix r;         // (theta^dag theta)^{-1/2}
    ComplexMatrix phi;       // theta * r
};

SlotEig polar_slot(const ComplexMatrix& theta) {
    SlotEig s;
    ComplexMatrix gram = adjoint_times(theta, theta);
    HermitianEig eig = hermitian_eig(gram);
    if (eig.values.front() < 1e-16)
        throw std::invalid_argument("optimizer: rank-deficient block");
    s.u = eig.vectors;
    s.w = eig.values;
    const int k = gram.rows();
    s.r = ComplexMatrix(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            cxd acc = 0.0;
            for (int t = 0; t < k; ++t)
                acc += s.u(i, t) * std::conj(s.u(j, t)) / std::sqrt(s.w[t]);
            s.r(i, j) = acc;
        }
    s.phi = theta * s.r;
    return s;
}

// Pull an ambient-frame conjugate gradient back through embedding + polar map.
ComplexMatrix pull_back(const ComplexMatrix& w_block, const ComplexMatrix& theta,
                        const SlotEig& se) {
    const int k = theta.cols();
    ComplexMatrix b = adjoint_times(w_block, theta);  // K x K
    ComplexMatrix bt = adjoint_times(se.u, b * se.u);
    ComplexMatrix q(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double wi = se.w[i], wj = se.w[j];
            double g;
            if (std::abs(wi - wj) > 1e-12 * std::max(1.0, std::abs(wi)))
                g = (1.0 / std::sqrt(wi) - 1.0 / std::sqrt(wj)) / (wi - wj);
            else
                g = -0.5 / (wi * std::sqrt(wi));
            q(i, j) = g * bt(i, j);
        }
    }
    ComplexMatrix z = se.u * q * se.u.adjoint();
    ComplexMatrix zsum = z;
    zsum += z.adjoint();
    return w_block * se.r + theta * zsum;
}

struct EvalResult {
    LossTerms terms;
    ThetaBlocks grad;
    CodeFrame frame;
};

// Columns of the assembled frame owned by each (slot, copy) pair, in order.
struct ColumnLayout {
    struct Piece {
        int slot;
        int copy;
        int col0;
        int rank;
    };
    std::vector<Piece> pieces;
    int total = 0;
};

ColumnLayout layout_of(const Branch& branch) {
    ColumnLayout lay;
    for (int s = 0; s < static_cast<int>(branch.slots.size()); ++s) {
        const Branch::Slot& slot = branch.slots[s];
        const int copies = slot.embeddings.empty() ? 1 : static_cast<int>(slot.embeddings.size());
        for (int c = 0; c < copies; ++c) {
            lay.pieces.push_back({s, c, lay.total, slot.rank});
            lay.total += slot.rank;
        }
    }
    return lay;
}

EvalResult evaluate(Objective objective, double target_sq, const Problem& problem,
                    const Branch& branch, const ThetaBlocks& thetas, double mu, double mu_sym,
                    bool want_grad) {
    if (thetas.size() != branch.slots.size())
        throw std::invalid_argument("optimizer: theta block count mismatch");
    const int dim = 1 << problem.n;
    const ColumnLayout lay = layout_of(branch);
    const int K = lay.total;

    std::vector<SlotEig> eigs;
    eigs.reserve(thetas.size());
    for (std::size_t s = 0; s < thetas.size(); ++s) {
        const Branch::Slot& slot = branch.slots[s];
        if (thetas[s].rows() != slot.dim || thetas[s].cols() != slot.rank)
            throw std::invalid_argument("optimizer: theta block shape mismatch");
        eigs.push_back(polar_slot(thetas[s]));
    }

    ComplexMatrix psi(dim, K);
    for (const ColumnLayout::Piece& p : lay.pieces) {
        const Branch::Slot& slot = branch.slots[p.slot];
        const ComplexMatrix& phi = eigs[p.slot].phi;
        if (slot.embeddings.empty()) {
            psi.set_block(0, p.col0, phi);
        } else {
            psi.set_block(0, p.col0, slot.embeddings[p.copy] * phi);
        }
    }

    EvalResult out;
    out.frame.n = problem.n;
    out.frame.psi = psi;

    ComplexMatrix wgrad(dim, K);  // ambient conjugate gradient
    LossTerms& t = out.terms;

    ComplexMatrix fpsi(dim, K);
    for (const PauliOperator& op : problem.family.members) {
        std::fill(fpsi.data(), fpsi.data() + static_cast<std::size_t>(dim) * K, cxd{});
        apply_pauli_add(op, psi.data(), fpsi.data(), K, K);
        ComplexMatrix m = adjoint_times(psi, fpsi);
        const double kbar = m.trace().real() / K;
        for (int i = 0; i < K; ++i) m(i, i) -= kbar;
        const double f = m.frobenius_norm();
        t.kl += f * f;
        if (want_grad && f > 0.0) {
            const ComplexMatrix contrib = fpsi * m;
            cxd* wd = wgrad.data();
            const cxd* cd = contrib.data();
            const double scale = 4.0 * mu;
            for (std::size_t i = 0; i < static_cast<std::size_t>(dim) * K; ++i)
                wd[i] += scale * cd[i];
        }
    }

    const ErrorFamily& tuple = problem.signature_tuple();
    std::vector<double> lams(tuple.members.size(), 0.0);
    ComplexMatrix wsig(dim, K);
    for (std::size_t a = 0; a < tuple.members.size(); ++a) {
        std::fill(fpsi.data(), fpsi.data() + static_cast<std::size_t>(dim) * K, cxd{});
        apply_pauli_add(tuple.members[a], psi.data(), fpsi.data(), K, K);
        cxd tr = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < K; ++j) tr += std::conj(psi(i, j)) * fpsi(i, j);
        const double lam = tr.real() / K;
        lams[a] = lam;
        t.sig_sq += lam * lam;
        if (want_grad && lam != 0.0) {
            cxd* wd = wsig.data();
            const cxd* fd = fpsi.data();
            const double scale = 4.0 * lam / K;
            for (std::size_t i = 0; i < static_cast<std::size_t>(dim) * K; ++i)
                wd[i] += scale * fd[i];
        }
    }

    if (branch.soft) {
        const ComplexMatrix p = out.frame.projector();
        for (const ComplexMatrix& u : branch.soft_generators) {
            const ComplexMatrix upu = u * p * u.adjoint();
            ComplexMatrix delta = p;
            delta -= upu;
            const double f = delta.frobenius_norm();
            t.sym += f * f;
            if (want_grad) {
                ComplexMatrix gamma = delta;
                gamma -= adjoint_times(u, delta * u);
                const ComplexMatrix contrib = gamma * psi;
                cxd* wd = wgrad.data();
                const cxd* cd = contrib.data();
                const double scale = 4.0 * mu_sym;
                for (std::size_t i = 0; i < static_cast<std::size_t>(dim) * K; ++i)
                    wd[i] += scale * cd[i];
            }
        }
    }

    double sig_weight = 0.0;
    switch (objective) {
        case Objective::endpoint_min:
            t.total = mu * t.kl + t.sig_sq;
            sig_weight = 1.0;
            break;
        case Objective::endpoint_max:
            t.total = mu * t.kl - t.sig_sq;
            sig_weight = -1.0;
            break;
        case Objective::target: {
            const double gap = t.sig_sq - target_sq;
            t.total = mu * t.kl + gap * gap;
            sig_weight = 2.0 * gap;
            break;
        }
    }
    if (branch.soft) t.total += mu_sym * t.sym;

    if (!want_grad) return out;

    if (sig_weight != 0.0) {
        cxd* wd = wgrad.data();
        const cxd* sd = wsig.data();
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim) * K; ++i)
            wd[i] += sig_weight * sd[i];
    }

    // pull the ambient gradient back into each block
    out.grad.resize(thetas.size());
    std::vector<ComplexMatrix> wblocks(thetas.size());
    for (std::size_t s = 0; s < thetas.size(); ++s)
        wblocks[s] = ComplexMatrix(branch.slots[s].dim, branch.slots[s].rank);
    for (const ColumnLayout::Piece& p : lay.pieces) {
        const Branch::Slot& slot = branch.slots[p.slot];
        const ComplexMatrix wcols = wgrad.block(0, p.col0, dim, p.rank);
        if (slot.embeddings.empty()) {
            wblocks[p.slot] += wcols;
        } else {
            wblocks[p.slot] += adjoint_times(slot.embeddings[p.copy], wcols);
        }
    }
    for (std::size_t s = 0; s < thetas.size(); ++s)
        out.grad[s] = pull_back(wblocks[s], thetas[s], eigs[s]);
    return out;
}

ThetaBlocks random_theta(const Branch& branch, Rng& rng) {
    ThetaBlocks thetas;
    for (const Branch::Slot& slot : branch.slots) {
        ComplexMatrix t(slot.dim, slot.rank);
        for (int i = 0; i < slot.dim; ++i)
            for (int j = 0; j < slot.rank; ++j)
                t(i, j) = cxd(rng.next_normal(), rng.next_normal());
        thetas.push_back(std::move(t));
    }
    return thetas;
}

ThetaBlocks perturbed(const ThetaBlocks& base, double sigma, Rng& rng) {
    ThetaBlocks out = base;
    for (ComplexMatrix& t : out)
        for (int i = 0; i < t.rows(); ++i)
            for (int j = 0; j < t.cols(); ++j)
                t(i, j) += sigma * cxd(rng.next_normal(), rng.next_normal());
    return out;
}

double grad_inf_norm(const ThetaBlocks& g) {
    double m = 0.0;
    for (const ComplexMatrix& b : g)
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                m = std::max(m, std::abs(b(i, j).real()));
                m = std::max(m, std::abs(b(i, j).imag()));
            }
    return m;
}

const std::vector<ComplexMatrix>* residual_generators(SymmetryMode mode, int n) {
    static std::map<std::pair<int, int>, std::vector<ComplexMatrix>> cache;
    int kind;  // 0 none, 1 cyclic, 2 permutation
    switch (mode) {
        case SymmetryMode::cyclic_basis:
        case SymmetryMode::cyclic_projector:
        case SymmetryMode::soft_cyclic:
            kind = 1;
            break;
        case SymmetryMode::pi_basis:
        case SymmetryMode::pi_projector:
        case SymmetryMode::soft_permutation:
            kind = 2;
            break;
        default:
            return nullptr;
    }
    auto key = std::make_pair(kind, n);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, kind == 1 ? cyclic_group_generators(n)
                                          : permutation_group_generators(n))
                 .first;
    }
    return &it->second;
}

std::string objective_name(Objective objective, double target_sq) {
    switch (objective) {
        case Objective::endpoint_min:
            return "min";
        case Objective::endpoint_max:
            return "max";
        default: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "target(%.9g)", target_sq);
            return buf;
        }
    }
}

}  // namespace

std::string to_string(SymmetryMode mode) {
    switch (mode) {
        case SymmetryMode::unrestricted: return "unrestricted";
        case SymmetryMode::cyclic_basis: return "cyclic_basis";
        case SymmetryMode::cyclic_projector: return "cyclic_projector";
        case SymmetryMode::pi_basis: return "pi_basis";
        case SymmetryMode::pi_projector: return "pi_projector";
        case SymmetryMode::soft_cyclic: return "soft_cyclic";
        case SymmetryMode::soft_permutation: return "soft_permutation";
    }
    return "?";
}

SymmetryMode symmetry_mode_from_string(const std::string& s) {
    for (SymmetryMode m :
         {SymmetryMode::unrestricted, SymmetryMode::cyclic_basis, SymmetryMode::cyclic_projector,
          SymmetryMode::pi_basis, SymmetryMode::pi_projector, SymmetryMode::soft_cyclic,
          SymmetryMode::soft_permutation})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown symmetry mode: " + s);
}

std::string to_string(SpectrumShape shape) {
    switch (shape) {
        case SpectrumShape::empty: return "empty";
        case SpectrumShape::singleton: return "singleton";
        case SpectrumShape::interval: return "interval";
        case SpectrumShape::disconnected: return "disconnected";
        case SpectrumShape::unclassified: return "unclassified";
    }
    return "?";
}

int Branch::frame_rank() const {
    int k = 0;
    for (const Slot& s : slots) {
        const int copies = s.embeddings.empty() ? 1 : static_cast<int>(s.embeddings.size());
        k += s.rank * copies;
    }
    return k;
}

std::vector<Branch> enumerate_branches(const Problem& problem) {
    const int n = problem.n;
    const int K = problem.K;
    const int dim = 1 << n;
    std::vector<Branch> out;
    switch (problem.mode) {
        case SymmetryMode::unrestricted: {
            if (K > dim) break;
            Branch b;
            b.mode = problem.mode;
            b.slots.push_back({dim, K, {}});
            b.name = "unrestricted";
            out.push_back(std::move(b));
            break;
        }
        case SymmetryMode::cyclic_basis: {
            SectorBasis s0 = cyclic_sector_basis(n, 0);
            if (K > s0.dim) break;
            Branch b;
            b.mode = problem.mode;
            b.slots.push_back({s0.dim, K, {s0.basis}});
            b.name = "cyclic_basis";
            out.push_back(std::move(b));
            break;
        }
        case SymmetryMode::pi_basis: {
            SectorBasis sym = symmetric_subspace_basis(n);
            if (K > sym.dim) break;
            Branch b;
            b.mode = problem.mode;
            b.slots.push_back({sym.dim, K, {sym.basis}});
            b.name = "pi_basis";
            out.push_back(std::move(b));
            break;
        }
        case SymmetryMode::cyclic_projector: {
            std::vector<SectorBasis> sectors;
            for (int ell = 0; ell < n; ++ell) sectors.push_back(cyclic_sector_basis(n, ell));
            for (const RankAllocation& alloc :
                 enumerate_rank_allocations(AllocationMode::cyclic, n, K)) {
                Branch b;
                b.mode = problem.mode;
                b.alloc = alloc;
                for (int ell = 0; ell < n; ++ell) {
                    if (alloc.ranks[ell] == 0) continue;
                    b.slots.push_back({sectors[ell].dim, alloc.ranks[ell], {sectors[ell].basis}});
                }
                b.name = alloc.to_string();
                out.push_back(std::move(b));
            }
            break;
        }
        case SymmetryMode::pi_projector: {
            const BlockDecomposition& dec = schur_weyl_decomposition(n);
            for (const RankAllocation& alloc :
                 enumerate_rank_allocations(AllocationMode::permutation, n, K)) {
                Branch b;
                b.mode = problem.mode;
                b.alloc = alloc;
                for (std::size_t bi = 0; bi < alloc.ranks.size(); ++bi) {
                    if (alloc.ranks[bi] == 0) continue;
                    const SpinBlock& blk = dec.blocks[bi];
                    b.slots.push_back({blk.block_dim(), alloc.ranks[bi], blk.copies});
                }
                b.name = alloc.to_string();
                out.push_back(std::move(b));
            }
            break;
        }
        case SymmetryMode::soft_cyclic:
        case SymmetryMode::soft_permutation: {
            if (K > dim) break;
            Branch b;
            b.mode = problem.mode;
            b.slots.push_back({dim, K, {}});
            b.soft = true;
            b.soft_generators = problem.mode == SymmetryMode::soft_cyclic
                                    ? cyclic_group_generators(n)
                                    : permutation_group_generators(n);
            b.name = to_string(problem.mode);
            out.push_back(std::move(b));
            break;
        }
    }
    return out;
}

CodeFrame assemble_from_theta(const Problem& problem, const Branch& branch,
                              const ThetaBlocks& thetas) {
    return evaluate(Objective::endpoint_min, 0.0, problem, branch, thetas, 0.0, 0.0, false)
        .frame;
}

LossTerms evaluate_loss(Objective objective, double target_sq, const Problem& problem,
                        const Branch& branch, const ThetaBlocks& thetas,
                        const OptimizerConfig& config) {
    return evaluate(objective, target_sq, problem, branch, thetas, config.mu0, config.mu_sym,
                    false)
        .terms;
}

ThetaBlocks gradient(Objective objective, double target_sq, const Problem& problem,
                     const Branch& branch, const ThetaBlocks& thetas,
                     const OptimizerConfig& config) {
    return evaluate(objective, target_sq, problem, branch, thetas, config.mu0, config.mu_sym,
                    true)
        .grad;
}

namespace {

Candidate optimize_impl(Objective objective, double target_sq, const Problem& problem,
                        const Branch& branch, const OptimizerConfig& config,
                        std::uint64_t restart_key, const ThetaBlocks* warm) {
    Rng rng(restart_key);
    ThetaBlocks theta =
        warm ? perturbed(*warm, config.warm_noise, rng) : random_theta(branch, rng);

    ThetaBlocks m1(theta.size()), m2(theta.size());
    for (std::size_t s = 0; s < theta.size(); ++s) {
        m1[s] = ComplexMatrix(theta[s].rows(), theta[s].cols());
        m2[s] = ComplexMatrix(theta[s].rows(), theta[s].cols());
    }

    const double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
    // Adam's per-coordinate normalization turns the base step into the actual
    // per-entry displacement; warm starts need gentle moves to stay near the
    // feasible point they were seeded with
    const double base_step = warm ? 0.2 * config.step : config.step;
    const int cycle = std::max(200, config.max_iters / std::max(1, config.cosine_cycles));
    // exploration at the base penalty, then escalate mu until the constraint
    // residual clears the validation threshold
    const int polish_start = std::max(400, (35 * config.max_iters) / 100);
    double mu = config.mu0;
    double last_check_kl = std::numeric_limits<double>::infinity();
    double b1p = 1.0, b2p = 1.0;
    int it = 1;
    double final_kl = 0.0;

    // track the best iterate seen: feasible snapshots ranked by the task
    // term, infeasible ones by constraint residual
    auto quality_of = [&](const LossTerms& t) {
        const bool feasible =
            t.kl <= 0.5 * config.eps_kl && (!branch.soft || t.sym <= 0.5 * config.eps_sym);
        if (!feasible) return 1e6 + std::min(t.kl + t.sym, 1e5);
        switch (objective) {
            case Objective::endpoint_min: return t.sig_sq;
            case Objective::endpoint_max: return -t.sig_sq;
            default: {
                const double gap = t.sig_sq - target_sq;
                return gap * gap;
            }
        }
    };
    double best_quality = std::numeric_limits<double>::infinity();
    ThetaBlocks best_theta;

    for (; it <= config.max_iters; ++it) {
        EvalResult ev =
            evaluate(objective, target_sq, problem, branch, theta, mu, config.mu_sym, true);
        final_kl = ev.terms.kl;
        const double q = quality_of(ev.terms);
        if (q < best_quality) {
            best_quality = q;
            best_theta = theta;
        }
        const double gn = grad_inf_norm(ev.grad);
        if (gn < 1e-10) {
            if (ev.terms.kl <= config.eps_kl || mu >= config.mu_max) break;
            mu = std::min(mu * 10.0, config.mu_max);
            continue;
        }
        if (it % 200 == 0) {
            // for target runs, hold the base penalty until the signature part
            // has locked on; escalating earlier freezes motion along the
            // feasible manifold
            const bool task_ready = objective != Objective::target ||
                                    std::abs(ev.terms.sig_sq - target_sq) < 1e-4;
            if (ev.terms.kl > config.eps_kl && task_ready) {
                if (it >= polish_start || ev.terms.kl > 0.25 * last_check_kl)
                    mu = std::min(mu * 10.0, config.mu_max);
            }
            last_check_kl = ev.terms.kl;
            if (mu >= config.mu_max && ev.terms.kl > 1e-3 && it > polish_start + 800)
                break;  // infeasible branch, stop burning iterations
        }
        const int phase = (it - 1) % cycle;
        const double lr =
            base_step * (0.02 + 0.98 * 0.5 * (1.0 + std::cos(kPi * phase / cycle)));
        b1p *= beta1;
        b2p *= beta2;
        for (std::size_t s = 0; s < theta.size(); ++s) {
            ComplexMatrix& t = theta[s];
            ComplexMatrix& m = m1[s];
            ComplexMatrix& v = m2[s];
            const ComplexMatrix& g = ev.grad[s];
            for (int i = 0; i < t.rows(); ++i) {
                for (int j = 0; j < t.cols(); ++j) {
                    const double gre = g(i, j).real(), gim = g(i, j).imag();
                    const cxd mprev = m(i, j), vprev = v(i, j);
                    const double mre = beta1 * mprev.real() + (1 - beta1) * gre;
                    const double mim = beta1 * mprev.imag() + (1 - beta1) * gim;
                    const double vre = beta2 * vprev.real() + (1 - beta2) * gre * gre;
                    const double vim = beta2 * vprev.imag() + (1 - beta2) * gim * gim;
                    m(i, j) = cxd(mre, mim);
                    v(i, j) = cxd(vre, vim);
                    const double mhre = mre / (1 - b1p), mhim = mim / (1 - b1p);
                    const double vhre = vre / (1 - b2p), vhim = vim / (1 - b2p);
                    t(i, j) -= cxd(lr * mhre / (std::sqrt(vhre) + adam_eps),
                                   lr * mhim / (std::sqrt(vhim) + adam_eps));
                }
            }
        }
    }

    // prefer the best tracked iterate over wherever the trajectory ended
    {
        EvalResult last =
            evaluate(objective, target_sq, problem, branch, theta, mu, config.mu_sym, false);
        if (quality_of(last.terms) >= best_quality && !best_theta.empty()) theta = best_theta;
    }

    // independent validation of the assembled frame
    Candidate cand;
    cand.seed = restart_key;
    cand.iterations = std::min(it, config.max_iters);
    cand.branch = branch.name;
    cand.objective = objective_name(objective, target_sq);
    EvalResult fin =
        evaluate(objective, target_sq, problem, branch, theta, mu, config.mu_sym, false);
    cand.frame = fin.frame;
    cand.theta.reserve(theta.size());
    for (std::size_t s = 0; s < theta.size(); ++s)
        cand.theta.push_back(polar_orthonormalize(theta[s]));
    DetectionReport rep = validate(cand.frame, problem.family, problem.signature_tuple(),
                                   config.eps_kl);
    cand.kl = rep.kl_residual;
    cand.orthonormality = rep.orthonormality;
    cand.sig = rep.sig;
    cand.sym_residual = 0.0;
    if (const auto* gens = residual_generators(problem.mode, problem.n))
        cand.sym_residual = symmetry_residual(cand.frame, *gens);
    cand.valid = rep.accepted && cand.sym_residual <= config.eps_sym;
    (void)final_kl;
    return cand;
}

}  // namespace

Candidate optimize(Objective objective, double target_sq, const Problem& problem,
                   const Branch& branch, const OptimizerConfig& config,
                   std::uint64_t restart_key, const ThetaBlocks* warm) {
    try {
        return optimize_impl(objective, target_sq, problem, branch, config, restart_key, warm);
    } catch (const std::exception&) {
        // rank-deficient iterate or eigensolver failure: report as non-converged
        Candidate cand;
        cand.valid = false;
        cand.seed = restart_key;
        cand.branch = branch.name;
        cand.objective = objective_name(objective, target_sq);
        cand.kl = std::numeric_limits<double>::infinity();
        return cand;
    }
}

std::vector<double> SpectrumResult::values() const {
    std::vector<double> v;
    v.reserve(validated.size());
    for (const Candidate& c : validated) v.push_back(c.sig.lambda_star);
    return v;
}

bool SpectrumResult::contains(double lambda_star, double tol) const {
    for (const Candidate& c : validated)
        if (std::abs(c.sig.lambda_star - lambda_star) <= tol) return true;
    return false;
}

namespace {

double sig_sq_of(const Candidate& c) { return c.sig.lambda_star * c.sig.lambda_star; }

bool improves(int direction, double next, double best) {
    return direction > 0 ? next > best : next < best;
}

// Gauge-align `from` onto `to` by the unitary closest to from^dag to, then
// linearly extrapolate past `to` by factor gamma. First-order prediction of
// the next point on a one-parameter solution family.
ThetaBlocks extrapolate_blocks(const ThetaBlocks& from, const ThetaBlocks& to, double gamma) {
    ThetaBlocks out = to;
    for (std::size_t s = 0; s < to.size(); ++s) {
        ComplexMatrix overlap = adjoint_times(from[s], to[s]);
        ComplexMatrix u = polar_orthonormalize(overlap);
        ComplexMatrix aligned = from[s] * u;
        for (int i = 0; i < out[s].rows(); ++i)
            for (int j = 0; j < out[s].cols(); ++j)
                out[s](i, j) += gamma * (to[s](i, j) - aligned(i, j));
    }
    return out;
}

// Random-restart exploration of one branch endpoint.
std::optional<Candidate> explore_endpoint(const Problem& problem, const Branch& branch,
                                          const OptimizerConfig& config, int direction,
                                          std::uint64_t branch_key,
                                          std::vector<Candidate>& pool) {
    const Objective obj = direction > 0 ? Objective::endpoint_max : Objective::endpoint_min;
    const double m = static_cast<double>(problem.signature_tuple().size());
    std::optional<Candidate> best;
    OptimizerConfig explore = config;
    explore.max_iters = config.refine_endpoints
                            ? std::max(1200, (3 * config.max_iters) / 10)
                            : config.max_iters;
    int since_improved = 0;
    for (int r = 0; r < config.restarts; ++r) {
        const std::uint64_t key =
            Rng::derive(branch_key, (direction > 0 ? 0x10000u : 0x20000u) + r);
        Candidate cand = optimize(obj, 0.0, problem, branch, explore, key);
        ++since_improved;
        if (!cand.valid) continue;
        pool.push_back(cand);
        if (!best || improves(direction, sig_sq_of(cand), sig_sq_of(*best))) {
            best = cand;
            since_improved = 0;
        }
        if (direction < 0 && sig_sq_of(*best) <= 1e-12) break;
        if (direction > 0 && sig_sq_of(*best) >= m - 1e-9) break;
        if (config.refine_endpoints && since_improved >= 10) break;
    }
    return best;
}

// Outward target steps warm-started from the best validated frame.
std::optional<Candidate> ratchet_endpoint(const Problem& problem, const Branch& branch,
                                          const OptimizerConfig& config, int direction,
                                          std::uint64_t branch_key,
                                          std::optional<Candidate> best,
                                          std::vector<Candidate>& pool) {
    const double m = static_cast<double>(problem.signature_tuple().size());
    if (!best || !config.refine_endpoints) return best;
    if (direction < 0 && sig_sq_of(*best) <= config.target_tol) return best;

    double s_best = sig_sq_of(*best);
    double delta = 0.04;
    int budget = config.ratchet_budget;
    int step_index = 0;
    int fails = 0;
    std::optional<Candidate> prev;  // previous accepted point, for extrapolation
    while (delta > 1e-9 && budget-- > 0) {
        double t = s_best + direction * delta;
        t = std::clamp(t, 0.0, m);
        const std::uint64_t key = Rng::derive(branch_key, 0x30000u + step_index);
        ++step_index;
        OptimizerConfig cfg = config;
        cfg.max_iters = std::max(1000, config.max_iters / 2);
        cfg.warm_noise = fails == 0 ? 0.0 : config.warm_noise;
        if (fails >= 3) {
            // converge slowly but surely when the boundary resists
            cfg.step = config.step * 0.05;
            cfg.max_iters = config.max_iters;
            cfg.warm_noise = 0.0;
        }
        // below the optimizer's per-run scatter tiny targets are pointless;
        // spend most of the budget at a resolvable scale
        if (budget > config.ratchet_budget / 4) delta = std::max(delta, 1e-3);
        // occasional cold trials protect against a stuck component boundary
        const bool cold = fails > 0 && fails % 4 == 0;
        // at a clamped boundary the quadratic target term flattens out; use
        // the linear endpoint objective instead
        const bool at_floor = direction < 0 && t <= 0.0;
        const bool at_ceil = direction > 0 && t >= m;
        const Objective step_obj =
            at_floor ? Objective::endpoint_min : at_ceil ? Objective::endpoint_max : Objective::target;
        // predictor: walk the solution family by gauge-aligned extrapolation,
        // but only while the accepted history is a clean forward step
        ThetaBlocks warm_guess;
        const ThetaBlocks* warm = &best->theta;
        if (prev && fails == 0 && direction * (s_best - sig_sq_of(*prev)) > 1e-10) {
            const double gamma = std::min((t - s_best) / (s_best - sig_sq_of(*prev)), 3.0);
            try {
                warm_guess = extrapolate_blocks(prev->theta, best->theta, gamma);
                warm = &warm_guess;
            } catch (const std::exception&) {
                warm = &best->theta;
            }
        }
        Candidate cand = optimize(step_obj, t, problem, branch, cfg, key, cold ? nullptr : warm);
        const bool on_target = step_obj != Objective::target ||
                               std::abs(sig_sq_of(cand) - t) <= config.target_tol;
        const bool improved = cand.valid && improves(direction, sig_sq_of(cand), s_best);
        const bool hit = improved && on_target;
        if (std::getenv("SIGSPEC_TRACE"))
            std::fprintf(stderr, "ratchet[%s dir=%d] t=%.8f s=%.8f kl=%.2e valid=%d hit=%d delta=%.2e\n",
                         branch.name.c_str(), direction, t, sig_sq_of(cand), cand.kl,
                         cand.valid ? 1 : 0, hit ? 1 : 0, delta);
        if (improved) {
            pool.push_back(cand);
            prev = best;
            best = cand;
            s_best = sig_sq_of(cand);
        }
        if (hit) {
            delta = std::min(delta * 1.7, 0.12);
            fails = 0;
        } else if (improved) {
            // progress without reaching the target: keep probing at this scale
            delta *= 0.95;
            fails = 0;
        } else {
            delta *= 0.4;
            ++fails;
        }
        if (fails >= 12) break;  // endpoint has stopped moving
        if ((direction < 0 && s_best <= config.target_tol) ||
            (direction > 0 && s_best >= m - config.target_tol))
            break;
    }
    return best;
}

}  // namespace

BranchEndpoints branch_endpoint_search(const Problem& problem, const Branch& branch,
                                       const OptimizerConfig& config,
                                       std::uint64_t branch_key,
                                       std::vector<Candidate>& pool) {
    BranchEndpoints out;
    out.lo = explore_endpoint(problem, branch, config, -1, branch_key, pool);
    out.lo = ratchet_endpoint(problem, branch, config, -1, branch_key, out.lo, pool);
    out.hi = explore_endpoint(problem, branch, config, +1, branch_key, pool);
    out.hi = ratchet_endpoint(problem, branch, config, +1, branch_key, out.hi, pool);
    return out;
}

EndpointOutcome find_endpoints(const Problem& problem, const OptimizerConfig& config) {
    EndpointOutcome out;
    const std::vector<Branch> branches = enumerate_branches(problem);
    std::vector<std::uint64_t> keys(branches.size());
    std::vector<std::optional<Candidate>> lo(branches.size()), hi(branches.size());
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        keys[bi] = Rng::derive(config.seed, 0xb000 + bi);
        lo[bi] = explore_endpoint(problem, branches[bi], config, -1, keys[bi], out.pool);
        hi[bi] = explore_endpoint(problem, branches[bi], config, +1, keys[bi], out.pool);
    }
    // refine only the branches whose exploration is competitive
    auto refine = [&](int direction, std::vector<std::optional<Candidate>>& ends) {
        if (!config.refine_endpoints) return;
        double best = direction > 0 ? -1.0 : std::numeric_limits<double>::infinity();
        for (const auto& c : ends)
            if (c && improves(direction, sig_sq_of(*c), best)) best = sig_sq_of(*c);
        if (best < 0.0 || std::isinf(best)) return;
        std::vector<std::size_t> order;
        for (std::size_t bi = 0; bi < ends.size(); ++bi)
            if (ends[bi]) order.push_back(bi);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return improves(direction, sig_sq_of(*ends[a]), sig_sq_of(*ends[b]));
        });
        int refined = 0;
        for (std::size_t bi : order) {
            const bool competitive = std::abs(sig_sq_of(*ends[bi]) - best) < 0.12;
            if (refined >= 3 && !(competitive && refined < 8)) break;
            ends[bi] =
                ratchet_endpoint(problem, branches[bi], config, direction, keys[bi], ends[bi],
                                 out.pool);
            ++refined;
        }
    };
    refine(-1, lo);
    refine(+1, hi);
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        if (lo[bi] && (!out.lo || sig_sq_of(*lo[bi]) < sig_sq_of(*out.lo))) out.lo = lo[bi];
        if (hi[bi] && (!out.hi || sig_sq_of(*hi[bi]) > sig_sq_of(*out.hi))) out.hi = hi[bi];
    }
    return out;
}

ScanOutcome scan_grid(const Problem& problem, const OptimizerConfig& config, double lo_sq,
                      double hi_sq, std::vector<Candidate>& pool,
                      const std::vector<double>& extra_targets_sq) {
    ScanOutcome out;
    const std::vector<Branch> branches = enumerate_branches(problem);
    std::vector<double> targets;
    if (config.grid_points >= 2 && hi_sq - lo_sq > 1e-12) {
        for (int i = 0; i < config.grid_points; ++i)
            targets.push_back(lo_sq + (hi_sq - lo_sq) * i / (config.grid_points - 1));
    } else if (config.grid_points >= 1) {
        targets.push_back(lo_sq);
    }
    for (double t : extra_targets_sq) targets.push_back(t);

    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const double t = targets[ti];
        bool achieved = false;
        for (const Candidate& c : pool) {
            if (std::abs(sig_sq_of(c) - t) <= config.target_tol) {
                achieved = true;
                break;
            }
        }
        if (achieved) continue;

        double best_gap = std::numeric_limits<double>::infinity();
        double best_kl = std::numeric_limits<double>::infinity();
        for (std::size_t bi = 0; bi < branches.size() && !achieved; ++bi) {
            const std::uint64_t tkey = Rng::derive(config.seed, 0xd000 + 131 * ti + bi);
            // warm starts from the branch's nearest validated frames
            std::vector<const Candidate*> warm;
            for (const Candidate& c : pool)
                if (c.branch == branches[bi].name) warm.push_back(&c);
            std::sort(warm.begin(), warm.end(), [&](const Candidate* a, const Candidate* b) {
                return std::abs(sig_sq_of(*a) - t) < std::abs(sig_sq_of(*b) - t);
            });
            if (warm.size() > 2) warm.resize(2);

            int attempts = 0;
            auto try_one = [&](const ThetaBlocks* init, std::uint64_t key) {
                OptimizerConfig cfg = config;
                if (init) cfg.max_iters = std::max(800, config.max_iters / 2);
                Candidate cand = optimize(Objective::target, t, problem, branches[bi], cfg, key,
                                          init);
                best_kl = std::min(best_kl, cand.kl);
                if (cand.valid) {
                    const double gap = std::abs(sig_sq_of(cand) - t);
                    best_gap = std::min(best_gap, gap);
                    if (gap <= config.target_tol) {
                        pool.push_back(cand);
                        out.achieved.push_back(cand);
                        achieved = true;
                    }
                }
            };
            for (std::size_t w = 0; w < warm.size() && !achieved; ++w, ++attempts)
                try_one(&warm[w]->theta, Rng::derive(tkey, 0x500 + w));
            for (; attempts < config.restarts && !achieved; ++attempts)
                try_one(nullptr, Rng::derive(tkey, 0x900 + attempts));
        }
        if (!achieved) out.unreached.push_back({t, best_gap, best_kl});
    }
    return out;
}

namespace {

std::optional<ThetaBlocks> project_frame_to_branch(const Problem& problem, const Branch& branch,
                                                   const CodeFrame& frame) {
    if (frame.n != problem.n || frame.K() != branch.frame_rank()) return std::nullopt;
    ThetaBlocks blocks;
    if (branch.slots.size() == 1 && branch.slots[0].embeddings.size() <= 1 &&
        branch.slots[0].rank == frame.K()) {
        const Branch::Slot& slot = branch.slots[0];
        if (slot.embeddings.empty()) {
            blocks.push_back(frame.psi);
        } else {
            ComplexMatrix phi = adjoint_times(slot.embeddings[0], frame.psi);
            ComplexMatrix recon = slot.embeddings[0] * phi;
            recon -= frame.psi;
            if (recon.frobenius_norm() > 1e-8) return std::nullopt;
            blocks.push_back(std::move(phi));
        }
        return blocks;
    }
    // projector modes: extract per-slot blocks from the projector
    const ComplexMatrix p = frame.projector();
    std::vector<ComplexMatrix> assembled;
    for (const Branch::Slot& slot : branch.slots) {
        if (slot.embeddings.empty()) return std::nullopt;
        const ComplexMatrix& b0 = slot.embeddings[0];
        ComplexMatrix m = adjoint_times(b0, p * b0);
        HermitianEig eig = hermitian_eig(m);
        ComplexMatrix phi(slot.dim, slot.rank);
        int at = 0;
        for (int j = slot.dim - 1; j >= 0 && at < slot.rank; --j) {
            if (eig.values[j] < 1.0 - 1e-8) return std::nullopt;
            for (int i = 0; i < slot.dim; ++i) phi(i, at) = eig.vectors(i, j);
            ++at;
        }
        if (at != slot.rank) return std::nullopt;
        blocks.push_back(std::move(phi));
    }
    // confirm the reconstruction matches the hint projector
    CodeFrame recon = assemble_from_theta(problem, branch, blocks);
    ComplexMatrix diff = recon.projector();
    diff -= p;
    if (diff.frobenius_norm() > 1e-7) return std::nullopt;
    return blocks;
}

}  // namespace

SpectrumResult reconstruct_spectrum(const Problem& problem, const OptimizerConfig& config,
                                    const std::vector<double>& extra_targets_sq,
                                    const std::vector<CodeFrame>& warm_hints) {
    SpectrumResult res;
    const std::vector<Branch> branches = enumerate_branches(problem);
    if (branches.empty()) return res;

    EndpointOutcome eo = find_endpoints(problem, config);
    std::vector<Candidate>& pool = eo.pool;

    // fold in externally supplied feasible frames
    for (const CodeFrame& hint : warm_hints) {
        for (const Branch& branch : branches) {
            std::optional<ThetaBlocks> blocks = project_frame_to_branch(problem, branch, hint);
            if (!blocks) continue;
            CodeFrame assembled = assemble_from_theta(problem, branch, *blocks);
            DetectionReport rep =
                validate(assembled, problem.family, problem.signature_tuple(), config.eps_kl);
            double symr = 0.0;
            if (const auto* gens = residual_generators(problem.mode, problem.n))
                symr = symmetry_residual(assembled, *gens);
            if (!rep.accepted || symr > config.eps_sym) continue;
            Candidate cand;
            cand.valid = true;
            cand.frame = assembled;
            cand.theta = *blocks;
            cand.kl = rep.kl_residual;
            cand.sym_residual = symr;
            cand.orthonormality = rep.orthonormality;
            cand.sig = rep.sig;
            cand.branch = branch.name;
            cand.objective = "hint";
            pool.push_back(cand);
            if (!eo.lo || sig_sq_of(cand) < sig_sq_of(*eo.lo)) eo.lo = cand;
            if (!eo.hi || sig_sq_of(cand) > sig_sq_of(*eo.hi)) eo.hi = cand;
            break;
        }
    }

    if (!eo.lo || !eo.hi) {
        res.shape = SpectrumShape::empty;
        return res;
    }
    const double lo_sq = sig_sq_of(*eo.lo);
    const double hi_sq = sig_sq_of(*eo.hi);

    if (config.run_grid) {
        ScanOutcome scan = scan_grid(problem, config, lo_sq, hi_sq, pool, extra_targets_sq);
        res.unreached = scan.unreached;
    }

    // dedup by lambda*, keeping the smallest-residual representative per bin
    auto rebuild_validated = [&]() {
        std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
            return a.sig.lambda_star < b.sig.lambda_star;
        });
        res.validated.clear();
        for (const Candidate& c : pool) {
            if (!res.validated.empty() &&
                c.sig.lambda_star - res.validated.back().sig.lambda_star <= config.dedup) {
                if (c.kl < res.validated.back().kl) res.validated.back() = c;
                continue;
            }
            res.validated.push_back(c);
        }
        if (!res.validated.empty()) {
            res.lambda_min = res.validated.front().sig.lambda_star;
            res.lambda_max = res.validated.back().sig.lambda_star;
        }
    };
    rebuild_validated();

    if (res.validated.empty()) {
        res.shape = SpectrumShape::empty;
        return res;
    }
    if (!config.run_grid) {
        res.shape = SpectrumShape::unclassified;
        return res;
    }
    if (*res.lambda_max - *res.lambda_min < 1e-3) {
        res.shape = SpectrumShape::singleton;
        return res;
    }
    // interior unreached targets flanked by validated values trigger a
    // second pass with the restart budget doubled
    auto flanked = [&](double t) {
        bool below = false, above = false;
        for (const Candidate& c : res.validated) {
            const double s = sig_sq_of(c);
            if (s < t - 1e-6) below = true;
            if (s > t + 1e-6) above = true;
        }
        return below && above;
    };
    std::vector<double> suspicious;
    for (const UnreachedTarget& u : res.unreached)
        if (flanked(u.target_sq)) suspicious.push_back(u.target_sq);
    if (!suspicious.empty()) {
        OptimizerConfig cfg2 = config;
        cfg2.restarts = config.restarts * 2;
        cfg2.grid_points = 0;
        cfg2.seed = Rng::derive(config.seed, 0xe5ca1a7eULL);
        ScanOutcome second = scan_grid(problem, cfg2, lo_sq, hi_sq, pool, suspicious);
        rebuild_validated();
        std::vector<UnreachedTarget> remaining;
        for (const UnreachedTarget& u : res.unreached) {
            bool escalated_miss = false;
            for (const UnreachedTarget& v : second.unreached)
                if (std::abs(v.target_sq - u.target_sq) < 1e-12) {
                    remaining.push_back(v);
                    escalated_miss = true;
                    break;
                }
            bool was_suspicious = false;
            for (double s : suspicious)
                if (std::abs(s - u.target_sq) < 1e-12) was_suspicious = true;
            if (!escalated_miss && !was_suspicious) remaining.push_back(u);
        }
        res.unreached = remaining;
        bool still_disconnected = false;
        for (const UnreachedTarget& u : res.unreached)
            if (flanked(u.target_sq)) still_disconnected = true;
        res.shape = still_disconnected ? SpectrumShape::disconnected : SpectrumShape::interval;
        return res;
    }
    res.shape = SpectrumShape::interval;
    return res;
}

}  // namespace sigspec
