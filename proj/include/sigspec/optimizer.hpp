#pragma once

#include "sigspec/codespace.hpp"
#include "sigspec/symmetry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sigspec {

enum class SymmetryMode {
    unrestricted,
    cyclic_basis,
    cyclic_projector,
    pi_basis,
    pi_projector,
    soft_cyclic,
    soft_permutation,
};

std::string to_string(SymmetryMode mode);
SymmetryMode symmetry_mode_from_string(const std::string& s);

struct Problem {
    int n = 0;
    int K = 0;
    ErrorFamily family;
    ErrorFamily tuple;  // empty members -> defaults to family
    SymmetryMode mode = SymmetryMode::unrestricted;

    const ErrorFamily& signature_tuple() const { return tuple.members.empty() ? family : tuple; }
};

struct OptimizerConfig {
    double mu0 = 100.0;
    double mu_max = 1e8;
    double mu_sym = 100.0;
    int restarts = 32;       // N_init per branch / target
    int max_iters = 5000;    // per optimization run
    double step = 0.05;      // Adam base step
    int cosine_cycles = 3;
    int grid_points = 21;    // lambda*^2 targets between the endpoints
    std::uint64_t seed = 91812331;
    double eps_kl = 1e-10;
    double eps_sym = 1e-10;
    double dedup = 1e-4;       // in lambda*
    double target_tol = 1e-6;  // |lambda~^2 - target|
    double warm_noise = 0.003;
    bool refine_endpoints = true;
    int ratchet_budget = 140;
    bool run_grid = true;
};

enum class Objective { endpoint_min, endpoint_max, target };

// One reduced search space: independent Stiefel blocks together with their
// ambient embeddings. A slot with several embeddings shares one block across
// all of them (permutation multiplicity copies).
struct Branch {
    struct Slot {
        int dim = 0;
        int rank = 0;
        std::vector<ComplexMatrix> embeddings;  // D x dim isometries; empty = ambient identity
    };
    SymmetryMode mode = SymmetryMode::unrestricted;
    RankAllocation alloc;
    std::vector<Slot> slots;
    bool soft = false;
    std::vector<ComplexMatrix> soft_generators;
    std::string name;

    int frame_rank() const;
};

std::vector<Branch> enumerate_branches(const Problem& problem);

using ThetaBlocks = std::vector<ComplexMatrix>;

// Polar-orthonormalize each block and embed into the ambient space.
CodeFrame assemble_from_theta(const Problem& problem, const Branch& branch,
                              const ThetaBlocks& thetas);

struct LossTerms {
    double total = 0.0;
    double kl = 0.0;
    double sym = 0.0;
    double sig_sq = 0.0;  // ||lambda~||^2 of the assembled frame
};

LossTerms evaluate_loss(Objective objective, double target_sq, const Problem& problem,
                        const Branch& branch, const ThetaBlocks& thetas,
                        const OptimizerConfig& config);

// Gradient with respect to the independent real and imaginary parts of each
// theta block, packed as complex matrices (real part = d/dRe, imag = d/dIm).
ThetaBlocks gradient(Objective objective, double target_sq, const Problem& problem,
                     const Branch& branch, const ThetaBlocks& thetas,
                     const OptimizerConfig& config);

struct Candidate {
    bool valid = false;
    CodeFrame frame;
    ThetaBlocks theta;  // post-polar blocks, reusable as warm starts
    double kl = 0.0;
    double sym_residual = 0.0;
    double orthonormality = 0.0;
    SignatureVector sig;
    std::string branch;
    std::uint64_t seed = 0;
    int iterations = 0;
    std::string objective;
};

Candidate optimize(Objective objective, double target_sq, const Problem& problem,
                   const Branch& branch, const OptimizerConfig& config,
                   std::uint64_t restart_key, const ThetaBlocks* warm = nullptr);

struct UnreachedTarget {
    double target_sq = 0.0;
    double best_gap = 0.0;  // smallest |lambda~^2 - target| over validated-feasible attempts
    double best_kl = 0.0;
};

enum class SpectrumShape { empty, singleton, interval, disconnected, unclassified };

std::string to_string(SpectrumShape shape);

struct SpectrumResult {
    std::vector<Candidate> validated;  // deduped, lambda* ascending
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    std::vector<UnreachedTarget> unreached;
    SpectrumShape shape = SpectrumShape::empty;

    std::vector<double> values() const;
    bool contains(double lambda_star, double tol) const;
};

struct EndpointOutcome {
    std::optional<Candidate> lo;
    std::optional<Candidate> hi;
    std::vector<Candidate> pool;  // every validated candidate encountered
};

EndpointOutcome find_endpoints(const Problem& problem, const OptimizerConfig& config);

struct BranchEndpoints {
    std::optional<Candidate> lo;
    std::optional<Candidate> hi;
};

// Full endpoint search (restarts plus refinement) restricted to one branch.
BranchEndpoints branch_endpoint_search(const Problem& problem, const Branch& branch,
                                       const OptimizerConfig& config, std::uint64_t branch_key,
                                       std::vector<Candidate>& pool);

struct ScanOutcome {
    std::vector<Candidate> achieved;
    std::vector<UnreachedTarget> unreached;
};

ScanOutcome scan_grid(const Problem& problem, const OptimizerConfig& config,
                      double lo_sq, double hi_sq, std::vector<Candidate>& pool,
                      const std::vector<double>& extra_targets_sq = {});

// Branchwise endpoint search, grid scan, dedup, and shape classification.
// extra_targets_sq are scanned in addition to the uniform grid; warm_hints
// provide known feasible frames used to seed matching branches.
SpectrumResult reconstruct_spectrum(const Problem& problem, const OptimizerConfig& config,
                                    const std::vector<double>& extra_targets_sq = {},
                                    const std::vector<CodeFrame>& warm_hints = {});

}  // namespace sigspec
