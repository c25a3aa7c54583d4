#pragma once

#include "sigspec/codespace.hpp"
#include "sigspec/complex_matrix.hpp"
#include "sigspec/pauli.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigspec {

// Isometry onto an invariant subspace: D x dim, columns orthonormal.
struct SectorBasis {
    std::string label;
    int n = 0;
    int dim = 0;
    ComplexMatrix basis;
};

// Index action of the one-step cyclic shift T|b1 b2 ... bn> = |bn b1 ... b_{n-1}>.
std::uint64_t cyclic_shift_index(int n, std::uint64_t b);

// Character sector of the shift: T B = omega^ell B with omega = exp(2 pi i/n).
// Built from bitstring orbits; an orbit of length L contributes to sector ell
// iff ell*L = 0 (mod n).
SectorBasis cyclic_sector_basis(int n, int ell);

// Dicke basis of the fully symmetric subspace, Hamming weight ascending.
SectorBasis symmetric_subspace_basis(int n);

// One spin-j sector of the qubit permutation decomposition. Each multiplicity
// copy is a D x (2j+1) isometry whose columns are ordered by Jz descending.
struct SpinBlock {
    int twoj = 0;                       // 2j
    int multiplicity = 0;               // m_j
    std::vector<ComplexMatrix> copies;  // size m_j

    int block_dim() const { return twoj + 1; }
};

struct BlockDecomposition {
    int n = 0;
    std::vector<SpinBlock> blocks;  // j descending
};

// Cached per n; 2 <= n <= 8.
const BlockDecomposition& schur_weyl_decomposition(int n);

enum class AllocationMode { cyclic, permutation };

struct RankAllocation {
    AllocationMode mode = AllocationMode::cyclic;
    std::vector<int> ranks;  // per sector (cyclic) or per block, j descending (permutation)

    std::string to_string() const;
};

std::vector<RankAllocation> enumerate_rank_allocations(AllocationMode mode, int n, int K);

// Assemble an ambient frame from per-sector / per-block isometries. For the
// permutation mode one isometry is given per active block and reused across
// its multiplicity copies.
CodeFrame assemble_frame(int n, const RankAllocation& alloc,
                         const std::vector<ComplexMatrix>& block_frames);

// Dense unitaries for the generator sets used in residual checks.
ComplexMatrix cyclic_shift_unitary(int n);
ComplexMatrix transposition_unitary(int n, int site_a, int site_b);
std::vector<ComplexMatrix> cyclic_group_generators(int n);       // {T}
std::vector<ComplexMatrix> permutation_group_generators(int n);  // {(1 2), n-cycle}

// Sum over generators of ||P - U P U^dag||_F^2.
double symmetry_residual(const CodeFrame& frame, const std::vector<ComplexMatrix>& generators);

// B^dag dense(op) B on a sector basis.
ComplexMatrix restricted_operator(const PauliOperator& op, const SectorBasis& sector);

// When a rank-K scalar compression lives in a (K+1)-dimensional invariant
// subspace, Cauchy interlacing pins the scalar; absent when dim > K+1 or the
// interlacing window is not a single point.
std::optional<double> interlacing_forced_scalar(const ComplexMatrix& restricted, int K);

// For a two-qubit rank-2 frame of sector type (1,1), the swap-basis frame
// spanning H_0 with the symmetric component removed.
CodeFrame swap_complement_projector(const CodeFrame& frame);

}  // namespace sigspec
