#include "sigspec/symmetry.hpp"

#include "sigspec/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sigspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

}  // namespace

std::uint64_t cyclic_shift_index(int n, std::uint64_t b) {
    return (b >> 1) | ((b & 1u) << (n - 1));
}

SectorBasis cyclic_sector_basis(int n, int ell) {
    if (n < 1) throw std::invalid_argument("cyclic_sector_basis: n must be positive");
    if (ell < 0 || ell >= n) throw std::invalid_argument("cyclic_sector_basis: ell out of range");
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<bool> seen(dim, false);
    std::vector<std::vector<cxd>> cols;
    for (std::uint64_t rep = 0; rep < dim; ++rep) {
        if (seen[rep]) continue;
        // collect the orbit of rep under the shift
        std::vector<std::uint64_t> orbit;
        std::uint64_t b = rep;
        do {
            orbit.push_back(b);
            seen[b] = true;
            b = cyclic_shift_index(n, b);
        } while (b != rep);
        const int len = static_cast<int>(orbit.size());
        if ((static_cast<long long>(ell) * len) % n != 0) continue;
        std::vector<cxd> col(dim, cxd{});
        const double norm = 1.0 / std::sqrt(static_cast<double>(len));
        for (int r = 0; r < len; ++r) {
            // amplitude omega^{-ell r} on T^r|rep>
            const double a = -2.0 * kPi * ell * r / n;
            col[orbit[r]] = norm * cxd(std::cos(a), std::sin(a));
        }
        cols.push_back(std::move(col));
    }
    SectorBasis s;
    s.label = "cyclic ell=" + std::to_string(ell);
    s.n = n;
    s.dim = static_cast<int>(cols.size());
    s.basis = ComplexMatrix(static_cast<int>(dim), s.dim);
    for (int j = 0; j < s.dim; ++j)
        for (std::uint64_t i = 0; i < dim; ++i) s.basis(static_cast<int>(i), j) = cols[j][i];
    return s;
}

SectorBasis symmetric_subspace_basis(int n) {
    if (n < 1) throw std::invalid_argument("symmetric_subspace_basis: n must be positive");
    const std::uint64_t dim = std::uint64_t{1} << n;
    SectorBasis s;
    s.label = "dicke";
    s.n = n;
    s.dim = n + 1;
    s.basis = ComplexMatrix(static_cast<int>(dim), n + 1);
    for (std::uint64_t b = 0; b < dim; ++b) {
        const int w = std::popcount(b);
        s.basis(static_cast<int>(b), w) = 1.0 / std::sqrt(static_cast<double>(binom(n, w)));
    }
    return s;
}

namespace {

// J+ acting weight w -> w-1 on the computational basis, as a matrix over the
// listed weight-space index sets.
ComplexMatrix raising_matrix(int n, const std::vector<std::uint64_t>& from_w,
                             const std::vector<std::uint64_t>& to_wm1) {
    std::map<std::uint64_t, int> to_index;
    for (int i = 0; i < static_cast<int>(to_wm1.size()); ++i) to_index[to_wm1[i]] = i;
    ComplexMatrix a(static_cast<int>(to_wm1.size()), static_cast<int>(from_w.size()));
    for (int j = 0; j < static_cast<int>(from_w.size()); ++j) {
        const std::uint64_t b = from_w[j];
        for (int q = 0; q < n; ++q) {
            const std::uint64_t bit = std::uint64_t{1} << q;
            if (b & bit) a(to_index.at(b ^ bit), j) += 1.0;
        }
    }
    return a;
}

// Orthonormal basis of the null space of a, deterministic order.
std::vector<std::vector<cxd>> orthonormal_nullspace(const ComplexMatrix& a) {
    const int cols = a.cols();
    // orthonormalize the conjugated rows (row space basis)
    std::vector<std::vector<cxd>> q;
    auto project_out = [&](std::vector<cxd>& v) {
        for (const auto& u : q) {
            cxd ip = 0.0;
            for (int i = 0; i < cols; ++i) ip += std::conj(u[i]) * v[i];
            for (int i = 0; i < cols; ++i) v[i] -= ip * u[i];
        }
    };
    auto norm_of = [&](const std::vector<cxd>& v) {
        double s = 0.0;
        for (const cxd& x : v) s += std::norm(x);
        return std::sqrt(s);
    };
    for (int r = 0; r < a.rows(); ++r) {
        std::vector<cxd> v(cols);
        for (int i = 0; i < cols; ++i) v[i] = std::conj(a(r, i));
        project_out(v);
        project_out(v);  // second pass keeps orthogonality tight
        const double nv = norm_of(v);
        if (nv > 1e-9) {
            for (cxd& x : v) x /= nv;
            q.push_back(std::move(v));
        }
    }
    const std::size_t rank = q.size();
    std::vector<std::vector<cxd>> kernel;
    for (int j = 0; j < cols && kernel.size() + rank < static_cast<std::size_t>(cols); ++j) {
        std::vector<cxd> v(cols, cxd{});
        v[j] = 1.0;
        project_out(v);
        project_out(v);
        const double nv = norm_of(v);
        if (nv > 1e-9) {
            for (cxd& x : v) x /= nv;
            kernel.push_back(v);
            q.push_back(std::move(v));
        }
    }
    return kernel;
}

BlockDecomposition build_schur_weyl(int n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<std::vector<std::uint64_t>> weight_states(n + 1);
    for (std::uint64_t b = 0; b < dim; ++b) weight_states[std::popcount(b)].push_back(b);

    BlockDecomposition dec;
    dec.n = n;
    for (int w = 0; 2 * w <= n; ++w) {
        const int twoj = n - 2 * w;
        const int mj = binom(n, w) - binom(n, w - 1);
        if (mj <= 0) continue;
        SpinBlock block;
        block.twoj = twoj;
        block.multiplicity = mj;

        // highest-weight vectors: kernel of J+ on the weight-w space
        std::vector<std::vector<cxd>> hw;
        if (w == 0) {
            hw.push_back({cxd(1.0, 0.0)});
        } else {
            ComplexMatrix a = raising_matrix(n, weight_states[w], weight_states[w - 1]);
            hw = orthonormal_nullspace(a);
        }
        if (static_cast<int>(hw.size()) != mj)
            throw std::runtime_error("schur_weyl_decomposition: multiplicity mismatch");

        for (int mu = 0; mu < mj; ++mu) {
            ComplexMatrix copy(static_cast<int>(dim), twoj + 1);
            // embed the highest-weight vector at column 0
            std::vector<cxd> cur(dim, cxd{});
            for (int i = 0; i < static_cast<int>(weight_states[w].size()); ++i)
                cur[weight_states[w][i]] = hw[mu][i];
            for (int col = 0;; ++col) {
                for (std::uint64_t i = 0; i < dim; ++i)
                    copy(static_cast<int>(i), col) = cur[i];
                if (col == twoj) break;
                // lower: J- flips one 0 -> 1 per term
                std::vector<cxd> nxt(dim, cxd{});
                for (std::uint64_t b = 0; b < dim; ++b) {
                    if (cur[b] == cxd{}) continue;
                    for (int q = 0; q < n; ++q) {
                        const std::uint64_t bit = std::uint64_t{1} << q;
                        if (!(b & bit)) nxt[b | bit] += cur[b];
                    }
                }
                double s = 0.0;
                for (const cxd& x : nxt) s += std::norm(x);
                s = std::sqrt(s);
                if (s < 1e-12) throw std::runtime_error("schur_weyl_decomposition: short chain");
                for (cxd& x : nxt) x /= s;
                cur = std::move(nxt);
            }
            block.copies.push_back(std::move(copy));
        }
        dec.blocks.push_back(std::move(block));
    }
    return dec;
}

}  // namespace

const BlockDecomposition& schur_weyl_decomposition(int n) {
    if (n < 2 || n > 8) throw std::invalid_argument("schur_weyl_decomposition: need 2 <= n <= 8");
    static std::map<int, BlockDecomposition> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_schur_weyl(n)).first;
    return it->second;
}

std::string RankAllocation::to_string() const {
    std::string s = mode == AllocationMode::cyclic ? "cyclic(" : "pi(";
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ranks[i]);
    }
    return s + ")";
}

std::vector<RankAllocation> enumerate_rank_allocations(AllocationMode mode, int n, int K) {
    if (K < 1) throw std::invalid_argument("enumerate_rank_allocations: K must be positive");
    std::vector<RankAllocation> out;
    if (mode == AllocationMode::cyclic) {
        std::vector<int> dims(n);
        for (int ell = 0; ell < n; ++ell) dims[ell] = cyclic_sector_basis(n, ell).dim;
        std::vector<int> cur(n, 0);
        std::function<void(int, int)> rec = [&](int ell, int left) {
            if (ell == n) {
                if (left == 0) out.push_back({AllocationMode::cyclic, cur});
                return;
            }
            for (int k = std::min(left, dims[ell]); k >= 0; --k) {
                cur[ell] = k;
                rec(ell + 1, left - k);
            }
        };
        rec(0, K);
    } else {
        const BlockDecomposition& dec = schur_weyl_decomposition(n);
        const int nb = static_cast<int>(dec.blocks.size());
        std::vector<int> cur(nb, 0);
        std::function<void(int, int)> rec = [&](int bi, int left) {
            if (bi == nb) {
                if (left == 0) out.push_back({AllocationMode::permutation, cur});
                return;
            }
            const SpinBlock& blk = dec.blocks[bi];
            const int max_r = std::min(blk.block_dim(), left / blk.multiplicity);
            for (int r = max_r; r >= 0; --r) {
                cur[bi] = r;
                rec(bi + 1, left - r * blk.multiplicity);
            }
        };
        rec(0, K);
    }
    return out;
}

CodeFrame assemble_frame(int n, const RankAllocation& alloc,
                         const std::vector<ComplexMatrix>& block_frames) {
    std::vector<ComplexMatrix> cols;
    std::size_t used = 0;
    if (alloc.mode == AllocationMode::cyclic) {
        for (int ell = 0; ell < static_cast<int>(alloc.ranks.size()); ++ell) {
            const int k = alloc.ranks[ell];
            if (k == 0) continue;
            if (used >= block_frames.size())
                throw std::invalid_argument("assemble_frame: missing block frame");
            const ComplexMatrix& phi = block_frames[used++];
            SectorBasis sector = cyclic_sector_basis(n, ell);
            if (phi.rows() != sector.dim || phi.cols() != k)
                throw std::invalid_argument("assemble_frame: block shape mismatch");
            cols.push_back(sector.basis * phi);
        }
    } else {
        const BlockDecomposition& dec = schur_weyl_decomposition(n);
        for (std::size_t bi = 0; bi < alloc.ranks.size(); ++bi) {
            const int r = alloc.ranks[bi];
            if (r == 0) continue;
            if (used >= block_frames.size())
                throw std::invalid_argument("assemble_frame: missing block frame");
            const ComplexMatrix& v = block_frames[used++];
            const SpinBlock& blk = dec.blocks[bi];
            if (v.rows() != blk.block_dim() || v.cols() != r)
                throw std::invalid_argument("assemble_frame: block shape mismatch");
            for (const ComplexMatrix& copy : blk.copies) cols.push_back(copy * v);
        }
    }
    if (used != block_frames.size())
        throw std::invalid_argument("assemble_frame: extra block frames");
    CodeFrame frame;
    frame.n = n;
    frame.psi = hcat(cols);
    return frame;
}

ComplexMatrix cyclic_shift_unitary(int n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    ComplexMatrix u(static_cast<int>(dim), static_cast<int>(dim));
    for (std::uint64_t b = 0; b < dim; ++b)
        u(static_cast<int>(cyclic_shift_index(n, b)), static_cast<int>(b)) = 1.0;
    return u;
}

ComplexMatrix transposition_unitary(int n, int site_a, int site_b) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const int pa = n - site_a;
    const int pb = n - site_b;
    ComplexMatrix u(static_cast<int>(dim), static_cast<int>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        const std::uint64_t ba = (b >> pa) & 1u;
        const std::uint64_t bb = (b >> pb) & 1u;
        std::uint64_t t = b;
        t = (t & ~(std::uint64_t{1} << pa)) | (bb << pa);
        t = (t & ~(std::uint64_t{1} << pb)) | (ba << pb);
        u(static_cast<int>(t), static_cast<int>(b)) = 1.0;
    }
    return u;
}

std::vector<ComplexMatrix> cyclic_group_generators(int n) { return {cyclic_shift_unitary(n)}; }

std::vector<ComplexMatrix> permutation_group_generators(int n) {
    if (n == 1) return {};
    if (n == 2) return {transposition_unitary(2, 1, 2)};
    return {transposition_unitary(n, 1, 2), cyclic_shift_unitary(n)};
}

double symmetry_residual(const CodeFrame& frame, const std::vector<ComplexMatrix>& generators) {
    const ComplexMatrix p = frame.projector();
    double total = 0.0;
    for (const ComplexMatrix& u : generators) {
        ComplexMatrix gram = adjoint_times(u, u);
        for (int i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
        if (gram.frobenius_norm() > 1e-10)
            throw std::invalid_argument("symmetry_residual: generator not unitary");
        const ComplexMatrix diff = p - u * p * u.adjoint();
        const double f = diff.frobenius_norm();
        total += f * f;
    }
    return total;
}

ComplexMatrix restricted_operator(const PauliOperator& op, const SectorBasis& sector) {
    if (op.n != sector.n)
        throw std::invalid_argument("restricted_operator: mismatched qubit counts");
    ComplexMatrix m(sector.dim, sector.dim);
    for (int i = 0; i < sector.dim; ++i)
        for (int j = 0; j < sector.dim; ++j)
            m(i, j) = pauli_sandwich(op, sector.basis, i, sector.basis, j);
    return m;
}

std::optional<double> interlacing_forced_scalar(const ComplexMatrix& restricted, int K) {
    const int d = restricted.rows();
    if (K < 1 || K >= d)
        throw std::invalid_argument("interlacing_forced_scalar: need 1 <= K < dim");
    if (d > K + 1) return std::nullopt;
    HermitianEig eig = hermitian_eig(restricted);
    // scalar alpha must lie in every interlacing window [lambda_i, lambda_{i+1}]
    const double lo = eig.values[K - 1];
    const double hi = eig.values[1];
    const double scale = std::max(1.0, std::abs(eig.values.back()));
    if (hi - lo < -1e-9 * scale) return std::nullopt;
    if (std::abs(hi - lo) > 1e-9 * scale) return std::nullopt;
    return 0.5 * (lo + hi);
}

CodeFrame swap_complement_projector(const CodeFrame& frame) {
    if (frame.n != 2 || frame.K() != 2)
        throw std::invalid_argument("swap_complement_projector: need a two-qubit rank-2 frame");
    if (symmetry_residual(frame, cyclic_group_generators(2)) > 1e-16)
        throw std::invalid_argument("swap_complement_projector: frame not swap-symmetric");
    SectorBasis s0 = cyclic_sector_basis(2, 0);
    SectorBasis s1 = cyclic_sector_basis(2, 1);
    const ComplexMatrix p = frame.projector();
    const ComplexMatrix m0 = adjoint_times(s0.basis, p * s0.basis);
    const ComplexMatrix m1 = adjoint_times(s1.basis, p * s1.basis);
    if (std::abs(m0.trace().real() - 1.0) > 1e-8 || std::abs(m1.trace().real() - 1.0) > 1e-8)
        throw std::invalid_argument("swap_complement_projector: frame not of (1,1) sector type");
    HermitianEig eig = hermitian_eig(m0);
    // xi = the occupied direction inside H_0; complement spans H_0 minus xi
    CodeFrame out;
    out.n = 2;
    out.psi = ComplexMatrix(4, 2);
    int at = 0;
    for (int j = 0; j < 3 && at < 2; ++j) {
        if (eig.values[j] < 0.5) {
            for (int i = 0; i < 4; ++i) {
                cxd v = 0.0;
                for (int k = 0; k < 3; ++k) v += s0.basis(i, k) * eig.vectors(k, j);
                out.psi(i, at) = v;
            }
            ++at;
        }
    }
    if (at != 2)
        throw std::invalid_argument("swap_complement_projector: unexpected sector spectrum");
    return out;
}

}  // namespace sigspec
