#include "sigspec/pauli.hpp"

#include "sigspec/rng.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace sigspec {

namespace {

std::uint64_t site_bit(int n, int site) {
    return std::uint64_t{1} << (n - site);
}

// Power of i accumulated when multiplying single-site factors:
// sigma_a sigma_b = i^k sigma_{a xor b}. Index = x + 2z (I, X, Z, Y).
int site_product_iphase(int xa, int za, int xb, int zb) {
    static constexpr int table[4][4] = {
        // b: I  X  Z  Y
        {0, 0, 0, 0},  // a = I
        {0, 0, 3, 1},  // a = X   (XZ = -iY, XY = iZ)
        {0, 1, 0, 3},  // a = Z   (ZX = iY,  ZY = -iX)
        {0, 3, 1, 0},  // a = Y   (YX = -iZ, YZ = iX)
    };
    return table[xa + 2 * za][xb + 2 * zb];
}

}  // namespace

int PauliOperator::weight() const { return std::popcount(x_bits | z_bits); }

std::string PauliOperator::label() const {
    std::string out;
    if (sign < 0) out.push_back('-');
    for (int site = 1; site <= n; ++site) {
        const bool x = x_bits & site_bit(n, site);
        const bool z = z_bits & site_bit(n, site);
        out.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
    }
    return out;
}

PauliOperator parse_pauli(std::string_view label) {
    int sign = +1;
    if (!label.empty() && label.front() == '-') {
        sign = -1;
        label.remove_prefix(1);
    }
    return parse_pauli(label, sign);
}

PauliOperator parse_pauli(std::string_view letters, int sign) {
    if (letters.empty()) throw std::invalid_argument("parse_pauli: empty label");
    if (letters.size() > 64) throw std::invalid_argument("parse_pauli: label too long");
    if (sign != 1 && sign != -1) throw std::invalid_argument("parse_pauli: sign must be +1 or -1");
    PauliOperator op;
    op.n = static_cast<int>(letters.size());
    op.sign = sign;
    for (int site = 1; site <= op.n; ++site) {
        switch (letters[site - 1]) {
            case 'I': break;
            case 'X': op.x_bits |= site_bit(op.n, site); break;
            case 'Z': op.z_bits |= site_bit(op.n, site); break;
            case 'Y':
                op.x_bits |= site_bit(op.n, site);
                op.z_bits |= site_bit(op.n, site);
                break;
            default:
                throw std::invalid_argument("parse_pauli: invalid character in label");
        }
    }
    return op;
}

PauliOperator pauli_x(int n, int site) { return {n, site_bit(n, site), 0, +1}; }
PauliOperator pauli_y(int n, int site) { return {n, site_bit(n, site), site_bit(n, site), +1}; }
PauliOperator pauli_z(int n, int site) { return {n, 0, site_bit(n, site), +1}; }

bool commutes(const PauliOperator& a, const PauliOperator& b) {
    if (a.n != b.n) throw std::invalid_argument("commutes: mismatched qubit counts");
    const int sym = std::popcount(a.x_bits & b.z_bits) + std::popcount(a.z_bits & b.x_bits);
    return (sym % 2) == 0;
}

PauliOperator pauli_product(const PauliOperator& a, const PauliOperator& b) {
    if (a.n != b.n) throw std::invalid_argument("pauli_product: mismatched qubit counts");
    int iphase = 0;
    for (int site = 1; site <= a.n; ++site) {
        const std::uint64_t bit = site_bit(a.n, site);
        iphase += site_product_iphase(!!(a.x_bits & bit), !!(a.z_bits & bit),
                                      !!(b.x_bits & bit), !!(b.z_bits & bit));
    }
    iphase %= 4;
    if (iphase % 2 != 0)
        throw std::invalid_argument("pauli_product: result carries imaginary phase");
    PauliOperator out;
    out.n = a.n;
    out.x_bits = a.x_bits ^ b.x_bits;
    out.z_bits = a.z_bits ^ b.z_bits;
    out.sign = a.sign * b.sign * (iphase == 2 ? -1 : 1);
    return out;
}

ComplexMatrix dense_matrix(const PauliOperator& op) {
    if (op.n > kDenseQubitCap)
        throw std::invalid_argument("dense_matrix: qubit count exceeds cap");
    const std::uint64_t dim = std::uint64_t{1} << op.n;
    const int ny = std::popcount(op.x_bits & op.z_bits);
    static constexpr cxd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cxd base = static_cast<double>(op.sign) * ipow[ny % 4];
    ComplexMatrix m(static_cast<int>(dim), static_cast<int>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const int zpar = std::popcount(col & op.z_bits) % 2;
        m(static_cast<int>(col ^ op.x_bits), static_cast<int>(col)) =
            zpar ? -base : base;
    }
    return m;
}

void apply_pauli_add(const PauliOperator& op, const cxd* in, cxd* out, int cols, int stride) {
    const std::uint64_t dim = std::uint64_t{1} << op.n;
    const int ny = std::popcount(op.x_bits & op.z_bits);
    static constexpr cxd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cxd base = static_cast<double>(op.sign) * ipow[ny % 4];
    for (std::uint64_t b = 0; b < dim; ++b) {
        const cxd coeff = (std::popcount(b & op.z_bits) % 2) ? -base : base;
        const cxd* src = in + b * stride;
        cxd* dst = out + (b ^ op.x_bits) * stride;
        for (int j = 0; j < cols; ++j) dst[j] += coeff * src[j];
    }
}

cxd pauli_sandwich(const PauliOperator& op, const ComplexMatrix& a, int j,
                   const ComplexMatrix& b, int k) {
    const std::uint64_t dim = std::uint64_t{1} << op.n;
    const int ny = std::popcount(op.x_bits & op.z_bits);
    static constexpr cxd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cxd base = static_cast<double>(op.sign) * ipow[ny % 4];
    cxd acc = 0.0;
    for (std::uint64_t col = 0; col < dim; ++col) {
        const cxd coeff = (std::popcount(col & op.z_bits) % 2) ? -base : base;
        acc += std::conj(a(static_cast<int>(col ^ op.x_bits), j)) * coeff *
               b(static_cast<int>(col), k);
    }
    return acc;
}

namespace {

void append_checked(ErrorFamily& fam, PauliOperator op) {
    fam.members.push_back(std::move(op));
}

}  // namespace

ErrorFamily weight_bounded_family(int n, int d) {
    if (n < 2) throw std::invalid_argument("weight_bounded_family: need n >= 2");
    if (d < 2 || d - 1 > n) throw std::invalid_argument("weight_bounded_family: invalid d");
    ErrorFamily fam;
    fam.n = n;
    fam.label = "weight_bounded(" + std::to_string(n) + "," + std::to_string(d) + ")";
    // single-site block: X by site, then Y, then Z
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_x(n, s));
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_y(n, s));
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_z(n, s));
    // multi-body groups by weight, sites lexicographic, letters lexicographic
    // in the order X < Y < Z per site
    for (int w = 2; w <= d - 1; ++w) {
        std::vector<int> sites(w);
        std::vector<int> letters(w);  // 0=X,1=Y,2=Z
        std::function<void(int, int)> rec_sites = [&](int from, int depth) {
            if (depth == w) {
                std::function<void(int)> rec_letters = [&](int pos) {
                    if (pos == w) {
                        PauliOperator op{n, 0, 0, +1};
                        for (int i = 0; i < w; ++i) {
                            const PauliOperator f = letters[i] == 0 ? pauli_x(n, sites[i])
                                                  : letters[i] == 1 ? pauli_y(n, sites[i])
                                                                    : pauli_z(n, sites[i]);
                            op.x_bits |= f.x_bits;
                            op.z_bits |= f.z_bits;
                        }
                        append_checked(fam, op);
                        return;
                    }
                    for (int l = 0; l < 3; ++l) {
                        letters[pos] = l;
                        rec_letters(pos + 1);
                    }
                };
                rec_letters(0);
                return;
            }
            for (int s = from; s <= n; ++s) {
                sites[depth] = s;
                rec_sites(s + 1, depth + 1);
            }
        };
        rec_sites(1, 0);
    }
    return fam;
}

ErrorFamily asym_family(int n, int r) {
    if (n < 2) throw std::invalid_argument("asym_family: need n >= 2");
    if (r < 2 || r > n) throw std::invalid_argument("asym_family: need 2 <= r <= n");
    ErrorFamily fam;
    fam.n = n;
    fam.label = "asym(" + std::to_string(n) + "," + std::to_string(r) + ")";
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_x(n, s));
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_y(n, s));
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_z(n, s));
    for (int w = 2; w <= r; ++w) {
        std::vector<int> sites(w);
        std::function<void(int, int)> rec = [&](int from, int depth) {
            if (depth == w) {
                PauliOperator op{n, 0, 0, +1};
                for (int i = 0; i < w; ++i) op.z_bits |= pauli_z(n, sites[i]).z_bits;
                append_checked(fam, op);
                return;
            }
            for (int s = from; s <= n; ++s) {
                sites[depth] = s;
                rec(s + 1, depth + 1);
            }
        };
        rec(1, 0);
    }
    return fam;
}

ErrorFamily mix_family(int n) {
    if (n < 2) throw std::invalid_argument("mix_family: need n >= 2");
    ErrorFamily fam;
    fam.n = n;
    fam.label = "mix(" + std::to_string(n) + ")";
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_x(n, s));
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_y(n, s));
    for (int s = 1; s <= n; ++s) append_checked(fam, pauli_z(n, s));
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const PauliOperator xi = pauli_x(n, i), xj = pauli_x(n, j);
            const PauliOperator zi = pauli_z(n, i), zj = pauli_z(n, j);
            append_checked(fam, {n, xi.x_bits | xj.x_bits, 0, +1});
            append_checked(fam, {n, 0, zi.z_bits | zj.z_bits, +1});
            append_checked(fam, {n, xi.x_bits, zj.z_bits, +1});
            append_checked(fam, {n, xj.x_bits, zi.z_bits, +1});
        }
    }
    return fam;
}

ErrorFamily explicit_family(int n, std::vector<PauliOperator> members, std::string label) {
    ErrorFamily fam;
    fam.n = n;
    fam.label = std::move(label);
    std::set<std::tuple<std::uint64_t, std::uint64_t, int>> seen;
    for (auto& op : members) {
        if (op.n != n) throw std::invalid_argument("explicit_family: mismatched qubit count");
        if (op.is_identity()) throw std::invalid_argument("explicit_family: identity not allowed");
        if (!seen.insert({op.x_bits, op.z_bits, op.sign}).second)
            throw std::invalid_argument("explicit_family: duplicate member");
        fam.members.push_back(op);
    }
    return fam;
}

ErrorFamily family_from_labels(const std::vector<std::string>& labels, std::string name) {
    std::vector<PauliOperator> members;
    members.reserve(labels.size());
    for (const auto& l : labels) members.push_back(parse_pauli(l));
    if (members.empty()) throw std::invalid_argument("family_from_labels: empty list");
    if (name.empty()) {
        for (const auto& l : labels) name += name.empty() ? l : "," + l;
    }
    const int n = members.front().n;
    return explicit_family(n, std::move(members), std::move(name));
}

ErrorFamily sample_tuple(int n, int m, std::uint64_t seed) {
    const std::uint64_t total = (std::uint64_t{1} << (2 * n)) - 1;  // non-identity strings
    if (m < 1 || static_cast<std::uint64_t>(m) > total)
        throw std::invalid_argument("sample_tuple: m out of range");
    Rng rng(Rng::derive(seed, 0x7061756c69ULL));
    std::set<std::uint64_t> chosen;
    ErrorFamily fam;
    fam.n = n;
    fam.label = "sample(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                ",seed=" + std::to_string(seed) + ")";
    while (fam.members.size() < static_cast<std::size_t>(m)) {
        const std::uint64_t code = 1 + rng.next_below(total);
        if (!chosen.insert(code).second) continue;
        // two bits per site: 01 = X, 10 = Z, 11 = Y
        PauliOperator op{n, 0, 0, +1};
        for (int site = 1; site <= n; ++site) {
            const std::uint64_t pair = (code >> (2 * (n - site))) & 3u;
            if (pair & 1u) op.x_bits |= site_bit(n, site);
            if (pair & 2u) op.z_bits |= site_bit(n, site);
        }
        fam.members.push_back(op);
    }
    return fam;
}

}  // namespace sigspec
