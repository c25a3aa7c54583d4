#include "sigspec/families.hpp"

#include "sigspec/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace sigspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<cxd> ket(int n, const std::string& bits) {
    std::vector<cxd> v(std::size_t{1} << n, cxd{});
    v[std::stoul(bits, nullptr, 2)] = 1.0;
    return v;
}

void axpy(std::vector<cxd>& acc, cxd a, const std::vector<cxd>& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a * v[i];
}

// Sum over the n cyclic shifts of a basis string (repeats included for short
// orbits), unnormalized.
std::vector<cxd> cyc_sum(int n, const std::string& bits) {
    std::vector<cxd> v(std::size_t{1} << n, cxd{});
    std::uint64_t b = std::stoul(bits, nullptr, 2);
    for (int r = 0; r < n; ++r) {
        v[b] += 1.0;
        b = cyclic_shift_index(n, b);
    }
    return v;
}

std::vector<cxd> dicke(int n, int w) {
    std::vector<cxd> v(std::size_t{1} << n, cxd{});
    int count = 0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
        if (std::popcount(b) == w) ++count;
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
        if (std::popcount(b) == w) v[b] = amp;
    return v;
}

std::vector<cxd> apply_op(const PauliOperator& op, const std::vector<cxd>& v) {
    std::vector<cxd> out(v.size(), cxd{});
    apply_pauli_add(op, v.data(), out.data(), 1, 1);
    return out;
}

double param(const FamilyParams& p, const std::string& name) {
    auto it = p.find(name);
    if (it == p.end()) throw std::domain_error("missing family parameter: " + name);
    return it->second;
}

void check_range(const std::string& id, const std::string& name, double v, double lo, double hi) {
    const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (v < lo - slack || v > hi + slack)
        throw std::domain_error(id + ": parameter " + name + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<FamilyParams> grid_1d(const std::string& name, double lo, double hi, int points) {
    std::vector<FamilyParams> out;
    if (points < 2) points = 2;
    for (int i = 0; i < points; ++i)
        out.push_back({{name, lo + (hi - lo) * i / (points - 1)}});
    return out;
}

ErrorFamily e4_family() {
    std::vector<std::string> labels;
    for (const char* l : {"XII", "IXI", "IIX", "ZII", "IZI", "IIZ"}) labels.push_back(l);
    for (const char* l : {"XXI", "XIX", "IXX", "ZZI", "ZIZ", "IZZ"}) labels.push_back(l);
    for (const char* l : {"XZI", "XIZ", "IXZ", "ZXI", "ZIX", "IZX"}) labels.push_back(l);
    return family_from_labels(labels, "E4");
}

std::vector<FamilyCatalogEntry> make_catalog() {
    std::vector<FamilyCatalogEntry> cat;
    const double sqrt6 = std::sqrt(6.0);
    const double sqrt7 = std::sqrt(7.0);

    // --- two-qubit entries -------------------------------------------------
    {
        FamilyCatalogEntry e;
        e.id = "n2_interval";
        e.n = 2;
        e.K = 2;
        e.description = "rank-2 family a|00>+b|01>, a|10>+b|11> sweeping lambda* = 2|ab|";
        e.params = {{"a", 0.0, 1.0}, {"phi", -kPi, kPi}};
        e.family = family_from_labels({"IX", "IY"});
        e.build = [](const FamilyParams& p) {
            const double a = param(p, "a");
            const double phi = p.count("phi") ? p.at("phi") : 0.0;
            check_range("n2_interval", "a", a, 0.0, 1.0);
            const cxd b = std::sqrt(std::max(0.0, 1.0 - a * a)) * cxd(std::cos(phi), std::sin(phi));
            std::vector<cxd> v0(4, cxd{}), v1(4, cxd{});
            v0[0b00] = a;
            v0[0b01] = b;
            v1[0b10] = a;
            v1[0b11] = b;
            return frame_from_columns(2, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            const double a = param(p, "a");
            return 2.0 * a * std::sqrt(std::max(0.0, 1.0 - a * a));
        };
        e.grid = [](int pts) {
            auto g = grid_1d("a", 0.0, 1.0, pts);
            for (std::size_t i = 0; i < g.size(); ++i)
                g[i]["phi"] = -kPi + 2.0 * kPi * static_cast<double>(i) / g.size();
            return g;
        };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "n2_even";
        e.n = 2;
        e.K = 2;
        e.description = "even-parity projector span{|00>,|11>}";
        e.family = family_from_labels({"ZZ", "IX", "IY"});
        e.build = [](const FamilyParams&) {
            return frame_from_columns(2, {ket(2, "00"), ket(2, "11")});
        };
        e.predicted_lambda = [](const FamilyParams&) { return 1.0; };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "n2_z_anchored";
        e.n = 2;
        e.K = 2;
        e.description = "Z_2 = -1 eigenspace span{|01>,|11>}";
        e.family = family_from_labels({"IX", "IY", "IZ"});
        e.build = [](const FamilyParams&) {
            return frame_from_columns(2, {ket(2, "01"), ket(2, "11")});
        };
        e.predicted_lambda = [](const FamilyParams&) { return 1.0; };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        cat.push_back(std::move(e));
    }

    // --- three-qubit families ---------------------------------------------
    {
        FamilyCatalogEntry e;
        e.id = "n3_E1";
        e.n = 3;
        e.K = 2;
        e.description = "qubit-1 phase state times the +1 eigenspace of Y2Y3; lambda* = sin(theta)";
        e.params = {{"theta", 0.0, kPi / 2}};
        e.family = three_qubit_family(1);
        e.build = [](const FamilyParams& p) {
            const double th = param(p, "theta");
            check_range("n3_E1", "theta", th, 0.0, kPi / 2);
            const cxd c0 = std::exp(cxd(0, th / 2)) / std::sqrt(2.0);
            const cxd c1 = cxd(0, 1) * std::exp(cxd(0, -th / 2)) / std::sqrt(2.0);
            // +1 eigenspace of Y2Y3: (|01>+|10>)/sqrt2 and (|00>-|11>)/sqrt2
            std::vector<cxd> u(4, cxd{}), w(4, cxd{});
            u[0b01] = u[0b10] = 1.0 / std::sqrt(2.0);
            w[0b00] = 1.0 / std::sqrt(2.0);
            w[0b11] = -1.0 / std::sqrt(2.0);
            std::vector<cxd> col0(8, cxd{}), col1(8, cxd{});
            for (int tail = 0; tail < 4; ++tail) {
                col0[tail] = c0 * u[tail];
                col0[4 + tail] = c1 * u[tail];
                col1[tail] = c0 * w[tail];
                col1[4 + tail] = c1 * w[tail];
            }
            return frame_from_columns(3, {col0, col1});
        };
        e.predicted_lambda = [](const FamilyParams& p) { return std::sin(param(p, "theta")); };
        e.grid = [](int pts) { return grid_1d("theta", 0.0, kPi / 2, pts); };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "n3_E2";
        e.n = 3;
        e.K = 2;
        e.description = "two-parameter interpolation between the E2 endpoint stabilizers";
        e.params = {{"u", 0.0, 1.0}, {"v", 0.0, 1.0}};
        e.family = three_qubit_family(2);
        e.build = [](const FamilyParams& p) {
            const double u = param(p, "u");
            const double v = param(p, "v");
            check_range("n3_E2", "u", u, 0.0, 1.0);
            check_range("n3_E2", "v", v, 0.0, 1.0);
            auto s = [](double z) { return std::sqrt(std::max(0.0, z)); };
            std::vector<cxd> c0(8, cxd{}), c1(8, cxd{});
            c0[0b000] = s((1 + u) * (1 + v)) / 2;
            c0[0b100] = s((1 + u) * (1 - v)) / 2;
            c0[0b010] = s((1 - u) * (1 + v)) / 2;
            c0[0b110] = -s((1 - u) * (1 - v)) / 2;
            c1[0b111] = s((1 + u) * (1 + v)) / 2;
            c1[0b011] = s((1 + u) * (1 - v)) / 2;
            c1[0b101] = s((1 - u) * (1 + v)) / 2;
            c1[0b001] = -s((1 - u) * (1 - v)) / 2;
            return frame_from_columns(3, {c0, c1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            const double u = param(p, "u");
            const double v = param(p, "v");
            return std::sqrt(2 * u * u + 2 * v * v - u * u * v * v);
        };
        e.grid = [](int pts) {
            std::vector<FamilyParams> g;
            for (int i = 0; i < pts; ++i) {
                const double t = static_cast<double>(i) / (pts - 1);
                if (i % 2 == 0)
                    g.push_back({{"u", t}, {"v", t}});
                else
                    g.push_back({{"u", t}, {"v", 0.5}});
            }
            return g;
        };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "n3_E3";
        e.n = 3;
        e.K = 2;
        e.description = "v = 0 branch of the E2 family, detecting the three-body parity as well";
        e.params = {{"t", 0.0, 1.0}};
        e.family = three_qubit_family(3);
        e.build = [](const FamilyParams& p) {
            const double t = param(p, "t");
            check_range("n3_E3", "t", t, 0.0, 1.0);
            auto s = [](double z) { return std::sqrt(std::max(0.0, z)); };
            std::vector<cxd> c0(8, cxd{}), c1(8, cxd{});
            c0[0b000] = c0[0b100] = s(1 + t) / 2;
            c0[0b010] = s(1 - t) / 2;
            c0[0b110] = -s(1 - t) / 2;
            c1[0b111] = c1[0b011] = s(1 + t) / 2;
            c1[0b101] = s(1 - t) / 2;
            c1[0b001] = -s(1 - t) / 2;
            return frame_from_columns(3, {c0, c1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            return std::sqrt(2.0) * param(p, "t");
        };
        e.grid = [](int pts) { return grid_1d("t", 0.0, 1.0, pts); };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "n3_disc_0";
        e.n = 3;
        e.K = 2;
        e.description = "cyclic-+1 code with all-zero signature for the disconnected tuple";
        e.family = disconnected_tuple();
        e.build = [](const FamilyParams&) {
            std::vector<cxd> a(8, cxd{}), b(8, cxd{});
            a[0b000] = 0.5;
            a[0b011] = a[0b101] = a[0b110] = -0.5;
            b[0b001] = b[0b010] = b[0b100] = 0.5;
            b[0b111] = -0.5;
            return frame_from_columns(3, {a, b});
        };
        e.predicted_lambda = [](const FamilyParams&) { return 0.0; };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        e.symmetry = SymmetryTag::cyclic;
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "n3_disc_1";
        e.n = 3;
        e.K = 2;
        e.description = "cyclic-+1 code with signature (0,1,0,0,0) for the disconnected tuple";
        e.family = disconnected_tuple();
        e.build = [](const FamilyParams&) {
            std::vector<cxd> a(8, cxd{}), b(8, cxd{});
            a[0b000] = a[0b011] = a[0b101] = a[0b110] = 0.5;
            b[0b001] = b[0b010] = b[0b100] = b[0b111] = 0.5;
            return frame_from_columns(3, {a, b});
        };
        e.predicted_lambda = [](const FamilyParams&) { return 1.0; };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        e.symmetry = SymmetryTag::cyclic;
        cat.push_back(std::move(e));
    }

    // --- five-qubit cyclic families -----------------------------------------
    {
        FamilyCatalogEntry e;
        e.id = "c522";
        e.n = 5;
        e.K = 2;
        e.description = "((5,2,2)) cyclic-invariant one-parameter family, lambda* = sqrt(5) t";
        e.params = {{"t", 0.0, (sqrt6 - 1.0) / 5.0}};
        e.family = weight_bounded_family(5, 2);
        e.symmetry = SymmetryTag::cyclic;
        e.build = [](const FamilyParams& p) {
            const double t = param(p, "t");
            check_range("c522", "t", t, 0.0, (std::sqrt(6.0) - 1.0) / 5.0);
            const double a0 = std::sqrt((3 - 2 * t - 5 * t * t) / (4 * (3 + 5 * t)));
            const double a1 = std::sqrt(std::max(0.0, (1 - 2 * t - 5 * t * t) / (3 + 5 * t)));
            const double a2 = std::sqrt(5 * (5 * t * t + 6 * t + 1) / (8 * (3 + 5 * t)));
            const double b1 = std::sqrt((1 + 5 * t) / 4);
            const double b2 = std::sqrt((3 - 5 * t) / 8);
            std::vector<cxd> v0(32, cxd{}), v1(32, cxd{});
            axpy(v0, a0, ket(5, "00000"));
            axpy(v0, a1, ket(5, "11111"));
            axpy(v0, a2 / std::sqrt(5.0), cyc_sum(5, "00011"));
            axpy(v0, -a2 / std::sqrt(5.0), cyc_sum(5, "00101"));
            axpy(v1, b1 / std::sqrt(5.0), cyc_sum(5, "00001"));
            axpy(v1, b2 / std::sqrt(5.0), cyc_sum(5, "01011"));
            axpy(v1, -b2 / std::sqrt(5.0), cyc_sum(5, "00111"));
            return frame_from_columns(5, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            return std::sqrt(5.0) * param(p, "t");
        };
        e.grid = [](int pts) { return grid_1d("t", 0.0, (std::sqrt(6.0) - 1.0) / 5.0, pts); };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "c532_basis";
        e.n = 5;
        e.K = 3;
        e.description = "((5,3,2)) cyclic-invariant basis code frozen at lambda* = 1/sqrt(5)";
        e.family = weight_bounded_family(5, 2);
        e.symmetry = SymmetryTag::cyclic;
        e.build = [](const FamilyParams&) {
            std::vector<cxd> v0(32, cxd{}), v1(32, cxd{}), v2(32, cxd{});
            axpy(v0, std::sqrt(3.0 / 5.0), ket(5, "00000"));
            axpy(v0, std::sqrt(2.0 / 5.0), ket(5, "11111"));
            axpy(v1, 1.0 / std::sqrt(5.0), cyc_sum(5, "00101"));
            axpy(v2, 1.0 / std::sqrt(5.0), cyc_sum(5, "00011"));
            return frame_from_columns(5, {v0, v1, v2});
        };
        e.predicted_lambda = [](const FamilyParams&) { return 1.0 / std::sqrt(5.0); };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "asym52_cyc";
        e.n = 5;
        e.K = 2;
        e.description = "cyclic family for the r=2 asymmetric set; lambda*^2 = (16 a0^2 - 1)^2 / 10";
        e.params = {{"a0sq", 1.0 / 16.0, 3.0 / 8.0}};
        e.family = asym_family(5, 2);
        e.symmetry = SymmetryTag::cyclic;
        e.build = [](const FamilyParams& p) {
            const double a0sq = param(p, "a0sq");
            check_range("asym52_cyc", "a0sq", a0sq, 1.0 / 16.0, 3.0 / 8.0);
            const double a0 = std::sqrt(a0sq);
            const double a1 = std::sqrt(std::max(0.0, 3.0 / 8.0 - a0sq));
            const double a2 = -a1;
            const double a3abs2 = a0sq + 0.25;
            const double re3 = -(3.0 / 8.0 - a0sq) / (std::sqrt(5.0) * a0);
            const double im3 = std::sqrt(std::max(0.0, a3abs2 - re3 * re3));
            const cxd a3(re3, im3);
            std::vector<cxd> v0(32, cxd{});
            axpy(v0, a0, ket(5, "00000"));
            axpy(v0, a1 / std::sqrt(5.0), cyc_sum(5, "00011"));
            axpy(v0, a2 / std::sqrt(5.0), cyc_sum(5, "00101"));
            axpy(v0, a3 / std::sqrt(5.0), cyc_sum(5, "01111"));
            const std::vector<cxd> v1 = apply_op(parse_pauli("XXXXX"), v0);
            return frame_from_columns(5, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            const double a0sq = param(p, "a0sq");
            const double q = 16.0 * a0sq - 1.0;
            return std::sqrt(q * q / 10.0);
        };
        e.grid = [](int pts) { return grid_1d("a0sq", 1.0 / 16.0, 3.0 / 8.0, pts); };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "asym52_noncyc";
        e.n = 5;
        e.K = 2;
        e.description = "non-cyclic family covering lambda*^2 in [2,3] for the r=2 asymmetric set";
        e.params = {{"t", 0.0, 0.25}};
        e.family = asym_family(5, 2);
        e.symmetry = SymmetryTag::noncyclic;
        e.build = [](const FamilyParams& p) {
            const double t = param(p, "t");
            check_range("asym52_noncyc", "t", t, 0.0, 0.25);
            std::vector<cxd> v0(32, cxd{});
            axpy(v0, 0.5, ket(5, "00110"));
            axpy(v0, std::sqrt(t), ket(5, "01001"));
            axpy(v0, std::sqrt(0.25 - t), ket(5, "01100"));
            axpy(v0, std::sqrt(0.25 - t), ket(5, "10001"));
            axpy(v0, std::sqrt(t), ket(5, "10100"));
            axpy(v0, 0.5, ket(5, "11011"));
            std::vector<cxd> v1 = apply_op(parse_pauli("XXXXX"), v0);
            v1 = apply_op(parse_pauli("IIIIZ"), v1);
            return frame_from_columns(5, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            const double t = param(p, "t");
            return std::sqrt(1.0 + 2.0 * (1 - 4 * t) * (1 - 4 * t) + 2.0 * (4 * t) * (4 * t));
        };
        e.grid = [](int pts) { return grid_1d("t", 0.0, 0.25, pts); };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "mix52";
        e.n = 5;
        e.K = 2;
        e.description = "cyclic family for the 55-member mixed set; lambda*^2 = (5/2) x^2/(1+x)";
        e.params = {{"x", 0.0, 1.0}};
        e.family = mix_family(5);
        e.symmetry = SymmetryTag::cyclic;
        e.build = [](const FamilyParams& p) {
            const double x = param(p, "x");
            check_range("mix52", "x", x, 0.0, 1.0);
            const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
            const cxd al(-std::sqrt(2 + x) / (4 * s2), std::sqrt(x) / (2 * s2));
            const double be = s5 / (4 * s2) * std::sqrt(2 + x);
            const cxd ga(0.0, -s5 / 4 * std::sqrt(x));
            const cxd de = s5 / 4 * std::sqrt((1 - x) / (1 + x)) * cxd(std::sqrt(2 + x), std::sqrt(x));
            // H_0 pieces: Dicke states and the two orbit-difference vectors
            auto orb = [&](const std::string& b) {
                std::vector<cxd> v = cyc_sum(5, b);
                double nrm = 0.0;
                for (const cxd& z : v) nrm += std::norm(z);
                nrm = std::sqrt(nrm);
                for (cxd& z : v) z /= nrm;
                return v;
            };
            std::vector<cxd> f1(32, cxd{}), f2(32, cxd{});
            axpy(f1, 1.0 / s2, orb("00011"));
            axpy(f1, -1.0 / s2, orb("00101"));
            axpy(f2, 1.0 / s2, orb("00111"));
            axpy(f2, -1.0 / s2, orb("01011"));
            std::vector<cxd> v0(32, cxd{}), v1(32, cxd{});
            axpy(v0, al, dicke(5, 0));
            axpy(v0, be, dicke(5, 4));
            axpy(v0, ga, dicke(5, 2));
            axpy(v0, de, f1);
            axpy(v1, al, dicke(5, 5));
            axpy(v1, be, dicke(5, 1));
            axpy(v1, ga, dicke(5, 3));
            axpy(v1, de, f2);
            return frame_from_columns(5, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            const double x = param(p, "x");
            return std::sqrt(2.5 * x * x / (1.0 + x));
        };
        e.grid = [](int pts) { return grid_1d("x", 0.0, 1.0, pts); };
        cat.push_back(std::move(e));
    }

    // --- permutation-invariant entries --------------------------------------
    {
        FamilyCatalogEntry e;
        e.id = "pi52_asym";
        e.n = 5;
        e.K = 2;
        e.description = "Dicke-sector family for the r=2 asymmetric set; bounded away from zero";
        const double lo = 1.0 - 5.0 * sqrt7 / 16.0;
        e.params = {{"c0sq", lo, 3.0 / 8.0}};
        e.family = asym_family(5, 2);
        e.symmetry = SymmetryTag::permutation;
        e.build = [lo](const FamilyParams& p) {
            const double c0sq = param(p, "c0sq");
            check_range("pi52_asym", "c0sq", c0sq, lo, 3.0 / 8.0);
            const double c0 = std::sqrt(c0sq);
            const double m1 = std::sqrt(std::max(0.0, 3.0 / 4.0 - 2.0 * c0sq));
            const double m2 = std::sqrt(0.25 + c0sq);
            double carg = 0.0;
            if (m1 > 0.0)
                carg = -3.0 * m1 * m1 / (2.0 * std::sqrt(5.0) * c0 * m2);
            carg = std::clamp(carg, -1.0, 1.0);
            const double phi2 = std::acos(carg);
            const double phi1 = phi2 + kPi / 2.0;
            const cxd c1 = m1 * cxd(std::cos(phi1), std::sin(phi1));
            const cxd c2 = m2 * cxd(std::cos(phi2), std::sin(phi2));
            std::vector<cxd> v0(32, cxd{});
            axpy(v0, c0, dicke(5, 0));
            axpy(v0, c1, dicke(5, 2));
            axpy(v0, c2, dicke(5, 4));
            const std::vector<cxd> v1 = apply_op(parse_pauli("XXXXX"), v0);
            return frame_from_columns(5, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams& p) {
            const double c0sq = param(p, "c0sq");
            const double q = 8.0 * c0sq - 0.5;
            return std::sqrt(0.4 * q * q);
        };
        e.grid = [lo](int pts) { return grid_1d("c0sq", lo, 3.0 / 8.0, pts); };
        cat.push_back(std::move(e));
    }
    {
        FamilyCatalogEntry e;
        e.id = "pi52_mix_endpoint";
        e.n = 5;
        e.K = 2;
        e.description = "permutation-invariant code attaining lambda*^2 = 5/4 for the mixed set";
        e.family = mix_family(5);
        e.symmetry = SymmetryTag::permutation;
        e.build = [](const FamilyParams&) {
            const cxd tau = cxd(2.0, std::sqrt(3.0)) / std::sqrt(7.0);
            const double s32 = std::sqrt(32.0);
            std::vector<cxd> v0(32, cxd{});
            axpy(v0, std::sqrt(7.0) / s32, dicke(5, 0));
            axpy(v0, -std::sqrt(10.0) * tau / s32, dicke(5, 2));
            axpy(v0, cxd(0, 1) * std::sqrt(15.0) * tau / s32, dicke(5, 4));
            const std::vector<cxd> v1 = apply_op(parse_pauli("XXXXX"), v0);
            return frame_from_columns(5, {v0, v1});
        };
        e.predicted_lambda = [](const FamilyParams&) { return std::sqrt(1.25); };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        cat.push_back(std::move(e));
    }

    // --- projector-level permutation-invariant gap codes ---------------------
    auto add_pi_gap = [&cat](const std::string& id, int n, int K,
                             std::function<CodeFrame()> builder) {
        FamilyCatalogEntry e;
        e.id = id;
        e.n = n;
        e.K = K;
        e.description = "projector-level permutation-invariant code at lambda* = 0";
        e.family = weight_bounded_family(n, 2);
        e.symmetry = SymmetryTag::permutation;
        e.build = [builder](const FamilyParams&) { return builder(); };
        e.predicted_lambda = [](const FamilyParams&) { return 0.0; };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        cat.push_back(std::move(e));
    };
    add_pi_gap("pi_gap_4_3", 4, 3, []() {
        const double r = 1.0 / std::sqrt(2.0);
        std::vector<cxd> a(16, cxd{}), b(16, cxd{}), c(16, cxd{});
        a[0b0101] = r;
        a[0b1010] = -r;
        b[0b0110] = r;
        b[0b1001] = -r;
        c[0b0011] = r;
        c[0b1100] = -r;
        return frame_from_columns(4, {a, b, c});
    });
    add_pi_gap("pi_gap_4_4", 4, 4, []() {
        return stabilizer_projector(4, {parse_pauli("XXXX"), parse_pauli("ZZZZ")});
    });
    add_pi_gap("pi_gap_5_4", 5, 4, []() {
        auto sym_pair = [](const std::string& x, const std::string& y) {
            std::vector<cxd> v(32, cxd{});
            axpy(v, 1.0, ket(5, x));
            axpy(v, 1.0, ket(5, y));
            return v;
        };
        const std::vector<std::vector<cxd>> s = {
            sym_pair("00001", "11110"), sym_pair("00010", "11101"), sym_pair("00100", "11011"),
            sym_pair("01000", "10111"), sym_pair("10000", "01111")};
        std::vector<cxd> v0(32, cxd{}), v1(32, cxd{}), v2(32, cxd{}), v3(32, cxd{});
        axpy(v0, 0.5, s[0]);
        axpy(v0, -0.5, s[1]);
        for (int i = 0; i < 2; ++i) axpy(v1, 1.0 / std::sqrt(12.0), s[i]);
        axpy(v1, -2.0 / std::sqrt(12.0), s[2]);
        for (int i = 0; i < 3; ++i) axpy(v2, 1.0 / std::sqrt(24.0), s[i]);
        axpy(v2, -3.0 / std::sqrt(24.0), s[3]);
        for (int i = 0; i < 4; ++i) axpy(v3, 1.0 / std::sqrt(40.0), s[i]);
        axpy(v3, -4.0 / std::sqrt(40.0), s[4]);
        return frame_from_columns(5, {v0, v1, v2, v3});
    });
    add_pi_gap("pi_gap_5_5", 5, 5, []() {
        auto col = [](const std::string& x, const std::string& y) {
            std::vector<cxd> v(32, cxd{});
            const double r = 1.0 / std::sqrt(2.0);
            axpy(v, r, ket(5, x));
            axpy(v, r, ket(5, y));
            return v;
        };
        return frame_from_columns(5, {col("00001", "11110"), col("01111", "10000"),
                                      col("01000", "10111"), col("11011", "00100"),
                                      col("00010", "11101")});
    });

    // --- three-qubit endpoint stabilizers ------------------------------------
    auto add_stab = [&cat](const std::string& id, int fam_idx, double pred) {
        FamilyCatalogEntry e;
        e.id = id;
        e.n = 3;
        e.K = 2;
        e.description = "endpoint stabilizer code";
        e.family = three_qubit_family(fam_idx);
        e.build = [id](const FamilyParams&) {
            return stabilizer_projector(3, three_qubit_stabilizer(id));
        };
        e.predicted_lambda = [pred](const FamilyParams&) { return pred; };
        e.grid = [](int) { return std::vector<FamilyParams>{{}}; };
        cat.push_back(std::move(e));
    };
    add_stab("s1_min", 1, 0.0);
    add_stab("s1_max", 1, 1.0);
    add_stab("s2_min", 2, 0.0);
    add_stab("s2_max", 2, std::sqrt(3.0));
    add_stab("s3_min", 3, 0.0);
    add_stab("s3_max", 3, std::sqrt(2.0));
    add_stab("s4", 4, 0.0);

    return cat;
}

}  // namespace

const std::vector<FamilyCatalogEntry>& family_catalog() {
    static const std::vector<FamilyCatalogEntry> cat = make_catalog();
    return cat;
}

const FamilyCatalogEntry& catalog_entry(const std::string& id) {
    for (const FamilyCatalogEntry& e : family_catalog())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown family id: " + id);
}

CodeFrame build_family_frame(const std::string& id, const FamilyParams& params) {
    return catalog_entry(id).build(params);
}

double predicted_lambda(const std::string& id, const FamilyParams& params) {
    const FamilyCatalogEntry& e = catalog_entry(id);
    for (const FamilyParameter& p : e.params)
        if (params.count(p.name)) check_range(id, p.name, params.at(p.name), p.lo, p.hi);
    return e.predicted_lambda(params);
}

ErrorFamily three_qubit_family(int which) {
    switch (which) {
        case 1:
            return family_from_labels({"XII", "IXI", "IIX", "ZII", "IZI", "IIZ"}, "E1");
        case 2:
            return family_from_labels(
                {"XII", "IXI", "IIX", "YII", "IYI", "IIY", "ZZI", "ZIZ", "IZZ"}, "E2");
        case 3:
            return family_from_labels(
                {"XII", "IXI", "IIX", "YII", "IYI", "IIY", "ZZI", "ZIZ", "IZZ", "ZZZ"}, "E3");
        case 4:
            return e4_family();
        default:
            throw std::invalid_argument("three_qubit_family: index must be 1..4");
    }
}

std::vector<PauliOperator> three_qubit_stabilizer(const std::string& id) {
    auto gens = [](const char* a, const char* b) {
        return std::vector<PauliOperator>{parse_pauli(a), parse_pauli(b)};
    };
    if (id == "s1_min") return gens("YII", "IYY");
    if (id == "s1_max") return gens("XII", "IYY");
    if (id == "s2_min") return gens("XZZ", "ZXZ");
    if (id == "s2_max") return gens("ZZI", "IZZ");
    if (id == "s3_min") return gens("XZZ", "ZXZ");
    if (id == "s3_max") return gens("XII", "IZZ");
    if (id == "s4") return gens("YYI", "IYY");
    throw std::invalid_argument("unknown stabilizer id: " + id);
}

ErrorFamily disconnected_tuple() {
    return family_from_labels({"YXX", "XXI", "YXZ", "YIX", "IZI"}, "disc");
}

}  // namespace sigspec
