#include "doctest.h"

#include "sigspec/families.hpp"
#include "sigspec/optimizer.hpp"
#include "sigspec/rng.hpp"

#include <cmath>

using namespace sigspec;

TEST_SUITE_BEGIN("optimizer");

namespace {

ThetaBlocks random_thetas(const Branch& branch, std::uint64_t seed) {
    Rng rng(seed);
    ThetaBlocks out;
    for (const Branch::Slot& slot : branch.slots) {
        ComplexMatrix t(slot.dim, slot.rank);
        for (int i = 0; i < slot.dim; ++i)
            for (int j = 0; j < slot.rank; ++j)
                t(i, j) = cxd(rng.next_normal(), rng.next_normal());
        out.push_back(std::move(t));
    }
    return out;
}

// central finite differences against the analytic gradient
double max_rel_grad_error(Objective obj, double target, const Problem& prob,
                          const Branch& branch, const ThetaBlocks& theta,
                          const OptimizerConfig& cfg, int probes, std::uint64_t seed) {
    ThetaBlocks grad = gradient(obj, target, prob, branch, theta, cfg);
    Rng rng(seed);
    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        const int s = static_cast<int>(rng.next_below(theta.size()));
        const int i = static_cast<int>(rng.next_below(theta[s].rows()));
        const int j = static_cast<int>(rng.next_below(theta[s].cols()));
        const bool re = rng.next_below(2) == 0;
        const double h = 1e-5 * std::max(1.0, theta[s].max_abs());
        ThetaBlocks tp = theta, tm = theta;
        const cxd delta = re ? cxd(h, 0) : cxd(0, h);
        tp[s](i, j) += delta;
        tm[s](i, j) -= delta;
        const double lp = evaluate_loss(obj, target, prob, branch, tp, cfg).total;
        const double lm = evaluate_loss(obj, target, prob, branch, tm, cfg).total;
        const double fd = (lp - lm) / (2 * h);
        const double an = re ? grad[s](i, j).real() : grad[s](i, j).imag();
        const double err = std::abs(fd - an) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, err);
    }
    return worst;
}

double scale_direction_component(const ThetaBlocks& theta, const ThetaBlocks& grad) {
    double acc = 0.0;
    for (std::size_t s = 0; s < theta.size(); ++s)
        for (int i = 0; i < theta[s].rows(); ++i)
            for (int j = 0; j < theta[s].cols(); ++j)
                acc += grad[s](i, j).real() * theta[s](i, j).real() +
                       grad[s](i, j).imag() * theta[s](i, j).imag();
    return acc;
}

}  // namespace

TEST_CASE("loss values on exact frames") {
    OptimizerConfig cfg;
    // the GHZ stabilizer detects E2 with lambda*^2 = 3; endpoint_max loss is -3
    Problem prob{3, 2, three_qubit_family(2), {}, SymmetryMode::unrestricted};
    Branch branch = enumerate_branches(prob)[0];
    CodeFrame ghz = build_family_frame("s2_max", {});
    ThetaBlocks theta = {ghz.psi};
    LossTerms lt = evaluate_loss(Objective::endpoint_max, 0.0, prob, branch, theta, cfg);
    CHECK(lt.kl < 1e-20);
    CHECK(lt.total == doctest::Approx(-3.0).epsilon(1e-10));

    // target equal to its own signature: loss 0
    LossTerms t2 = evaluate_loss(Objective::target, 3.0, prob, branch, theta, cfg);
    CHECK(t2.total < 1e-18);

    // right-unitary invariance of the loss
    ComplexMatrix u(2, 2);
    const double c = std::cos(0.3), s = std::sin(0.3);
    u(0, 0) = c;
    u(0, 1) = s;
    u(1, 0) = -s;
    u(1, 1) = c;
    ThetaBlocks rotated = {ghz.psi * u};
    LossTerms t3 = evaluate_loss(Objective::endpoint_max, 0.0, prob, branch, rotated, cfg);
    CHECK(t3.total == doctest::Approx(lt.total).epsilon(1e-12));
}

TEST_CASE("analytic gradients match finite differences across modes") {
    OptimizerConfig cfg;
    cfg.mu0 = 100.0;
    struct Case {
        Problem prob;
        std::uint64_t seed;
    };
    std::vector<Case> cases;
    cases.push_back({{3, 2, three_qubit_family(2), {}, SymmetryMode::unrestricted}, 11});
    cases.push_back({{3, 2, three_qubit_family(1), {}, SymmetryMode::cyclic_basis}, 12});
    cases.push_back({{5, 2, weight_bounded_family(5, 2), {}, SymmetryMode::pi_basis}, 13});
    cases.push_back({{3, 2, three_qubit_family(2), {}, SymmetryMode::soft_cyclic}, 14});
    cases.push_back({{4, 3, weight_bounded_family(4, 2), {}, SymmetryMode::pi_projector}, 15});
    cases.push_back({{5, 3, weight_bounded_family(5, 2), {}, SymmetryMode::cyclic_projector}, 16});

    int checked = 0;
    for (const Case& kase : cases) {
        const std::vector<Branch> branches = enumerate_branches(kase.prob);
        REQUIRE(!branches.empty());
        for (std::size_t bi = 0; bi < branches.size() && bi < 2; ++bi) {
            for (Objective obj :
                 {Objective::endpoint_min, Objective::endpoint_max, Objective::target}) {
                ThetaBlocks theta = random_thetas(branches[bi], kase.seed + 100 * bi);
                const double err = max_rel_grad_error(obj, 0.37, kase.prob, branches[bi], theta,
                                                      cfg, 6, kase.seed + 7);
                CHECK(err <= 1e-5);
                ThetaBlocks grad = gradient(obj, 0.37, kase.prob, branches[bi], theta, cfg);
                CHECK(std::abs(scale_direction_component(theta, grad)) <= 1e-8);
                ++checked;
            }
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("gradient vanishes at an exact interior minimizer") {
    OptimizerConfig cfg;
    Problem prob{3, 2, three_qubit_family(4), {}, SymmetryMode::unrestricted};
    Branch branch = enumerate_branches(prob)[0];
    CodeFrame s4 = build_family_frame("s4", {});
    ThetaBlocks theta = {s4.psi};
    ThetaBlocks grad = gradient(Objective::endpoint_min, 0.0, prob, branch, theta, cfg);
    double gmax = 0.0;
    for (const ComplexMatrix& g : grad) gmax = std::max(gmax, g.max_abs());
    CHECK(gmax <= 1e-8);
}

TEST_CASE("optimize finds the {IX} endpoints") {
    Problem prob{2, 2, family_from_labels({"IX"}), {}, SymmetryMode::unrestricted};
    OptimizerConfig cfg;
    cfg.restarts = 8;
    EndpointOutcome eo = find_endpoints(prob, cfg);
    REQUIRE(eo.hi.has_value());
    CHECK(eo.hi->sig.lambda_star >= 1.0 - 1e-6);
    CHECK(eo.hi->kl <= 1e-10);
    REQUIRE(eo.lo.has_value());
    CHECK(eo.lo->sig.lambda_star <= 1e-5);
}

TEST_CASE("optimize is deterministic given the seed") {
    Problem prob{2, 2, family_from_labels({"IX", "IY"}), {}, SymmetryMode::unrestricted};
    OptimizerConfig cfg;
    cfg.restarts = 2;
    cfg.max_iters = 600;
    Branch branch = enumerate_branches(prob)[0];
    Candidate a = optimize(Objective::endpoint_max, 0.0, prob, branch, cfg, 777);
    Candidate b = optimize(Objective::endpoint_max, 0.0, prob, branch, cfg, 777);
    CHECK(a.sig.lambda_star == b.sig.lambda_star);
    CHECK(a.kl == b.kl);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("swap-basis search collapses to the forced value") {
    // {ZZ, IX, IY}: swap-basis spectrum is {1}
    Problem prob{2, 2, family_from_labels({"ZZ", "IX", "IY"}), {}, SymmetryMode::cyclic_basis};
    OptimizerConfig cfg;
    cfg.restarts = 6;
    cfg.run_grid = false;
    SpectrumResult res = reconstruct_spectrum(prob, cfg);
    REQUIRE(!res.validated.empty());
    for (const Candidate& c : res.validated)
        CHECK(c.sig.lambda_star == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("cyclic-basis search on E3 finds nothing") {
    Problem prob{3, 2, three_qubit_family(3), {}, SymmetryMode::cyclic_basis};
    OptimizerConfig cfg;
    cfg.restarts = 8;
    SpectrumResult res = reconstruct_spectrum(prob, cfg);
    CHECK(res.shape == SpectrumShape::empty);
    CHECK(res.validated.empty());
}

TEST_CASE("grid scan achieves every target on an easy interval") {
    Problem prob{2, 2, family_from_labels({"IX"}), {}, SymmetryMode::unrestricted};
    OptimizerConfig cfg;
    cfg.restarts = 6;
    cfg.grid_points = 11;
    SpectrumResult res = reconstruct_spectrum(prob, cfg);
    CHECK(res.shape == SpectrumShape::interval);
    CHECK(res.unreached.empty());
    CHECK(*res.lambda_min <= 1e-4);
    CHECK(*res.lambda_max >= 1.0 - 1e-4);
}

TEST_CASE("monotone containment between modes on a shared problem") {
    OptimizerConfig cfg;
    cfg.restarts = 6;
    cfg.grid_points = 5;
    Problem basis{3, 2, three_qubit_family(1), {}, SymmetryMode::cyclic_basis};
    SpectrumResult rb = reconstruct_spectrum(basis, cfg);
    REQUIRE(!rb.validated.empty());

    std::vector<double> extras;
    std::vector<CodeFrame> hints;
    for (const Candidate& c : rb.validated) {
        extras.push_back(c.sig.lambda_star * c.sig.lambda_star);
        hints.push_back(c.frame);
    }
    Problem proj = basis;
    proj.mode = SymmetryMode::cyclic_projector;
    SpectrumResult rp = reconstruct_spectrum(proj, cfg, extras, hints);
    Problem free_prob = basis;
    free_prob.mode = SymmetryMode::unrestricted;
    SpectrumResult ru = reconstruct_spectrum(free_prob, cfg, extras, hints);
    for (double v : rb.values()) {
        CHECK(rp.contains(v, cfg.dedup));
        CHECK(ru.contains(v, cfg.dedup));
    }
}

TEST_CASE("warm-start neutrality: achieved targets survive grid reversal") {
    Problem prob{2, 2, family_from_labels({"IX"}), {}, SymmetryMode::unrestricted};
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.grid_points = 7;
    SpectrumResult forward = reconstruct_spectrum(prob, cfg);
    OptimizerConfig cfg2 = cfg;
    cfg2.grid_points = 0;
    std::vector<double> reversed;
    for (int i = 6; i >= 0; --i) reversed.push_back(i / 6.0);
    SpectrumResult backward = reconstruct_spectrum(prob, cfg2, reversed);
    CHECK(forward.unreached.empty());
    CHECK(backward.unreached.empty());
}

TEST_SUITE_END();
