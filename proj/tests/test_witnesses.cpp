#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entwit/collective.hpp"
#include "entwit/density.hpp"
#include "entwit/matrix.hpp"
#include "entwit/rng.hpp"
#include "entwit/sampler.hpp"
#include "entwit/witnesses.hpp"

using namespace entwit;

namespace {

DensityMatrix singlet() {
    return bell_singlet_projector();
}

DensityMatrix maximally_mixed() {
    return DensityMatrix(cplx(0.25) * ComplexMatrix::identity(4));
}

DensityMatrix random_pure(Rng& rng, std::array<cplx, 4>* amps = nullptr) {
    std::array<cplx, 4> a;
    double n2 = 0.0;
    for (auto& c : a) {
        c = rng.standard_complex_normal();
        n2 += std::norm(c);
    }
    const double n = std::sqrt(n2);
    for (auto& c : a) c /= n;
    if (amps) *amps = a;
    ComplexMatrix m(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m.at(r, c) = a[static_cast<std::size_t>(r)] * std::conj(a[static_cast<std::size_t>(c)]);
        }
    }
    return DensityMatrix(m);
}

DensityMatrix random_product(Rng& rng) {
    auto qubit = [&rng] {
        ComplexMatrix g = ComplexMatrix::zero(2, 2);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) g.at(r, c) = rng.standard_complex_normal();
        }
        ComplexMatrix m = g * adjoint(g);
        return cplx(1.0 / trace(m).real()) * m;
    };
    return DensityMatrix(kron(qubit(), qubit()));
}

// Pure-state concurrence from the amplitudes: C = 2 |a00 a11 - a01 a10|.
double pure_concurrence(const std::array<cplx, 4>& a) {
    return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

// FEF by direct search: the maximally entangled states are (U (x) I)|phi+>,
// so sampling many single-qubit unitaries lower-bounds the maximum overlap.
// Never touches the magic-basis route under test.
double fef_search(const DensityMatrix& rho, int tries, Rng& rng) {
    double best = 0.0;
    for (int t = 0; t < tries; ++t) {
        cplx u0 = rng.standard_complex_normal();
        cplx u1 = rng.standard_complex_normal();
        const double n = std::sqrt(std::norm(u0) + std::norm(u1));
        u0 /= n;
        u1 /= n;
        const double phase = 2.0 * std::numbers::pi * rng.uniform01();
        const cplx e = std::exp(cplx(0.0, phase));
        // Columns of U: (u0, u1) and e * (-conj(u1), conj(u0)).
        // |phi_U> = (U (x) I)|phi+> has amplitudes U[j][k]/sqrt(2) at |jk>.
        const std::array<cplx, 4> phi = {u0 / std::sqrt(2.0), -e * std::conj(u1) / std::sqrt(2.0),
                                         u1 / std::sqrt(2.0), e * std::conj(u0) / std::sqrt(2.0)};
        cplx overlap = 0.0;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                overlap += std::conj(phi[static_cast<std::size_t>(r)]) * rho.at(r, c) *
                           phi[static_cast<std::size_t>(c)];
            }
        }
        best = std::max(best, overlap.real());
    }
    return best;
}

}  // namespace

TEST_CASE("witness names are stable") {
    CHECK(witness_name(WitnessKind::Ppt) == "ppt");
    CHECK(witness_name(WitnessKind::Collectibility) == "collectibility");
    CHECK(witness_name(WitnessKind::Fef) == "fef");
    CHECK(witness_name(WitnessKind::Chsh) == "chsh");
    CHECK(witness_name(WitnessKind::Entropic) == "entropic");
}

TEST_CASE("concurrence of the singlet is 1 and of werner states max(0, (3p-1)/2)") {
    CHECK(concurrence(singlet()) == doctest::Approx(1.0).epsilon(1e-10));
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        CHECK(concurrence(werner_state(p)) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("concurrence matches the amplitude formula on random pure states") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        std::array<cplx, 4> amps;
        const DensityMatrix rho = random_pure(rng, &amps);
        CHECK(concurrence(rho) == doctest::Approx(pure_concurrence(amps)).epsilon(1e-8));
    }
}

TEST_CASE("ppt label and concurrence sign agree away from the boundary") {
    Rng rng(2);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const LabeledState s = sample_state({EnsembleKind::GinibreFull, 4, 0.0}, rng);
        if (std::abs(s.min_pt_eig) <= 1e-6) continue;
        const WitnessVerdict v = ppt_label(s.rho);
        CHECK(v.detected == (concurrence(s.rho) > 1e-9));
        CHECK(v.detected == s.entangled);
        ++checked;
    }
    CHECK(checked > 450);
}

TEST_CASE("collectibility matches the closed werner form 7/2 - 9 p^2 / 2") {
    for (double p : {0.0, 0.3, 0.6, std::sqrt(7.0) / 3.0, 0.9, 1.0}) {
        const WitnessVerdict v = collectibility(werner_state(p));
        CHECK(v.value == doctest::Approx(3.5 - 4.5 * p * p).epsilon(1e-9));
    }
    // The onset sits where the closed form crosses zero.
    CHECK_FALSE(collectibility(werner_state(std::sqrt(7.0) / 3.0 - 1e-4)).detected);
    CHECK(collectibility(werner_state(std::sqrt(7.0) / 3.0 + 1e-4)).detected);
}

TEST_CASE("collectibility equals minus squared concurrence on pure states") {
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        std::array<cplx, 4> amps;
        const DensityMatrix rho = random_pure(rng, &amps);
        const double c = pure_concurrence(amps);
        CHECK(collectibility(rho).value == doctest::Approx(-c * c).epsilon(5e-7));
    }
}

TEST_CASE("collectibility never fires on product or unentangled werner states") {
    Rng rng(4);
    for (int i = 0; i < 300; ++i) {
        const WitnessVerdict v = collectibility(random_product(rng));
        CHECK(v.value > -1e-9);
        CHECK_FALSE(v.detected);
    }
    for (double p : {0.0, 0.1, 0.2, 0.3, 1.0 / 3.0}) {
        CHECK_FALSE(collectibility(werner_state(p)).detected);
    }
}

TEST_CASE("collectibility detects every sampled pure state with real concurrence") {
    Rng rng(5);
    int detected = 0;
    int eligible = 0;
    for (int i = 0; i < 200; ++i) {
        std::array<cplx, 4> amps;
        const DensityMatrix rho = random_pure(rng, &amps);
        if (pure_concurrence(amps) <= 1e-3) continue;
        ++eligible;
        detected += collectibility(rho).detected;
    }
    CHECK(eligible > 150);
    CHECK(detected == eligible);
}

TEST_CASE("collectibility_value_from_probs agrees on the werner family") {
    const SettingsCatalog cat = collectibility_settings();
    REQUIRE(cat.size() == 5);
    CHECK(cat.settings[0].name == "HH");
    CHECK(cat.settings[4].name == "HV");
    for (double p : {0.0, 0.4, 0.88, 1.0}) {
        const DensityMatrix w = werner_state(p);
        std::array<double, 5> probs{};
        for (int i = 0; i < 5; ++i) {
            probs[static_cast<std::size_t>(i)] =
                collective_probability(w, cat.settings[static_cast<std::size_t>(i)]);
        }
        CHECK(collectibility_value_from_probs(probs) ==
              doctest::Approx(collectibility(w).value).epsilon(1e-9));
    }
}

TEST_CASE("fef of I/4 is 1/4 and of werner states (3p + 1)/4") {
    CHECK(fef(maximally_mixed()).value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(fef(maximally_mixed()).detected);
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.6, 1.0}) {
        const WitnessVerdict v = fef(werner_state(p));
        CHECK(v.value == doctest::Approx((3.0 * p + 1.0) / 4.0).epsilon(1e-10));
        CHECK(v.detected == (p > 1.0 / 3.0 + 1e-9));
    }
    CHECK(fef(singlet()).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fef matches a direct search over maximally entangled states") {
    Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        const DensityMatrix rho = i % 2 ? sample_state({EnsembleKind::GinibreFull, 4, 0.0}, rng).rho
                                        : random_pure(rng);
        const double exact = fef(rho).value;
        const double searched = fef_search(rho, 20000, rng);
        CHECK(searched <= exact + 1e-9);  // the search only lower-bounds
        CHECK(searched > exact - 2e-3);   // but hits the maximum closely
    }
}

TEST_CASE("chsh quantity is 2 for the singlet and 2 p^2 for werner states") {
    CHECK(chsh(singlet()).value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(chsh(singlet()).detected);
    for (double p : {0.0, 0.5, 1.0 / std::sqrt(2.0), 0.9, 1.0}) {
        const WitnessVerdict v = chsh(werner_state(p));
        CHECK(v.value == doctest::Approx(2.0 * p * p).epsilon(1e-10));
        CHECK(v.detected == (2.0 * p * p > 1.0 + 1e-9));
    }
    CHECK(chsh(maximally_mixed()).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chsh never exceeds 1 on product states") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        CHECK(chsh(random_product(rng)).value <= 1.0 + 1e-9);
    }
}

TEST_CASE("entropic witness value on the singlet and werner family") {
    CHECK(entropic(singlet()).value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(entropic(singlet()).detected);
    for (double p : {0.0, 0.5, 1.0 / std::sqrt(3.0), 0.8, 1.0}) {
        const WitnessVerdict v = entropic(werner_state(p));
        const double expected = (1.0 + 3.0 * p * p) / 4.0 - 0.5;
        CHECK(v.value == doctest::Approx(expected).epsilon(1e-10));
        CHECK(v.detected == (expected > 1e-9));
    }
}

TEST_CASE("entropic witness never fires on product states") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(entropic(random_product(rng)).detected);
    }
}

TEST_CASE("all four analytical witnesses stay silent on a separable batch") {
    Rng rng(9);
    for (int i = 0; i < 150; ++i) {
        const DensityMatrix rho = i % 3 == 0 ? werner_state(rng.uniform01() / 3.0)
                                             : random_product(rng);
        CHECK_FALSE(collectibility(rho).detected);
        CHECK_FALSE(fef(rho).detected);
        CHECK_FALSE(chsh(rho).detected);
        CHECK_FALSE(entropic(rho).detected);
    }
}
