#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qev/quantum.hpp"

using namespace qev;

namespace {

constexpr double kPi = std::numbers::pi;

ModelConfig unit_config() {
    ModelConfig c;
    c.scaling = HamiltonianScaling::UnitSpectrum;
    return c;
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::Io;
}

}  // namespace

TEST_CASE("initial states") {
    const AmplitudeState s = build_initial_state({0.17, 0.83, 0.0}, Condition::CThenD);
    REQUIRE(s.amplitudes.size() == 6);
    CHECK(std::abs(s.norm_sq() - 1.0) <= 1e-12);
    CHECK(s.amplitudes[0] == s.amplitudes[1]);
    CHECK(std::abs(c_abs_sq(s.amplitudes[0]) - 0.085) <= 1e-15);
    CHECK(s.amplitudes[4] == Complex{});

    const AmplitudeState d = build_initial_state({0.5, 0.5, 0.0}, Condition::DAlone);
    CHECK(d.amplitudes.size() == 4);
    CHECK(std::abs(d.norm_sq() - 1.0) <= 1e-12);

    CHECK(code_of([] { build_initial_state({0.5, 0.6, 0.0}, Condition::CThenD); }) == Errc::BadWeights);
    CHECK(code_of([] { build_initial_state({-0.1, 1.1, 0.0}, Condition::CThenD); }) == Errc::BadWeights);
    CHECK(code_of([] { build_initial_state({0.4, 0.4, 0.2}, Condition::DAlone); }) == Errc::BadWeights);
    CHECK(code_of([] { build_initial_state({NAN, 0.5, 0.5}, Condition::CThenD); }) == Errc::BadWeights);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double a = u(rng), b = u(rng), c = u(rng);
        const double sum = a + b + c;
        const AmplitudeState r = build_initial_state({a / sum, b / sum, c / sum}, Condition::CThenD);
        CHECK(std::abs(r.norm_sq() - 1.0) <= 1e-12);
    }
}

TEST_CASE("category projection") {
    const AmplitudeState s = build_initial_state({0.3, 0.5, 0.2}, Condition::CThenD);
    for (Category c : {Category::G, Category::B, Category::U}) {
        const Vec2 v = project_category(s, c);
        CHECK(std::abs(norm_sq(v) - 1.0) <= 1e-12);
        CHECK(std::abs(v[0].re - std::sqrt(0.5)) <= 1e-15);
    }
    const AmplitudeState z = build_initial_state({1.0, 0.0, 0.0}, Condition::CThenD);
    CHECK(code_of([&] { project_category(z, Category::B); }) == Errc::ZeroBlockNorm);
    const AmplitudeState d = build_initial_state({0.5, 0.5, 0.0}, Condition::DAlone);
    CHECK(code_of([&] { project_category(d, Category::U); }) == Errc::BadConfig);
}

TEST_CASE("Hamiltonian blocks") {
    const ModelConfig lit;
    const Matrix2 h = build_hamiltonian_block(2.0, lit);
    CHECK(h.hermitian());
    CHECK(std::abs(h(0, 0).re - 0.4) <= 1e-15);
    CHECK(std::abs(h(0, 1).re - 0.2) <= 1e-15);
    CHECK(std::abs(h(1, 1).re + 0.4) <= 1e-15);
    CHECK(c_abs(h.trace()) == 0.0);

    // Unit-spectrum blocks have eigenvalues +-1 for every h.
    for (double hv : {-7.0, -1.0, 0.0, 0.3, 1.0, 42.0}) {
        const Matrix2 m = build_hamiltonian_block(hv, unit_config());
        const Matrix2 sq = m * m;
        CHECK(sq.max_abs_diff(Matrix2::identity()) <= 1e-12);
    }

    CHECK(code_of([&] { build_hamiltonian_block(50.5, lit); }) == Errc::ParamOutOfRange);
    CHECK(code_of([&] { build_hamiltonian_block(INFINITY, lit); }) == Errc::ParamOutOfRange);
    CHECK(code_of([&] { build_hamiltonian_block(NAN, lit); }) == Errc::ParamOutOfRange);
    CHECK_NOTHROW(build_hamiltonian_block(-50.0, lit));
}

TEST_CASE("unitary propagator against the power series") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> hd(-10.0, 10.0), td(0.0, 2.0 * kPi);
    for (int i = 0; i < 500; ++i) {
        const double h = hd(rng), t = td(rng);
        const bool unit = i % 2 == 1;
        const ModelConfig cfg = unit ? unit_config() : ModelConfig{};
        const Matrix2 hb = build_hamiltonian_block(h, cfg);
        const Matrix2 u = unitary_2x2(hb, t);
        CHECK(u.unitary(1e-10));
        const oracle::Mat ref = oracle::series_exp(oracle::hamiltonian(h, unit), t, 60);
        const oracle::Mat got = oracle::to_mat(u);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) CHECK(std::abs(got[r][c] - ref[r][c]) <= 1e-10);
        }
        CHECK(unitary_2x2_eigen(hb, t).max_abs_diff(u) <= 1e-10);
    }
}

TEST_CASE("eigen path handles general Hermitian blocks") {
    const Matrix2 h{{Complex{0.7}, Complex{0.2, -0.5}, Complex{0.2, 0.5}, Complex{-0.1}}};
    const Matrix2 u = unitary_2x2(h, 1.3);
    CHECK(u.unitary());
    const oracle::Mat ref = oracle::series_exp(oracle::to_mat(h), 1.3, 60);
    const oracle::Mat got = oracle::to_mat(u);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) CHECK(std::abs(got[r][c] - ref[r][c]) <= 1e-12);
    }
    const Matrix2 diag{{Complex{0.5}, {}, {}, Complex{-2.0}}};
    CHECK(unitary_2x2(diag, 0.7).max_abs_diff(Matrix2{{Complex{std::cos(0.35), -std::sin(0.35)}, {}, {},
                                                       Complex{std::cos(1.4), std::sin(1.4)}}}) <= 1e-15);
    CHECK(unitary_2x2(Matrix2{}, 3.0).max_abs_diff(Matrix2::identity()) == 0.0);

    const Matrix2 bad{{Complex{0.0}, Complex{1.0}, Complex{0.5}, Complex{0.0}}};
    CHECK(code_of([&] { unitary_2x2(bad, 1.0); }) == Errc::NotHermitian);
    CHECK(code_of([&] { unitary_2x2_eigen(bad, 1.0); }) == Errc::NotHermitian);
}

TEST_CASE("evolution preserves the norm") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> hd(-50.0, 50.0), td(0.0, 10.0), ad(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Vec2 psi{Complex{ad(rng), ad(rng)}, Complex{ad(rng), ad(rng)}};
        const double n = std::sqrt(norm_sq(psi));
        psi = {(1.0 / n) * psi[0], (1.0 / n) * psi[1]};
        const ModelConfig cfg = i % 2 ? unit_config() : ModelConfig{};
        const Vec2 out = evolve(psi, build_hamiltonian_block(hd(rng), cfg), td(rng));
        CHECK(std::abs(norm_sq(out) - 1.0) <= 1e-12);
    }
    const Vec2 unnormalised{Complex{1.0}, Complex{1.0}};
    CHECK(code_of([&] { evolve(unnormalised, Matrix2::identity(), 1.0); }) == Errc::OutOfRange);

    // Independent series evaluation of the evolved uniform state.
    const Vec2 uni{Complex{std::sqrt(0.5)}, Complex{std::sqrt(0.5)}};
    for (double h : {-3.0, -0.4, 0.0, 1.0, 2.5}) {
        for (bool unit : {false, true}) {
            const ModelConfig cfg = unit ? unit_config() : ModelConfig{};
            const Vec2 got = evolve(uni, build_hamiltonian_block(h, cfg), kPi / 2);
            const auto ref = oracle::evolved_uniform(h, kPi / 2, unit);
            CHECK(std::abs(oracle::to_std(got[0]) - ref[0]) <= 1e-12);
            CHECK(std::abs(oracle::to_std(got[1]) - ref[1]) <= 1e-12);
        }
    }
}

TEST_CASE("attack amplitude") {
    const Vec2 v{Complex{0.6, 0.1}, Complex{-0.3, 0.7}};
    CHECK(attack_amplitude(v, Matrix2::diag(1, 0))[1] == Complex{});
    CHECK(attack_amplitude(v, Matrix2::diag(1, 0))[0] == v[0]);
    CHECK(attack_amplitude(v, Matrix2::diag(0, 1))[0] == Complex{});
    CHECK(code_of([&] { attack_amplitude(v, Matrix2::diag(0.5, 0)); }) == Errc::NotProjector);
    CHECK(code_of([&] { attack_amplitude(v, Matrix2{{Complex{1}, Complex{1}, {}, {}}}); }) == Errc::NotProjector);
}

TEST_CASE("uncertain amplitude redistribution") {
    const Vec2 g{Complex{0.1, 0.2}, Complex{}};
    const Vec2 b{Complex{-0.3}, Complex{}};
    const Vec2 u{Complex{0.4, -0.6}, Complex{}};
    const Redistributed r = redistribute_uncertain(g, b, u);
    CHECK(c_abs(r.g[0] - Complex{0.3, -0.1}) <= 1e-15);
    CHECK(c_abs(r.b[0] - Complex{-0.1, -0.3}) <= 1e-15);
    const Redistributed z = redistribute_uncertain(g, b, Vec2{});
    CHECK(z.g[0] == g[0]);
    CHECK(z.b[0] == b[0]);
}

TEST_CASE("categorise-then-decide predictions") {
    SUBCASE("symmetric at h = 0 with equal weights") {
        const CtdPrediction p = predict_ctd({0, 0, 0}, {0.5, 0.5, 0}, {});
        CHECK(std::abs(p.p_a_given_g - p.p_a_given_b) <= 1e-12);
        CHECK(std::abs(p.p_total - p.p_a_given_g) <= 1e-12);
    }
    SUBCASE("t = 0 adds the halved uncertain amplitude undeliberated") {
        ModelConfig c;
        c.t = 0.0;
        const CtdPrediction p = predict_ctd({1.3, -2.0, 0.4}, {0.3, 0.7, 0}, c);
        CHECK(std::abs(p.p_a_given_g - 9.0 / 8.0) <= 1e-12);
        CHECK(std::abs(p.p_a_given_b - 9.0 / 8.0) <= 1e-12);
        CHECK(p.out_of_range);
    }
    SUBCASE("closed form at t = pi/2") {
        // With U = cos(w t) I - i sin(w t) H / w, the attack amplitude of the
        // evolved uniform state is (cos(wt) - i sin(wt) s (h + 1) / w) / sqrt 2.
        auto amp = [](double h) {
            const double s = 1.0 / (1.0 + h * h);
            const double w = s * std::sqrt(1.0 + h * h);
            const double t = kPi / 2;
            return std::complex<double>(std::cos(w * t), -std::sin(w * t) * s * (h + 1) / w) / std::sqrt(2.0);
        };
        const double hg = 0.8, hb = -1.7, hu = 2.2;
        const auto g = amp(hg) + 0.5 * amp(hu);
        const auto b = amp(hb) + 0.5 * amp(hu);
        const CtdPrediction p = predict_ctd({hg, hb, hu}, {0.17, 0.83, 0}, {});
        CHECK(std::abs(p.p_a_given_g - std::norm(g)) <= 1e-12);
        CHECK(std::abs(p.p_a_given_b - std::norm(b)) <= 1e-12);
        CHECK(std::abs(p.p_total - (0.17 * std::norm(g) + 0.83 * std::norm(b))) <= 1e-12);
    }
    SUBCASE("conditionals can leave [0, 1] under unit-spectrum scaling") {
        const CtdPrediction p = predict_ctd({1.0, 0.0, 1.0}, {0.5, 0.5, 0}, unit_config());
        CHECK(std::abs(p.p_a_given_g - 2.25) <= 1e-12);
        CHECK(p.out_of_range);
    }
    SUBCASE("zero-weight blocks fall back to the uniform state") {
        const CtdPrediction full_g = predict_ctd({0.5, 0.9, -1.0}, {1.0, 0.0, 0.0}, {});
        const CtdPrediction mixed = predict_ctd({0.5, 0.9, -1.0}, {0.4, 0.6, 0.0}, {});
        CHECK(std::abs(full_g.p_a_given_g - mixed.p_a_given_g) <= 1e-12);
        CHECK(std::abs(full_g.p_a_given_b - mixed.p_a_given_b) <= 1e-12);
        CHECK(std::abs(full_g.p_total - full_g.p_a_given_g) <= 1e-12);
    }
    SUBCASE("weights and h are validated") {
        CHECK(code_of([] { predict_ctd({0, 0, 0}, {0.5, 0.6, 0}, {}); }) == Errc::BadWeights);
        CHECK(code_of([] { predict_ctd({60, 0, 0}, {0.5, 0.5, 0}, {}); }) == Errc::ParamOutOfRange);
        ModelConfig c;
        c.t = -1.0;
        CHECK(code_of([&] { predict_ctd({0, 0, 0}, {0.5, 0.5, 0}, c); }) == Errc::BadConfig);
    }
    SUBCASE("total is the weighted sum of the conditionals") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> hd(-10, 10), pd(0, 1);
        for (int i = 0; i < 500; ++i) {
            const double pg = pd(rng);
            const CtdPrediction p = predict_ctd({hd(rng), hd(rng), hd(rng)}, {pg, 1 - pg, 0}, {});
            CHECK(std::abs(p.p_total - (pg * p.p_a_given_g + (1 - pg) * p.p_a_given_b)) <= 1e-12);
            CHECK(p.p_a_given_g >= 0.0);
            CHECK(p.out_of_range == (p.p_a_given_g > 1.0 || p.p_a_given_b > 1.0));
        }
    }
}

TEST_CASE("decide-alone predictions") {
    SUBCASE("all weight on one category") {
        CHECK(std::abs(predict_alone({0, 0, 0}, {1, 0, 0}, {}).p_attack - 0.5) <= 1e-12);
        CHECK(std::abs(predict_alone({0, 0, 0}, {0, 1, 0}, {}).p_attack - 0.5) <= 1e-12);
    }
    SUBCASE("block weights enter squared") {
        CHECK(std::abs(predict_alone({0, 0, 0}, {0.5, 0.5, 0}, {}).p_attack - 0.25) <= 1e-12);
    }
    SUBCASE("measures agree when only one category carries weight") {
        ModelConfig lit;
        lit.alone_measure = AloneMeasure::PaperLiteral;
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> hd(-10, 10);
        for (int i = 0; i < 200; ++i) {
            const HamiltonianParams p{hd(rng), hd(rng), 0.0};
            CHECK(std::abs(predict_alone(p, {1, 0, 0}, lit).p_attack - predict_alone(p, {1, 0, 0}, {}).p_attack) <=
                  1e-12);
        }
        // With weight on B they measure complementary coordinates.
        const HamiltonianParams p{0.3, 1.4, 0.0};
        const double a = predict_alone(p, {0, 1, 0}, lit).p_attack;
        const double b = predict_alone(p, {0, 1, 0}, {}).p_attack;
        CHECK(std::abs(a + b - 1.0) <= 1e-12);
    }
    SUBCASE("t = 0 gives half of the squared weights") {
        ModelConfig c;
        c.t = 0.0;
        CHECK(std::abs(predict_alone({2.0, -3.0, 0}, {0.3, 0.7, 0}, c).p_attack - 0.5 * (0.09 + 0.49)) <= 1e-12);
    }
    SUBCASE("h_u does not enter") {
        CHECK(predict_alone({0.4, 0.9, 0.0}, {0.3, 0.7, 0}, {}).p_attack ==
              predict_alone({0.4, 0.9, 7.0}, {0.3, 0.7, 0}, {}).p_attack);
    }
    SUBCASE("range and validation") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> hd(-10, 10), pd(0, 1);
        for (int i = 0; i < 500; ++i) {
            const double pg = pd(rng);
            const AlonePrediction a = predict_alone({hd(rng), hd(rng), 0}, {pg, 1 - pg, 0}, unit_config());
            CHECK(a.p_attack >= 0.0);
            CHECK(a.p_attack <= 1.0);
            CHECK_FALSE(a.clamped);
        }
        CHECK(code_of([] { predict_alone({0, 0, 0}, {0.4, 0.4, 0.2}, {}); }) == Errc::BadWeights);
    }
}

TEST_CASE("total probability") {
    CHECK(std::abs(total_probability(0.17, 0.41, 0.83, 0.63) - 0.5926) <= 1e-12);
    CHECK(total_probability(1, 0.3, 0, 0.9) == 0.3);
    CHECK(code_of([] { total_probability(0.5, 1.2, 0.5, 0.5); }) == Errc::OutOfRange);
    CHECK(code_of([] { total_probability(0.7, 0.5, 0.5, 0.5); }) == Errc::OutOfRange);
    CHECK(code_of([] { total_probability(-0.1, 0.5, 0.5, 0.5); }) == Errc::OutOfRange);
}

TEST_CASE("option names") {
    CHECK(parse_scaling("unit-spectrum") == HamiltonianScaling::UnitSpectrum);
    CHECK(parse_scaling("paper_literal") == HamiltonianScaling::PaperLiteral);
    CHECK(parse_alone_measure("attack-consistent") == AloneMeasure::AttackConsistent);
    CHECK(std::string(to_string(HamiltonianScaling::UnitSpectrum)) == "unit-spectrum");
    CHECK(code_of([] { parse_scaling("other"); }) == Errc::BadConfig);
    CHECK(code_of([] { parse_alone_measure(""); }) == Errc::BadConfig);
}
