#include "qev/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace qev {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kWeightTolerance = 1e-9;

const Vec2 kUniform{Complex{std::numbers::sqrt2 / 2.0}, Complex{std::numbers::sqrt2 / 2.0}};

std::size_t block_offset(Category c) {
    switch (c) {
        case Category::G: return 0;
        case Category::B: return 2;
        case Category::U: return 4;
    }
    return 0;
}

Complex exp_minus_i(double phase) { return {std::cos(phase), -std::sin(phase)}; }

Matrix2 outer(const Vec2& u, const Vec2& v) {
    Matrix2 m;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) m(r, c) = u[static_cast<std::size_t>(r)] * c_conj(v[static_cast<std::size_t>(c)]);
    }
    return m;
}

// Conditional amplitude for a block, or the uniform vector when the block is
// empty.
Vec2 block_or_uniform(const AmplitudeState& state, Category c) {
    const std::size_t off = block_offset(c);
    if (off + 1 >= state.amplitudes.size()) return kUniform;
    const Vec2 block{state.amplitudes[off], state.amplitudes[off + 1]};
    return norm_sq(block) > 0.0 ? project_category(state, c) : kUniform;
}

const Matrix2 kAttack = Matrix2::diag(1.0, 0.0);
const Matrix2 kWithdraw = Matrix2::diag(0.0, 1.0);

}  // namespace

double norm_sq(const Vec2& v) { return c_abs_sq(v[0]) + c_abs_sq(v[1]); }

Matrix2 Matrix2::adjoint() const {
    const Matrix2& m = *this;
    return {{c_conj(m(0, 0)), c_conj(m(1, 0)), c_conj(m(0, 1)), c_conj(m(1, 1))}};
}

bool Matrix2::hermitian(double tol) const {
    double scale = 1.0;
    for (const auto& z : a) scale = std::max(scale, c_abs(z));
    return max_abs_diff(adjoint()) <= tol * scale;
}

bool Matrix2::unitary(double tol) const { return (adjoint() * *this).max_abs_diff(identity()) <= tol; }

double Matrix2::max_abs_diff(const Matrix2& o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        d = std::max({d, std::abs(a[i].re - o.a[i].re), std::abs(a[i].im - o.a[i].im)});
    }
    return d;
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    Matrix2 m;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) m(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
    }
    return m;
}

Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
    Matrix2 m;
    for (std::size_t i = 0; i < 4; ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
}

Matrix2 operator*(Complex s, const Matrix2& m) {
    Matrix2 out;
    for (std::size_t i = 0; i < 4; ++i) out.a[i] = s * m.a[i];
    return out;
}

Vec2 operator*(const Matrix2& m, const Vec2& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

bool CategoryWeights::valid() const {
    for (double p : {p_g, p_b, p_u}) {
        if (!(p >= 0.0 && p <= 1.0)) return false;
    }
    return std::abs(p_g + p_b + p_u - 1.0) <= kWeightTolerance;
}

double AmplitudeState::norm_sq() const {
    double s = 0.0;
    for (const auto& z : amplitudes) s += c_abs_sq(z);
    return s;
}

AmplitudeState build_initial_state(const CategoryWeights& w, Condition condition) {
    if (!w.valid()) throw Error(Errc::BadWeights, "category weights must lie in [0, 1] and sum to 1");
    if (condition == Condition::DAlone && w.p_u != 0.0) {
        throw Error(Errc::BadWeights, "the decide-alone state has no uncertain block");
    }
    AmplitudeState s;
    s.condition = condition;
    std::vector<double> blocks{w.p_g, w.p_b};
    if (condition == Condition::CThenD) blocks.push_back(w.p_u);
    for (double p : blocks) {
        const Complex amp{std::sqrt(p / 2.0)};
        s.amplitudes.push_back(amp);
        s.amplitudes.push_back(amp);
    }
    return s;
}

Vec2 project_category(const AmplitudeState& state, Category category) {
    const std::size_t off = block_offset(category);
    if (off + 1 >= state.amplitudes.size()) {
        throw Error(Errc::BadConfig, "state has no uncertain-category block");
    }
    const Vec2 block{state.amplitudes[off], state.amplitudes[off + 1]};
    const double norm = std::sqrt(norm_sq(block));
    if (!(norm > 0.0)) throw Error(Errc::ZeroBlockNorm, "category block has zero norm");
    const double inv = 1.0 / norm;
    return {inv * block[0], inv * block[1]};
}

Matrix2 build_hamiltonian_block(double h, const ModelConfig& config) {
    if (!std::isfinite(h) || std::abs(h) > config.h_max) {
        throw Error(Errc::ParamOutOfRange, "Hamiltonian parameter " + std::to_string(h) + " outside [-h_max, h_max]");
    }
    const double s = config.scaling == HamiltonianScaling::PaperLiteral ? 1.0 / (1.0 + h * h)
                                                                         : 1.0 / std::sqrt(1.0 + h * h);
    return {{Complex{s * h}, Complex{s}, Complex{s}, Complex{-s * h}}};
}

Matrix2 unitary_2x2(const Matrix2& hblock, double t) {
    if (!hblock.hermitian()) throw Error(Errc::NotHermitian, "Hamiltonian block must be Hermitian");
    if (c_abs(hblock.trace()) > 1e-15) return unitary_2x2_eigen(hblock, t);

    const double omega = std::sqrt(c_abs_sq(hblock(0, 0)) + c_abs_sq(hblock(0, 1)));
    if (omega == 0.0) return Matrix2::identity();
    const double c = std::cos(omega * t);
    const double sw = std::sin(omega * t) / omega;
    // cos(wt) I - i (sin(wt)/w) H
    Matrix2 u = Complex{0.0, -sw} * hblock;
    u(0, 0) += Complex{c};
    u(1, 1) += Complex{c};
    return u;
}

Matrix2 unitary_2x2_eigen(const Matrix2& hblock, double t) {
    if (!hblock.hermitian()) throw Error(Errc::NotHermitian, "Hamiltonian block must be Hermitian");
    const double p = hblock(0, 0).re;
    const double q = hblock(1, 1).re;
    const Complex b = hblock(0, 1);
    const double mean = 0.5 * (p + q);
    const double half = 0.5 * (p - q);
    const double r = std::sqrt(half * half + c_abs_sq(b));

    if (c_abs(b) == 0.0) {
        return {{exp_minus_i(p * t), {}, {}, exp_minus_i(q * t)}};
    }
    const double l1 = mean + r;
    const double l2 = mean - r;
    // Two algebraically equivalent eigenvectors for l1; keep the better
    // conditioned one.
    Vec2 v1{b, Complex{l1 - p}};
    const Vec2 alt{Complex{l1 - q}, c_conj(b)};
    if (norm_sq(alt) > norm_sq(v1)) v1 = alt;
    const double inv = 1.0 / std::sqrt(norm_sq(v1));
    v1 = {inv * v1[0], inv * v1[1]};
    const Vec2 v2{-c_conj(v1[1]), c_conj(v1[0])};

    return exp_minus_i(l1 * t) * outer(v1, v1) + exp_minus_i(l2 * t) * outer(v2, v2);
}

Vec2 evolve(const Vec2& psi, const Matrix2& hblock, double t) {
    if (std::abs(norm_sq(psi) - 1.0) > kNormTolerance) {
        throw Error(Errc::OutOfRange, "state to evolve must have unit norm");
    }
    return unitary_2x2(hblock, t) * psi;
}

Vec2 attack_amplitude(const Vec2& psi, const Matrix2& measure) {
    const bool diagonal = measure(0, 1) == Complex{} && measure(1, 0) == Complex{};
    auto is_01 = [](Complex z) { return z == Complex{0.0} || z == Complex{1.0}; };
    if (!diagonal || !is_01(measure(0, 0)) || !is_01(measure(1, 1))) {
        throw Error(Errc::NotProjector, "measurement must be a diagonal 0/1 projector");
    }
    return measure * psi;
}

Redistributed redistribute_uncertain(const Vec2& phi_g, const Vec2& phi_b, const Vec2& phi_u) {
    Redistributed out;
    for (std::size_t i = 0; i < 2; ++i) {
        out.g[i] = phi_g[i] + 0.5 * phi_u[i];
        out.b[i] = phi_b[i] + 0.5 * phi_u[i];
    }
    return out;
}

CtdPrediction predict_ctd(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& config) {
    if (!(config.t >= 0.0)) throw Error(Errc::BadConfig, "evolution time must be non-negative");
    const AmplitudeState state = build_initial_state(w, Condition::CThenD);

    auto branch = [&](Category c, double h) {
        const Vec2 psi = block_or_uniform(state, c);
        return attack_amplitude(evolve(psi, build_hamiltonian_block(h, config), config.t), kAttack);
    };
    const Vec2 phi_g = branch(Category::G, params.h_g);
    const Vec2 phi_b = branch(Category::B, params.h_b);
    const Vec2 phi_u = branch(Category::U, params.h_u);
    const Redistributed r = redistribute_uncertain(phi_g, phi_b, phi_u);

    CtdPrediction out;
    out.p_a_given_g = norm_sq(r.g);
    out.p_a_given_b = norm_sq(r.b);
    out.p_total = w.p_g * out.p_a_given_g + w.p_b * out.p_a_given_b;
    out.out_of_range = out.p_a_given_g > 1.0 || out.p_a_given_b > 1.0;
    return out;
}

AlonePrediction predict_alone(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& config) {
    if (!(config.t >= 0.0)) throw Error(Errc::BadConfig, "evolution time must be non-negative");
    const AmplitudeState state = build_initial_state(w, Condition::DAlone);
    const Matrix2& measure_b = config.alone_measure == AloneMeasure::PaperLiteral ? kWithdraw : kAttack;

    const Vec2 psi_g = block_or_uniform(state, Category::G);
    const Vec2 psi_b = block_or_uniform(state, Category::B);
    const Vec2 g = attack_amplitude(evolve(psi_g, build_hamiltonian_block(params.h_g, config), config.t), kAttack);
    const Vec2 b = attack_amplitude(evolve(psi_b, build_hamiltonian_block(params.h_b, config), config.t), measure_b);

    // The two blocks occupy disjoint coordinates of the stacked 4-vector.
    const double p = w.p_g * w.p_g * norm_sq(g) + w.p_b * w.p_b * norm_sq(b);
    return p > 1.0 ? AlonePrediction{1.0, true} : AlonePrediction{p, false};
}

double total_probability(double p_g, double p_a_given_g, double p_b, double p_a_given_b) {
    for (double p : {p_g, p_a_given_g, p_b, p_a_given_b}) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "probabilities must lie in [0, 1]");
    }
    if (p_g + p_b > 1.0 + kWeightTolerance) throw Error(Errc::OutOfRange, "P(G) + P(B) exceeds 1");
    return p_g * p_a_given_g + p_b * p_a_given_b;
}

const char* to_string(HamiltonianScaling s) {
    return s == HamiltonianScaling::PaperLiteral ? "paper-literal" : "unit-spectrum";
}

const char* to_string(AloneMeasure m) {
    return m == AloneMeasure::PaperLiteral ? "paper-literal" : "attack-consistent";
}

HamiltonianScaling parse_scaling(const std::string& s) {
    if (s == "paper-literal" || s == "paper_literal") return HamiltonianScaling::PaperLiteral;
    if (s == "unit-spectrum" || s == "unit_spectrum") return HamiltonianScaling::UnitSpectrum;
    throw Error(Errc::BadConfig, "unknown Hamiltonian scaling '" + s + "'");
}

AloneMeasure parse_alone_measure(const std::string& s) {
    if (s == "paper-literal" || s == "paper_literal") return AloneMeasure::PaperLiteral;
    if (s == "attack-consistent" || s == "attack_consistent") return AloneMeasure::AttackConsistent;
    throw Error(Errc::BadConfig, "unknown alone measure '" + s + "'");
}

}  // namespace qev
