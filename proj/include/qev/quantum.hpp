#pragma once

// Evidential quantum dynamical model of categorisation-decision tasks.
//
// Belief-action basis order is [GA, GW, BA, BW, UA, UW] for the
// categorise-then-decide condition and [GA, GW, BA, BW] when the decision is
// made alone. The Hamiltonian is block diagonal, one 2x2 block per category,
// so everything here works on 2-vectors and 2x2 matrices.

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "qev/complex.hpp"

namespace qev {

using Vec2 = std::array<Complex, 2>;

double norm_sq(const Vec2& v);

/// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
    std::array<Complex, 4> a{};

    constexpr Complex& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    constexpr Complex operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }

    static constexpr Matrix2 identity() { return {{Complex{1.0}, {}, {}, Complex{1.0}}}; }
    static constexpr Matrix2 diag(double d0, double d1) { return {{Complex{d0}, {}, {}, Complex{d1}}}; }

    Matrix2 adjoint() const;
    Complex trace() const { return a[0] + a[3]; }
    bool hermitian(double tol = 1e-12) const;
    bool unitary(double tol = 1e-10) const;
    /// Largest element-wise component difference.
    double max_abs_diff(const Matrix2& o) const;
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);
Matrix2 operator+(const Matrix2& x, const Matrix2& y);
Matrix2 operator*(Complex s, const Matrix2& m);
Vec2 operator*(const Matrix2& m, const Vec2& v);

enum class Condition { CThenD, DAlone };
enum class Category { G, B, U };
enum class HamiltonianScaling { PaperLiteral, UnitSpectrum };
enum class AloneMeasure { PaperLiteral, AttackConsistent };

struct CategoryWeights {
    double p_g = 0.0;
    double p_b = 0.0;
    double p_u = 0.0;

    /// Each weight in [0, 1] and the three sum to 1 within 1e-9.
    bool valid() const;
};

struct AmplitudeState {
    std::vector<Complex> amplitudes;
    Condition condition = Condition::CThenD;

    double norm_sq() const;
};

struct HamiltonianParams {
    double h_g = 0.0;
    double h_b = 0.0;
    double h_u = 0.0;
};

struct ModelConfig {
    double t = std::numbers::pi / 2.0;
    HamiltonianScaling scaling = HamiltonianScaling::PaperLiteral;
    AloneMeasure alone_measure = AloneMeasure::AttackConsistent;
    double h_max = 50.0;
};

/// Uniform, real amplitudes within each category block; block norms are
/// sqrt(p_g), sqrt(p_b), sqrt(p_u). DAlone requires p_u == 0 and yields a
/// 4-vector. Throws BadWeights.
AmplitudeState build_initial_state(const CategoryWeights& w, Condition condition);

/// The category block divided by its norm. Throws ZeroBlockNorm, or
/// BadConfig when asking for U on a DAlone state.
Vec2 project_category(const AmplitudeState& state, Category category);

/// s * [[h, 1], [1, -h]] with s = 1/(1+h^2) or 1/sqrt(1+h^2).
/// Throws ParamOutOfRange when |h| > h_max or h is not finite.
Matrix2 build_hamiltonian_block(double h, const ModelConfig& config);

/// exp(-i H t) for Hermitian H. Traceless blocks use the closed form
/// cos(wt) I - i sin(wt) H / w, which holds because H^2 = w^2 I; anything else
/// goes through unitary_2x2_eigen. Throws NotHermitian.
Matrix2 unitary_2x2(const Matrix2& hblock, double t);

/// exp(-i H t) assembled from the spectral decomposition of H.
Matrix2 unitary_2x2_eigen(const Matrix2& hblock, double t);

/// exp(-i H t) psi. Throws OutOfRange when |psi| is not 1 within 1e-9.
Vec2 evolve(const Vec2& psi, const Matrix2& hblock, double t);

/// measure * psi, without renormalisation. Throws NotProjector unless the
/// measure is diagonal with 0/1 entries.
Vec2 attack_amplitude(const Vec2& psi, const Matrix2& measure);

struct Redistributed {
    Vec2 g;
    Vec2 b;
};

/// Splits the uncertain-category amplitude equally between G and B:
/// phi'_G = phi_G + phi_U / 2, phi'_B = phi_B + phi_U / 2.
Redistributed redistribute_uncertain(const Vec2& phi_g, const Vec2& phi_b, const Vec2& phi_u);

struct CtdPrediction {
    double p_a_given_g = 0.0;
    double p_a_given_b = 0.0;
    double p_total = 0.0;
    /// Set when a conditional probability exceeds 1. This happens e.g. at
    /// t = 0, where the halved uncertain amplitude is added without any
    /// deliberation; the model is only meaningful after evolution.
    bool out_of_range = false;
};

/// Categorise-then-decide predictions. Blocks with zero weight (including U
/// when p_u == 0) are replaced by the uniform 2-vector [1, 1]/sqrt(2), so
/// every conditional amplitude is defined.
CtdPrediction predict_ctd(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& config);

struct AlonePrediction {
    double p_attack = 0.0;
    /// Set when the raw value exceeded 1 and was clamped.
    bool clamped = false;
};

/// Decision-alone prediction
///   P(A) = || p_g M_G exp(-i H_G t) psi_G  (+)  p_b M_B exp(-i H_B t) psi_B ||^2
/// where (+) stacks the two blocks. The block weights are the category
/// probabilities, not their square roots. Throws BadWeights when p_u != 0.
AlonePrediction predict_alone(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& config);

/// P(G) P(A|G) + P(B) P(A|B). Throws OutOfRange for inputs outside [0, 1] or
/// P(G) + P(B) > 1.
double total_probability(double p_g, double p_a_given_g, double p_b, double p_a_given_b);

const char* to_string(HamiltonianScaling s);
const char* to_string(AloneMeasure m);
HamiltonianScaling parse_scaling(const std::string& s);
AloneMeasure parse_alone_measure(const std::string& s);

}  // namespace qev
