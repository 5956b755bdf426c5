#pragma once

// Complex-valued Dempster-Shafer calculus: frames, complex mass functions
// (CBBAs), the generalized orthogonal sum, belief/plausibility magnitudes and
// the complex pignistic transform. Real-valued BBAs are the special case with
// every imaginary part zero; combine_classical implements the real rule
// independently so it can serve as an oracle for that case.

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qev/complex.hpp"

namespace qev {

inline constexpr std::size_t kMaxFrameSize = 20;
inline constexpr double kDefaultSumTolerance = 1e-6;
inline constexpr double kSingularTolerance = 1e-9;

/// A subset of a frame, stored as a bitmask over element positions.
/// Index 0 is the empty set.
class Hypothesis {
public:
    constexpr Hypothesis() = default;
    constexpr explicit Hypothesis(std::uint32_t mask) : mask_(mask) {}

    static constexpr Hypothesis singleton(std::size_t pos) {
        return Hypothesis(std::uint32_t{1} << pos);
    }

    constexpr std::uint32_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr int cardinality() const { return std::popcount(mask_); }
    constexpr bool contains(std::size_t pos) const { return (mask_ >> pos) & 1u; }
    constexpr bool subset_of(Hypothesis o) const { return (mask_ & ~o.mask_) == 0; }
    constexpr bool intersects(Hypothesis o) const { return (mask_ & o.mask_) != 0; }

    friend constexpr Hypothesis operator&(Hypothesis a, Hypothesis b) {
        return Hypothesis(a.mask_ & b.mask_);
    }
    friend constexpr Hypothesis operator|(Hypothesis a, Hypothesis b) {
        return Hypothesis(a.mask_ | b.mask_);
    }
    friend constexpr auto operator<=>(Hypothesis, Hypothesis) = default;

private:
    std::uint32_t mask_ = 0;
};

/// Ordered set of distinct, non-empty event labels (1..20 elements).
class Frame {
public:
    explicit Frame(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t pos) const { return labels_.at(pos); }

    Hypothesis full() const { return Hypothesis(static_cast<std::uint32_t>((std::uint64_t{1} << size()) - 1)); }
    Hypothesis complement(Hypothesis h) const { return Hypothesis(full().mask() & ~h.mask()); }
    bool owns(Hypothesis h) const { return (h.mask() & ~full().mask()) == 0; }

    /// Throws UnknownLabel for labels outside the frame.
    Hypothesis hypothesis(const std::vector<std::string>& labels) const;
    Hypothesis hypothesis(std::initializer_list<std::string_view> labels) const;
    std::vector<std::string> labels_of(Hypothesis h) const;

    /// "A", "A,B", "{}" for the empty set.
    std::string name(Hypothesis h) const;

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    std::size_t position(std::string_view label) const;
    std::vector<std::string> labels_;
};

/// Complex basic belief assignment. Absent hypotheses carry 0 + 0i. The map is
/// ordered by subset index, so every sum over focal elements runs in ascending
/// canonical order.
class Cbba {
public:
    using MassMap = std::map<Hypothesis, Complex>;

    explicit Cbba(Frame frame) : frame_(std::move(frame)) {}
    Cbba(Frame frame, MassMap masses);

    const Frame& frame() const { return frame_; }
    const MassMap& masses() const { return masses_; }

    Complex mass(Hypothesis h) const;
    /// Overwrites the mass of h. Throws UnknownLabel if h lies outside the frame.
    void set(Hypothesis h, Complex m);

    Complex total() const;
    bool real_valued() const;

    /// All mass on the full frame.
    static Cbba vacuous(Frame frame);

private:
    Frame frame_;
    MassMap masses_;
};

struct Violation {
    enum class Kind { EmptySetMass, SumNotOne, MagnitudeOutOfRange, NonFinite };
    Kind kind;
    Hypothesis focal;  // empty for whole-CBBA violations
    std::string message;
};

struct Validation {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks the three CBBA conditions: m(empty) = 0, masses sum to 1 + 0i, and
/// x^2 + y^2 in [0, 1] for every mass. Violations are returned, never thrown.
Validation validate_cbba(const Cbba& m, double tolerance = kDefaultSumTolerance);

struct ConflictReport {
    Complex k;
    double k_abs = 0.0;
};

/// K = sum of m1(B) m2(C) over B, C with empty intersection.
ConflictReport conflict(const Cbba& m1, const Cbba& m2);

struct Combination {
    Cbba fused;
    ConflictReport conflict;
    /// Fused masses outside the unit disc. The rule does not guarantee closure,
    /// so these are reported rather than rejected.
    std::vector<Violation> warnings;
};

/// Generalized orthogonal sum. Throws FrameMismatch, or TotalConflict when
/// |1 - K| <= kSingularTolerance.
Combination combine_detailed(const Cbba& m1, const Cbba& m2);
Cbba combine(const Cbba& m1, const Cbba& m2);

/// Classical real-valued Dempster rule. Throws NotRealValued if any imaginary
/// part is nonzero, TotalConflict when 1 - K <= kSingularTolerance.
Combination combine_classical(const Cbba& m1, const Cbba& m2);

/// |sum of m(B) over B subset of a|. Throws EmptyHypothesis.
double belief(const Cbba& m, Hypothesis a);

/// |sum of m(B) over B intersecting a|. Throws EmptyHypothesis.
double plausibility(const Cbba& m, Hypothesis a);

/// 1 - Bel(complement of a). Coincides with plausibility() only for real
/// masses; for complex masses |1 - z| and 1 - |z| differ in general.
double plausibility_complement(const Cbba& m, Hypothesis a);

/// Bet(e) = sum over focal A containing e of m(A) / |A|, for each singleton e
/// in frame order.
std::vector<Complex> pignistic(const Cbba& m);

struct SurfacePoint {
    double x;
    double y;
    double k_abs;
};

/// |K| between m1 = {A: x+yi, B: 1-x-yi} and m2 = {A: 0.5+0.5i, B: 0.5-0.5i}
/// at every grid point of [-1, 1]^2 where both masses of m1 lie in the unit
/// disc. Grid coordinates are -1 + i * step. Throws BadGridStep unless
/// 0 < step <= 0.5.
std::vector<SurfacePoint> conflict_surface(double grid_step);

}  // namespace qev
