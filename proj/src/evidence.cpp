#include "qev/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qev {

namespace {

// Grid points sit on decimal steps that are not exact in binary, so the unit
// disc test gets a little slack.
constexpr double kSurfaceSlack = 1e-12;

void require_same_frame(const Cbba& m1, const Cbba& m2) {
    if (!(m1.frame() == m2.frame())) {
        throw Error(Errc::FrameMismatch, "CBBAs are defined over different frames");
    }
}

void require_nonempty(Hypothesis a) {
    if (a.empty()) throw Error(Errc::EmptyHypothesis, "hypothesis must be non-empty");
}

std::vector<Violation> magnitude_violations(const Cbba& m, double tolerance) {
    std::vector<Violation> out;
    for (const auto& [h, z] : m.masses()) {
        const double mag2 = c_abs_sq(z);
        if (mag2 > 1.0 + tolerance) {
            out.push_back({Violation::Kind::MagnitudeOutOfRange, h,
                           "|m(" + m.frame().name(h) + ")|^2 = " + std::to_string(mag2) + " exceeds 1"});
        }
    }
    return out;
}

}  // namespace

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw Error(Errc::BadFrame, "frame must have at least one element");
    if (labels_.size() > kMaxFrameSize) {
        throw Error(Errc::BadFrame, "frame size " + std::to_string(labels_.size()) + " exceeds 20");
    }
    std::set<std::string_view> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw Error(Errc::BadFrame, "frame labels must be non-empty");
        if (!seen.insert(l).second) throw Error(Errc::BadFrame, "duplicate frame label '" + l + "'");
    }
}

std::size_t Frame::position(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw Error(Errc::UnknownLabel, "label '" + std::string(label) + "' is not in the frame");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

Hypothesis Frame::hypothesis(const std::vector<std::string>& labels) const {
    Hypothesis h;
    for (const auto& l : labels) h = h | Hypothesis::singleton(position(l));
    return h;
}

Hypothesis Frame::hypothesis(std::initializer_list<std::string_view> labels) const {
    Hypothesis h;
    for (auto l : labels) h = h | Hypothesis::singleton(position(l));
    return h;
}

std::vector<std::string> Frame::labels_of(Hypothesis h) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (h.contains(i)) out.push_back(labels_[i]);
    }
    return out;
}

std::string Frame::name(Hypothesis h) const {
    if (h.empty()) return "{}";
    std::string out;
    for (const auto& l : labels_of(h)) {
        if (!out.empty()) out += ',';
        out += l;
    }
    return out;
}

Cbba::Cbba(Frame frame, MassMap masses) : frame_(std::move(frame)) {
    for (const auto& [h, z] : masses) set(h, z);
}

Complex Cbba::mass(Hypothesis h) const {
    auto it = masses_.find(h);
    return it == masses_.end() ? Complex{} : it->second;
}

void Cbba::set(Hypothesis h, Complex m) {
    if (!frame_.owns(h)) throw Error(Errc::UnknownLabel, "hypothesis lies outside the frame");
    masses_[h] = m;
}

Complex Cbba::total() const {
    Complex s;
    for (const auto& [h, z] : masses_) s += z;
    return s;
}

bool Cbba::real_valued() const {
    return std::all_of(masses_.begin(), masses_.end(), [](const auto& kv) { return kv.second.im == 0.0; });
}

Cbba Cbba::vacuous(Frame frame) {
    Cbba m(std::move(frame));
    m.set(m.frame().full(), Complex{1.0, 0.0});
    return m;
}

Validation validate_cbba(const Cbba& m, double tolerance) {
    Validation v;
    for (const auto& [h, z] : m.masses()) {
        if (!z.finite()) {
            v.violations.push_back({Violation::Kind::NonFinite, h, "mass of " + m.frame().name(h) + " is not finite"});
        }
    }
    if (!v.ok()) return v;

    const Complex empty_mass = m.mass(Hypothesis{});
    if (!(empty_mass == Complex{})) {
        v.violations.push_back({Violation::Kind::EmptySetMass, Hypothesis{}, "mass of the empty set must be 0"});
    }
    const Complex sum = m.total();
    if (std::abs(sum.re - 1.0) > tolerance || std::abs(sum.im) > tolerance) {
        v.violations.push_back({Violation::Kind::SumNotOne, Hypothesis{},
                                "masses sum to " + std::to_string(sum.re) + " + " + std::to_string(sum.im) +
                                    "i, expected 1 + 0i"});
    }
    auto mags = magnitude_violations(m, tolerance);
    v.violations.insert(v.violations.end(), mags.begin(), mags.end());
    return v;
}

ConflictReport conflict(const Cbba& m1, const Cbba& m2) {
    require_same_frame(m1, m2);
    Complex k;
    for (const auto& [b, x] : m1.masses()) {
        for (const auto& [c, y] : m2.masses()) {
            if (!b.intersects(c)) k += x * y;
        }
    }
    return {k, c_abs(k)};
}

Combination combine_detailed(const Cbba& m1, const Cbba& m2) {
    require_same_frame(m1, m2);

    Complex k;
    std::map<Hypothesis, Complex> joint;
    for (const auto& [b, x] : m1.masses()) {
        for (const auto& [c, y] : m2.masses()) {
            const Hypothesis a = b & c;
            if (a.empty()) {
                k += x * y;
            } else {
                joint[a] += x * y;
            }
        }
    }

    const Complex norm = Complex{1.0} - k;
    if (!(c_abs(norm) > kSingularTolerance)) {
        throw Error(Errc::TotalConflict, "|1 - K| is within 1e-9 of zero");
    }
    Cbba fused(m1.frame());
    for (const auto& [a, s] : joint) fused.set(a, c_div(s, norm));

    Combination out{std::move(fused), {k, c_abs(k)}, {}};
    out.warnings = magnitude_violations(out.fused, 0.0);
    return out;
}

Cbba combine(const Cbba& m1, const Cbba& m2) { return combine_detailed(m1, m2).fused; }

Combination combine_classical(const Cbba& m1, const Cbba& m2) {
    require_same_frame(m1, m2);
    if (!m1.real_valued() || !m2.real_valued()) {
        throw Error(Errc::NotRealValued, "classical combination needs real masses");
    }

    double k = 0.0;
    std::map<Hypothesis, double> joint;
    for (const auto& [b, x] : m1.masses()) {
        for (const auto& [c, y] : m2.masses()) {
            const Hypothesis a = b & c;
            if (a.empty()) {
                k += x.re * y.re;
            } else {
                joint[a] += x.re * y.re;
            }
        }
    }
    if (!(1.0 - k > kSingularTolerance)) {
        throw Error(Errc::TotalConflict, "classical rule requires K < 1");
    }
    Cbba fused(m1.frame());
    for (const auto& [a, s] : joint) fused.set(a, Complex{s / (1.0 - k)});
    return {std::move(fused), {Complex{k}, std::abs(k)}, {}};
}

double belief(const Cbba& m, Hypothesis a) {
    require_nonempty(a);
    Complex s;
    for (const auto& [b, z] : m.masses()) {
        if (!b.empty() && b.subset_of(a)) s += z;
    }
    return c_abs(s);
}

double plausibility(const Cbba& m, Hypothesis a) {
    require_nonempty(a);
    Complex s;
    for (const auto& [b, z] : m.masses()) {
        if (b.intersects(a)) s += z;
    }
    return c_abs(s);
}

double plausibility_complement(const Cbba& m, Hypothesis a) {
    require_nonempty(a);
    const Hypothesis rest = m.frame().complement(a);
    return rest.empty() ? 1.0 : 1.0 - belief(m, rest);
}

std::vector<Complex> pignistic(const Cbba& m) {
    std::vector<Complex> bet(m.frame().size());
    for (const auto& [a, z] : m.masses()) {
        if (a.empty()) continue;
        const double share = 1.0 / a.cardinality();
        for (std::size_t e = 0; e < bet.size(); ++e) {
            if (a.contains(e)) bet[e] += share * z;
        }
    }
    return bet;
}

std::vector<SurfacePoint> conflict_surface(double grid_step) {
    if (!(grid_step > 0.0 && grid_step <= 0.5)) {
        throw Error(Errc::BadGridStep, "grid step must lie in (0, 0.5]");
    }
    const Frame frame({"A", "B"});
    const Hypothesis a = frame.hypothesis({"A"});
    const Hypothesis b = frame.hypothesis({"B"});
    const Cbba m2(frame, {{a, {0.5, 0.5}}, {b, {0.5, -0.5}}});

    const auto n = static_cast<long>(std::floor(2.0 / grid_step + 1e-9));
    std::vector<SurfacePoint> out;
    for (long i = 0; i <= n; ++i) {
        const double x = -1.0 + static_cast<double>(i) * grid_step;
        for (long j = 0; j <= n; ++j) {
            const double y = -1.0 + static_cast<double>(j) * grid_step;
            const Complex ma{x, y};
            const Complex mb = Complex{1.0} - ma;
            if (c_abs_sq(ma) > 1.0 + kSurfaceSlack || c_abs_sq(mb) > 1.0 + kSurfaceSlack) continue;
            const Cbba m1(frame, {{a, ma}, {b, mb}});
            out.push_back({x, y, conflict(m1, m2).k_abs});
        }
    }
    return out;
}

}  // namespace qev
