#include "qev/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qev::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(Errc::Parse, e.what());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("field '") + key + "': " + e.what());
    }
}

double number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw Error(Errc::Parse, std::string("field '") + key + "' must be a number");
    }
    const double v = j.at(key).get<double>();
    if (!std::isfinite(v)) throw Error(Errc::Parse, std::string("field '") + key + "' is not finite");
    return v;
}

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

}  // namespace

CbbaDocument parse_cbba_document(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw Error(Errc::Parse, "CBBA document must be a JSON object");
    CbbaDocument doc;
    doc.frame = field<std::vector<std::string>>(j, "frame");
    if (j.contains("tolerance")) {
        doc.tolerance = number(j, "tolerance");
        if (!(doc.tolerance >= 0.0)) throw Error(Errc::Parse, "tolerance must be non-negative");
    }
    const json masses = field<json>(j, "masses");
    if (!masses.is_array()) throw Error(Errc::Parse, "'masses' must be an array");

    const std::set<std::string> labels(doc.frame.begin(), doc.frame.end());
    std::set<std::set<std::string>> seen;
    for (const auto& rec : masses) {
        MassRecord m;
        m.focal = field<std::vector<std::string>>(rec, "focal");
        if (m.focal.empty()) throw Error(Errc::Parse, "focal list must be non-empty");
        for (const auto& l : m.focal) {
            if (!labels.count(l)) throw Error(Errc::Parse, "focal label '" + l + "' is not in the frame");
        }
        if (!seen.insert({m.focal.begin(), m.focal.end()}).second) {
            throw Error(Errc::Parse, "focal set listed twice");
        }
        m.re = number(rec, "re");
        m.im = number(rec, "im");
        doc.masses.push_back(std::move(m));
    }
    return doc;
}

std::string serialize(const CbbaDocument& doc) {
    json masses = json::array();
    for (const auto& m : doc.masses) masses.push_back({{"focal", m.focal}, {"re", m.re}, {"im", m.im}});
    json j = {{"frame", doc.frame}, {"tolerance", doc.tolerance}, {"masses", masses}};
    return j.dump(2) + "\n";
}

Cbba to_cbba(const CbbaDocument& doc) {
    try {
        Cbba m{Frame(doc.frame)};
        for (const auto& rec : doc.masses) m.set(m.frame().hypothesis(rec.focal), Complex::checked(rec.re, rec.im));
        return m;
    } catch (const Error& e) {
        throw Error(Errc::Parse, e.what());
    }
}

CbbaDocument to_document(const Cbba& m, double tolerance) {
    CbbaDocument doc{m.frame().labels(), tolerance, {}};
    for (const auto& [h, z] : m.masses()) {
        if (h.empty()) continue;
        doc.masses.push_back({m.frame().labels_of(h), z.re, z.im});
    }
    return doc;
}

Cbba load_cbba(const std::filesystem::path& path) {
    const CbbaDocument doc = parse_cbba_document(read_file(path));
    Cbba m = to_cbba(doc);
    const Validation v = validate_cbba(m, doc.tolerance);
    if (!v.ok()) {
        std::string msg = path.string() + ":";
        for (const auto& viol : v.violations) msg += " " + viol.message + ";";
        throw Error(Errc::Validation, msg);
    }
    return m;
}

ObservedDataset parse_dataset_document(std::string_view text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw Error(Errc::Parse, "dataset document must be a JSON object");
    ObservedDataset ds;
    ds.name = field<std::string>(j, "name");
    ds.p_g = number(j, "p_g");
    ds.p_a_given_g = number(j, "p_a_given_g");
    ds.p_b = number(j, "p_b");
    ds.p_a_given_b = number(j, "p_a_given_b");
    ds.p_t = number(j, "p_t");
    ds.p_a = number(j, "p_a");
    return ds;
}

std::string serialize(const ObservedDataset& ds) {
    json j = {{"name", ds.name}, {"p_g", ds.p_g}, {"p_a_given_g", ds.p_a_given_g}, {"p_b", ds.p_b},
              {"p_a_given_b", ds.p_a_given_b}, {"p_t", ds.p_t}, {"p_a", ds.p_a}};
    return j.dump(2) + "\n";
}

ObservedDataset load_dataset(const std::filesystem::path& path) {
    ObservedDataset ds = parse_dataset_document(read_file(path));
    const auto v = ds.violations();
    if (!v.empty()) throw Error(Errc::Validation, path.string() + ": " + v.front());
    return ds;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error(Errc::Io, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(Errc::Io, "cannot replace " + path.string());
    }
}

std::string fixed(double v, int digits) {
    if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
    char buf[128];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    if (ec != std::errc{}) return shortest(v);
    return std::string(buf, end);
}

std::string fixed(Complex z, int digits) {
    const std::string im = fixed(z.im, digits);
    if (im.front() == '-') return fixed(z.re, digits) + " - " + im.substr(1) + "i";
    return fixed(z.re, digits) + " + " + im + "i";
}

std::string surface_csv(const std::vector<SurfacePoint>& points) {
    std::string out = "x,y,k_abs\n";
    for (const auto& p : points) out += fixed(p.x, 6) + "," + fixed(p.y, 6) + "," + fixed(p.k_abs, 6) + "\n";
    return out;
}

std::string rows_csv(const std::vector<ReportRow>& rows) {
    std::string out = "dataset,method,p_g,p_a_given_g,p_b,p_a_given_b,p_t,p_a\n";
    for (const auto& r : rows) {
        out += r.dataset + "," + r.method;
        for (double v : {r.p_g, r.p_a_given_g, r.p_b, r.p_a_given_b, r.p_t, r.p_a}) out += "," + fixed(v, 4);
        out += "\n";
    }
    return out;
}

std::string rows_table(const std::vector<ReportRow>& rows) {
    std::size_t wd = 7;
    std::size_t wm = 6;
    for (const auto& r : rows) {
        wd = std::max(wd, r.dataset.size());
        wm = std::max(wm, r.method.size());
    }
    auto left = [](std::string s, std::size_t w) {
        s.resize(std::max(s.size(), w), ' ');
        return s;
    };
    std::string out = left("dataset", wd) + "  " + left("method", wm);
    for (const char* h : {"P(G)", "P(A|G)", "P(B)", "P(A|B)", "P_T", "P(A)"}) out += "  " + pad(h, 7);
    out += "\n";
    for (const auto& r : rows) {
        out += left(r.dataset, wd) + "  " + left(r.method, wm);
        for (double v : {r.p_g, r.p_a_given_g, r.p_b, r.p_a_given_b, r.p_t, r.p_a}) out += "  " + pad(fixed(v, 4), 7);
        out += "\n";
    }
    return out;
}

namespace {

std::vector<ReportRow> flatten(const Report& report) {
    std::vector<ReportRow> rows;
    for (const auto& d : report.datasets) {
        rows.push_back(d.observed_row);
        rows.push_back(d.fitted_row);
        for (const auto& r : report.references) {
            if (r.dataset == d.observed.name) rows.push_back(r);
        }
    }
    rows.push_back(report.observed_average);
    rows.push_back(report.fitted_average);
    return rows;
}

}  // namespace

std::string report_table(const Report& report) {
    std::string out = rows_table(flatten(report));
    out += "\n";
    for (const auto& d : report.datasets) {
        out += d.observed.name + ": sse(c-then-d) = " + shortest(d.ctd.sse) + ", sse(d-alone) = " +
               shortest(d.alone.sse) + ", interference P(A) - P_T = " + fixed(d.interference, 4) +
               " (observed " + fixed(d.observed_row.p_a - d.observed_row.p_t, 4) + ")\n";
    }
    return out;
}

std::string report_csv(const Report& report) { return rows_csv(flatten(report)); }

}  // namespace qev::io
