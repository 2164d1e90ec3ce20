#include "disk_squeeze/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace disk_squeeze::cli {

namespace {

constexpr double kSize = 1000.0;
constexpr double kScale = 450.0;
constexpr double kPi = std::numbers::pi;

Complex point(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    return s == "-0.000" ? "0.000" : s;
}

std::string xy(Complex z) { return num(kSize / 2 + kScale * z.real()) + "," + num(kSize / 2 - kScale * z.imag()); }

double wrap(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    return w < 0.0 ? w + 2.0 * kPi : w;
}

// Chord of a line carrier inside the unit disk, or nothing when it misses.
std::optional<std::pair<Complex, Complex>> clip_line(Complex p, Complex d) {
    const double b = (std::conj(d) * p).real();
    const double disc = b * b - (std::norm(p) - 1.0);
    if (disc <= 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    return std::make_pair(p + (-b - s) * d, p + (-b + s) * d);
}

std::string stroke_carrier(const Json& c, const char* colour) {
    if (c.at("kind") == "circle") {
        const Complex center = point(c.at("center"));
        return "<circle cx=\"" + num(kSize / 2 + kScale * center.real()) + "\" cy=\"" +
               num(kSize / 2 - kScale * center.imag()) + "\" r=\"" + num(kScale * c.at("radius").get<double>()) +
               "\" fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"2\" clip-path=\"url(#disk)\"/>\n";
    }
    const auto chord = clip_line(point(c.at("point")), point(c.at("direction")));
    if (!chord) return "";
    return "<path d=\"M" + xy(chord->first) + " L" + xy(chord->second) + "\" fill=\"none\" stroke=\"" + colour +
           "\" stroke-width=\"2\"/>\n";
}

std::string polyline(const Json& samples, const char* key) {
    std::string pts;
    for (const auto& s : samples) pts += (pts.empty() ? "" : " ") + xy(point(s.at(key)));
    return "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\"/>\n";
}

std::string dot(Complex z, const char* colour) {
    return "<circle cx=\"" + num(kSize / 2 + kScale * z.real()) + "\" cy=\"" + num(kSize / 2 - kScale * z.imag()) +
           "\" r=\"6\" fill=\"" + colour + "\"/>\n";
}

std::string region(const Json& reachable) {
    const char* fill = "fill=\"#1f77b4\" fill-opacity=\"0.4\" stroke=\"#1f77b4\" stroke-width=\"2\"";
    if (reachable.at("result") == "entire_disk") {
        return "<circle cx=\"500\" cy=\"500\" r=\"450\" " + std::string(fill) + "/>\n";
    }
    const Json& edges = reachable.at("polygon").at("edges");
    if (edges.empty()) return "";
    std::string d = "M" + xy(point(edges.at(0).at("from")));
    for (const auto& e : edges) {
        const Complex from = point(e.at("from"));
        const Complex to = point(e.at("to"));
        const Json& c = e.at("carrier");
        if (c.at("kind") == "line") {
            d += " L" + xy(to);
            continue;
        }
        const Complex center = point(c.at("center"));
        const double r = c.at("radius").get<double>();
        const bool ccw = e.at("ccw").get<bool>();
        const double a = std::arg(from - center), b = std::arg(to - center);
        const double sweep = ccw ? wrap(b - a) : wrap(a - b);
        // Screen y points down, so a counterclockwise arc is drawn with sweep-flag 1.
        d += " A" + num(kScale * r) + "," + num(kScale * r) + " 0 " + (sweep > kPi ? "1" : "0") + "," +
             (ccw ? "1" : "0") + " " + xy(to);
    }
    return "<path d=\"" + d + " Z\" " + fill + "/>\n";
}

}  // namespace

std::string render_svg(const Json& report) {
    std::string json = dump_deterministic(report);
    // "--" may only appear inside JSON strings, where an escape keeps it valid.
    for (std::size_t pos = 0; (pos = json.find("--", pos)) != std::string::npos;) json.replace(pos, 2, "-\\u002d");

    std::string body;
    const std::string command = report.value("command", "");
    if (command == "trajectory") {
        body += stroke_carrier(report.at("carrier"), "#7f7f7f");
        body += polyline(report.at("samples"), "z");
        for (const char* which : {"minus", "plus"}) {
            const Json& f = report.at("fixed_points").at(which);
            if (!f.is_null() && std::abs(point(f)) <= 1.0 + 1e-9) body += dot(point(f), "#2ca02c");
        }
    } else if (command == "reachable") {
        body += region(report.at("reachable"));
        body += dot(point(report.at("inputs").at("z0")), "#d62728");
    } else if (command == "adiabatic") {
        body += stroke_carrier(report.at("path").at("carrier"), "#7f7f7f");
        body += polyline(report.at("path").at("samples"), "xi_minus");
    }

    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<!-- disk-squeeze " +
           json +
           " -->\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
           "<defs><clipPath id=\"disk\"><circle cx=\"500\" cy=\"500\" r=\"450\"/></clipPath></defs>\n"
           "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n"
           "<circle cx=\"500\" cy=\"500\" r=\"450\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n" +
           body + "</svg>\n";
}

}  // namespace disk_squeeze::cli
