#include "disk_squeeze/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace disk_squeeze {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ExtendedComplex& z) { return z.is_finite() ? to_json(z.value()) : Json(nullptr); }

Json to_json(const GeneralizedCircle& c) {
    if (c.is_circle()) {
        const auto& [center, radius] = c.as_circle();
        return {{"kind", "circle"}, {"center", to_json(center)}, {"radius", radius}};
    }
    const auto& [point, direction] = c.as_line();
    return {{"kind", "line"}, {"point", to_json(point)}, {"direction", to_json(direction)}};
}

Json to_json(const FixedPoints& f) { return {{"minus", to_json(f.minus)}, {"plus", to_json(f.plus)}}; }

Json to_json(const control::ArcEdge& e) {
    return {{"carrier", to_json(e.carrier)}, {"from", to_json(e.from)}, {"to", to_json(e.to)}, {"ccw", e.ccw}};
}

Json to_json(const control::ArcPolygon& p) {
    Json vertices = Json::array();
    for (const Complex v : p.vertices()) vertices.push_back(to_json(v));
    Json edges = Json::array();
    for (const auto& e : p.edges()) edges.push_back(to_json(e));
    return {{"vertices", vertices}, {"edges", edges}};
}

Json to_json(const control::ReachableSet& s) {
    if (std::holds_alternative<control::EntireDisk>(s)) return {{"result", "entire_disk"}};
    return {{"result", "arc_polygon"}, {"polygon", to_json(std::get<control::ArcPolygon>(s))}};
}

Json to_json(const control::PulseSequence& seq) {
    Json steps = Json::array();
    for (const auto& s : seq.steps()) steps.push_back({{"hamiltonian", s.hamiltonian}, {"duration", s.duration}});
    return steps;
}

Json to_json(const control::ReachabilityBounds& b) {
    return {{"max_radius", b.max_radius}, {"min_radius", b.min_radius}};
}

Json to_json(const control::AdiabaticPath& path) {
    Json samples = Json::array();
    for (const auto& s : path.samples) samples.push_back({{"t", s.t}, {"xi_minus", to_json(s.xi.value())}});
    return {{"samples", samples}, {"carrier", to_json(path.carrier)}};
}

Json to_json(const fock::FockVector& v) {
    Json amps = Json::array();
    for (std::size_t n = 0; n < v.dim(); ++n) amps.push_back(to_json(v[n]));
    return {{"dim", v.dim()}, {"amplitudes", amps}};
}

namespace {

void write_number(std::string& out, double x) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

void newline(std::string& out, int indent, int depth) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void write(std::string& out, const Json& j, int indent, int depth) {
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                out += Json(key).dump();
                out += indent < 0 ? ":" : ": ";
                write(out, value, indent, depth + 1);
            }
            newline(out, indent, depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                write(out, value, indent, depth + 1);
            }
            newline(out, indent, depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            write_number(out, j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_deterministic(const Json& j, int indent) {
    std::string out;
    write(out, j, indent, 0);
    return out;
}

}  // namespace disk_squeeze
