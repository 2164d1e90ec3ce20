#include "disk_squeeze/cli.hpp"

#include "disk_squeeze/control.hpp"
#include "disk_squeeze/dynamics.hpp"
#include "disk_squeeze/error.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

namespace disk_squeeze::cli {

namespace {

const char* kComplexHelp =
    "Complex literals are written a+bi, a-bi, a or bi with decimal reals and no spaces, "
    "e.g. 1+0i, -0.5-2i, 0.3, 2i. Use --flag=value when the literal starts with '-'.";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Infeasible : public std::runtime_error {
public:
    Infeasible(const std::string& what, Json report) : std::runtime_error(what), report(std::move(report)) {}
    Json report;
};

Complex complex_flag(const std::string& text, const char* flag) {
    const auto z = parse_complex(text);
    if (!z) throw UsageError(std::string("malformed complex literal for ") + flag + ": '" + text + "'");
    return *z;
}

Json report_header(const char* command) { return {{"schema", kSchema}, {"command", command}}; }

struct Output {
    std::string path;
    std::string format = "json";
};

void add_output(CLI::App* sub, Output& o, bool svg) {
    sub->add_option("--out", o.path, "Write the report here instead of stdout");
    if (svg) {
        sub->add_option("--format", o.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
    }
}

// Options shared by the Hamiltonian-taking commands.
struct HamiltonianFlags {
    double omega = 0.0;
    std::string alpha = "0";
};

QuadraticHamiltonian hamiltonian(const HamiltonianFlags& f, const char* flag) {
    return {f.omega, complex_flag(f.alpha, flag)};
}

Json hamiltonian_json(const QuadraticHamiltonian& h) { return {{"omega", h.omega()}, {"alpha", to_json(h.alpha())}}; }

Json classify_report(const HamiltonianFlags& f) {
    const QuadraticHamiltonian h = hamiltonian(f, "--alpha");
    if (h.is_zero()) throw DomainError("classify: zero Hamiltonian has no spectral class");
    const SpectralClass sc = classify(h);
    const FixedPoints fp = fixed_points_of(h);
    Json r = report_header("classify");
    r["inputs"] = hamiltonian_json(h);
    r["class"] = to_string(sc.regime);
    if (sc.regime == Regime::Stable) r["lambda"] = sc.rate;
    if (sc.regime == Regime::Unstable) r["gamma"] = sc.rate;
    r["xi_minus"] = to_json(fp.minus);
    r["xi_plus"] = to_json(fp.plus);
    r["spectrum"] = sc.spectrum(h);
    if (const auto p = period(h)) r["period"] = *p;
    r["tolerances"] = {{"free_relative", 1e-12}, {"geometry", kGeometryTolerance}};
    return r;
}

struct TrajectoryFlags {
    HamiltonianFlags h;
    std::string z0 = "0";
    double t_max = 1.0;
    std::size_t samples = 101;
};

Json trajectory_report(const TrajectoryFlags& f) {
    const QuadraticHamiltonian h = hamiltonian(f.h, "--alpha");
    const DiskPoint z0(complex_flag(f.z0, "--z0"));
    if (!std::isfinite(f.t_max)) throw DomainError("trajectory: --t-max must be finite");
    const InvariantCurve curve = trajectory_curve(h, z0);
    const std::size_t n = f.t_max == 0.0 ? 1 : std::max<std::size_t>(f.samples, 2);
    Json samples = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : f.t_max * static_cast<double>(k) / static_cast<double>(n - 1);
        samples.push_back({{"t", t}, {"z", to_json(evolve(h, z0, t).value())}});
    }
    Json carrier = to_json(curve.carrier);
    carrier["class"] = to_string(curve.curve_class);

    Json r = report_header("trajectory");
    Json inputs = hamiltonian_json(h);
    inputs["z0"] = to_json(z0.value());
    inputs["t_max"] = f.t_max;
    inputs["samples"] = n;
    r["inputs"] = inputs;
    r["regime"] = to_string(classify(h).regime);
    r["fixed_points"] = to_json(fixed_points_of(h));
    r["carrier"] = carrier;
    r["samples"] = samples;
    r["tolerances"] = {{"geometry", kGeometryTolerance}};
    return r;
}

struct BangBangFlags {
    std::string z0 = "0";
    std::string zf = "0";
    double omega0 = 1.0;
    double omega1 = 0.0;
    std::string alpha1 = "0";
    std::string mode = "min-switches";
    std::optional<std::size_t> k;
    double endpoint_tolerance = 1e-6;
};

Json bangbang_report(const BangBangFlags& f) {
    const DiskPoint z0(complex_flag(f.z0, "--z0"));
    const DiskPoint zf(complex_flag(f.zf, "--zf"));
    const QuadraticHamiltonian h0(f.omega0, 0.0);
    const QuadraticHamiltonian h1(f.omega1, complex_flag(f.alpha1, "--alpha1"));
    if (classify(h1).regime != Regime::Stable || h1.is_zero()) {
        throw DomainError("bangbang: H1 must be stable (omega1 > |alpha1|)");
    }
    const double xi = std::abs(fixed_points_of(h1).minus.value());

    Json r = report_header("bangbang");
    r["inputs"] = {{"z0", to_json(z0.value())}, {"zf", to_json(zf.value())},   {"omega0", f.omega0},
                   {"omega1", f.omega1},        {"alpha1", to_json(h1.alpha())}, {"mode", f.mode}};
    if (f.k) r["inputs"]["k"] = *f.k;
    r["xi_modulus"] = xi;
    r["tolerances"] = {{"feasibility", control::kFeasibilityTolerance}, {"endpoint", f.endpoint_tolerance}};

    if (f.mode == "min-switches") {
        r["k"] = control::min_switches(z0, zf, h1);
        return r;
    }
    const std::size_t k = f.k ? *f.k : control::min_switches(z0, zf, h1);
    r["k"] = k;
    const control::ReachabilityBounds bounds = control::bang_bang_bounds(z0.modulus(), xi, k);
    r["bounds"] = {{"max_radius", bounds.R(k)}, {"min_radius", bounds.r(k)}};
    const bool feasible = control::bang_bang_feasible(z0, zf, k, h1);
    r["feasible"] = feasible;
    if (f.mode == "feasible") return r;

    if (!feasible) {
        throw Infeasible("bangbang: infeasible, |zf| = " + dump_deterministic(Json(zf.modulus())) +
                             " outside [r, R] = [" + dump_deterministic(Json(bounds.r(k))) + ", " +
                             dump_deterministic(Json(bounds.R(k))) + "] for k = " + std::to_string(k),
                         r);
    }
    const control::PulseSequence seq = control::synthesize_pulses(z0, zf, k, h0, h1);
    const DiskPoint end = control::simulate(seq, h0, h1, z0);
    const double error = std::abs(end.value() - zf.value());
    r["pulses"] = to_json(seq);
    r["total_time"] = seq.total_time();
    r["endpoint"] = to_json(end.value());
    r["endpoint_error"] = error;
    r["pass"] = error <= f.endpoint_tolerance;
    return r;
}

struct ReachableFlags {
    std::string regime;
    std::string z0 = "0";
    HamiltonianFlags h0;
    HamiltonianFlags h1;
    int steps = 2;
};

Json reachable_report(const ReachableFlags& f) {
    const DiskPoint z0(complex_flag(f.z0, "--z0"));
    const QuadraticHamiltonian h0 = hamiltonian(f.h0, "--alpha0");
    const QuadraticHamiltonian h1 = hamiltonian(f.h1, "--alpha1");
    control::ReachableSet set = control::EntireDisk{};
    if (f.regime == "free") {
        set = control::free_reachable_set(z0, h0, h1, f.steps);
    } else {
        if (f.steps != 2) throw UsageError("reachable: the unstable case takes --steps 2");
        set = control::unstable_reachable_set(z0, h0, h1);
    }
    Json r = report_header("reachable");
    r["inputs"] = {{"case", f.regime},
                   {"z0", to_json(z0.value())},
                   {"h0", hamiltonian_json(h0)},
                   {"h1", hamiltonian_json(h1)},
                   {"steps", f.steps}};
    r["fixed_points"] = {{"h0", to_json(fixed_points_of(h0))}, {"h1", to_json(fixed_points_of(h1))}};
    r["reachable"] = to_json(set);
    if (const auto* poly = std::get_if<control::ArcPolygon>(&set)) {
        r["area"] = std::abs(poly->signed_area());
        r["interior_angles"] = poly->interior_angles();
    }
    r["tolerances"] = {{"geometry", kGeometryTolerance}};
    return r;
}

struct AdiabaticFlags {
    double omega = 0.0;
    std::string alpha0 = "0";
    std::string alpha1 = "0";
    std::size_t samples = 101;
};

Json adiabatic_report(const AdiabaticFlags& f) {
    const Complex a0 = complex_flag(f.alpha0, "--alpha0");
    const Complex a1 = complex_flag(f.alpha1, "--alpha1");
    const control::AdiabaticPath path = control::adiabatic_path(f.omega, a0, a1, f.samples);
    Json r = report_header("adiabatic");
    r["inputs"] = {{"omega", f.omega}, {"alpha0", to_json(a0)}, {"alpha1", to_json(a1)}, {"samples", f.samples}};
    r["path"] = to_json(path);
    r["carrier_residual"] = path.carrier_residual();
    r["orthogonality_residual"] = path.orthogonality_residual();
    r["single_point"] = a0 == a1;
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"disk-squeeze: single-mode squeezed states as points of the Poincare disk"};
    app.name("disk-squeeze");
    app.require_subcommand(1);
    app.footer(kComplexHelp);

    Output output;
    std::function<Json()> produce;

    HamiltonianFlags classify_flags;
    auto* c = app.add_subcommand("classify", "Spectral class and fixed points of H = omega a*a + (alpha a^2 + h.c.)/2");
    c->add_option("--omega", classify_flags.omega, "Oscillator frequency (>= 0)")->required();
    c->add_option("--alpha", classify_flags.alpha, "Squeezing coefficient (complex)")->required();
    add_output(c, output, false);
    c->callback([&] { produce = [&] { return classify_report(classify_flags); }; });

    TrajectoryFlags traj;
    auto* t = app.add_subcommand("trajectory", "Sampled motion z(t) and its invariant curve");
    t->add_option("--omega", traj.h.omega)->required();
    t->add_option("--alpha", traj.h.alpha)->required();
    t->add_option("--z0", traj.z0, "Initial point in the disk")->capture_default_str();
    t->add_option("--t-max", traj.t_max, "Final time")->capture_default_str();
    t->add_option("--samples", traj.samples, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    add_output(t, output, true);
    t->callback([&] { produce = [&] { return trajectory_report(traj); }; });

    BangBangFlags bb;
    auto* b = app.add_subcommand("bangbang", "Bang-bang control between H0 = omega0 a*a and a stable H1");
    b->add_option("--z0", bb.z0)->capture_default_str();
    b->add_option("--zf", bb.zf)->required();
    b->add_option("--omega0", bb.omega0)->capture_default_str()->check(CLI::PositiveNumber);
    b->add_option("--omega1", bb.omega1)->required();
    b->add_option("--alpha1", bb.alpha1)->required();
    b->add_option("--mode", bb.mode)->capture_default_str()->check(CLI::IsMember({"feasible", "min-switches", "synthesize"}));
    b->add_option("--k", bb.k, "Number of H1 pulses (default: the minimum)");
    b->add_option("--endpoint-tolerance", bb.endpoint_tolerance)->capture_default_str();
    add_output(b, output, false);
    b->callback([&] { produce = [&] { return bangbang_report(bb); }; });

    ReachableFlags reach;
    auto* r = app.add_subcommand("reachable", "States reachable with H0, H1 pulses (free or unstable pairs)");
    r->add_option("--case", reach.regime)->required()->check(CLI::IsMember({"free", "unstable"}));
    r->add_option("--z0", reach.z0)->capture_default_str();
    r->add_option("--omega0", reach.h0.omega)->required();
    r->add_option("--alpha0", reach.h0.alpha)->required();
    r->add_option("--omega1", reach.h1.omega)->required();
    r->add_option("--alpha1", reach.h1.alpha)->required();
    r->add_option("--steps", reach.steps, "Pulses: 1, 2 or 3 (free); 2 (unstable)")->capture_default_str();
    add_output(r, output, true);
    r->callback([&] { produce = [&] { return reachable_report(reach); }; });

    AdiabaticFlags ad;
    auto* a = app.add_subcommand("adiabatic", "Ground-state point along alpha(t) = (1 - t) alpha0 + t alpha1");
    a->add_option("--omega", ad.omega)->required();
    a->add_option("--alpha0", ad.alpha0)->required();
    a->add_option("--alpha1", ad.alpha1)->required();
    a->add_option("--samples", ad.samples)->capture_default_str()->check(CLI::PositiveNumber);
    add_output(a, output, true);
    a->callback([&] { produce = [&] { return adiabatic_report(ad); }; });

    VerifyOptions vo;
    vo.seed = default_seed();
    auto* v = app.add_subcommand("verify", "Cross-check the disk picture against the number-basis oracle");
    v->add_option("--suite", vo.suite)->capture_default_str()->check(CLI::IsMember({"overlap", "flow", "metric", "control", "all"}));
    v->add_option("--dim", vo.dim, "Number-basis truncation N")->capture_default_str()->check(CLI::Range(4, 4096));
    v->add_option("--seed", vo.seed, "RNG seed (default: DISK_SQUEEZE_SEED or 1)")->capture_default_str();
    v->add_option("--pairs", vo.pairs)->capture_default_str();
    v->add_option("--sequences", vo.sequences)->capture_default_str();
    v->add_option("--targets", vo.targets)->capture_default_str();
    v->add_option("--overlap-tol", vo.tol.overlap)->capture_default_str();
    v->add_option("--hs-tol", vo.tol.hs)->capture_default_str();
    v->add_option("--hs-closed-form-tol", vo.tol.hs_closed_form)->capture_default_str();
    v->add_option("--flow-tol", vo.tol.flow)->capture_default_str();
    v->add_option("--group-law-tol", vo.tol.group_law)->capture_default_str();
    v->add_option("--metric-min", vo.tol.metric_min)->capture_default_str();
    v->add_option("--metric-max", vo.tol.metric_max)->capture_default_str();
    v->add_option("--isometry-tol", vo.tol.isometry)->capture_default_str();
    v->add_option("--bounds-tol", vo.tol.bounds)->capture_default_str();
    v->add_option("--synthesis-tol", vo.tol.synthesis)->capture_default_str();
    v->add_option("--closed-form-tol", vo.tol.closed_form)->capture_default_str();
    v->add_option("--asymptotic-tol", vo.tol.asymptotic)->capture_default_str();
    v->add_option("--adiabatic-tol", vo.tol.adiabatic)->capture_default_str();
    add_output(v, output, false);
    v->callback([&] {
        produce = [&] {
            Json rep = report_header("verify");
            rep.update(run_verify(vo));
            return rep;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    Json report;
    int code = kSuccess;
    try {
        report = produce();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Infeasible& e) {
        err << "error: " << e.what() << '\n';
        report = e.report;
        code = kCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    if (report.contains("pass") && !report["pass"].get<bool>()) code = kCheckFailed;

    const std::string text = output.format == "svg" ? render_svg(report) : dump_deterministic(report, 2) + "\n";
    if (output.path.empty()) {
        out << text;
    } else {
        std::ofstream file(output.path, std::ios::binary);
        file << text;
        if (!file) {
            err << "error: cannot write " << output.path << '\n';
            return kUsageError;
        }
    }
    return code;
}

}  // namespace disk_squeeze::cli
