#include "rsb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "rsb/momentum.hpp"
#include "rsb/operators.hpp"
#include "rsb/spectrum.hpp"

namespace rsb::cli {

// ---------------------------------------------------------------------------
// Config

double AxisRange::at(int i) const {
    if (count == 1) return lo;
    return (i + 1 == count) ? hi : lo + (hi - lo) * i / (count - 1);
}

void GridSpec::validate() const {
    for (const auto& a : axes) {
        if (a.count < 1) throw UsageError("grid: counts must be >= 1");
        if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) throw UsageError("grid: ranges must be finite");
    }
}

std::size_t GridSpec::size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= std::size_t(a.count);
    return n;
}

std::vector<SpacetimePoint> GridSpec::points() const {
    validate();
    std::vector<SpacetimePoint> pts;
    pts.reserve(size());
    for (int it = 0; it < axes[3].count; ++it)
        for (int iz = 0; iz < axes[2].count; ++iz)
            for (int iy = 0; iy < axes[1].count; ++iy)
                for (int ix = 0; ix < axes[0].count; ++ix)
                    pts.push_back({axes[0].at(ix), axes[1].at(iy), axes[2].at(iz), axes[3].at(it)});
    return pts;
}

double RunConfig::tolerance() const {
    if (tol > 0.0) return tol;
    if (fd_order == 2) return 1e-4;
    return beam == BeamKind::bessel ? 1e-8 : 1e-6;
}

void RunConfig::validate() const {
    if (fd_order != 2 && fd_order != 4) throw UsageError("fd_order must be 2 or 4");
    if (!(fd_step > 0.0) || !std::isfinite(fd_step)) throw UsageError("fd_step must be > 0");
    if (tol < 0.0 || !std::isfinite(tol)) throw UsageError("tol must be > 0");
    if (!(quad_rel_tol > 0.0) || quad_rel_tol >= 1.0) throw UsageError("quad_rel_tol must be in (0, 1)");
    if (verify_points < 1) throw UsageError("verify_points must be >= 1");
    if (count < 2) throw UsageError("count must be >= 2");
    grid.validate();
    try {
        if (beam == BeamKind::bessel)
            bessel.validate();
        else
            lg.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("invalid beam: ") + e.what());
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x))
        throw UsageError("bad number for " + key + ": '" + v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    int x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw UsageError("bad integer for " + key + ": '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError("bad boolean for " + key + ": '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
    return parts;
}

AxisRange parse_axis(const std::string& key, const std::string& v) {
    const auto parts = split(v, ':');
    if (parts.size() == 1) {
        const double x = parse_double(key, parts[0]);
        return {x, x, 1};
    }
    if (parts.size() != 3) throw UsageError(key + " must be a value or lo:hi:count");
    AxisRange a{parse_double(key, parts[0]), parse_double(key, parts[1]), parse_int(key, parts[2])};
    if (a.count < 1) throw UsageError(key + ": count must be >= 1");
    return a;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in), v = trim(value_in);
    if (key == "beam") {
        if (v == "bessel")
            cfg.beam = BeamKind::bessel;
        else if (v == "lg")
            cfg.beam = BeamKind::lg;
        else
            throw UsageError("beam must be bessel or lg");
    } else if (key == "units") {
        if (v != "natural" && v != "si") throw UsageError("units must be natural or si");
        cfg.si = v == "si";
    } else if (key == "k_perp") {
        cfg.bessel.k_perp = parse_double(key, v);
    } else if (key == "k_z") {
        cfg.bessel.k_z = parse_double(key, v);
    } else if (key == "m") {
        cfg.bessel.m = cfg.lg.m = parse_int(key, v);
    } else if (key == "sigma") {
        cfg.bessel.sigma = cfg.lg.sigma = parse_int(key, v);
    } else if (key == "n") {
        cfg.lg.n = parse_int(key, v);
    } else if (key == "omega") {
        cfg.lg.omega = parse_double(key, v);
    } else if (key == "l") {
        cfg.lg.l = parse_double(key, v);
    } else if (key == "fd_order") {
        cfg.fd_order = parse_int(key, v);
    } else if (key == "fd_step") {
        cfg.fd_step = parse_double(key, v);
    } else if (key == "tol") {
        cfg.tol = parse_double(key, v);
        if (!(cfg.tol > 0.0)) throw UsageError("tol must be > 0");
    } else if (key == "quad_rel_tol") {
        cfg.quad_rel_tol = parse_double(key, v);
    } else if (key == "verify_points") {
        cfg.verify_points = parse_int(key, v);
    } else if (key == "basis") {
        if (v == "cartesian")
            cfg.basis = Basis::cartesian;
        else if (v == "cylindrical")
            cfg.basis = Basis::cylindrical;
        else
            throw UsageError("basis must be cartesian or cylindrical");
    } else if (key == "corrupt_fz") {
        cfg.corrupt_fz = parse_bool(key, v);
    } else if (key == "x" || key == "y" || key == "z" || key == "t") {
        const int axis = key == "x" ? 0 : key == "y" ? 1 : key == "z" ? 2 : 3;
        cfg.grid.axes[axis] = parse_axis(key, v);
    } else if (key == "omega_lo") {
        cfg.omega_lo = parse_double(key, v);
    } else if (key == "omega_hi") {
        cfg.omega_hi = parse_double(key, v);
    } else if (key == "count") {
        cfg.count = parse_int(key, v);
    } else if (key == "cases") {
        cfg.cases.clear();
        for (const auto& c : split(v, ',')) {
            const auto nm = split(c, ':');
            if (nm.size() != 2) throw UsageError("cases must look like 0:0,1:1");
            cfg.cases.emplace_back(parse_int(key, nm[0]), parse_int(key, nm[1]));
        }
    } else if (key == "out") {
        cfg.out = v;
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

void load_config(RunConfig& cfg, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Fields

namespace {

ComplexVec3 corrupt(ComplexVec3 F) {
    F[2] = -F[2];
    return F;
}

}  // namespace

RSField configured_field(const RunConfig& cfg, bool analytic_jacobian) {
    const Constants c = cfg.constants();
    RSField f = cfg.beam == BeamKind::bessel ? bessel_field(cfg.bessel, c, analytic_jacobian) : lg_field(cfg.lg, c);
    if (cfg.corrupt_fz) {
        auto value = f.value;
        f.value = [value](const SpacetimePoint& p) { return corrupt(value(p)); };
        if (f.jacobian) {
            auto jac = f.jacobian;
            f.jacobian = [jac](const SpacetimePoint& p) {
                FieldJacobian j = jac(p);
                j.value = corrupt(j.value);
                for (auto& d : j.d) d = corrupt(d);
                return j;
            };
        }
        f.label += " (F_z negated)";
    }
    return f;
}

ScalarWaveField configured_scalar(const RunConfig& cfg, bool analytic_derivatives) {
    const Constants c = cfg.constants();
    return cfg.beam == BeamKind::bessel ? bessel_scalar_field(cfg.bessel, c, analytic_derivatives)
                                        : lg_scalar_field(cfg.lg, c, analytic_derivatives);
}

namespace {

// Closed-form Cartesian field of the configured beam.
ComplexVec3 sample_field(const RunConfig& cfg, const SpacetimePoint& p) {
    const Constants c = cfg.constants();
    const ComplexVec3 F =
        cfg.beam == BeamKind::bessel ? bessel_rs_field(cfg.bessel, p, c) : lg_rs_field(cfg.lg, p, c);
    return cfg.corrupt_fz ? corrupt(F) : F;
}

ComplexVec3 to_cylindrical(const ComplexVec3& F, const SpacetimePoint& p) {
    if (p.x == 0.0 && p.y == 0.0) throw OnAxisBasisError("cylindrical components are undefined on the axis");
    const double phi = std::atan2(p.y, p.x);
    const double cs = std::cos(phi), sn = std::sin(phi);
    return {cs * F[0] + sn * F[1], -sn * F[0] + cs * F[1], F[2]};
}

std::string beam_line(const RunConfig& cfg) {
    std::ostringstream s;
    if (cfg.beam == BeamKind::bessel)
        s << "# beam bessel k_perp=" << format_number(cfg.bessel.k_perp) << " k_z=" << format_number(cfg.bessel.k_z)
          << " m=" << cfg.bessel.m << " sigma=" << cfg.bessel.sigma;
    else
        s << "# beam lg omega=" << format_number(cfg.lg.omega) << " n=" << cfg.lg.n << " m=" << cfg.lg.m
          << " l=" << format_number(cfg.lg.l) << " sigma=" << cfg.lg.sigma;
    return s.str();
}

void write_preamble(std::ostream& out, const RunConfig& cfg, const std::string& command) {
    const Constants c = cfg.constants();
    out << "# rsb " << tool_version << ' ' << command << '\n';
    out << "# constants " << (cfg.si ? "si" : "natural") << " c=" << format_number(c.c)
        << " hbar=" << format_number(c.hbar) << " eps0=" << format_number(c.eps0) << '\n';
}

// Runs body against the configured output (file or the given stream).
int with_output(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
    if (cfg.out.empty()) return body(out);
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << cfg.out << '\n';
        return exit_usage;
    }
    const int code = body(file);
    file.flush();
    if (!file) {
        err << "error: write failed for " << cfg.out << '\n';
        return exit_usage;
    }
    return code;
}

}  // namespace

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    const Constants c = cfg.constants();
    const auto pts = cfg.grid.points();
    // Evaluate everything before writing so that a failure leaves no partial file.
    std::ostringstream body;
    const bool cyl = cfg.basis == Basis::cylindrical;
    const char* names[3] = {cyl ? "rho" : "x", cyl ? "phi" : "y", "z"};
    body << "x,y,z,t";
    for (const char* n : names) body << ",re_F" << n << ",im_F" << n;
    body << ",energy_density,momentum_density_x,momentum_density_y,momentum_density_z,angular_momentum_density_z\n";
    for (const auto& p : pts) {
        const ComplexVec3 Fc = sample_field(cfg, p);
        const ComplexVec3 F = cyl ? to_cylindrical(Fc, p) : Fc;
        const RealVec3 P = momentum_density(Fc, c);
        const RealVec3 J = angular_momentum_density(Fc, {p.x, p.y, p.z}, c);
        body << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.z) << ','
             << format_number(p.t);
        for (int i = 0; i < 3; ++i) body << ',' << format_number(F[i].real()) << ',' << format_number(F[i].imag());
        body << ',' << format_number(energy_density(Fc)) << ',' << format_number(P[0]) << ',' << format_number(P[1])
             << ',' << format_number(P[2]) << ',' << format_number(J[2]) << '\n';
    }
    return with_output(cfg, out, err, [&](std::ostream& o) {
        write_preamble(o, cfg, "sample");
        o << beam_line(cfg) << '\n';
        o << "# basis " << (cyl ? "cylindrical" : "cartesian") << (cfg.corrupt_fz ? " corrupt_fz=true" : "") << '\n';
        if (cfg.si)
            o << "# units x,y,z: m; t: s; F: (J/m^3)^(1/2); energy_density: J/m^3; momentum_density: kg/(m^2 s);"
                 " angular_momentum_density_z: kg/(m s)\n";
        else
            o << "# units natural (c = hbar = eps0 = 1)\n";
        o << body.str();
        return int(exit_ok);
    });
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Check {
    std::string name;
    double measured;
    double tol;
    bool pass;
    std::string detail;
};

double loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]), y = std::log(std::max(e[i], 1e-300));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Transverse length of the configured beam; FD steps and sample points scale with it.
double beam_length(const RunConfig& cfg) {
    return cfg.beam == BeamKind::bessel ? 1.0 / cfg.bessel.k_perp : cfg.lg.l;
}

std::vector<SpacetimePoint> verify_points(const RunConfig& cfg) {
    const Constants c = cfg.constants();
    const double L = (cfg.beam == BeamKind::bessel ? 4.0 : 2.0) * beam_length(cfg);
    std::mt19937_64 gen(20240611ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SpacetimePoint> pts;
    for (int i = 0; i < cfg.verify_points; ++i) {
        const double rho = L * (0.025 + 0.975 * u(gen));
        const double phi = 2.0 * pi * u(gen);
        const double z = L * (u(gen) - 0.5);
        const double t = L / c.c * (u(gen) - 0.5);
        pts.push_back(SpacetimePoint::cylindrical(rho, phi, z, t));
    }
    return pts;
}

FDSpec scaled_fd(const RunConfig& cfg, double step) {
    const double h = step * beam_length(cfg);
    FDSpec fd;
    fd.order = cfg.fd_order;
    fd.h = {h, h, h, h / cfg.constants().c};
    return fd;
}

std::vector<Check> run_checks(const RunConfig& cfg) {
    const Constants c = cfg.constants();
    const double tol = cfg.tolerance();
    const FDSpec fd = scaled_fd(cfg, cfg.fd_step);
    const auto pts = verify_points(cfg);
    std::vector<Check> checks;
    auto add = [&](std::string name, double measured, double t, std::string detail = "") {
        checks.push_back({std::move(name), measured, t, measured < t, std::move(detail)});
    };

    // Maxwell residual with FD derivatives of the closed-form field.
    const RSField fd_field = configured_field(cfg, false);
    double maxwell = 0.0;
    for (const auto& p : pts) maxwell = std::max(maxwell, maxwell_residual(fd_field, p, c, fd).relative());
    add("maxwell_residual", maxwell, tol);

    // Refinement study at the first point.
    const std::vector<double> ladder =
        cfg.fd_order == 4 ? std::vector<double>{4e-2, 2e-2, 1e-2} : std::vector<double>{1e-2, 1e-3, 1e-4};
    std::vector<double> errs;
    for (double h : ladder) errs.push_back(maxwell_residual(fd_field, pts.front(), c, scaled_fd(cfg, h)).relative());
    const double slope = loglog_slope(ladder, errs);
    checks.push_back({"convergence_order", slope, 0.3, std::abs(slope - cfg.fd_order) < 0.3,
                      "expected " + std::to_string(cfg.fd_order)});

    const ScalarWaveField chi_fd = configured_scalar(cfg, false);
    double dal = 0.0;
    for (const auto& p : pts) dal = std::max(dal, dalembert_residual(chi_fd, p, c, fd).relative());
    add("dalembert_residual", dal, tol);

    // FD Whittaker map of chi against the closed-form field.
    double wh = 0.0;
    for (const auto& p : pts) {
        const ComplexVec3 a = whittaker_map(chi_fd, p, c, fd);
        const ComplexVec3 b = fd_field.value(p);
        const double s = std::max(norm(a), norm(b));
        if (s > 0.0) wh = std::max(wh, norm(a - b) / s);
    }
    add("whittaker_consistency", wh, tol);

    // Eigenvalue suite on the photon wave function.
    const int sigma = cfg.beam == BeamKind::bessel ? cfg.bessel.sigma : cfg.lg.sigma;
    const RSField f = configured_field(cfg, true);
    const RSField psi = sigma == 1 ? f : conjugate_as_wavefunction(f);
    const FDSpec op_fd = cfg.beam == BeamKind::bessel ? scaled_fd(cfg, 1e-3) : fd;
    const double eig_tol = cfg.beam == BeamKind::bessel ? 1e-6 : 1e-5;
    auto eigen = [&](const std::string& name, const FieldOperator& op, double expected, double scale) {
        const EigenEstimate e = estimate_eigenvalue(op, psi, pts);
        const double dev = std::abs(e.rayleigh - expected) / scale;
        add(name, std::max(dev, expected != 0.0 ? e.max_residual : 0.0), eig_tol);
    };
    const double hb = c.hbar;
    const int m = cfg.beam == BeamKind::bessel ? cfg.bessel.m : cfg.lg.m;
    if (cfg.beam == BeamKind::bessel) {
        const BesselBeamSpec& s = cfg.bessel;
        eigen("eigen_pz", [&](const RSField& g, const SpacetimePoint& p) { return apply_pz(g, p, c, op_fd); },
              hb * s.k_z, hb * std::abs(s.k_z));
        eigen("eigen_pperp2", [&](const RSField& g, const SpacetimePoint& p) { return apply_pperp2(g, p, c, op_fd); },
              hb * hb * s.k_perp * s.k_perp, hb * hb * s.k_perp * s.k_perp);
        double hel = 0.0;
        for (const auto& p : pts) {
            const double nf = norm(psi.value(p));
            if (nf > 0.0) hel = std::max(hel, norm(helicity_residual(psi, p, s.k(), sigma, op_fd)) / (s.k() * nf));
        }
        add("eigen_helicity", hel, eig_tol);

        // Plane-wave synthesis over phi' at the configured quadrature tolerance.
        const BesselAmplitude amp = BesselAmplitude::for_mode(s);
        // Absolute floor from the field scale; J_m is tiny near the axis for large m.
        double scale = 0.0;
        for (const auto& p : pts) scale = std::max(scale, norm(bessel_rs_field(s, p, c)));
        const quad::Options q{1e-3 * cfg.quad_rel_tol * scale, cfg.quad_rel_tol, 2000, 8};
        double syn = 0.0;
        for (const auto& p : pts) syn = std::max(syn, norm(synthesize_bessel_field(amp, p, c, q) - bessel_rs_field(s, p, c)));
        syn = scale > 0.0 ? syn / scale : 0.0;
        add("synthesis_oracle", syn, std::max(1e-8, 100.0 * cfg.quad_rel_tol), "relative to peak |F|");
    }
    eigen("eigen_mz", [&](const RSField& g, const SpacetimePoint& p) { return apply_mz(g, p, c, op_fd); }, hb * m,
          hb * std::max(1, std::abs(m)));

    // Beam-independent algebra.
    std::mt19937_64 gen(7ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double ne = 0.0, bil = 0.0;
    for (int i = 0; i < 1000; ++i) {
        WaveVector k{u(gen), u(gen), u(gen)};
        if (k.k_perp() < 1e-3) continue;
        const ComplexVec3 e = polarization_vector(k);
        const RealVec3 n = k.direction();
        const ComplexVec3 nc{cplx(n[0]), cplx(n[1]), cplx(n[2])};
        ne = std::max(ne, norm(cross(nc, e) + e * I));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const int cidx = 3 - a - b;
                const double eps = (a == b) ? 0.0 : ((b - a + 3) % 3 == 1 ? 1.0 : -1.0);
                const cplx rhs = a == b ? 0.0 : -I * eps * n[cidx];
                bil = std::max(bil, std::abs(e[a] * std::conj(e[b]) - std::conj(e[a]) * e[b] - rhs));
            }
    }
    add("polarization_n_cross_e", ne, 1e-12, "n x e = -i e");
    add("polarization_bilinear", bil, 1e-12, "e_i e*_j - e*_i e_j = -i eps_ijk n_k");
    const auto& S = spin_matrices();
    double comm = 0.0;
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, k = (a + 2) % 3;
        const Mat3 lhs = mat_sub(mat_mul(S[a], S[b]), mat_mul(S[b], S[a]));
        comm = std::max(comm, mat_max_abs(mat_sub(lhs, mat_scale(S[k], I))));
    }
    add("spin_commutators", comm, 1e-14, "[s_i, s_j] = i eps_ijk s_k");
    return checks;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    const auto checks = run_checks(cfg);
    bool ok = true;
    for (const auto& ch : checks) ok = ok && ch.pass;
    return with_output(cfg, out, err, [&](std::ostream& o) {
        write_preamble(o, cfg, "verify");
        o << beam_line(cfg) << '\n';
        o << "# fd_order " << cfg.fd_order << " fd_step " << format_number(cfg.fd_step)
          << (cfg.corrupt_fz ? " corrupt_fz=true" : "") << '\n';
        for (const auto& ch : checks) {
            o << ch.name << " measured=" << format_number(ch.measured) << " tol=" << format_number(ch.tol) << ' '
              << (ch.pass ? "PASS" : "FAIL");
            if (!ch.detail.empty()) o << " (" << ch.detail << ')';
            o << '\n';
        }
        o << (ok ? "all checks passed" : "verification failed") << '\n';
        if (!ok)
            for (const auto& ch : checks)
                if (!ch.pass) err << "failed: " << ch.name << '\n';
        return ok ? int(exit_ok) : int(exit_failure);
    });
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    const Constants c = cfg.constants();
    std::vector<std::pair<int, int>> cases = cfg.cases;
    if (cases.empty()) cases.emplace_back(cfg.lg.n, cfg.lg.m);
    const double width = c.c * c.c / (cfg.lg.l * cfg.lg.l * cfg.lg.omega);
    const double lo = cfg.omega_lo > 0.0 ? cfg.omega_lo : cfg.lg.omega;
    const double hi = cfg.omega_hi > 0.0 ? cfg.omega_hi : cfg.lg.omega + 40.0 * width;

    std::vector<SpectralCurve> curves;
    for (const auto& [n, m] : cases) {
        LGBeamSpec s = cfg.lg;
        s.n = n;
        s.m = m;
        try {
            curves.push_back(spectral_curve(s, lo, hi, cfg.count, c));
        } catch (const DomainError& e) {
            throw UsageError(std::string("spectrum: ") + e.what());
        }
    }

    auto write_curve = [&](std::ostream& o, const SpectralCurve& cv) {
        write_preamble(o, cfg, "spectrum");
        o << "# beam lg omega=" << format_number(cv.spec.omega) << " n=" << cv.spec.n << " m=" << cv.spec.m
          << " l=" << format_number(cv.spec.l) << " sigma=" << cv.spec.sigma << '\n';
        o << "# normalization " << format_number(cv.normalization) << '\n';
        o << (cfg.si ? "# units omega: 1/s; w: s\n" : "# units natural (c = hbar = eps0 = 1)\n");
        o << "omega,w\n";
        for (std::size_t i = 0; i < cv.omega.size(); ++i)
            o << format_number(cv.omega[i]) << ',' << format_number(cv.w[i]) << '\n';
    };

    if (cfg.out.empty()) {
        for (const auto& cv : curves) write_curve(out, cv);
    } else {
        for (const auto& cv : curves) {
            const std::string path = cfg.out + "_n" + std::to_string(cv.spec.n) + "_m" + std::to_string(cv.spec.m) + ".csv";
            std::ofstream file(path, std::ios::binary);
            if (!file) {
                err << "error: cannot write " << path << '\n';
                return exit_usage;
            }
            write_curve(file, cv);
            if (!file.flush()) {
                err << "error: write failed for " << path << '\n';
                return exit_usage;
            }
            out << path << '\n';
        }
    }
    // Summary on the error stream so stdout stays pure CSV.
    for (const auto& cv : curves) {
        const std::size_t i = cv.argmax();
        err << "# n=" << cv.spec.n << " m=" << cv.spec.m << " peak_omega=" << format_number(cv.omega[i])
            << " peak_w=" << format_number(cv.w[i]) << " trapezoid=" << format_number(cv.integral()) << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// observables

int cmd_observables(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    if (cfg.beam == BeamKind::bessel) {
        err << "error: Bessel beams are delta-normalized in momentum space; the photon norm and the expectation"
               " values diverge. Use beam = lg.\n";
        return exit_failure;
    }
    const Constants c = cfg.constants();
    const LGAmplitude amp = LGAmplitude::single(cfg.lg);
    const double N = photon_norm(amp, c);
    const double H = expectation_energy(amp, c);
    const double pz = expectation_pz(amp, c);
    const double mz = expectation_mz(amp, c);
    const double hel = expectation_helicity(amp, c);
    const double ratio = mz / c.hbar;
    const CoherentStateData cs = coherent_state_decompose(amp, c);
    return with_output(cfg, out, err, [&](std::ostream& o) {
        write_preamble(o, cfg, "observables");
        o << beam_line(cfg) << '\n';
        o << "# photon_norm is per unit delta(0) in k_+\n";
        o << "photon_norm = " << format_number(N) << '\n';
        o << "mean_photon_number = " << format_number(cs.mean_photon_number) << '\n';
        o << "expectation_energy = " << format_number(H) << '\n';
        o << "expectation_pz = " << format_number(pz) << '\n';
        o << "expectation_mz = " << format_number(mz) << '\n';
        o << "expectation_helicity = " << format_number(hel) << '\n';
        o << "mz_over_hbar = " << format_number(ratio) << '\n';
        o << "mz_deviation_from_m = " << format_number(ratio - cfg.lg.m) << '\n';
        o << "classical_mz = " << format_number(classical_mz(amp, c)) << '\n';
        o << "energy_at_least_hbar_omega = " << (H >= c.hbar * cfg.lg.omega ? "true" : "false") << '\n';
        return int(exit_ok);
    });
}

// ---------------------------------------------------------------------------
// Dispatch

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Riemann-Silberstein beam toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_path, basis;
    std::vector<std::string> sets;
    bool si = false;
    int fd_order = 0;
    double tol = 0.0;
    app.add_option("--config", config_path, "key = value config file");
    app.add_flag("--si", si, "SI constants instead of natural units");
    app.add_option("--fd-order", fd_order, "finite-difference order")->check(CLI::IsMember({2, 4}));
    app.add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output path (prefix for spectrum)");
    app.add_option("--basis", basis, "field components")->check(CLI::IsMember({"cartesian", "cylindrical"}));
    app.add_option("--set", sets, "key=value override (repeatable)");
    auto* sample = app.add_subcommand("sample", "sample the field on a grid (CSV)");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    auto* spectrum = app.add_subcommand("spectrum", "export spectral weight curves (CSV)");
    auto* observables = app.add_subcommand("observables", "photon observables of an LG beam");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot read config " + config_path);
            load_config(cfg, in);
        }
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw UsageError("--set expects key=value");
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        if (si) cfg.si = true;
        if (fd_order) cfg.fd_order = fd_order;
        if (tol > 0.0) cfg.tol = tol;
        if (!out_path.empty()) cfg.out = out_path;
        if (!basis.empty()) apply_setting(cfg, "basis", basis);

        if (sample->parsed()) return cmd_sample(cfg, out, err);
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        if (spectrum->parsed()) return cmd_spectrum(cfg, out, err);
        if (observables->parsed()) return cmd_observables(cfg, out, err);
        return exit_usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const OnAxisBasisError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace rsb::cli
