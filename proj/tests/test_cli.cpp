#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rsb/cli.hpp"
#include "rsb/fields.hpp"

using namespace rsb;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

std::vector<double> row(const std::string& line) {
    std::vector<double> v;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) v.push_back(std::stod(cell));
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Value of "name measured=<v>" in a verify report.
double measured(const std::string& report, const std::string& name) {
    const auto at = report.find(name + " measured=");
    REQUIRE(at != std::string::npos);
    return std::stod(report.substr(at + name.size() + 10));
}

std::map<std::string, std::string> key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (const auto& line : data_lines(text)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return kv;
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "rsb_cli_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("config parsing") {
    cli::RunConfig cfg;
    std::istringstream in("# comment\nbeam = lg\n omega = 12.5  # trailing\nn=2\nm = 3\nsigma=-1\n\nx = -1:1:5\nt = 0.25\n");
    cli::load_config(cfg, in);
    CHECK(cfg.beam == cli::BeamKind::lg);
    CHECK(cfg.lg.omega == 12.5);
    CHECK(cfg.lg.n == 2);
    CHECK(cfg.lg.m == 3);
    CHECK(cfg.lg.sigma == -1);
    CHECK(cfg.grid.axes[0].count == 5);
    CHECK(cfg.grid.axes[0].at(4) == 1.0);
    CHECK(cfg.grid.axes[3].lo == 0.25);
    CHECK(cfg.grid.size() == 5);

    CHECK_THROWS_AS(cli::apply_setting(cfg, "colour", "red"), cli::UsageError);
    CHECK_THROWS_AS(cli::apply_setting(cfg, "omega", "1.0x"), cli::UsageError);
    CHECK_THROWS_AS(cli::apply_setting(cfg, "tol", "0"), cli::UsageError);
    CHECK_THROWS_AS(cli::apply_setting(cfg, "x", "0:1"), cli::UsageError);
    std::istringstream bad("beam lg\n");
    CHECK_THROWS_AS(cli::load_config(cfg, bad), cli::UsageError);

    cli::RunConfig order;
    order.fd_order = 3;
    CHECK_THROWS_AS(order.validate(), cli::UsageError);
}

TEST_CASE("number format") {
    CHECK(cli::format_number(0.1) == "1.0000000000000001e-01");
    CHECK(cli::format_number(-2.0) == "-2.0000000000000000e+00");
    for (double v : {M_PI, 1e-300, 6.02214076e23, -1.0 / 3.0}) CHECK(std::stod(cli::format_number(v)) == v);
}

TEST_CASE("sample") {
    const Run r = run({"sample", "--set", "m=0", "--set", "x=0:1:3"});
    CHECK(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("x,y,z,t,re_Fx", 0) == 0);
    CHECK(row(lines[1]).size() == 15);
    CHECK(r.out.find("# constants natural") != std::string::npos);

    const Run axis = run({"sample", "--basis", "cylindrical", "--set", "x=0:1:3"});
    CHECK(axis.code == 2);
    CHECK(axis.err.find("axis") != std::string::npos);
    const Run off = run({"sample", "--basis", "cylindrical", "--set", "x=0.5:1:3"});
    CHECK(off.code == 0);
    CHECK(data_lines(off.out)[0].find("re_Frho") != std::string::npos);

    // LG at the origin: energy density against the FD Whittaker map of lg_chi.
    const Run lg = run({"sample", "--set", "beam=lg", "--set", "omega=10", "--set", "l=1", "--set", "x=0"});
    REQUIRE(lg.code == 0);
    const auto v = row(data_lines(lg.out)[1]);
    const Constants nat = Constants::natural();
    const LGBeamSpec s{10.0, 0, 0, 1.0, 1};
    const ComplexVec3 F = whittaker_map(lg_scalar_field(s, nat, false), {0, 0, 0, 0}, nat, FDSpec::uniform(1e-3));
    CHECK(v[10] == doctest::Approx(energy_density(F)).epsilon(1e-8));
    CHECK(v[10] == doctest::Approx(v[4] * v[4] + v[5] * v[5] + v[6] * v[6] + v[7] * v[7] + v[8] * v[8] + v[9] * v[9])
                       .epsilon(1e-14));

    const Run bad = run({"sample", "--set", "k_perp=-1"});
    CHECK(bad.code == 2);
}

TEST_CASE("sample output files are deterministic") {
    const fs::path dir = scratch_dir();
    const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
    const std::vector<std::string> base{"sample", "--set", "m=2", "--set", "x=-1:1:4", "--set", "y=0.3", "--set",
                                        "z=0:2:3", "--set", "t=0.1"};
    auto with = [&](const std::string& path) {
        auto args = base;
        args.insert(args.end(), {"--out", path});
        return run(args);
    };
    CHECK(with(a).code == 0);
    CHECK(with(b).code == 0);
    const std::string sa = slurp(a);
    CHECK(sa == slurp(b));
    CHECK(data_lines(sa).size() == 13);
    CHECK(sa.find('\r') == std::string::npos);

    const Run unwritable = run({"sample", "--out", "/nonexistent_dir_for_rsb/x.csv"});
    CHECK(unwritable.code == 2);
    CHECK(unwritable.err.find("cannot write") != std::string::npos);
}

TEST_CASE("verify") {
    const Run ok = run({"verify"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("maxwell_residual") != std::string::npos);
    const auto line = ok.out.substr(ok.out.find("maxwell_residual"));
    CHECK(line.substr(0, line.find('\n')).find("PASS") != std::string::npos);

    const Run broken = run({"verify", "--set", "corrupt_fz=true"});
    CHECK(broken.code == 1);
    CHECK(broken.err.find("maxwell_residual") != std::string::npos);
    CHECK(broken.out.find("FAIL") != std::string::npos);

    const Run second = run({"verify", "--fd-order", "2"});
    CHECK(second.code == 0);
    CHECK(measured(second.out, "convergence_order") == doctest::Approx(2.0).epsilon(0.15));
    CHECK(measured(ok.out, "convergence_order") == doctest::Approx(4.0).epsilon(0.075));

    for (int m : {0, 2, 5})
        for (int sigma : {1, -1})
            CHECK(run({"verify", "--set", "m=" + std::to_string(m), "--set", "sigma=" + std::to_string(sigma)}).code == 0);
    CHECK(run({"verify", "--set", "beam=lg", "--set", "n=1", "--set", "m=2"}).code == 0);
    CHECK(run({"verify", "--si", "--set", "k_perp=1e6", "--set", "k_z=5e6", "--set", "m=2"}).code == 0);

    CHECK(run({"verify", "--fd-order", "3"}).code == 2);
    CHECK(run({"verify", "--set", "fd_step=-1"}).code == 2);
    CHECK(run({"verify", "--config", "/nonexistent_rsb.cfg"}).code == 2);
    CHECK(run({"verify", "--set", "quad_rel_tol=0"}).code == 2);
    CHECK(measured(ok.out, "synthesis_oracle") < 1e-8);
    // A loose quadrature tolerance is reflected in the synthesis check only.
    const Run loose = run({"verify", "--set", "quad_rel_tol=1e-4", "--set", "m=2"});
    CHECK(loose.code == 0);
    CHECK(measured(loose.out, "synthesis_oracle") < 1e-2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("spectrum: figure parameters") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "fig.cfg";
    {
        std::ofstream f(cfg);
        f << "units = si\nbeam = lg\nomega = 1e15\nl = 1e-3\nsigma = 1\ncases = 0:0, 1:1, 2:2\n";
    }
    const std::string prefix = (dir / "fig").string();
    const Run r = run({"spectrum", "--config", cfg.string(), "--out", prefix});
    REQUIRE(r.code == 0);
    double prev = HUGE_VAL;
    for (const char* tag : {"_n0_m0.csv", "_n1_m1.csv", "_n2_m2.csv"}) {
        const std::string text = slurp(prefix + tag);
        CHECK(text.find("# constants si") != std::string::npos);
        const auto lines = data_lines(text);
        REQUIRE(lines.size() == 2002);
        CHECK(lines[0] == "omega,w");
        double peak = 0.0, integral = 0.0, prev_w = 0.0, prev_o = 0.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto v = row(lines[i]);
            peak = std::max(peak, v[1]);
            if (i > 1) integral += 0.5 * (v[1] + prev_w) * (v[0] - prev_o);
            prev_o = v[0];
            prev_w = v[1];
        }
        CHECK(peak < prev);
        prev = peak;
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-4));
    }

    const Run two = run({"spectrum", "--set", "count=2"});
    CHECK(two.code == 0);
    CHECK(data_lines(two.out).size() == 3);
    CHECK(run({"spectrum", "--set", "count=1"}).code == 2);
    CHECK(run({"spectrum", "--set", "omega_lo=5", "--set", "omega_hi=4"}).code == 2);
}

TEST_CASE("observables") {
    const Run r = run({"observables", "--set", "beam=lg", "--set", "n=2", "--set", "m=3", "--set", "sigma=1"});
    REQUIRE(r.code == 0);
    auto kv = key_values(r.out);
    CHECK(std::abs(std::stod(kv["mz_over_hbar"]) - 3.0) < 1e-8);
    CHECK(kv["energy_at_least_hbar_omega"] == "true");
    CHECK(std::stod(kv["expectation_helicity"]) == 1.0);

    const Run minus = run({"observables", "--set", "beam=lg", "--set", "sigma=-1", "--set", "m=1"});
    REQUIRE(minus.code == 0);
    CHECK(std::stod(key_values(minus.out)["expectation_helicity"]) == -1.0);

    const Run bessel = run({"observables"});
    CHECK(bessel.code == 1);
    CHECK(bessel.err.find("delta-normalized") != std::string::npos);
}
