#pragma once

// Command-line front end. Everything here is callable in-process; the
// executable in tools/ only forwards argv to run().

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rsb/beams.hpp"
#include "rsb/errors.hpp"
#include "rsb/fields.hpp"

namespace rsb::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

/// Malformed config or arguments (exit code 2).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

/// lo:hi:count, or a single fixed value (count 1).
struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    [[nodiscard]] double at(int i) const;
};

/// Sampling grid over (x, y, z, t); x varies fastest.
struct GridSpec {
    std::array<AxisRange, 4> axes{AxisRange{0.5, 0.5, 1}, AxisRange{}, AxisRange{}, AxisRange{}};

    void validate() const;
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::vector<SpacetimePoint> points() const;
};

enum class BeamKind { bessel, lg };

struct RunConfig {
    bool si = false;
    BeamKind beam = BeamKind::bessel;
    BesselBeamSpec bessel{1.0, 5.0, 0, 1};
    LGBeamSpec lg{10.0, 0, 0, 1.0, 1};
    int fd_order = 4;
    double fd_step = 1e-3;
    double tol = 0.0;  ///< 0 picks the default for the beam and FD order
    double quad_rel_tol = 1e-10;
    int verify_points = 20;
    Basis basis = Basis::cartesian;
    bool corrupt_fz = false;  ///< fault injection: negate F_z everywhere
    GridSpec grid;
    double omega_lo = 0.0;  ///< |omega| range of spectrum exports; 0 picks a default
    double omega_hi = 0.0;
    int count = 2001;
    std::vector<std::pair<int, int>> cases;  ///< (n, m) spectrum cases; empty uses the LG spec
    std::string out;

    [[nodiscard]] Constants constants() const { return si ? Constants::si() : Constants::natural(); }
    [[nodiscard]] double tolerance() const;
    [[nodiscard]] FDSpec fd() const { return FDSpec::uniform(fd_step, fd_order); }
    void validate() const;
};

/// Applies one key = value setting; throws UsageError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads key = value lines; '#' starts a comment.
void load_config(RunConfig& cfg, std::istream& in);

/// 17 significant digits, scientific.
std::string format_number(double v);

/// RS field of the configured beam (with the fault injection applied).
RSField configured_field(const RunConfig& cfg, bool analytic_jacobian);
ScalarWaveField configured_scalar(const RunConfig& cfg, bool analytic_derivatives);

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_observables(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsb::cli
