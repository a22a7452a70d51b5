// attain: lattice-point scans, region queries, spike sampling, numeric checks.
//
// Exit codes: 0 ok / attainable / all checks pass, 1 not attainable or a check
// failed, 2 invalid input, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "attain/region.hpp"
#include "attain/scan.hpp"
#include "attain/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInvalid = 2;
constexpr int kIoError = 3;

struct Globals {
    std::string output;
    double tol = attain::kDefaultTolerance;
    std::uint64_t seed = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Opens --output (or stdout), runs `body`, and checks the stream afterwards.
template <class Body>
int with_output(const Globals& g, Body&& body) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!g.output.empty()) {
        file.open(g.output, std::ios::out | std::ios::trunc | std::ios::binary);
        if (!file) throw IoError("cannot open " + g.output + " for writing");
        os = &file;
    }
    const int code = body(*os);
    os->flush();
    if (!*os) throw IoError("write failed on " + (g.output.empty() ? std::string("stdout") : g.output));
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice points on circles: Fourier projections and the attainable region"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--output", g.output, "Write results here instead of stdout");
    app.add_option("--tol", g.tol, "Region tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for sampled checks and spike interiors")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);

    std::uint64_t max_n = 0;
    bool scan_squarefree = false;
    auto* scan = app.add_subcommand("scan", "CSV of (n, r2, x, y) for every n in S up to max-n");
    scan->add_option("--max-n", max_n, "Upper bound on n (<= 1e9)")->required();
    scan->add_flag("--squarefree", scan_squarefree, "Square-free n only");

    unsigned max_exp = 19;
    std::uint64_t max_prime = 10000;
    std::string parity = "all";
    auto* pp = app.add_subcommand("prime-powers", "CSV of (p, M, x, y) for p = 1 mod 4 and exponents M");
    pp->add_option("--max-exp", max_exp, "Largest exponent M")->capture_default_str();
    pp->add_option("--max-prime", max_prime, "Largest prime p")->capture_default_str();
    pp->add_option("--parity", parity, "even, odd or all")->capture_default_str();

    double cx = 0.0;
    double cy = 0.0;
    bool check_squarefree = false;
    auto* check = app.add_subcommand("check", "Decide whether (x, y) lies in the attainable region");
    check->add_option("x", cx)->required();
    check->add_option("y", cy)->required();
    check->add_flag("--squarefree", check_squarefree, "Use the square-free region");

    unsigned spike_k = 1;
    std::uint64_t samples = 1000;
    auto* spike = app.add_subcommand("spike", "CSV of the k-th spike boundary and interior samples");
    spike->add_option("k", spike_k, "Spike index k >= 1")->required();
    spike->add_option("--samples", samples, "Grid points and interior samples")->capture_default_str();

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run numeric checks (all or one by name)");
    verify->add_option("suite", suite, "all or a check name")->capture_default_str();

    double theta = attain::kPi;
    unsigned level = 0;
    std::size_t coeffs = 16;
    auto* cantor = app.add_subcommand("cantor", "CSV of Fourier coefficients of a Cantor-type measure");
    cantor->add_option("--theta", theta, "Half-width in (0, pi]")->capture_default_str();
    cantor->add_option("--level", level, "Construction level <= 60")->capture_default_str();
    cantor->add_option("--k", coeffs, "Number of coefficients <= 64")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*scan) {
            return with_output(g, [&](std::ostream& os) {
                attain::write_scan_csv(os, max_n, scan_squarefree, g.jobs);
                return kOk;
            });
        }
        if (*pp) {
            const auto par = attain::parse_parity(parity);
            return with_output(g, [&](std::ostream& os) {
                attain::write_prime_powers_csv(os, max_exp, max_prime, par);
                return kOk;
            });
        }
        if (*check) {
            if (!std::isfinite(cx) || !std::isfinite(cy) || std::abs(cx) > 1.0 || std::abs(cy) > 1.0) {
                std::cerr << "check: need |x| <= 1 and |y| <= 1\n";
                return kInvalid;
            }
            const attain::PlanePoint p{cx, cy};
            const auto verdict = check_squarefree ? attain::is_squarefree_attainable(p, g.tol)
                                                  : attain::is_attainable(p, g.tol);
            return with_output(g, [&](std::ostream& os) {
                os << verdict.describe() << '\n';
                return verdict.attainable ? kOk : kNo;
            });
        }
        if (*spike) {
            return with_output(g, [&](std::ostream& os) {
                attain::write_spike_csv(os, spike_k, samples, g.seed);
                return kOk;
            });
        }
        if (*verify) {
            std::vector<attain::CheckReport> reports;
            try {
                reports = attain::run_checks({suite}, g.seed, g.jobs);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << '\n';
                return kInvalid;
            }
            return with_output(g, [&](std::ostream& os) {
                bool ok = true;
                for (const auto& r : reports) {
                    os << r.summary() << '\n';
                    ok = ok && r.passed;
                }
                return ok ? kOk : kNo;
            });
        }
        if (*cantor) {
            if (!(theta > 0.0 && theta <= attain::kPi)) {
                std::cerr << "cantor: theta must lie in (0, pi]\n";
                return kInvalid;
            }
            return with_output(g, [&](std::ostream& os) {
                attain::write_cantor_csv(os, theta, level, coeffs);
                return kOk;
            });
        }
    } catch (const IoError& e) {
        std::cerr << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
