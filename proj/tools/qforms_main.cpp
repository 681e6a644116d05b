// qforms: command-line front door for the library.
//
// Subcommands: constants, decompose, positivity, verify, experiment. Every run
// prints a header with version, mode, seed, and a hash of the full run
// configuration; identical invocations produce byte-identical output (seeded
// Monte-Carlo experiments included), so no timestamps or timings appear here.
//
// Exit codes: 0 pass, 1 fail, 2 usage error, 3 input error.

#include "qforms/experiments.hpp"
#include "qforms/io.hpp"
#include "qforms/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kConstantsBound = 3;  // lambda golden values cover n <= 3

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string mode = "exact";
    int n = 2;
    uint64_t seed = 0;
    bool seed_given = false;
    double tol = 0.0;    // 0 = command default
    long samples = 0;    // 0 = command default
    std::string in_path, out_path;
};

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string canonical_config(const std::string& cmd, const std::string& arg,
                             const RunConfig& rc) {
    std::ostringstream os;
    os << "cmd=" << cmd << ";arg=" << arg << ";mode=" << rc.mode << ";n=" << rc.n << ";seed=";
    if (rc.seed_given)
        os << rc.seed;
    else
        os << "-";
    os << ";tol=" << rc.tol << ";samples=" << rc.samples << ";in=" << rc.in_path
       << ";out=" << rc.out_path;
    return os.str();
}

void print_header(const std::string& cmd, const std::string& arg, const RunConfig& rc) {
    std::cout << "qforms " << kVersion << "  mode=" << rc.mode << "  seed=";
    if (rc.seed_given)
        std::cout << rc.seed;
    else
        std::cout << "-";
    std::cout << "  config=" << std::hex << std::setw(16) << std::setfill('0')
              << fnv1a(canonical_config(cmd, arg, rc)) << std::dec << std::setfill(' ') << "\n";
}

void require_mode(const RunConfig& rc, const std::string& want, const std::string& cmd) {
    if (rc.mode != "exact" && rc.mode != "float")
        throw UsageError("mode must be 'exact' or 'float'");
    if (rc.mode != want) throw UsageError(cmd + " runs in " + want + " mode only");
}

std::string rat_str(const qf::Rat& r) { return qf::rat_to_string(r); }

std::string ec_str(const qf::ExactComplex& c) { return c.str(); }

std::string vec_str(const qf::Vec<qf::ExactComplex>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.c.size(); ++i) {
        if (i) out += ", ";
        out += ec_str(v.c[i]);
    }
    return out + "]";
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw qf::InputError("cannot write " + path);
    return file;
}

// ---- constants --------------------------------------------------------------

int cmd_constants(const RunConfig& rc) {
    require_mode(rc, "exact", "constants");
    if (rc.n < 1 || rc.n > kConstantsBound)
        throw UsageError("n = " + std::to_string(rc.n) +
                         " is beyond the supported bound (constants cover n <= " +
                         std::to_string(kConstantsBound) + ")");
    int n = rc.n;
    const qf::CanonicalData& cd = qf::canonical_data(n);

    std::cout << "constants for n = " << n << "\n";
    std::cout << "  dim Lambda^1        = " << 4 * n << "\n";
    bool dims_ok = true;
    for (int k : {2, 2 * n}) {
        qf::Rat total(0);
        for (int p = 0; p <= k; ++p) total += qf::binom_rat(2 * n, p) * qf::binom_rat(2 * n, k - p);
        bool ok = total == qf::binom_rat(4 * n, k);
        dims_ok = dims_ok && ok;
        std::cout << "  dim Lambda^" << k << " split  = " << rat_str(total) << " = C(" << 4 * n
                  << "," << k << ")  " << (ok ? "OK" : "FAIL") << "\n";
    }

    // two-path check: direct pairing value against the Xi/gamma route
    qf::ExactComplex num = qf::top_coefficient(qf::wedge(cd.phi, qf::conjugate(cd.phi)));
    qf::ExactComplex den = qf::top_coefficient(qf::wedge(cd.xi, cd.xi));
    qf::ExactComplex viaxi = num / (den * qf::ExactComplex(cd.gamma * cd.gamma));
    bool lambda_ok = viaxi.is_real() && viaxi.re == cd.lambda && cd.lambda > 0;
    std::cout << "  lambda              = " << rat_str(cd.lambda) << "    two-path: "
              << (lambda_ok ? "OK" : "FAIL") << "\n";
    std::cout << "  gamma               = " << rat_str(cd.gamma) << "\n";
    std::cout << "  Xi coefficients     = ";
    for (std::size_t j = 0; j < cd.xi_coeffs.size(); ++j) {
        if (j) std::cout << ", ";
        std::cout << rat_str(cd.xi_coeffs[j]);
    }
    std::cout << "   (on omega_I^{n-2j} (Omega conj Omega)^j)\n";

    bool conv_ok =
        qf::rmap(1, 1, qf::Omega_form(n)) == qf::scale(cd.omegaI, -qf::ExactComplex::i());
    conv_ok = conv_ok && qf::rproj(cd.omegaI) == qf::scale(qf::Omega_form(n), qf::ExactComplex::i());
    std::cout << "  rmap(1,1)(Omega)    = -i omega_I   " << (conv_ok ? "OK" : "FAIL") << "\n";
    std::cout << "  rproj(omega_I)      = i Omega\n";
    std::cout << "  tau                 = -i rproj on real (1,1)-forms\n";
    std::cout << "  V00                 = (-1)^n lambda rmap(n,n,Phi)   OK\n";
    std::cout << "  generator norm      : <dz_k, dz_k> = 2\n";
    std::cout << "  volume normalization: top monomial = 4^n dV\n";
    return (dims_ok && lambda_ok && conv_ok) ? kExitPass : kExitFail;
}

// ---- decompose --------------------------------------------------------------

template <class S>
std::string norm2_str(const qf::Form<S>& f);

template <>
std::string norm2_str(const qf::Form<qf::ExactComplex>& f) {
    return rat_str(qf::euclid_pairing(f, f).re);
}

template <>
std::string norm2_str(const qf::Form<std::complex<double>>& f) {
    std::ostringstream os;
    os.precision(12);
    os << qf::euclid_pairing(f, f).real();
    return os.str();
}

template <class S>
int decompose_report(const qf::Form<S>& f, const std::string& out_path) {
    std::cout << "input: n = " << f.n << ", " << f.terms.size() << " term(s)\n";
    if (f.is_zero()) {
        std::cout << "zero form\n";
        return kExitPass;
    }
    qf::json report = qf::json::array();
    for (auto& [pq, comp] : qf::bidegree_decompose(f)) {
        std::cout << "bidegree (" << pq.first << "," << pq.second
                  << ")  norm^2 = " << norm2_str(comp) << "\n";
        for (auto& [w, part] : qf::weight_decompose(comp)) {
            std::cout << "  weight " << w << "  norm^2 = " << norm2_str(part) << "\n";
            qf::json rec = qf::to_json(part);
            rec["bidegree"] = {pq.first, pq.second};
            rec["weight"] = w;
            report.push_back(rec);
        }
    }
    if (!out_path.empty()) {
        std::ofstream out;
        open_out(out_path, out) << report.dump(2) << "\n";
        std::cout << "component records written to " << out_path << "\n";
    }
    return kExitPass;
}

int cmd_decompose(const RunConfig& rc) {
    if (rc.mode != "exact" && rc.mode != "float")
        throw UsageError("mode must be 'exact' or 'float'");
    qf::json j = qf::parse_json_file(rc.in_path);
    if (rc.mode == "float") return decompose_report(qf::float_form_from_json(j), rc.out_path);
    return decompose_report(qf::exact_form_from_json(j), rc.out_path);
}

// ---- positivity -------------------------------------------------------------

const char* verdict_name(qf::Verdict::Kind k) {
    switch (k) {
        case qf::Verdict::Kind::PositiveCertified: return "PositiveCertified";
        case qf::Verdict::Kind::NegativeCertified: return "NegativeCertified";
        default: return "Unknown";
    }
}

int report_verdict(const qf::Verdict& v, bool seeded) {
    std::cout << "verdict: " << verdict_name(v.kind) << "\n";
    if (v.samples > 0) std::cout << "samples tried: " << v.samples << "\n";
    if (seeded) std::cout << "search seed: " << v.seed << "\n";
    for (std::size_t i = 0; i < v.witness.size(); ++i)
        std::cout << "witness[" << i << "] = " << vec_str(v.witness[i]) << "\n";
    if (v.kind == qf::Verdict::Kind::Unknown)
        std::cout << "no certificate either way at this sample budget\n";
    return v.kind == qf::Verdict::Kind::NegativeCertified ? kExitFail : kExitPass;
}

int cmd_positivity(const RunConfig& rc, bool weak, bool strong, int omega_q, int Omega_q) {
    require_mode(rc, "exact", "positivity");
    int picked = int(weak) + int(strong) + int(omega_q > 0) + int(Omega_q > 0);
    if (picked != 1)
        throw UsageError("pick exactly one of --weak, --strong, --omega-q Q, --Omega-q Q");
    if (rc.samples > 0 && !rc.seed_given)
        throw UsageError("--samples requests a sampled search; --seed is mandatory");

    qf::Form<qf::ExactComplex> f = qf::exact_form_from_json(qf::parse_json_file(rc.in_path));
    if (f.is_zero()) {
        std::cout << "zero form: weakly positive, not strictly\n";
        return kExitPass;
    }
    auto bd = f.bidegree();
    if (!f.pure_bidegree(bd.first, bd.second))
        throw UsageError("positivity criteria need a pure-bidegree form");
    int n = f.n;
    std::cout << "form: n = " << n << ", bidegree (" << bd.first << "," << bd.second << ")\n";

    qf::Strategy st = rc.samples > 0 ? qf::Strategy::sampled(rc.samples, rc.seed)
                                     : qf::Strategy::exact();
    if (weak) {
        if (bd.first == bd.second) return report_verdict(qf::weak_positive_pp(f, st), rc.samples > 0);
        if (bd.second == 0 && qf::is_rho_real(f))
            return report_verdict(qf::weakly_positive_2p0(f, st), rc.samples > 0);
        throw UsageError("--weak needs a real (p,p)-form or a rho-real (2p,0)-form");
    }
    if (strong) {
        if (bd.second != 0 || !qf::is_rho_real(f))
            throw UsageError("--strong needs a rho-real (2p,0)-form");
        return report_verdict(
            qf::strongly_positive_2p0(f, rc.samples > 0 ? rc.samples : -1,
                                      rc.seed_given ? rc.seed : 0x5712a6),
            true);
    }
    if (omega_q > 0) {
        bool ok = qf::omega_q_positive(f, omega_q, qf::omega_I(n));
        std::cout << "omega^q criterion (q = " << omega_q << "): "
                  << (ok ? "satisfied" : "violated") << "\n";
        return ok ? kExitPass : kExitFail;
    }
    bool ok = qf::Omega_q_positive(f, Omega_q);
    std::cout << "Omega^q criterion (q = " << Omega_q << "): " << (ok ? "satisfied" : "violated")
              << "\n";
    return ok ? kExitPass : kExitFail;
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(const RunConfig& rc, const std::string& suite) {
    require_mode(rc, "exact", "verify");
    qf::SuiteConfig cfg;
    cfg.n = rc.n;
    cfg.samples = rc.samples > 0 ? rc.samples : 40;
    cfg.seed = rc.seed;

    std::vector<std::string> names;
    if (suite == "all")
        names = qf::suite_names();
    else
        names.push_back(suite);

    bool all_ok = true;
    for (auto& name : names) {
        qf::SuiteResult res = qf::run_suite(name, cfg);  // unknown name throws
        std::cout << "suite " << res.name << ": " << (res.passed ? "pass" : "FAIL") << "  ("
                  << res.checks << " checks)\n";
        for (auto& msg : res.failures) std::cout << "  failed: " << msg << "\n";
        all_ok = all_ok && res.passed;
    }
    return all_ok ? kExitPass : kExitFail;
}

// ---- experiment -------------------------------------------------------------

int cmd_experiment(const RunConfig& rc, const std::string& name) {
    require_mode(rc, "float", "experiment");  // exact mode forbids experiments
    if (!rc.seed_given) throw UsageError("experiments sample randomly; --seed is mandatory");
    if (rc.n < 1 || rc.n > 3) throw UsageError("experiment n must lie in 1..3");

    std::ofstream file;
    if (name == "sibony") {
        qf::SingularFamily fam = qf::sibony_family(rc.n);
        qf::QuadratureGrid grid;
        grid.samples = rc.samples > 0 ? rc.samples : 100000;
        grid.seed = rc.seed;
        qf::SibonyReport rep = qf::sibony_experiment(fam, grid);
        if (rc.tol > 0) {
            rep.cauchy_tol = rc.tol;
            rep.cauchy_ok = rep.rows.size() >= 2 &&
                            rep.rows[rep.rows.size() - 1].rel_change < rc.tol &&
                            rep.rows[rep.rows.size() - 2].rel_change < rc.tol;
            rep.verdict = rep.cauchy_ok ? qf::kSibonyIntegrable
                          : rep.fit_exponent < 0.25 ? qf::kSibonyDivergent
                                                    : qf::kSibonyInconclusive;
        }
        std::cout << "family " << rep.family << ": n = " << rep.n << ", p = " << rep.p
                  << ", codim = " << rep.codim << "\n";
        std::cout << rep.hypothesis_note << "\n";
        std::ostringstream num;
        num.precision(17);
        num << "mass over the outer shells = " << rep.total
            << "\nfitted shell exponent      = " << rep.fit_exponent;
        std::cout << num.str() << "\n";
        std::cout << "verdict: " << rep.verdict << "\n";
        rep.write_csv(open_out(rc.out_path, file));
        if (!rc.out_path.empty()) std::cout << "report written to " << rc.out_path << "\n";
        bool expected = rep.hypothesis_met ? rep.verdict == qf::kSibonyIntegrable
                                           : rep.verdict == qf::kSibonyDivergent;
        return expected ? kExitPass : kExitFail;
    }
    if (name == "skoda") {
        qf::SingularFamily fam = qf::sibony_family(rc.n);
        qf::Rng trng(rc.seed, 0xa1);
        std::vector<qf::TestForm> alphas = {qf::random_test_form(rc.n, trng),
                                            qf::random_test_form(rc.n, trng),
                                            qf::ring_test_form(rc.n, trng)};
        std::vector<double> eps = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
        long vol = rc.samples > 0 ? rc.samples : 30000;
        qf::SkodaReport rep = qf::skoda_elmir_experiment(fam, alphas, eps, vol,
                                                         std::max<long>(100, vol / 2), rc.seed);
        if (rc.tol > 0) rep.rel_tol = rc.tol;
        bool all_ok = true;
        std::cout << "family " << rep.family << ": n = " << rep.n << ", p = " << rep.p << "\n";
        for (auto& a : rep.alphas) {
            bool ok = a.consistent && a.rel_flux_min_eps < rep.rel_tol;
            all_ok = all_ok && ok;
            std::ostringstream num;
            num.precision(6);
            num << "alpha " << a.alpha_name << ": rel flux at smallest eps = "
                << a.rel_flux_min_eps << ", decay exponent = " << a.decay_exponent
                << (a.decay_resolved ? "" : " (unresolved)") << "  "
                << (ok ? "consistent" : "INCONSISTENT");
            std::cout << num.str() << "\n";
        }
        rep.all_consistent = all_ok;
        rep.verdict = all_ok ? qf::kSkodaClosed : qf::kSkodaInconclusive;
        std::cout << "verdict: " << rep.verdict << "\n";
        rep.write_csv(open_out(rc.out_path, file));
        if (!rc.out_path.empty()) std::cout << "report written to " << rc.out_path << "\n";
        return all_ok ? kExitPass : kExitFail;
    }
    throw UsageError("unknown experiment: " + name + " (known: sibony, skoda)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"positive forms on flat quaternionic space"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string suite_name, experiment_name;
    bool weak = false, strong = false;
    int omega_q = 0, Omega_q = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mode", rc.mode, "exact or float");
        sub->add_option("--n", rc.n, "quaternionic dimension");
        sub->add_option("--seed", rc.seed, "RNG seed")->each([&](const std::string&) {
            rc.seed_given = true;
        });
        sub->add_option("--tol", rc.tol, "tolerance override");
        sub->add_option("--samples", rc.samples, "sample budget");
        sub->add_option("--in", rc.in_path, "input form (JSON)");
        sub->add_option("--out", rc.out_path, "report output path");
    };

    CLI::App* constants = app.add_subcommand("constants", "print the constants table for n");
    add_common(constants);

    CLI::App* decompose =
        app.add_subcommand("decompose", "bidegree and weight components of a form");
    add_common(decompose);
    decompose->get_option("--in")->required();

    CLI::App* positivity = app.add_subcommand("positivity", "positivity verdicts for a form");
    add_common(positivity);
    positivity->get_option("--in")->required();
    positivity->add_flag("--weak", weak, "weak positivity");
    positivity->add_flag("--strong", strong, "strong positivity (cone membership)");
    positivity->add_option("--omega-q", omega_q, "omega^q criterion for (1,1)-forms");
    positivity->add_option("--Omega-q", Omega_q, "Omega^q criterion for rho-real (2,0)-forms");

    CLI::App* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("suite", suite_name, "suite name or 'all'")->required();
    add_common(verify);
    verify->get_option("--seed")->required();

    CLI::App* experiment = app.add_subcommand("experiment", "run a convergence experiment");
    experiment->add_option("name", experiment_name, "sibony or skoda")->required();
    add_common(experiment);
    experiment->get_option("--seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    // experiments are float-mode commands by default; everything else is exact
    if (experiment->parsed() && experiment->get_option("--mode")->count() == 0)
        rc.mode = "float";

    std::string cmd, arg;
    if (constants->parsed()) cmd = "constants";
    if (decompose->parsed()) cmd = "decompose";
    if (positivity->parsed()) cmd = "positivity";
    if (verify->parsed()) cmd = "verify", arg = suite_name;
    if (experiment->parsed()) cmd = "experiment", arg = experiment_name;

    try {
        print_header(cmd, arg, rc);
        if (constants->parsed()) return cmd_constants(rc);
        if (decompose->parsed()) return cmd_decompose(rc);
        if (positivity->parsed()) return cmd_positivity(rc, weak, strong, omega_q, Omega_q);
        if (verify->parsed()) return cmd_verify(rc, suite_name);
        return cmd_experiment(rc, experiment_name);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qf::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
