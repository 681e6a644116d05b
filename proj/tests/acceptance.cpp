// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Sample budgets here are deliberately larger than the unit suites; the
// invariant bundles themselves live in qforms/suites.hpp and the convergence
// experiments in qforms/experiments.hpp.

#include "qforms/experiments.hpp"
#include "qforms/suites.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace qf;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const char* tag, bool ok, double secs, const std::string& detail) {
    std::printf("[%s] %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", tag, detail.c_str(), secs);
    if (!ok) ++failures;
}

struct SuiteTally {
    bool ok = true;
    long checks = 0;
    std::vector<std::string> notes;

    void add(const std::string& name, const SuiteConfig& cfg) {
        SuiteResult r = run_suite(name, cfg);
        ok = ok && r.passed;
        checks += r.checks;
        if (!r.passed)
            notes.push_back(name + ": " + (r.failures.empty() ? "failed" : r.failures.front()));
    }

    std::string detail(const std::string& what) const {
        std::string out = what + ", " + std::to_string(checks) + " exact checks";
        for (auto& n : notes) out += "; " + n;
        return out;
    }
};

// C1: the exact identity battery, n = 1 and 2, fresh random inputs per identity
void criterion_identities() {
    auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.samples = 220;
    cfg.seed = 0xacc001;
    SuiteTally tally;
    for (const char* s : {"differentials", "real-structure", "rmap-rproj", "intertwining"})
        tally.add(s, cfg);

    // vmap conjugation rule, all (p,q) at n = 1 and 2
    long conj_checks = 0;
    bool conj_ok = true;
    for (int n : {1, 2}) {
        Rng rng(0xacc001, mix_seed(99, uint64_t(n)));
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                for (int rep = 0; rep < 30; ++rep) {
                    Form<ExactComplex> eta = suitedetail::random_pq_form(n, p + q, 0, rng);
                    Form<ExactComplex> lhs = vmap(p, q, apply_J(conjugate(eta)));
                    Form<ExactComplex> rhs = conjugate(vmap(q, p, eta));
                    int sign = ((n + p) & 1) ? -1 : 1;
                    conj_ok = conj_ok && lhs == scale(rhs, ExactComplex(sign));
                    ++conj_checks;
                }
    }
    tally.ok = tally.ok && conj_ok;
    tally.checks += conj_checks;
    if (!conj_ok) tally.notes.push_back("vmap conjugation rule failed");

    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C1 exact identities", tally.ok && secs < 60.0,
           secs, tally.detail("differential/real-structure/rmap/intertwining/vmap bundles"));
}

// C2: Casimir spectra are exactly the admissible weights; plus-projection
// ranks are C(2n, p+q) on every bidegree block
void criterion_weights() {
    auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.samples = 60;
    cfg.seed = 0xacc002;
    SuiteTally tally;
    tally.add("weights", cfg);
    tally.add("plus-projection", cfg);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C2 weight spectra and ranks", tally.ok && secs < 30.0, secs,
           tally.detail("n = 1 and 2, all degrees"));
}

// C3: lambda via the direct pairing equals the Xi/gamma path, n = 1..3
void criterion_lambda() {
    auto t0 = Clock::now();
    SuiteConfig cfg;
    SuiteTally tally;
    tally.add("lambda-two-path", cfg);
    bool frozen = lambda_constant(1) == Rat(2) && lambda_constant(2) == Rat(6) &&
                  lambda_constant(3) == Rat(20);
    tally.ok = tally.ok && frozen;
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C3 lambda two-path", tally.ok, secs, tally.detail("golden 2, 6, 20"));
}

// C4: three-way weak-positivity correspondence on >= 10^3 random real
// (2,0)-forms at n = 2
void criterion_correspondence() {
    auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.samples = 1000;
    cfg.seed = 0xacc004;
    SuiteTally tally;
    tally.add("positivity-correspondence", cfg);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C4 verdict correspondence", tally.ok, secs, tally.detail("1002 forms, zero disagreements required"));
}

// C5: omega^q criterion against sampled positivity of eta ^ omega^{q-1},
// q in {1,2,3}, >= 10^3 controlled spectra
void criterion_omega_q() {
    auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.samples = 1000;
    cfg.seed = 0xacc005;
    SuiteTally tally;
    tally.add("omega-q", cfg);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C5 omega^q criterion", tally.ok, secs, tally.detail("1000 spectra, q = 1..3"));
}

// C6: no omega^{2n-2p}-positive form whose transfer fails the Omega^{n-p}
// criterion, >= 10^3 forms
void criterion_transfer() {
    auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.samples = 1000;
    cfg.seed = 0xacc006;
    SuiteTally tally;
    tally.add("transfer", cfg);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C6 positivity transfer", tally.ok, secs, tally.detail("1000 forms per n"));
}

// C7: shell-mass experiment for the potential family, default grid
void criterion_sibony() {
    auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        QuadratureGrid grid;
        grid.seed = 0xacc007;
        SibonyReport rep = sibony_experiment(sibony_family(2), grid);
        ok = rep.hypothesis_met && rep.cauchy_ok && rep.cumulative_monotone &&
             rep.verdict == kSibonyIntegrable;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "verdict '%s', fit exponent %.2f, last refinements within %.0f%%",
                      rep.verdict.c_str(), rep.fit_exponent, 100.0 * rep.cauchy_tol);
        detail = buf;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C7 shell-mass convergence", ok && secs < 60.0, secs, detail);
}

// C8: excision pairing for the same family against three independent test
// forms; Stokes-consistent rows, relative flux < 1e-3 at the smallest tube,
// and a positive decay exponent wherever the flux resolves above noise
void criterion_skoda() {
    auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        Rng trng(0xacc008, 0xa1);
        std::vector<TestForm> alphas = {random_test_form(2, trng), random_test_form(2, trng),
                                        ring_test_form(2, trng)};
        std::vector<double> eps = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
        SkodaReport rep = skoda_elmir_experiment(sibony_family(2), alphas, eps, 200000, 100000,
                                                 0xacc008);
        ok = rep.all_consistent;
        int resolved = 0;
        double worst_rel = 0;
        for (auto& a : rep.alphas) {
            ok = ok && a.consistent && a.rel_flux_min_eps < 1e-3;
            if (a.rel_flux_min_eps > worst_rel) worst_rel = a.rel_flux_min_eps;
            if (a.decay_resolved) {
                ++resolved;
                ok = ok && a.decay_exponent > 0;
            }
            for (auto& row : a.rows) ok = ok && row.stokes_consistent;
        }
        ok = ok && resolved >= 1;  // at least one genuine log-log fit
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "verdict '%s', worst relative flux %.2e, %d/%zu decays resolved",
                      rep.verdict.c_str(), worst_rel, resolved, rep.alphas.size());
        detail = buf;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report("C8 excision pairing", ok && secs < 120.0, secs, detail);
}

}  // namespace

int main() {
    criterion_identities();
    criterion_weights();
    criterion_lambda();
    criterion_correspondence();
    criterion_omega_q();
    criterion_transfer();
    criterion_sibony();
    criterion_skoda();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
