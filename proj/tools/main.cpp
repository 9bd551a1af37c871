// Command-line front end. Everything computational goes through the
// extern-C surface in mobcone.h; this translation unit only parses flags
// and formats records.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "mobcone/mobcone.h"
#include "record.hpp"

using mobcone_cli::OutputRecord;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(mobcone_status st, const std::string& what) {
    if (st == MOBCONE_OK) return;
    std::string msg = what + ": " + mobcone_last_error();
    if (st == MOBCONE_ERR_NUMERICAL) throw NumericalError(msg);
    throw UsageError(msg);
}

const char* region_name(int code) {
    switch (code) {
        case 1: return "interior";
        case 0: return "boundary";
        case -1: return "exterior";
    }
    return "?";
}

std::vector<double> parse_weights(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.size() < 2) throw UsageError("weights need at least two entries");
    return out;
}

struct ConeHandle {
    mobcone_cone* ptr = nullptr;
    ~ConeHandle() { mobcone_cone_destroy(ptr); }
};

// cone strings: gamma-K, neg-dual-gamma-K, circular:C, extremal-largest:MU,
// extremal-smallest:MU, ordered-linear:w1,w2,...
void cone_from_string(const std::string& spec, int n, ConeHandle& out) {
    auto colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (head.rfind("gamma-", 0) == 0 && head != "gamma-k") {
        int k = std::stoi(head.substr(6));
        check(mobcone_cone_create("gamma-k", n, k, 0.0, nullptr, 0, &out.ptr), "cone");
        return;
    }
    if (head.rfind("neg-dual-gamma-", 0) == 0) {
        int k = std::stoi(head.substr(15));
        check(mobcone_cone_create("neg-dual-gamma-k", n, k, 0.0, nullptr, 0, &out.ptr), "cone");
        return;
    }
    if (head == "circular" || head == "extremal-largest" || head == "extremal-smallest") {
        if (tail.empty()) throw UsageError("cone '" + head + "' needs a parameter after ':'");
        check(mobcone_cone_create(head.c_str(), n, 0, std::stod(tail), nullptr, 0, &out.ptr),
              "cone");
        return;
    }
    if (head == "ordered-linear") {
        std::vector<double> w = parse_weights(tail);
        check(mobcone_cone_create("ordered-linear", static_cast<int>(w.size()), 0, 0.0, w.data(),
                                  static_cast<int>(w.size()), &out.ptr),
              "cone");
        return;
    }
    throw UsageError("unknown cone: " + spec);
}

struct ConeFlags {
    std::string family = "gamma-k";
    int n = 3;
    int k = 1;
    double c = 0.0;
    double mu = 0.0;
    std::string weights;

    void build(ConeHandle& out) const {
        if (family == "ordered-linear") {
            std::vector<double> w = parse_weights(weights);
            check(mobcone_cone_create("ordered-linear", static_cast<int>(w.size()), 0, 0.0,
                                      w.data(), static_cast<int>(w.size()), &out.ptr),
                  "cone");
            return;
        }
        double param = family == "circular" ? c : mu;
        check(mobcone_cone_create(family.c_str(), n, k, param, nullptr, 0, &out.ptr), "cone");
    }

    void add_options(CLI::App* cmd) {
        cmd->add_option("--family", family,
                        "gamma-k | neg-dual-gamma-k | circular | extremal-largest | "
                        "extremal-smallest | ordered-linear")
            ->capture_default_str();
        cmd->add_option("--n", n, "ambient dimension")->capture_default_str();
        cmd->add_option("--k", k, "index k for the gamma families")->capture_default_str();
        cmd->add_option("--c", c, "parameter of the circular family");
        cmd->add_option("--mu", mu, "parameter of the extremal families");
        cmd->add_option("--weights", weights, "comma-separated ordered-linear weights");
    }
};

void emit(const OutputRecord& rec, bool csv, const std::string& out_path) {
    std::string doc = csv ? rec.to_csv() : rec.to_text();
    if (out_path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw NumericalError("cannot open output file: " + out_path);
    f << doc;
}

OutputRecord base_record(const std::string& command) {
    OutputRecord rec;
    rec.command = command;
    rec.version = mobcone_version();
    return rec;
}

void record_cone(OutputRecord& rec, const ConeHandle& cone) {
    char buf[256];
    check(mobcone_cone_describe(cone.ptr, buf, sizeof buf), "describe");
    rec.add_param("cone", buf);
}

void run_cone_info(const ConeFlags& flags, OutputRecord& rec) {
    ConeHandle cone;
    flags.build(cone);
    record_cone(rec, cone);

    double mp, mm, bp, bm;
    check(mobcone_cone_mu(cone.ptr, &mp, &mm), "mu");
    check(mobcone_cone_mu_bisection(cone.ptr, &bp, &bm), "mu bisection");
    rec.add_result("mu_plus", mp);
    rec.add_result("mu_minus", mm);
    rec.add_diagnostic("mu_plus_bisection", bp);
    rec.add_diagnostic("mu_minus_bisection", bm);

    int sr, nr;
    double smar, nmar;
    check(mobcone_cone_lambda_star(cone.ptr, &sr, &smar, &nr, &nmar), "lambda-star");
    rec.add_result("lambda_star", region_name(sr));
    rec.add_result("neg_lambda_star", region_name(nr));
    rec.add_diagnostic("lambda_star_margin", smar);
    rec.add_diagnostic("neg_lambda_star_margin", nmar);
}

void run_radial_classify(const std::string& cone_str, int n, OutputRecord& rec) {
    ConeHandle cone;
    cone_from_string(cone_str, n, cone);
    record_cone(rec, cone);
    double mp, mm;
    check(mobcone_cone_mu(cone.ptr, &mp, &mm), "mu");
    rec.add_result("mu_plus", mp);
    rec.add_result("mu_minus", mm);
    char cases[8];
    check(mobcone_radial_classify(cone.ptr, cases, sizeof cases), "classify");
    rec.add_result("cases", cases);
    for (const char* p = cases; *p; ++p) {
        switch (*p) {
            case 'a': rec.add_diagnostic("case_a", "C1 + C2 log r with C2 in (-2, 0)"); break;
            case 'b': rec.add_diagnostic("case_b", "power form with mu+, C3 > 0, C4 > 0"); break;
            case 'c':
                rec.add_diagnostic("case_c", "C5 + C6 log r with C6 in (-inf, -2) or (0, inf)");
                break;
            case 'd': rec.add_diagnostic("case_d", "power form with mu-, C7 * C8 < 0"); break;
            case 'e': rec.add_diagnostic("case_e", "v = C or v = C - 2 log r"); break;
        }
    }
}

void run_radial_dirichlet(const std::string& cone_str, int n, double a, double b, double alpha,
                          double beta, int samples, OutputRecord& rec) {
    ConeHandle cone;
    cone_from_string(cone_str, n, cone);
    record_cone(rec, cone);

    int solvable, regularity;
    char clause[200];
    mobcone_profile* profile = nullptr;
    check(mobcone_radial_dirichlet(cone.ptr, a, b, alpha, beta, &solvable, &regularity, clause,
                                   sizeof clause, &profile),
          "dirichlet");
    std::unique_ptr<mobcone_profile, decltype(&mobcone_profile_destroy)> guard(
        profile, &mobcone_profile_destroy);

    rec.add_result("solvable", solvable ? "yes" : "no");
    rec.add_result("regularity",
                   regularity == 0 ? "smooth" : (regularity == 1 ? "lipschitz-kink" : "unsolvable"));
    rec.add_result("clause", clause);
    if (!profile) return;

    char pbuf[160];
    check(mobcone_profile_describe(profile, pbuf, sizeof pbuf), "profile");
    rec.add_result("profile", pbuf);
    double rlo, rhi, kink;
    check(mobcone_profile_domain(profile, &rlo, &rhi, &kink), "domain");
    if (std::isfinite(kink)) rec.add_result("kink_radius", kink);

    OutputRecord::Table table;
    table.name = "profile";
    table.columns = {"r", "v", "dv", "margin"};
    for (int i = 0; i < samples; ++i) {
        double r = a * std::pow(b / a, static_cast<double>(i) / (samples - 1));
        if (std::isfinite(kink) && std::fabs(r - kink) < 1e-9 * (1.0 + kink)) continue;
        double v, dv;
        check(mobcone_profile_eval(profile, r, &v, &dv), "profile eval");
        std::vector<double> lam(static_cast<std::size_t>(n));
        check(mobcone_profile_eigen(profile, r, n, lam.data()), "profile eigen");
        int region;
        double margin;
        check(mobcone_cone_contains(cone.ptr, lam.data(), n, 0.0, &region, &margin), "margin");
        table.rows.push_back({r, v, dv, margin});
    }
    rec.tables.push_back(std::move(table));
}

void run_ode(double gamma, double v0, double w0, double window, double threshold, int max_rows,
             OutputRecord& rec) {
    int global;
    check(mobcone_ode_predict(gamma, v0, w0, &global), "predict");
    rec.add_result("predicted", global ? "global" : "finite-time");

    mobcone_trajectory* traj = nullptr;
    check(mobcone_ode_run(gamma, v0, w0, window, threshold, &traj), "run");
    std::unique_ptr<mobcone_trajectory, decltype(&mobcone_trajectory_destroy)> guard(
        traj, &mobcone_trajectory_destroy);

    double drift, tstar;
    int blowup;
    check(mobcone_trajectory_summary(traj, &drift, &blowup, &tstar), "summary");
    rec.add_result("observed", blowup ? "blowup-detected" : "global-on-window");
    if (blowup) rec.add_result("blowup_time", tstar);
    rec.add_result("first_integral_drift", drift);
    rec.add_result("agreement", (global == !blowup) ? "yes" : "no");

    int size;
    check(mobcone_trajectory_size(traj, &size), "size");
    rec.add_diagnostic("accepted_samples", static_cast<double>(size));

    OutputRecord::Table table;
    table.name = "trajectory";
    table.columns = {"t", "phi", "w", "I"};
    int rows = std::min(size, max_rows);
    for (int i = 0; i < rows; ++i) {
        int idx = (rows == 1) ? 0 : static_cast<int>(static_cast<long long>(i) * (size - 1) / (rows - 1));
        double t, phi, w, integral;
        check(mobcone_trajectory_get(traj, idx, &t, &phi, &w, &integral), "sample");
        table.rows.push_back({t, phi, w, integral});
    }
    rec.tables.push_back(std::move(table));
}

void run_blowup(const std::string& kind, int n, int j, int samples, OutputRecord& rec) {
    mobcone_blowup_report rep{};
    check(mobcone_blowup_verify(kind.c_str(), n, j, samples, &rep), "blowup");
    if (kind == "neg-sigma-half") {
        rec.add_result("limit_constant", rep.c_n);
    } else {
        rec.add_result("schedule_c_j", rep.c_j);
        rec.add_result("omega_j", rep.omega_j);
        rec.add_result("bound", rep.bound);
    }
    rec.add_result("max_identity_residual", rep.max_identity_residual);
    rec.add_result("sup_deviation", rep.sup_deviation);
    rec.add_result("min_grad_inner", rep.min_grad);
    rec.add_result("max_field_value", rep.max_field_value);
    rec.add_result("in_cone", rep.in_cone ? "yes" : "no");
}

void run_symfun_check(const std::string& family, const std::string& gauge_from, const ConeFlags& flags,
                      int samples, unsigned long long seed, OutputRecord& rec) {
    mobcone_report* rep = nullptr;
    if (!gauge_from.empty()) {
        // reuse the cone-string grammar for the gauge source
        auto colon = gauge_from.find(':');
        std::string head = colon == std::string::npos ? gauge_from : gauge_from.substr(0, colon);
        std::string tail = colon == std::string::npos ? "" : gauge_from.substr(colon + 1);
        if (head.rfind("gamma-", 0) == 0) {
            int k = std::stoi(head.substr(6));
            check(mobcone_symfun_check("gauge:gamma-k", flags.n, k, 0.0, nullptr, 0, samples, seed,
                                       &rep),
                  "symfun");
        } else if (head == "circular") {
            check(mobcone_symfun_check("gauge:circular", flags.n, 0, std::stod(tail), nullptr, 0,
                                       samples, seed, &rep),
                  "symfun");
        } else if (head == "ordered-linear") {
            std::vector<double> w = parse_weights(tail);
            check(mobcone_symfun_check("gauge:ordered-linear", static_cast<int>(w.size()), 0, 0.0,
                                       w.data(), static_cast<int>(w.size()), samples, seed, &rep),
                  "symfun");
        } else {
            throw UsageError("unsupported gauge source: " + gauge_from);
        }
        rec.add_param("gauge_from", gauge_from);
    } else {
        std::vector<double> w;
        const double* wp = nullptr;
        int wn = 0;
        if (family == "ordered-linear") {
            w = parse_weights(flags.weights);
            wp = w.data();
            wn = static_cast<int>(w.size());
        }
        double param = family == "circular" ? flags.c : flags.mu;
        if (family == "lambda-sum") param = flags.mu;
        check(mobcone_symfun_check(family.c_str(), flags.n, flags.k, param, wp, wn, samples, seed,
                                   &rep),
              "symfun");
        rec.add_param("family", family);
    }
    std::unique_ptr<mobcone_report, decltype(&mobcone_report_destroy)> guard(
        rep, &mobcone_report_destroy);

    int size;
    check(mobcone_report_size(rep, &size), "report");
    bool all_pass = true;
    for (int i = 0; i < size; ++i) {
        char name[64], note[200];
        int pass;
        double worst;
        check(mobcone_report_item(rep, i, name, sizeof name, &pass, &worst, note, sizeof note),
              "report item");
        std::string key = std::string("check.") + name;
        rec.add_result(key, pass == 1 ? "pass" : (pass == 0 ? "fail" : "n/a"));
        rec.add_diagnostic(key + ".worst", worst);
        if (note[0]) rec.add_diagnostic(key + ".note", note);
        if (pass == 0) all_pass = false;
    }
    rec.add_result("all_pass", all_pass ? "yes" : "no");
}

void run_verify_bubble(int n, double a, double b, int trials, unsigned long long seed,
                       OutputRecord& rec) {
    double dev_an, dev_fd;
    check(mobcone_verify_bubble(n, a, b, trials, seed, &dev_an, &dev_fd), "bubble");
    rec.add_result("target", 2.0 * b * b / (a * a));
    rec.add_result("max_deviation_analytic", dev_an);
    rec.add_result("max_deviation_fd", dev_fd);
}

void run_ricci_constants(const std::string& example, int n, int i, int j, int p, double a, double b,
                         OutputRecord& rec) {
    double value, ratio_sq;
    int ok, pass;
    if (b <= 0.0) {
        // no explicit pair: use the normalizing ratio for the example
        check(mobcone_ricci_constants(example.c_str(), n, i, j, p, 1.0, 1.0, &value, &ratio_sq, &ok,
                                      &pass),
              "ricci");
        a = 1.0;
        b = std::sqrt(ratio_sq);
    }
    check(mobcone_ricci_constants(example.c_str(), n, i, j, p, a, b, &value, &ratio_sq, &ok, &pass),
          "ricci");
    rec.add_param("a", a);
    rec.add_param("b", b);
    rec.add_result("value", value);
    rec.add_result("required_ratio_sq", ratio_sq);
    rec.add_result("constraint_satisfied", ok ? "yes" : "no");
    rec.add_result("pass", pass ? "yes" : "no");

    double rt_err;
    check(mobcone_ricci_roundtrip(n, 200, 5, &rt_err), "roundtrip");
    rec.add_diagnostic("dictionary_roundtrip_max_err", rt_err);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("MOBCONE_TOLERANCES")) {
        if (mobcone_set_tolerances(env) != MOBCONE_OK) {
            std::cerr << "error: MOBCONE_TOLERANCES: " << mobcone_last_error() << "\n";
            return 2;
        }
    }

    CLI::App app{"explicit constructions for conformally invariant eigenvalue equations"};
    app.require_subcommand(1);
    bool csv = false;
    std::string out_path;
    app.add_flag("--csv", csv, "emit CSV tables instead of the structured-text record");
    app.add_option("--out", out_path, "write the record to this path instead of stdout");

    // cone info
    auto* cone_cmd = app.add_subcommand("cone", "cone invariants");
    cone_cmd->require_subcommand(1);
    auto* cone_info = cone_cmd->add_subcommand("info", "mu+/mu- and the lambda-star classification");
    ConeFlags cone_flags;
    cone_flags.add_options(cone_info);

    // radial classify / dirichlet
    auto* radial_cmd = app.add_subcommand("radial", "radial solutions on annuli");
    radial_cmd->require_subcommand(1);
    auto* radial_classify = radial_cmd->add_subcommand("classify", "admissible smooth families");
    std::string classify_cone = "gamma-1";
    int classify_n = 3;
    radial_classify->add_option("--cone,--family-cone", classify_cone,
                                "cone string, e.g. gamma-2 or circular:0.5")
        ->capture_default_str();
    radial_classify->add_option("--n", classify_n, "ambient dimension")->capture_default_str();

    auto* radial_dirichlet = radial_cmd->add_subcommand("dirichlet", "solve the annulus problem");
    std::string dirichlet_cone = "gamma-1";
    int dirichlet_n = 3, dirichlet_samples = 33;
    double dir_a = 1.0, dir_b = 2.0, dir_alpha = 0.0, dir_beta = 0.0;
    radial_dirichlet->add_option("--cone", dirichlet_cone, "cone string")->capture_default_str();
    radial_dirichlet->add_option("--n", dirichlet_n, "ambient dimension")->capture_default_str();
    radial_dirichlet->add_option("--a", dir_a, "inner radius")->capture_default_str();
    radial_dirichlet->add_option("--b", dir_b, "outer radius")->capture_default_str();
    radial_dirichlet->add_option("--alpha", dir_alpha, "value at r = a")->capture_default_str();
    radial_dirichlet->add_option("--beta", dir_beta, "value at r = b")->capture_default_str();
    radial_dirichlet->add_option("--samples", dirichlet_samples, "profile table rows")
        ->capture_default_str();

    // ode run
    auto* ode_cmd = app.add_subcommand("ode", "phase-plane runs of the one-variable equation");
    ode_cmd->require_subcommand(1);
    auto* ode_run_cmd = ode_cmd->add_subcommand("run", "integrate and compare with the predicate");
    double ode_gamma = 1.0, ode_v0 = 0.0, ode_w0 = 0.0, ode_window = 50.0, ode_threshold = 1e8;
    int ode_max_rows = 200;
    ode_run_cmd->add_option("--gamma", ode_gamma, "coefficient gamma")->capture_default_str();
    ode_run_cmd->add_option("--v0", ode_v0, "initial value")->capture_default_str();
    ode_run_cmd->add_option("--w0", ode_w0, "initial slope")->capture_default_str();
    ode_run_cmd->add_option("--window", ode_window, "integration window")->capture_default_str();
    ode_run_cmd->add_option("--threshold", ode_threshold, "blow-up detection threshold")
        ->capture_default_str();
    ode_run_cmd->add_option("--max-rows", ode_max_rows, "table row cap")->capture_default_str();

    // counterexample blowup
    auto* ce_cmd = app.add_subcommand("counterexample", "gradient blow-up families");
    ce_cmd->require_subcommand(1);
    auto* ce_blowup = ce_cmd->add_subcommand("blowup", "verify one family member");
    std::string ce_kind = "neg-sigma-half";
    int ce_n = 4, ce_j = 10, ce_samples = 100;
    ce_blowup->add_option("--kind", ce_kind, "neg-sigma-half | neg-general | pos-general")
        ->capture_default_str();
    ce_blowup->add_option("--n", ce_n, "ambient dimension")->capture_default_str();
    ce_blowup->add_option("--j", ce_j, "family index")->capture_default_str();
    ce_blowup->add_option("--samples", ce_samples, "slab sample count")->capture_default_str();

    // symfun check
    auto* symfun_cmd = app.add_subcommand("symfun", "symmetric-function structure checks");
    symfun_cmd->require_subcommand(1);
    auto* symfun_check = symfun_cmd->add_subcommand("check", "sampled structural verification");
    ConeFlags symfun_flags;
    std::string symfun_family = "sigma-k-root";
    std::string gauge_from;
    int symfun_samples = 200;
    unsigned long long symfun_seed = 23;
    symfun_check->add_option(
        "--family", symfun_family,
        "sigma-k | sigma-k-root | weitzenbock | lambda-sum | circular | ordered-linear")
        ->capture_default_str();
    symfun_check->add_option("--gauge-from", gauge_from,
                             "check the gauge function of this cone instead");
    symfun_check->add_option("--n", symfun_flags.n, "ambient dimension")->capture_default_str();
    symfun_check->add_option("--k", symfun_flags.k, "family index")->capture_default_str();
    symfun_check->add_option("--c", symfun_flags.c, "circular parameter");
    symfun_check->add_option("--q", symfun_flags.mu, "upper offset of lambda-sum");
    symfun_check->add_option("--weights", symfun_flags.weights, "ordered-linear weights");
    symfun_check->add_option("--samples", symfun_samples, "sample count")->capture_default_str();
    symfun_check->add_option("--seed", symfun_seed, "sampling seed")->capture_default_str();

    // verify bubble
    auto* verify_cmd = app.add_subcommand("verify", "closed-form identities");
    verify_cmd->require_subcommand(1);
    auto* verify_bubble = verify_cmd->add_subcommand("bubble", "constant-matrix identity");
    int vb_n = 3, vb_trials = 20;
    unsigned long long vb_seed = 7;
    double vb_a = 1.0, vb_b = 1.0;
    verify_bubble->add_option("--n", vb_n, "ambient dimension")->capture_default_str();
    verify_bubble->add_option("--a", vb_a, "amplitude")->capture_default_str();
    verify_bubble->add_option("--b", vb_b, "width")->capture_default_str();
    verify_bubble->add_option("--trials", vb_trials, "random placements")->capture_default_str();
    verify_bubble->add_option("--seed", vb_seed, "sampling seed")->capture_default_str();

    // ricci constants
    auto* ricci_cmd = app.add_subcommand("ricci", "eigenvalue dictionary checks");
    ricci_cmd->require_subcommand(1);
    auto* ricci_constants = ricci_cmd->add_subcommand("constants", "normalized bubble constants");
    std::string ricci_example = "ricci-eigenvalue";
    int ricci_n = 3, ricci_i = 2, ricci_j = 0, ricci_p = 1;
    double ricci_a = 1.0, ricci_b = 0.0;
    ricci_constants->add_option("--example", ricci_example,
                                "ricci-eigenvalue | ricci-eigenvalue-sum | weitzenbock")
        ->capture_default_str();
    ricci_constants->add_option("--n", ricci_n, "ambient dimension")->capture_default_str();
    ricci_constants->add_option("--i", ricci_i, "first eigenvalue index")->capture_default_str();
    ricci_constants->add_option("--j", ricci_j, "last eigenvalue index (sum example)");
    ricci_constants->add_option("--p", ricci_p, "form degree (weitzenbock)")->capture_default_str();
    ricci_constants->add_option("--a", ricci_a, "amplitude")->capture_default_str();
    ricci_constants->add_option("--b", ricci_b, "width; omitted = on-constraint value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        OutputRecord rec = base_record("");
        if (cone_info->parsed()) {
            rec.command = "cone info";
            rec.add_param("family", cone_flags.family);
            rec.add_param("n", cone_flags.n);
            if (cone_flags.family.rfind("gamma", 0) == 0 ||
                cone_flags.family.rfind("neg-dual", 0) == 0)
                rec.add_param("k", cone_flags.k);
            run_cone_info(cone_flags, rec);
        } else if (radial_classify->parsed()) {
            rec.command = "radial classify";
            rec.add_param("n", classify_n);
            run_radial_classify(classify_cone, classify_n, rec);
        } else if (radial_dirichlet->parsed()) {
            rec.command = "radial dirichlet";
            rec.add_param("n", dirichlet_n);
            rec.add_param("a", dir_a);
            rec.add_param("b", dir_b);
            rec.add_param("alpha", dir_alpha);
            rec.add_param("beta", dir_beta);
            run_radial_dirichlet(dirichlet_cone, dirichlet_n, dir_a, dir_b, dir_alpha, dir_beta,
                                 dirichlet_samples, rec);
        } else if (ode_run_cmd->parsed()) {
            rec.command = "ode run";
            rec.add_param("gamma", ode_gamma);
            rec.add_param("v0", ode_v0);
            rec.add_param("w0", ode_w0);
            rec.add_param("window", ode_window);
            rec.add_param("threshold", ode_threshold);
            run_ode(ode_gamma, ode_v0, ode_w0, ode_window, ode_threshold, ode_max_rows, rec);
        } else if (ce_blowup->parsed()) {
            rec.command = "counterexample blowup";
            rec.add_param("kind", ce_kind);
            rec.add_param("n", ce_n);
            rec.add_param("j", ce_j);
            run_blowup(ce_kind, ce_n, ce_j, ce_samples, rec);
        } else if (symfun_check->parsed()) {
            rec.command = "symfun check";
            rec.add_param("n", symfun_flags.n);
            rec.add_param("samples", symfun_samples);
            run_symfun_check(symfun_family, gauge_from, symfun_flags, symfun_samples, symfun_seed,
                             rec);
        } else if (verify_bubble->parsed()) {
            rec.command = "verify bubble";
            rec.add_param("n", vb_n);
            rec.add_param("a", vb_a);
            rec.add_param("b", vb_b);
            rec.add_param("trials", vb_trials);
            run_verify_bubble(vb_n, vb_a, vb_b, vb_trials, vb_seed, rec);
        } else if (ricci_constants->parsed()) {
            rec.command = "ricci constants";
            rec.add_param("example", ricci_example);
            rec.add_param("n", ricci_n);
            if (ricci_j <= 0) ricci_j = ricci_i;
            run_ricci_constants(ricci_example, ricci_n, ricci_i, ricci_j, ricci_p, ricci_a, ricci_b,
                                rec);
        } else {
            throw UsageError("no subcommand selected");
        }
        emit(rec, csv, out_path);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
