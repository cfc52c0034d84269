#include "pbk_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pbk/diagnostics.hpp"
#include "pbk/errors.hpp"
#include "pbk/kernels.hpp"
#include "pbk/pricing.hpp"

namespace pbk::cli {
namespace {

using nlohmann::json;

/// Flags shared by every subcommand; unset optionals fall back to --params, then defaults.
struct ModelFlags {
    std::optional<std::string> model;
    std::optional<double> sigma, r, w, lower, upper, a, b;
    std::string params_file;
};

struct Model {
    std::string name;
    double sigma = 0.2;
    double r = 0.05;
    double w = 0.0;
    double a = std::log(80.0);
    double b = std::log(120.0);
    json knobs = json::object();

    MarketParams market() const { return MarketParams(sigma, r); }
    harmonic::HarmonicParams harmonic() const {
        if (!std::isfinite(w)) throw InvalidInput("w must be finite");
        return {market(), w};
    }
    barrier::BarrierParams barrier() const {
        barrier::BarrierParams p{market(), a, b};
        p.validate();
        return p;
    }
    bool is_barrier() const { return name == "barrier"; }
};

void add_model_flags(CLI::App& sub, ModelFlags& f) {
    sub.add_option("--model", f.model, "harmonic or barrier (default barrier)")
        ->check(CLI::IsMember({"harmonic", "barrier"}));
    sub.add_option("--sigma", f.sigma, "volatility (default 0.2)");
    sub.add_option("--r", f.r, "risk-free rate (default 0.05)");
    sub.add_option("--w", f.w, "harmonic shift parameter (default 0)");
    auto* lower = sub.add_option("--lower", f.lower, "lower barrier in price units (default 80)");
    auto* upper = sub.add_option("--upper", f.upper, "upper barrier in price units (default 120)");
    sub.add_option("--a", f.a, "lower barrier in log-price")->excludes(lower);
    sub.add_option("--b", f.b, "upper barrier in log-price")->excludes(upper);
    sub.add_option("--params", f.params_file, "JSON parameter file in the report echo schema");
}

json load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open params file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidInput("params file '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("params_echo")) j = j["params_echo"];
    if (!j.is_object()) throw InvalidInput("params file must hold a JSON object");
    return j;
}

double log_price(double s, const char* flag) {
    if (!(std::isfinite(s) && s > 0.0)) throw InvalidInput(std::string(flag) + " must be a positive price");
    return std::log(s);
}

Model resolve(const ModelFlags& f) {
    json file = f.params_file.empty() ? json::object() : load_params(f.params_file);
    auto from_file = [&file](const char* key, auto fallback) {
        using T = decltype(fallback);
        if (!file.contains(key)) return fallback;
        try {
            return file.at(key).template get<T>();
        } catch (const json::exception&) {
            throw InvalidInput(std::string("params file: bad value for '") + key + "'");
        }
    };
    Model m;
    m.name = f.model.value_or(from_file("model", std::string("barrier")));
    if (m.name != "harmonic" && m.name != "barrier") throw InvalidInput("unknown model '" + m.name + "'");
    m.sigma = f.sigma.value_or(from_file("sigma", m.sigma));
    m.r = f.r.value_or(from_file("r", m.r));
    m.w = f.w.value_or(from_file("w", m.w));
    m.a = f.a ? *f.a : f.lower ? log_price(*f.lower, "--lower") : from_file("a", m.a);
    m.b = f.b ? *f.b : f.upper ? log_price(*f.upper, "--upper") : from_file("b", m.b);
    if (file.contains("knobs") && file["knobs"].is_object()) m.knobs = file["knobs"];
    return m;
}

/// Writes to --out when given, else to `out`.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
}

// diagnose

struct DiagnoseFlags {
    ModelFlags model;
    std::optional<int> n_max, fd_points, quasi_n, norm_n;
    std::string out_path;
};

int cmd_diagnose(const DiagnoseFlags& f, std::ostream& out, std::ostream& err) {
    const Model m = resolve(f.model);
    diagnostics::Options opt;
    auto knob = [&m](const char* key, std::optional<int> flag, int fallback) {
        if (flag) return *flag;
        if (!m.knobs.contains(key)) return fallback;
        if (!m.knobs.at(key).is_number_integer()) throw InvalidInput(std::string("params file: knob '") + key + "' must be an integer");
        return m.knobs.at(key).get<int>();
    };
    opt.n_max = knob("n_max", f.n_max, opt.n_max);
    opt.fd_points = knob("fd_points", f.fd_points, opt.fd_points);
    opt.quasi_n = knob("quasi_n", f.quasi_n, opt.quasi_n);
    opt.norm_n = knob("norm_n", f.norm_n, opt.norm_n);
    if (opt.n_max < 1 || opt.n_max > 40) throw InvalidInput("--nmax must lie in [1, 40]");
    if (opt.fd_points < 101) throw InvalidInput("--fd-points must be >= 101");
    if (opt.quasi_n < 1 || opt.quasi_n > 60) throw InvalidInput("--quasi-n must lie in [1, 60]");
    if (opt.norm_n < 1 || opt.norm_n > 60) throw InvalidInput("--norm-n must lie in [1, 60]");

    const auto report = m.is_barrier() ? diagnostics::diagnose(m.barrier(), opt)
                                       : diagnostics::diagnose(m.harmonic(), opt);
    emit(f.out_path, out, json(report).dump(2) + "\n");
    if (report.all_pass()) return kExitOk;
    for (const auto& c : report.checks)
        if (!c.pass) err << "check failed: " << c.name << " residual " << c.max_residual << " > " << c.tolerance << "\n";
    return kExitFailure;
}

// kernel

struct KernelFlags {
    ModelFlags model;
    std::vector<double> xs, x_primes;
    std::vector<double> taus{0.5};
    int n_trunc = 80;
    std::string format = "csv";
    std::string out_path;
};

int cmd_kernel(const KernelFlags& f, std::ostream& out) {
    const Model m = resolve(f.model);
    std::vector<kernels::KernelRow> rows;
    json echo;
    if (m.is_barrier()) {
        const auto p = m.barrier();
        const std::vector<double> mid{0.5 * (p.a + p.b)};
        rows = kernels::kernel_table(p, f.xs.empty() ? mid : f.xs, f.x_primes.empty() ? mid : f.x_primes, f.taus,
                                     f.n_trunc);
        echo = {{"model", "barrier"}, {"sigma", m.sigma}, {"r", m.r}, {"a", p.a}, {"b", p.b}};
    } else {
        const auto p = m.harmonic();
        const std::vector<double> centre{p.center()};
        rows = kernels::kernel_table(p, f.xs.empty() ? centre : f.xs, f.x_primes.empty() ? centre : f.x_primes,
                                     f.taus, f.n_trunc);
        echo = {{"model", "harmonic"}, {"sigma", m.sigma}, {"r", m.r}, {"w", m.w}};
    }
    echo["knobs"] = {{"n_trunc", f.n_trunc}};

    if (f.format == "csv") {
        std::ostringstream s;
        kernels::write_csv(s, rows);
        emit(f.out_path, out, s.str());
        return kExitOk;
    }
    json j{{"params_echo", echo}, {"rows", json::array()}};
    double worst = 0.0;
    for (const auto& r : rows) {
        j["rows"].push_back({{"x", r.x},
                             {"x_prime", r.x_prime},
                             {"tau", r.tau},
                             {"which", kernels::to_string(r.which)},
                             {"method", kernels::to_string(r.method)},
                             {"value", r.value},
                             {"tail_estimate", r.tail_estimate},
                             {"agreement", r.agreement}});
        worst = std::max(worst, r.agreement);
    }
    j["max_agreement"] = worst;
    emit(f.out_path, out, j.dump(2) + "\n");
    return kExitOk;
}

// price

struct PriceFlags {
    ModelFlags model;
    std::string payoff = "call";
    double strike = 100.0;
    double spot = 100.0;
    double tau = 0.5;
    std::string which = "p1";
    bool flip_beta = false;
    std::optional<int> n_trunc;
    std::string oracle = "none";
    pricing::MCConfig mc;
    bool no_bridge = false;
    std::string out_path;
};

int cmd_price(const PriceFlags& f, std::ostream& out) {
    const Model m = resolve(f.model);
    const pricing::Payoff payoff(pricing::payoff_kind_from_string(f.payoff), f.strike);
    const double x = log_price(f.spot, "--spot");
    const auto which = f.which == "p2" ? kernels::Which::p2 : kernels::Which::p1;

    pricing::PricingResult result;
    if (m.is_barrier()) {
        auto p = m.barrier();
        if (f.flip_beta) p = p.flipped_beta();
        result = pricing::price_spectral(p, which, payoff, x, f.tau, f.n_trunc.value_or(128));
    } else {
        auto p = m.harmonic();
        if (f.flip_beta) p = p.flipped_beta();
        result = pricing::price_spectral(p, which, payoff, x, f.tau, f.n_trunc.value_or(80));
    }
    result.config_echo["flip_beta"] = f.flip_beta;

    json j{{"price", result}, {"oracle", nullptr}};
    if (f.oracle == "mc") {
        if (!m.is_barrier()) throw InvalidInput("the Monte Carlo oracle prices the barrier model only");
        auto cfg = f.mc;
        cfg.bridge_correction = !f.no_bridge;
        const auto mc = pricing::price_mc_barrier(payoff, f.spot, std::exp(m.a), std::exp(m.b), m.sigma, m.r, f.tau, cfg);
        j["oracle"] = mc;
        j["difference"] = result.value - mc.value;
        j["z_score"] = (result.value - mc.value) / *mc.std_error;
    } else if (f.oracle == "bs") {
        const double bs = pricing::bs_closed_form(payoff.kind, f.spot, f.strike, m.sigma, m.r, f.tau);
        j["oracle"] = {{"value", bs}, {"method", "black_scholes"}};
        j["difference"] = result.value - bs;
    }
    emit(f.out_path, out, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-boson diagnostics, pricing kernels and option prices", "pbk"};
    app.require_subcommand(1);

    DiagnoseFlags df;
    auto* diagnose = app.add_subcommand("diagnose", "run the ladder/biorthogonality suite and write a JSON report");
    add_model_flags(*diagnose, df.model);
    diagnose->add_option("--nmax", df.n_max, "largest index in the ladder checks (default 20)");
    diagnose->add_option("--fd-points", df.fd_points, "grid size of the finite-difference ladder check");
    diagnose->add_option("--quasi-n", df.quasi_n, "quasi-basis truncation");
    diagnose->add_option("--norm-n", df.norm_n, "largest index in the norm-law check");
    diagnose->add_option("--out", df.out_path, "report file (default stdout)");

    KernelFlags kf;
    auto* kernel = app.add_subcommand("kernel", "tabulate p1/p2 by spectral sum and closed form");
    add_model_flags(*kernel, kf.model);
    kernel->add_option("--x", kf.xs, "log-price points")->delimiter(',');
    kernel->add_option("--xprime", kf.x_primes, "log-price points")->delimiter(',');
    kernel->add_option("--tau", kf.taus, "times to maturity")->delimiter(',');
    kernel->add_option("--n-trunc", kf.n_trunc, "spectral truncation (default 80)");
    kernel->add_option("--format", kf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    kernel->add_option("--out", kf.out_path, "output file (default stdout)");

    PriceFlags pf;
    auto* price = app.add_subcommand("price", "price an option with the spectral kernel");
    add_model_flags(*price, pf.model);
    price->add_option("--payoff", pf.payoff, "call, put or digital_call")
        ->check(CLI::IsMember({"call", "put", "digital_call"}));
    price->add_option("--strike", pf.strike, "strike (default 100)");
    price->add_option("--spot", pf.spot, "spot price (default 100)");
    price->add_option("--tau", pf.tau, "time to maturity (default 0.5)");
    price->add_option("--which", pf.which, "p1 or p2")->check(CLI::IsMember({"p1", "p2"}));
    price->add_flag("--flip-beta", pf.flip_beta, "evaluate with beta replaced by -beta");
    price->add_option("--n-trunc", pf.n_trunc, "spectral truncation (default 128 barrier, 80 harmonic)");
    price->add_option("--oracle", pf.oracle, "none, mc or bs")->check(CLI::IsMember({"none", "mc", "bs"}));
    price->add_option("--paths", pf.mc.paths, "Monte Carlo paths (default 200000)");
    price->add_option("--steps", pf.mc.steps, "Monte Carlo steps (default 512)");
    price->add_option("--seed", pf.mc.seed, "Monte Carlo seed");
    price->add_flag("--no-bridge", pf.no_bridge, "disable the Brownian-bridge survival weight");
    price->add_option("--out", pf.out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*diagnose) return cmd_diagnose(df, out, err);
        if (*kernel) return cmd_kernel(kf, out);
        return cmd_price(pf, out);
    } catch (const InvalidInput& e) {
        err << "pbk: invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "pbk: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace pbk::cli
