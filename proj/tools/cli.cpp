#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apchar/characteristic.hpp"
#include "apchar/error.hpp"
#include "apchar/verification.hpp"
#include "apchar/weight_io.hpp"
#include "apchar/weight_ops.hpp"

namespace apchar::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string input;
    std::string output;
    std::string p1 = "1";
    std::string p2 = "-1";
    std::string policy;
    std::string mode;
    std::string claim;
    std::optional<unsigned> threads;
    std::uint64_t seed = 42;
    std::optional<std::size_t> trials;
    std::optional<double> a;

    // transform takes one value, verify/sweep take lists
    std::optional<double> above;
    std::optional<double> below;
    std::optional<long> truncate;
    std::optional<double> bm_s;
    std::vector<double> above_list;
    std::vector<double> below_list;
    std::vector<long> truncate_list;
    std::vector<double> bm_list;
};

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorKind::Domain, what); }

Exponent parse_exponent(const std::string& token) {
    if (token == "inf" || token == "+inf") return Exponent::plus_infinity();
    if (token == "-inf") return Exponent::minus_infinity();
    double v = 0.0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidExponent, "exponent must be inf, -inf, 0 or a finite decimal, got '" + token + "'");
    }
    return Exponent::from_double(v);
}

ExponentPair parse_pair(const Config& cfg) { return ExponentPair(parse_exponent(cfg.p1), parse_exponent(cfg.p2)); }

unsigned resolve_threads(const Config& cfg) {
    if (cfg.threads) {
        if (*cfg.threads == 0) bad_input("--threads must be at least 1");
        return *cfg.threads;
    }
    const char* env = std::getenv("APCHAR_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    unsigned n = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec != std::errc() || ptr != end || n == 0) bad_input(std::string("APCHAR_THREADS must be a positive integer, got '") + env + "'");
    return n;
}

GridWeight load(const Config& cfg) {
    if (cfg.input.empty()) bad_input("--input is required");
    return io::read_weight(cfg.input);
}

Policy resolve_policy(const Config& cfg, const Dims& dims) {
    const Policy p = cfg.policy.empty() ? default_policy(dims) : parse_policy(cfg.policy);
    validate_policy(dims, p);
    return p;
}

json pair_json(const ExponentPair& pair) { return {{"p1", pair.p1().to_string()}, {"p2", pair.p2().to_string()}}; }

json cube_json(const GridCube& cube) { return {{"lo", cube.lo}, {"hi", cube.hi}}; }

json result_json(const CharacteristicResult& r) {
    return {{"value", r.value},
            {"argmax", cube_json(r.argmax)},
            {"pair", pair_json(r.pair)},
            {"policy", std::string(to_string(r.policy))},
            {"mode", std::string(to_string(r.mode))},
            {"cubes_examined", r.cubes_examined}};
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot open " + cfg.output + " for writing");
    file << text << '\n';
    if (!file) throw Error(ErrorKind::Io, "failed writing " + cfg.output);
}

// ---------------------------------------------------------------------------

int cmd_compute(const Config& cfg, std::ostream& out) {
    const GridWeight w = load(cfg);
    const ExponentPair pair = parse_pair(cfg);
    SearchOptions opts;
    opts.policy = resolve_policy(cfg, w.dims());
    opts.mode = cfg.mode.empty() ? Mode::Fast : parse_mode(cfg.mode);
    opts.threads = resolve_threads(cfg);
    emit(cfg, result_json(ap_norm(w, pair, opts)).dump(2), out);
    return kOk;
}

int cmd_transform(const Config& cfg, std::ostream& out) {
    const int flags = cfg.above.has_value() + cfg.below.has_value() + cfg.truncate.has_value() + cfg.bm_s.has_value();
    if (flags != 1) bad_input("transform needs exactly one of --above, --below, --truncate, --bm-s");
    const GridWeight w = load(cfg);
    std::optional<GridWeight> result;
    if (cfg.above) result = cutoff_above(w, *cfg.above);
    if (cfg.below) result = cutoff_below(w, *cfg.below);
    if (cfg.truncate) result = truncate_two_sided(w, *cfg.truncate);
    if (cfg.bm_s) result = bm_regularize(w, *cfg.bm_s);
    emit(cfg, io::weight_to_json(*result), out);
    return kOk;
}

// Norm of the transformed weight at every listed level.
int cmd_sweep(const Config& cfg, std::ostream& out) {
    const int flags = !cfg.above_list.empty() + !cfg.below_list.empty() + !cfg.truncate_list.empty() +
                      !cfg.bm_list.empty();
    if (flags != 1) bad_input("sweep needs exactly one of --above, --below, --truncate, --bm-s (comma-separated levels)");
    const GridWeight w = load(cfg);
    const ExponentPair pair = parse_pair(cfg);
    SearchOptions opts;
    opts.policy = resolve_policy(cfg, w.dims());
    opts.mode = cfg.mode.empty() ? Mode::Fast : parse_mode(cfg.mode);
    opts.threads = resolve_threads(cfg);

    std::string op;
    std::vector<std::pair<double, GridWeight>> variants;
    if (!cfg.above_list.empty()) {
        op = "above";
        for (double a : cfg.above_list) variants.emplace_back(a, cutoff_above(w, a));
    } else if (!cfg.below_list.empty()) {
        op = "below";
        for (double a : cfg.below_list) variants.emplace_back(a, cutoff_below(w, a));
    } else if (!cfg.truncate_list.empty()) {
        op = "truncate";
        for (long n : cfg.truncate_list) variants.emplace_back(static_cast<double>(n), truncate_two_sided(w, n));
    } else {
        op = "bm-s";
        for (double s : cfg.bm_list) variants.emplace_back(s, bm_regularize(w, s));
    }

    const CharacteristicResult base = ap_norm(w, pair, opts);
    json points = json::array();
    for (const auto& [level, v] : variants) {
        const CharacteristicResult r = ap_norm(v, pair, opts);
        points.push_back({{"level", level}, {"value", r.value}, {"argmax", cube_json(r.argmax)}});
    }
    const json doc = {{"operator", op},
                      {"pair", pair_json(pair)},
                      {"policy", std::string(to_string(opts.policy))},
                      {"mode", std::string(to_string(opts.mode))},
                      {"norm", base.value},
                      {"points", points}};
    emit(cfg, doc.dump(2), out);
    return kOk;
}

// ---------------------------------------------------------------------------

double require_a(const Config& cfg) {
    if (!cfg.a) bad_input("--a is required for this claim with --input");
    return *cfg.a;
}

verify::Report a2_on_weight(const GridWeight& w, double a, Policy policy) {
    verify::Report report;
    report.claim = "a2-identity";
    report.tolerance = 0.0;
    report.residual_tolerance = verify::kIdentityTol;
    for (const GridCube& cube : enumerate_cubes(w.dims(), policy)) {
        verify::record_a2(report, verify::a2_decomposition_residual(w, a, cube));
    }
    report.params = {{"a", a}, {"policy", std::string(to_string(policy))}, {"dims", w.dims()}};
    report.finalize();
    return report;
}

std::vector<double> default_bm_levels() { return {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

verify::Report verify_file(const Config& cfg) {
    const GridWeight w = load(cfg);
    const ExponentPair pair = parse_pair(cfg);
    const Policy policy = resolve_policy(cfg, w.dims());
    if (cfg.claim == "theorem1") return verify::check_cutoff_monotonicity(w, pair, require_a(cfg), policy);
    if (cfg.claim == "below-cut") return verify::check_below_cut(w, pair, require_a(cfg), policy);
    if (cfg.claim == "a2-identity") return a2_on_weight(w, require_a(cfg), policy);
    if (cfg.claim == "phi") return verify::check_phi(w, pair, require_a(cfg));
    if (cfg.claim == "convergence") {
        const auto levels = cfg.truncate_list.empty() ? verify::default_truncation_levels(w) : cfg.truncate_list;
        return verify::check_convergence(w, pair, policy, levels);
    }
    return verify::check_bm(w, pair, policy, cfg.bm_list.empty() ? default_bm_levels() : cfg.bm_list);
}

verify::Report verify_random(const Config& cfg) {
    verify::SuiteOptions suite;
    suite.seed = cfg.seed;
    suite.threads = resolve_threads(cfg);
    if (cfg.trials) {
        suite.weights_1d = *cfg.trials;
        suite.weights_2d = *cfg.trials / 10;
    }
    if (cfg.claim == "theorem1") return verify::theorem1_suite(suite);
    if (cfg.claim == "below-cut") return verify::below_cut_suite(suite);
    if (cfg.claim == "convergence") return verify::convergence_suite(suite);
    if (cfg.claim == "a2-identity") return verify::a2_identity_suite(cfg.seed, cfg.trials.value_or(10000));
    if (cfg.claim == "phi") {
        verify::PhiSuiteOptions phi;
        phi.seed = cfg.seed;
        phi.parameter_sets = cfg.trials.value_or(phi.parameter_sets);
        return verify::phi_suite(phi);
    }
    bad_input("--claim bm needs --input");
}

int cmd_verify(const Config& cfg, std::ostream& out) {
    if (!cfg.mode.empty() && parse_mode(cfg.mode) != Mode::Accurate) bad_input("verification runs in accurate mode only");
    const verify::Report report = cfg.input.empty() ? verify_random(cfg) : verify_file(cfg);
    emit(cfg, verify::to_json(report).dump(2), out);
    return exit_code(report);
}

// ---------------------------------------------------------------------------

void common_options(CLI::App& sub, Config& cfg, bool with_pair) {
    sub.add_option("--input", cfg.input, "weight file (JSON, or CSV for d = 1)");
    sub.add_option("--output", cfg.output, "write the result here instead of stdout");
    if (with_pair) {
        sub.add_option("--p1", cfg.p1, "first exponent: inf, -inf, 0 or a decimal")->capture_default_str();
        sub.add_option("--p2", cfg.p2, "second exponent")->capture_default_str();
        sub.add_option("--policy", cfg.policy, "exhaustive, dyadic or anchored (default by dimension)")
            ->check(CLI::IsMember({"exhaustive", "dyadic", "anchored"}));
        sub.add_option("--mode", cfg.mode, "fast or accurate")->check(CLI::IsMember({"fast", "accurate"}));
        sub.add_option("--threads", cfg.threads, "worker threads (falls back to APCHAR_THREADS)");
    }
}

void list_options(CLI::App& sub, Config& cfg) {
    sub.add_option("--above", cfg.above_list, "cut-off levels a for min(w, a)")->delimiter(',');
    sub.add_option("--below", cfg.below_list, "cut-off levels a for max(w, a)")->delimiter(',');
    sub.add_option("--truncate", cfg.truncate_list, "truncation levels n")->delimiter(',');
    sub.add_option("--bm-s", cfg.bm_list, "regularisation parameters s")->delimiter(',');
}

}  // namespace

int exit_code(const verify::Report& report) noexcept { return report.pass ? kOk : kViolation; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Generalised Muckenhoupt characteristic of grid weights"};
    app.require_subcommand(1);

    CLI::App* compute = app.add_subcommand("compute", "[w]_{p1,p2} and its argmax cube");
    common_options(*compute, cfg, true);

    CLI::App* transform = app.add_subcommand("transform", "apply one pointwise operator to a weight");
    common_options(*transform, cfg, false);
    transform->add_option("--above", cfg.above, "min(w, a)");
    transform->add_option("--below", cfg.below, "max(w, a)");
    transform->add_option("--truncate", cfg.truncate, "clamp to [1/n, n]");
    transform->add_option("--bm-s", cfg.bm_s, "(s + w) / (s^2 + s w + 1)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check one claim on a weight file or a seeded random suite");
    common_options(*verify_cmd, cfg, true);
    verify_cmd->add_option("--claim", cfg.claim, "claim to check")
        ->required()
        ->check(CLI::IsMember({"theorem1", "below-cut", "a2-identity", "phi", "convergence", "bm"}));
    verify_cmd->add_option("--a", cfg.a, "cut level (with --input)");
    verify_cmd->add_option("--seed", cfg.seed, "seed of the random suite")->capture_default_str();
    verify_cmd->add_option("--trials", cfg.trials, "random suite size");
    verify_cmd->add_option("--truncate", cfg.truncate_list, "truncation levels for convergence")->delimiter(',');
    verify_cmd->add_option("--bm-s", cfg.bm_list, "decreasing s levels for bm")->delimiter(',');

    CLI::App* sweep = app.add_subcommand("sweep", "characteristic of a transformed weight over a list of levels");
    common_options(*sweep, cfg, true);
    list_options(*sweep, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (compute->parsed()) return cmd_compute(cfg, out);
        if (transform->parsed()) return cmd_transform(cfg, out);
        if (verify_cmd->parsed()) return cmd_verify(cfg, out);
        return cmd_sweep(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kInputError;
}

}  // namespace apchar::cli
