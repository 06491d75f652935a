// Batch front-end: wires JSON run configs to the construction engine, the
// flow trajectories, the QND experiments and the t_q recursion, with
// reproducible file artifacts.

#include "badlatt/engine.hpp"
#include "badlatt/qnd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace badlatt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

// Leading comment lines embedding the config and its hash into a CSV.
std::string csv_header(const json& config) {
    std::ostringstream os;
    os << "# config " << config.dump() << "\n";
    os << "# config_hash " << fnv1a(config.dump()) << "\n";
    return os.str();
}

QVec parse_rationals(const json& arr) {
    QVec out;
    for (const auto& s : arr) out.push_back(rat_from_string(s.get<std::string>()));
    return out;
}

CurveModel curve_from_config(const json& j) {
    if (j.is_string()) return CurveModel::from_spec(j.get<std::string>());
    return CurveModel::from_json(j.dump());
}

struct ConstructSpec {
    EngineConfig engine;
    ExtractStrategy strategy;
    long certify_Q;
    json raw;
};

ConstructSpec load_construct(const std::string& path, long precision_override,
                             const std::string& mode_override) {
    const json j = json::parse(slurp(path));
    const QVec w = parse_rationals(j.at("weights"));
    const long precision =
        precision_override > 0 ? precision_override : j.value("precision", kDefaultPrecision);
    FlowConfig flow(Weights(w), j.at("R").get<long>(), rat_from_string(j.at("eps").get<std::string>()),
                    j.value("m", 1L), precision);
    CurveModel curve = curve_from_config(j.at("curve"));
    FractalMeasure mu = FractalMeasure::from_json(j.at("measure").dump());
    ThresholdSchedule sched;
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        sched.m = s.value("m", 1L);
        sched.min_div = s.value("min_div", 8L);
        sched.max_div = s.value("max_div", 4L);
        sched.cut_div = s.value("cut_div", 8L);
    }
    std::string mode = mode_override.empty() ? j.value("mode", std::string("midpoint")) : mode_override;
    if (mode != "midpoint" && mode != "interval")
        throw std::invalid_argument("mode must be midpoint or interval");
    EngineConfig cfg{std::move(flow),
                     std::move(curve),
                     std::move(mu),
                     rat_from_string(j.at("I0").at(0).get<std::string>()),
                     rat_from_string(j.at("I0").at(1).get<std::string>()),
                     j.at("q_max").get<long>(),
                     sched,
                     mode == "interval",
                     j.value("beam_cap", 4096UL)};
    const std::string strat = j.value("extract", std::string("leftmost"));
    return ConstructSpec{std::move(cfg),
                         strat == "max_measure" ? ExtractStrategy::MaxMeasure
                                                : ExtractStrategy::Leftmost,
                         j.value("certify_Q", 10000L), j};
}

int cmd_construct(const std::string& config_path, const std::string& out_dir,
                  long precision_override, const std::string& mode_override, long seed) {
    ConstructSpec spec = load_construct(config_path, precision_override, mode_override);
    json raw = spec.raw;
    raw["seed"] = seed;  // recorded for provenance; the run is deterministic
    fs::create_directories(out_dir);

    ConstructionState state(spec.engine);
    state.run();

    const TqResult tq = tq_recursion(spec.engine.flow.R, state.removal_table(),
                                     state.generations().back().q - 1);

    std::ostringstream removals;
    removals << csv_header(raw) << state.removal_table().to_csv();
    write_file(fs::path(out_dir) / "removals.csv", removals.str());

    std::ostringstream tqcsv;
    tqcsv << csv_header(raw) << "q,t_q\n";
    for (size_t q = 0; q < tq.t.size(); ++q) tqcsv << q << "," << rat_to_string(tq.t[q]) << "\n";
    write_file(fs::path(out_dir) / "tq.csv", tqcsv.str());

    std::ostringstream audit;
    audit << json{{"config", raw}, {"config_hash", fnv1a(raw.dump())}}.dump() << "\n";
    for (const auto& e : state.audit()) audit << e.to_jsonl() << "\n";
    write_file(fs::path(out_dir) / "audit.jsonl", audit.str());

    long decided = 0, indet = 0;
    for (const auto& s : state.stats()) {
        decided += s.kept + s.measure_removed + s.dynamical_removed + s.indeterminate_removed;
        indet += s.indeterminate_removed;
    }

    if (!state.last_generation_nonempty()) {
        std::cerr << "construction emptied out at q = " << state.generations().back().q << "\n";
        return 1;
    }
    Certificate cert = extract_point(state, spec.strategy);
    const CertifyResult cb =
        certify_bad(spec.engine.curve.eval(cert.point), spec.engine.flow.weights, spec.certify_Q);
    cert.c_estimate = cb.c_lo;
    cert.c_argmin_q = cb.argmin_q;
    write_file(fs::path(out_dir) / "certificate.json", cert.to_json(spec.engine, tq.t));

    std::cout << "nonempty to q_max; point " << rat_to_string(cert.point) << "; c_est >= "
              << cert.c_estimate.get_d() << " (argmin q = " << cert.c_argmin_q
              << "); indeterminate removals " << indet << "/" << decided << "\n";
    return 0;
}

int cmd_certify(const std::string& x_str, const std::string& weights_str, const std::string& curve_spec,
                long Q, const std::string& out_dir) {
    QVec w;
    {
        std::stringstream ss(weights_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) w.push_back(rat_from_string(tok));
    }
    const Weights weights{w};
    const Rational x = rat_from_string(x_str);
    const CurveModel curve =
        curve_spec.empty() ? CurveModel::veronese(weights.n(), x - 1, x + 1)
                           : curve_from_config(json(curve_spec));
    const CertifyResult r = certify_bad(curve.eval(x), weights, Q);
    json out{{"x", x_str},
             {"Q", Q},
             {"c_lo", rat_to_string(r.c_lo)},
             {"c_hi", rat_to_string(r.c_hi)},
             {"c_double", r.c_lo.get_d()},
             {"argmin_q", r.argmin_q}};
    out["content_hash"] = fnv1a(out.dump());
    std::cout << out.dump(2) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "certify.json", out.dump(2));
    }
    return 0;
}

int cmd_flow(const std::string& config_path, const std::string& out_dir, long precision_override) {
    const json j = json::parse(slurp(config_path));
    const QVec w = parse_rationals(j.at("weights"));
    const long precision =
        precision_override > 0 ? precision_override : j.value("precision", 192L);
    FlowConfig flow(Weights(w), j.value("R", 16L),
                    rat_from_string(j.value("eps", std::string("1/100"))), 1, precision);

    IVec point;
    for (const auto& p : j.at("point")) {
        const std::string s = p.get<std::string>();
        if (s == "golden") {
            const Interval five = Interval::from_long(5, precision);
            point.push_back(div(add(Interval::from_long(1, precision), sqrt_iv(five)),
                                Interval::from_long(2, precision)));
        } else {
            point.push_back(iv_from_rational(rat_from_string(s), precision));
        }
    }
    std::vector<Rational> grid;
    const Rational t_max = rat_from_string(j.value("t_max", std::string("25")));
    const long steps = j.value("steps", 100L);
    for (long i = 0; i <= steps; ++i) grid.push_back(t_max * Rational(i) / steps);

    const auto orbit = orbit_trajectory(flow, point, grid);
    std::ostringstream csv;
    csv << csv_header(j) << "t,norm2_lo,norm2_hi,witness\n";
    Interval floor = orbit.front().norm2;
    for (const auto& s : orbit) {
        floor = min_iv(floor, s.norm2);
        csv << s.t.get_d() << "," << s.norm2.lo_hex() << "," << s.norm2.hi_hex() << ",\"";
        for (size_t i = 0; i < s.witness.size(); ++i) csv << (i ? " " : "") << s.witness[i].get_str();
        csv << "\"\n";
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "trajectory.csv", csv.str());
    std::cout << "orbit floor (norm^2) in " << floor.to_string() << "\n";
    return 0;
}

int cmd_qnd(const std::string& config_path, const std::string& out_dir, long precision_override) {
    const json j = json::parse(slurp(config_path));
    QndExperiment e{FractalMeasure::from_json(j.at("measure").dump()),
                    curve_from_config(j.at("curve")),
                    rat_from_string(j.at("J").at(0).get<std::string>()),
                    rat_from_string(j.at("J").at(1).get<std::string>()),
                    j.at("R").get<long>(),
                    parse_rationals(j.at("tau")),
                    {},
                    j.value("depth", 8),
                    precision_override > 0 ? precision_override : j.value("precision", 128L)};
    for (const auto& d : j.at("deltas")) e.delta_grid.push_back(rat_from_string(d.get<std::string>()));

    const WMassResult res = measure_W(e);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "wmass.csv", csv_header(j) + res.to_csv());

    json summary{{"config", j},
                 {"total_mass", rat_to_string(res.total_mass)},
                 {"max_gap", rat_to_string(res.undecided)},
                 {"depth_ok", res.depth_ok},
                 {"global_regime", e.global_regime()}};
    try {
        const DecayFit fit = fit_decay(res.rows);
        summary["fit"] = {{"gamma_hat", fit.gamma_hat},
                          {"log_M_hat", fit.log_M_hat},
                          {"residual_rms", fit.residual_rms},
                          {"consistent", fit.consistent}};
    } catch (const std::exception& ex) {
        summary["fit"] = {{"error", ex.what()}};
    }
    summary["content_hash"] = fnv1a(summary.dump());
    write_file(fs::path(out_dir) / "summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return res.depth_ok ? 0 : 2;
}

int cmd_tq(const std::string& preset, long R, const std::string& alpha, const std::string& C_str,
           const std::string& C3_str, const std::string& eta3_str, long q_max,
           const std::string& h_csv, const std::string& out_dir) {
    std::function<Int(long, long)> h;
    json conf{{"R", R}, {"q_max", q_max}};
    if (!h_csv.empty()) {
        RemovalTable table;
        std::ifstream in(h_csv);
        if (!in) throw std::runtime_error("cannot open " + h_csv);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 'p') continue;
            std::stringstream ss(line);
            std::string p_s, q_s, h_s;
            std::getline(ss, p_s, ',');
            std::getline(ss, q_s, ',');
            std::getline(ss, h_s, ',');
            table.h[{std::stol(p_s), std::stol(q_s)}] = std::stol(h_s);
        }
        auto shared = std::make_shared<RemovalTable>(std::move(table));
        h = [shared](long p, long q) { return Int(shared->at(p, q)); };
        conf["h_csv"] = h_csv;
    } else if (preset == "section4") {
        long an = 2, ad = 3;
        if (!alpha.empty()) {
            const auto comma = alpha.find(',');
            an = std::stol(alpha.substr(0, comma));
            ad = std::stol(alpha.substr(comma + 1));
        }
        const Section4Preset p{R, an, ad, rat_from_string(C_str), rat_from_string(C3_str),
                               rat_from_string(eta3_str)};
        h = section4_h(p);
        conf["preset"] = {{"alpha", {an, ad}}, {"C", C_str}, {"C3", C3_str}, {"eta3", eta3_str}};
    } else {
        h = [](long, long) { return Int(0); };
        conf["preset"] = "none";
    }
    const TqResult res = tq_recursion(R, h, q_max);
    std::ostringstream csv;
    csv << csv_header(conf) << "q,t_q\n";
    for (size_t q = 0; q < res.t.size(); ++q) csv << q << "," << rat_to_string(res.t[q]) << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "tq.csv", csv.str());
    } else {
        std::cout << csv.str();
    }
    if (res.failure_q) {
        std::cerr << "t_q recursion failed at q = " << *res.failure_q << "\n";
        return 1;
    }
    std::cout << "all t_q positive up to q_max = " << q_max << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigorous construction and audit of badly approximable points on curves"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", mode_override;
    long precision_override = 0;
    long seed = 0;
    app.add_option("--precision", precision_override, "working precision in bits (override)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed recorded in artifacts");
    app.add_option("--mode", mode_override, "midpoint|interval (override)");

    auto* construct = app.add_subcommand("construct", "run the Cantor construction end to end");
    construct->add_option("--config", config_path, "run config JSON")->required();

    std::string x_str, weights_str = "1", curve_spec;
    long Q = 10000;
    auto* certify = app.add_subcommand("certify", "empirical Bad(r) constant of a point");
    certify->add_option("--x", x_str, "point on the parameter line")->required();
    certify->add_option("--weights", weights_str, "comma-separated weights");
    certify->add_option("--curve", curve_spec, "curve spec (default veronese:n)");
    certify->add_option("--Q", Q, "denominator bound");

    auto* flow = app.add_subcommand("flow", "diagonal-flow trajectory of a point");
    flow->add_option("--config", config_path, "flow config JSON")->required();

    auto* qnd = app.add_subcommand("qnd", "measure the escape sets W(tau, J, delta)");
    qnd->add_option("--config", config_path, "experiment config JSON")->required();

    std::string preset = "section4", alpha = "2,3", C_str = "1", C3_str = "2", eta3_str = "7/10",
                h_csv;
    long R = 1 << 16, q_max = 200;
    auto* tq = app.add_subcommand("tq", "nonemptiness recursion for t_q");
    tq->add_option("--preset", preset, "section4|none");
    tq->add_option("--R", R, "splitting rate");
    tq->add_option("--alpha", alpha, "alpha as num,den of log(num)/log(den)");
    tq->add_option("--C", C_str, "Ahlfors constant");
    tq->add_option("--C3", C3_str, "C3 of the preset");
    tq->add_option("--eta3", eta3_str, "eta3 of the preset");
    tq->add_option("--q-max", q_max, "depth");
    tq->add_option("--h-csv", h_csv, "removal table CSV (p,q,h)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return cmd_construct(config_path, out_dir, precision_override, mode_override, seed);
        if (certify->parsed()) return cmd_certify(x_str, weights_str, curve_spec, Q, out_dir);
        if (flow->parsed()) return cmd_flow(config_path, out_dir, precision_override);
        if (qnd->parsed()) return cmd_qnd(config_path, out_dir, precision_override);
        if (tq->parsed())
            return cmd_tq(preset, R, alpha, C_str, C3_str, eta3_str, q_max, h_csv, out_dir);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
