#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/blindness.hpp"
#include "toric/blowup.hpp"
#include "toric/checks.hpp"
#include "toric/degeneracy.hpp"
#include "toric/errors.hpp"
#include "toric/montecarlo.hpp"
#include "toric/parallel.hpp"
#include "toric/serialize.hpp"

namespace toric::cli {

namespace {

struct Common {
    std::string config;
    int jobs = 1;
    std::string out;
    std::string format;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format,
                const std::vector<std::string>& formats) {
    sub->add_option("--config", c.config, "Read options from a key=value file (command-line flags win)");
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", c.out, "Output file (default: standard output)");
    c.format = default_format;
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw InvalidParameter("cannot open '" + c.out + "' for writing");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidParameter("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

DecoderConfig decoder_config(const std::string& name, double lambda, double bp_p, int t_max) {
    if (name == "ms") return DecoderConfig::ms(t_max);
    if (name == "nms") return DecoderConfig::nms(lambda, t_max);
    if (name == "bp") return DecoderConfig::bp(bp_p, t_max);
    throw InvalidParameter("decoder must be ms, nms or bp");
}

// ---- simulate

struct SimulateArgs {
    Common common;
    int d = 11;
    std::string decoder = "ms";
    double lambda = 1.0;
    int t_max = 15;
    std::string p = "0.01,0.02,0.03,0.04,0.05";
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
};

int run_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const ToricLattice lat(a.d);
    const auto spec = DecoderSpec::parse(a.decoder, a.lambda);
    std::ostringstream csv;
    csv << ler_csv_header() << "\n";
    nlohmann::json j = nlohmann::json::array();
    std::vector<std::pair<double, double>> points;
    for (double p : parse_grid(a.p)) {
        const ChannelConfig ch{p, a.seed};
        ch.validate();
        const auto est = estimate_ler(lat, ch, a.trials, spec, a.t_max, a.common.jobs);
        err << spec.label() << " p=" << p << " ler=" << est.ler() << " (" << est.failures_detected << " detected, "
            << est.failures_logical << " logical)\n";
        csv << ler_csv_row(est) << "\n";
        j.push_back({{"d", est.d},
                     {"decoder", est.decoder},
                     {"lambda", est.lambda},
                     {"p", est.p},
                     {"trials", est.trials},
                     {"tmax", est.t_max},
                     {"failures_detected", est.failures_detected},
                     {"failures_logical", est.failures_logical},
                     {"ler", est.ler()},
                     {"stderr", est.stderr_()},
                     {"seed", est.seed}});
        points.emplace_back(p, est.ler());
    }
    try {
        err << "log-log slope " << fit_slope(points) << "\n";
    } catch (const InsufficientData&) {
    }
    emit(a.common, out, a.common.format == "json" ? j.dump(2) + "\n" : csv.str());
    return kOk;
}

// ---- blindness

struct BlindnessArgs {
    Common common;
    int d = 11;
    std::string decoder = "ms";
    std::string lambda_grid = "1";
    int i_max = 100;
    bool packed = false;
    int min_distance = 5;
    std::string syndrome_file;
    double p_prior = 0.05;
};

int run_blindness(const BlindnessArgs& a, std::ostream& out, std::ostream& err) {
    const ToricLattice lat(a.d);
    std::vector<SyndromeVector> syndromes;
    if (!a.syndrome_file.empty()) {
        int d = 0;
        syndromes.push_back(syndrome_from_json(read_file(a.syndrome_file), &d));
        if (d != a.d) throw InvalidParameter("syndrome file is for d=" + std::to_string(d));
    } else if (a.packed) {
        syndromes.push_back(packed_syndrome(lat));
    } else {
        syndromes = canonical_weight2_syndromes(lat, a.min_distance);
    }

    std::vector<BlindnessReport> reports;
    std::vector<int> ids;
    bool ok = true;
    if (a.decoder == "bp") {
        for (std::size_t si = 0; si < syndromes.size(); ++si) {
            for (int c : syndromes[si].support()) {
                auto r = blindness_report(lat, syndromes[si], c, DecoderConfig::bp(a.p_prior, a.i_max), a.i_max);
                if (r.real_converged) ok = false;
                if (a.i_max >= 10 && !(r.gaps.back() < r.gaps[9])) ok = false;
                reports.push_back(std::move(r));
                ids.push_back(static_cast<int>(si));
            }
        }
    } else {
        std::vector<double> grid = a.decoder == "ms" ? std::vector<double>{1.0} : parse_grid(a.lambda_grid);
        if (a.decoder == "ms") {
            const BlindnessChecker checker(lat, DecoderConfig::ms(a.i_max), a.i_max);
            for (std::size_t si = 0; si < syndromes.size(); ++si)
                for (auto& r : checker.report_all(syndromes[si])) {
                    reports.push_back(std::move(r));
                    ids.push_back(static_cast<int>(si));
                }
        } else if (a.decoder == "nms") {
            reports = nms_sweep(lat, syndromes, grid, a.i_max, a.common.jobs);
            for (std::size_t si = 0; si < syndromes.size(); ++si)
                for (std::size_t k = 0; k < syndromes[si].support().size() * grid.size(); ++k)
                    ids.push_back(static_cast<int>(si));
        } else {
            throw InvalidParameter("decoder must be ms, nms or bp");
        }
        for (const auto& r : reports)
            if (!r.blind || r.real_converged) ok = false;
    }

    std::int64_t blind = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.blind; });
    err << reports.size() << " reports, " << blind << " blind\n";
    if (a.common.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            const VertexId v = lat.vertex(r.check);
            j.push_back({{"d", a.d},
                         {"decoder", to_string(r.cfg.variant)},
                         {"lambda", r.cfg.lambda},
                         {"syndrome_id", ids[i]},
                         {"check", {v.row, v.col}},
                         {"verdict", r.blind ? "blind" : "broken"},
                         {"broken_at", r.broken_at ? nlohmann::json(*r.broken_at) : nlohmann::json()},
                         {"max_gap_at_imax", r.max_gap_at_imax()},
                         {"real_converged", r.real_converged}});
        }
        emit(a.common, out, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << blindness_csv_header() << "\n";
        for (std::size_t i = 0; i < reports.size(); ++i) csv << blindness_csv_row(lat, reports[i], ids[i]) << "\n";
        emit(a.common, out, csv.str());
    }
    return ok ? kOk : kCheckFailed;
}

// ---- radius

struct RadiusArgs {
    Common common;
    int d = 9;
    int w_max = 3;
    std::string decoder = "ms";
    double lambda = 1.0;
    int t_max = 16;
    bool symmetry = false;
    int stride = 1;
    int expect_omega = -1;
};

int run_radius(const RadiusArgs& a, std::ostream& out, std::ostream& err) {
    const ToricLattice lat(a.d);
    RadiusScanOptions opts;
    opts.jobs = a.common.jobs;
    opts.sample_stride = a.stride;
    const auto rep = radius_scan(lat, decoder_config(a.decoder, a.lambda, 0.05, a.t_max), a.w_max, a.symmetry, opts);
    err << "omega = " << rep.omega << (rep.omega_is_lower_bound ? " (lower bound)" : "") << "\n";
    emit(a.common, out, a.common.format == "json" ? rep.to_json(lat) + "\n" : rep.table());
    if (a.expect_omega >= 0 && rep.omega != a.expect_omega) return kCheckFailed;
    return kOk;
}

// ---- sb-verify

struct SbArgs {
    Common common;
    int d = 7;
    int w_max = 3;
    int t_max = 16;
    bool symmetry = false;
};

int run_sb_verify(const SbArgs& a, std::ostream& out, std::ostream&) {
    const ToricLattice lat(a.d);
    const auto rep = sb_verify(lat, a.w_max, a.t_max, a.symmetry, a.common.jobs);
    if (a.common.format == "json") {
        nlohmann::json j;
        j["d"] = a.d;
        j["wmax"] = a.w_max;
        j["tmax"] = a.t_max;
        j["translation_symmetry"] = a.symmetry;
        for (const auto& t : rep.tallies)
            j["tallies"].push_back({{"weight", t.weight}, {"errors", t.errors}, {"failures", t.failures}});
        j["witnesses"] = nlohmann::json::array();
        for (const auto& w : rep.witnesses) {
            nlohmann::json edges = nlohmann::json::array();
            for (int q : w) edges.push_back(to_string(lat.edge(q)));
            j["witnesses"].push_back(edges);
        }
        j["ok"] = rep.ok();
        emit(a.common, out, j.dump(2) + "\n");
    } else {
        std::string text = rep.table();
        for (const auto& w : rep.witnesses) {
            text += "  failing:";
            for (int q : w) text += " [" + to_string(lat.edge(q)) + "]";
            text += "\n";
        }
        text += rep.ok() ? "all corrected\n" : "FAILED\n";
        emit(a.common, out, text);
    }
    return rep.ok() ? kOk : kCheckFailed;
}

// ---- tree-check

struct TreeArgs {
    Common common;
    int d = 7;
    int valid = 200;
    int fake = 50;
    int i_max = 6;
    std::uint64_t seed = 1;
};

int run_tree_check(const TreeArgs& a, std::ostream& out, std::ostream&) {
    const ToricLattice lat(a.d);
    const auto rep = tree_check(lat, a.valid, a.fake, a.i_max, a.seed);
    std::ostringstream os;
    if (a.common.format == "json") {
        nlohmann::json j{{"d", a.d},
                         {"imax", a.i_max},
                         {"comparisons", rep.comparisons},
                         {"mismatches", rep.mismatches},
                         {"first_mismatches", rep.first_mismatches},
                         {"calibration_ok", rep.calibration_ok},
                         {"ok", rep.ok()}};
        os << j.dump(2) << "\n";
    } else {
        os << "d=" << a.d << " iterations 1.." << a.i_max << ": " << rep.comparisons << " comparisons, "
           << rep.mismatches << " mismatches\n";
        for (const auto& m : rep.first_mismatches) os << "  " << m << "\n";
        os << "zero-syndrome calibration " << (rep.calibration_ok ? "ok" : "FAILED") << "\n";
    }
    emit(a.common, out, os.str());
    return rep.ok() ? kOk : kCheckFailed;
}

// ---- enumerate

struct EnumerateArgs {
    Common common;
    std::string syndrome_file;
    int w_max = 3;
};

int run_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream&) {
    int d = 0;
    const auto s = syndrome_from_json(read_file(a.syndrome_file), &d);
    const ToricLattice lat(d);
    const auto ex = min_weight_explanations(lat, s, a.w_max);
    nlohmann::json j;
    j["d"] = d;
    j["truncated"] = ex.truncated;
    j["min_weight"] = ex.truncated ? nlohmann::json() : nlohmann::json(ex.min_weight);
    j["explanations"] = nlohmann::json::array();
    for (const auto& e : ex.errors) {
        nlohmann::json edges = nlohmann::json::array();
        for (int q : e.support()) edges.push_back(to_string(lat.edge(q)));
        j["explanations"].push_back(edges);
    }
    j["degenerate"] = !ex.truncated && ex.errors.size() > 1;
    emit(a.common, out, j.dump(2) + "\n");
    return kOk;
}

// ---- decode

struct DecodeArgs {
    Common common;
    std::string syndrome_file;
    std::string decoder = "ms";
    double lambda = 1.0;
    double bp_p = 0.05;
    int t_max = 16;
};

int run_decode(const DecodeArgs& a, std::ostream& out, std::ostream&) {
    int d = 0;
    const auto s = syndrome_from_json(read_file(a.syndrome_file), &d);
    const ToricLattice lat(d);
    DecodeOutcome res;
    nlohmann::json j;
    if (a.decoder == "sb+ms" || a.decoder == "sbms") {
        auto sb = decode_sb_ms(lat, s, DecoderConfig::ms(a.t_max));
        nlohmann::json plan = nlohmann::json::array();
        for (const auto& p : sb.plan.plaquettes) plan.push_back({p.row, p.col});
        j["plan"] = plan;
        res = std::move(sb);
    } else {
        res = decode(to_tanner(lat), s, decoder_config(a.decoder, a.lambda, a.bp_p, a.t_max));
    }
    j["d"] = d;
    j["decoder"] = a.decoder;
    j["converged"] = res.converged();
    j["iterations"] = res.iterations;
    j["error"] = nlohmann::json::array();
    for (int q : res.estimate.support()) j["error"].push_back(to_string(lat.edge(q)));
    emit(a.common, out, j.dump(2) + "\n");
    return kOk;
}


// Appends `--key value` for every config entry not given on the command line.
// Returns false (with a diagnostic) on a malformed line or an unknown key.
bool expand_config(CLI::App& app, std::vector<std::string>& args, std::ostream& err) {
    if (args.empty()) return true;
    CLI::App* sub = app.get_subcommand_no_throw(args.front());
    if (!sub) return true;
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return true;
    std::ifstream f(path);
    if (!f) {
        err << "error: cannot read config file '" << path << "'\n";
        return false;
    }
    auto given = [&](const std::string& key) {
        for (std::size_t i = 1; i < args.size(); ++i)
            if (args[i] == "--" + key || args[i].rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    auto trim = [](std::string x) {
        const auto b = x.find_first_not_of(" \t\r");
        const auto e = x.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            err << "error: " << path << ":" << lineno << ": expected key = value\n";
            return false;
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (!opt || key == "config" || key == "help") {
            err << "error: " << path << ":" << lineno << ": unknown key '" << key << "' for " << sub->get_name() << "\n";
            return false;
        }
        if (given(key)) continue;
        if (opt->get_expected_max() == 0) {
            if (value == "true" || value == "1") extra.push_back("--" + key);
            else if (value != "false" && value != "0") {
                err << "error: " << path << ":" << lineno << ": '" << key << "' takes true or false\n";
                return false;
            }
        } else {
            extra.push_back("--" + key);
            extra.push_back(value);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return true;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw InvalidParameter("bad number '" + s + "' in grid '" + text + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(number(item));
        if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0])
            throw InvalidParameter("range grid must be start:stop:step with step > 0");
        const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        for (long k = 0; k <= n; ++k) out.push_back(parts[0] + k * parts[2]);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item));
    if (out.empty()) throw InvalidParameter("empty grid");
    return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Message-passing decoders on the toric code: experiments and checks", "toric-lab"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s_sim = app.add_subcommand("simulate", "Monte-Carlo logical error rate over a grid of p");
    add_common(s_sim, sim.common, "csv", {"csv", "json"});
    s_sim->add_option("--d", sim.d, "Lattice distance")->capture_default_str();
    s_sim->add_option("--decoder", sim.decoder, "ms, sb+ms, nms or bp")
        ->check(CLI::IsMember({"ms", "sb+ms", "sbms", "nms", "bp"}))
        ->capture_default_str();
    s_sim->add_option("--lambda", sim.lambda, "NMS normalization")->capture_default_str();
    s_sim->add_option("--tmax", sim.t_max, "Maximum decoding iterations")->capture_default_str();
    s_sim->add_option("--p", sim.p, "Physical error rates, comma list or start:stop:step")->capture_default_str();
    s_sim->add_option("--trials", sim.trials, "Trials per point")->check(CLI::PositiveNumber)->capture_default_str();
    s_sim->add_option("--seed", sim.seed, "Master seed")->capture_default_str();

    BlindnessArgs bl;
    auto* s_bl = app.add_subcommand("blindness", "Local blindness reports, NMS sweeps and BP gap traces");
    add_common(s_bl, bl.common, "csv", {"csv", "json"});
    s_bl->add_option("--d", bl.d, "Lattice distance")->capture_default_str();
    s_bl->add_option("--decoder", bl.decoder, "ms, nms or bp")
        ->check(CLI::IsMember({"ms", "nms", "bp"}))
        ->capture_default_str();
    s_bl->add_option("--lambda-grid", bl.lambda_grid, "NMS lambdas, comma list or start:stop:step")
        ->capture_default_str();
    s_bl->add_option("--imax", bl.i_max, "Iterations per run")->check(CLI::PositiveNumber)->capture_default_str();
    s_bl->add_flag("--packed", bl.packed, "Use the packed syndrome (d = 13 or 26)");
    s_bl->add_option("--min-distance", bl.min_distance, "Check distance of the weight-2 pairs")
        ->capture_default_str();
    s_bl->add_option("--syndrome", bl.syndrome_file, "Syndrome JSON file instead of the built-in families");
    s_bl->add_option("--p-prior", bl.p_prior, "BP prior probability")->capture_default_str();

    RadiusArgs ra;
    auto* s_ra = app.add_subcommand("radius", "Non-degenerate decoding radius scan");
    add_common(s_ra, ra.common, "table", {"table", "json"});
    s_ra->add_option("--d", ra.d, "Lattice distance")->capture_default_str();
    s_ra->add_option("--wmax", ra.w_max, "Largest error weight (<= 4)")->capture_default_str();
    s_ra->add_option("--decoder", ra.decoder, "ms, nms or bp")
        ->check(CLI::IsMember({"ms", "nms", "bp"}))
        ->capture_default_str();
    s_ra->add_option("--lambda", ra.lambda, "NMS normalization")->capture_default_str();
    s_ra->add_option("--tmax", ra.t_max, "Maximum decoding iterations")->capture_default_str();
    s_ra->add_flag("--symmetry", ra.symmetry, "One representative per translation class");
    s_ra->add_option("--sample-stride", ra.stride, "Decode every k-th enumerated error")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s_ra->add_option("--expect-omega", ra.expect_omega, "Exit 1 unless the radius equals this value");

    SbArgs sb;
    auto* s_sb = app.add_subcommand("sb-verify", "Check that SB+MS corrects every error up to a weight");
    add_common(s_sb, sb.common, "table", {"table", "json"});
    s_sb->add_option("--d", sb.d, "Lattice distance")->capture_default_str();
    s_sb->add_option("--wmax", sb.w_max, "Largest error weight")->capture_default_str();
    s_sb->add_option("--tmax", sb.t_max, "Maximum decoding iterations")->capture_default_str();
    s_sb->add_flag("--symmetry", sb.symmetry, "One representative per translation class");

    TreeArgs tr;
    auto* s_tr = app.add_subcommand("tree-check", "Compare MS APPs with decoding-tree configuration weights");
    add_common(s_tr, tr.common, "table", {"table", "json"});
    s_tr->add_option("--d", tr.d, "Lattice distance")->capture_default_str();
    s_tr->add_option("--syndromes", tr.valid, "Random realizable syndromes")->capture_default_str();
    s_tr->add_option("--fake", tr.fake, "Random odd-weight syndromes")->capture_default_str();
    s_tr->add_option("--imax", tr.i_max, "Iterations to compare")->capture_default_str();
    s_tr->add_option("--seed", tr.seed, "Seed")->capture_default_str();

    EnumerateArgs en;
    auto* s_en = app.add_subcommand("enumerate", "All minimum-weight explanations of a syndrome");
    add_common(s_en, en.common, "json", {"json"});
    s_en->add_option("--syndrome", en.syndrome_file, "Syndrome JSON file")->required();
    s_en->add_option("--wmax", en.w_max, "Weight bound (<= 4, 2*wmax < d)")->capture_default_str();

    DecodeArgs de;
    auto* s_de = app.add_subcommand("decode", "Decode one syndrome read from a JSON file");
    add_common(s_de, de.common, "json", {"json"});
    s_de->add_option("--syndrome", de.syndrome_file, "Syndrome JSON file")->required();
    s_de->add_option("--decoder", de.decoder, "ms, sb+ms, nms or bp")
        ->check(CLI::IsMember({"ms", "sb+ms", "sbms", "nms", "bp"}))
        ->capture_default_str();
    s_de->add_option("--lambda", de.lambda, "NMS normalization")->capture_default_str();
    s_de->add_option("--p-prior", de.bp_p, "BP prior probability")->capture_default_str();
    s_de->add_option("--tmax", de.t_max, "Maximum decoding iterations")->capture_default_str();

    std::vector<std::string> full = args;
    if (!expand_config(app, full, err)) return kUsage;
    std::vector<std::string> reversed(full.rbegin(), full.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        app.exit(e, o, er);
        if (e.get_exit_code() == 0) {
            out << o.str();
            return kOk;
        }
        err << er.str() << o.str();
        return kUsage;
    }

    try {
        if (s_sim->parsed()) return run_simulate(sim, out, err);
        if (s_bl->parsed()) return run_blindness(bl, out, err);
        if (s_ra->parsed()) return run_radius(ra, out, err);
        if (s_sb->parsed()) return run_sb_verify(sb, out, err);
        if (s_tr->parsed()) return run_tree_check(tr, out, err);
        if (s_en->parsed()) return run_enumerate(en, out, err);
        if (s_de->parsed()) return run_decode(de, out, err);
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Unsupported& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}

}  // namespace toric::cli
