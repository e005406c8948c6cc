#include "relce/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "relce/errors.hpp"
#include "relce/forcing.hpp"
#include "relce/rightmost.hpp"

namespace relce::cli {
namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string tree_path;
    std::string op_path;
    std::string requirements_path;
    std::string report_path;
    std::string out_path;
    std::string sigma;
    Nat p = 0;
    Nat l = 0;
    Nat t = 0;
    bool trace = false;
    bool avoidance = false;
    std::optional<std::uint64_t> scan_cap;
};

struct Outcome {
    json report;
    int code = kOk;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("io", "cannot open input file", {{"path", path}});
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw InputError("malformed-json", e.what(), {{"path", path}});
    }
}

std::uint64_t resolve_scan_cap(const Options& opt, const CliContext& ctx) {
    if (opt.scan_cap) return *opt.scan_cap;
    if (ctx.scan_cap_env) {
        const std::string& s = *ctx.scan_cap_env;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw InputError("usage", "RELCE_SCAN_CAP must be a natural number", {{"value", s}});
        }
        return value;
    }
    return forcing::kDefaultScanCap;
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("report is missing field: ") + key);
    return j[key].get<T>();
}

Nat natural_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw SchemaError(std::string("report field missing or not natural: ") + key);
    }
    return j[key].get<Nat>();
}

std::vector<forcing::Requirement> requirements_from_json(const json& j) {
    const json& list = (j.is_object() && j.contains("requirements")) ? j["requirements"] : j;
    if (!list.is_array()) throw SchemaError("requirements must be an array");
    std::vector<forcing::Requirement> out;
    for (const auto& r : list) out.push_back(r.get<forcing::Requirement>());
    return out;
}

// --- rightmost ------------------------------------------------------------

json rightmost_report(const pi01::PrefixTree& tree, bool with_trace, int& code) {
    const auto result = pi01::rightmost_construct(tree);
    const auto witness = enumop::verify_e_witness(pi01::as_operator(result.c), result.x);
    const bool agrees = !result.stuck && result.x == pi01::rightmost_oracle(tree);

    json r;
    r["command"] = "rightmost";
    r["tree"] = tree;
    r["X"] = result.x;
    r["C"] = result.c;
    if (result.stuck) r["stuck"] = true;
    if (with_trace) {
        r["trace_header"] = {{"granularity", "one stage per extension or backtrack"},
                             {"halts_at_length", tree.depth()}};
        r["trace"] = json::array();
        for (const auto& s : result.trace) r["trace"].push_back(s);
    }
    r["oracle_agrees"] = agrees;
    r["witness_holds"] = witness.holds();
    r["witness_report"] = witness;
    code = (agrees && witness.holds()) ? kOk : kVerifiedFailure;
    return r;
}

Outcome run_rightmost(const Options& opt, std::uint64_t cap) {
    const auto tree = pi01::tree_from_json(read_json_file(opt.tree_path), cap);
    Outcome o;
    o.report = rightmost_report(tree, opt.trace, o.code);
    return o;
}

// --- fixpoint -------------------------------------------------------------

json fixpoint_report(const BinaryString& sigma0, Nat p, bool with_trace) {
    const auto result = forcing::fixpoint_remove_witnesses(sigma0, p);
    json r;
    r["command"] = "fixpoint";
    r["sigma0"] = sigma0;
    r["p"] = p;
    r["sigma"] = result.sigma;
    r["j"] = forcing::j_map(result.sigma);
    r["effective_stages"] = result.effective_stages();
    if (with_trace) r["trace"] = forcing::trace_json(result.trace);
    return r;
}

Outcome run_fixpoint(const Options& opt) {
    return {fixpoint_report(BinaryString::parse(opt.sigma), opt.p, opt.trace), kOk};
}

// --- demo3 ----------------------------------------------------------------

json demo_report(const BinaryString& sigma, Nat l, const enumop::EnumOperator& op,
                 bool with_trace, std::optional<std::uint64_t> avoidance_cap, int& code) {
    const auto demo = forcing::theorem3_demo(sigma, l, op);
    json r;
    r["command"] = "demo3";
    r["sigma"] = sigma;
    r["l"] = l;
    r["op"] = op;
    r["t"] = demo.t;
    r["Z_t"] = demo.z_t;
    if (demo.certificate) {
        r["certificate"] = *demo.certificate;
        if (with_trace) r["fixpoint_trace"] = forcing::trace_json(demo.fixpoint->trace);
    } else {
        r["certificate"] = nullptr;
        r["reason"] = "no-candidate";
    }
    if (avoidance_cap) {
        const auto av = forcing::avoidance_check(sigma, l, sigma.size(), op, *avoidance_cap);
        json a;
        a["holds"] = av.holds;
        if (av.counterexample) {
            a["counterexample"] = *av.counterexample;
            a["witness"] = *av.witness;
        }
        a["scanned"] = av.scanned;
        r["avoidance"] = std::move(a);
    }
    code = demo.certificate ? kOk : kVerifiedFailure;
    return r;
}

Outcome run_demo3(const Options& opt, std::uint64_t cap) {
    const auto op = read_json_file(opt.op_path).get<enumop::EnumOperator>();
    Outcome o;
    o.report = demo_report(BinaryString::parse(opt.sigma), opt.l, op, opt.trace,
                           opt.avoidance ? std::optional(cap) : std::nullopt, o.code);
    return o;
}

// --- force ----------------------------------------------------------------

json force_report(const std::vector<forcing::Requirement>& reqs, Nat t, std::uint64_t cap) {
    const auto result = forcing::force_meet_or_avoid(reqs, t, cap);
    json r;
    r["command"] = "force";
    r["t"] = t;
    r["requirements"] = reqs;
    r["sigma"] = result.sigma;
    r["log"] = result.log;
    return r;
}

Outcome run_force(const Options& opt, std::uint64_t cap) {
    const auto reqs = requirements_from_json(read_json_file(opt.requirements_path));
    return {force_report(reqs, opt.t, cap), kOk};
}

// --- verify ---------------------------------------------------------------

class Checks {
public:
    void add(const char* name, bool ok) {
        list_.push_back({{"check", name}, {"ok", ok}});
        all_ok_ = all_ok_ && ok;
    }
    bool all_ok() const { return all_ok_; }
    json to_json() const { return list_; }

private:
    json list_ = json::array();
    bool all_ok_ = true;
};

void verify_rightmost(const json& report, const Options& opt, std::uint64_t cap, Checks& checks) {
    const json tree_json = opt.tree_path.empty() ? field<json>(report, "tree")
                                                 : read_json_file(opt.tree_path);
    const auto tree = pi01::tree_from_json(tree_json, cap);
    const auto x = field<BinaryString>(report, "X");
    pi01::WitnessSet c;
    for (const auto& e : field<json>(report, "C")) c.push_back(e.get<pi01::WitnessEntry>());

    const bool oracle = x == pi01::rightmost_oracle(tree);
    const bool witness = enumop::verify_e_witness(pi01::as_operator(c), x).holds();
    checks.add("X-equals-oracle", oracle);
    checks.add("witness-holds", witness);

    const auto rebuilt = pi01::rightmost_construct(tree);
    checks.add("construction-reproduces-X", rebuilt.x == x);
    checks.add("construction-reproduces-C", rebuilt.c == c);
    checks.add("flags-consistent", field<bool>(report, "oracle_agrees") == oracle &&
                                       field<bool>(report, "witness_holds") == witness);
    if (report.contains("trace")) {
        json expected = json::array();
        for (const auto& s : rebuilt.trace) expected.push_back(s);
        checks.add("trace-reproduces", expected == report["trace"]);
    }
}

void verify_fixpoint(const json& report, Checks& checks) {
    const auto sigma0 = field<BinaryString>(report, "sigma0");
    const Nat p = natural_field(report, "p");
    const auto sigma = field<BinaryString>(report, "sigma");

    checks.add("sigma-length", sigma.size() == sigma0.size());
    checks.add("p-set", sigma.at(p));
    checks.add("no-one-to-zero", string_to_set(sigma0).is_subset_of(string_to_set(sigma)));
    checks.add("j-preserved", forcing::j_map(sigma) == forcing::j_map(sigma0));

    const auto rebuilt = forcing::fixpoint_remove_witnesses(sigma0, p);
    checks.add("fixpoint-reproduces", rebuilt.sigma == sigma);
    checks.add("stage-bound", rebuilt.effective_stages() <= sigma0.size());
    if (report.contains("trace")) {
        checks.add("trace-reproduces", forcing::trace_json(rebuilt.trace) == report["trace"]);
    }
}

void verify_demo3(const json& report, const Options& opt, Checks& checks) {
    const auto op = opt.op_path.empty() ? field<enumop::EnumOperator>(report, "op")
                                        : read_json_file(opt.op_path).get<enumop::EnumOperator>();
    const auto sigma = field<BinaryString>(report, "sigma");
    const Nat l = natural_field(report, "l");
    const auto rebuilt = forcing::theorem3_demo(sigma, l, op);

    checks.add("Z_t-reproduces", rebuilt.z_t == field<FiniteNatSet>(report, "Z_t"));
    const json& cert_json = field<json>(report, "certificate");
    if (cert_json.is_null()) {
        checks.add("no-candidate-reproduces", !rebuilt.certificate.has_value());
        return;
    }
    const auto cert = cert_json.get<forcing::Certificate>();
    checks.add("certificate-valid", forcing::verify_certificate(cert, op).empty());
    checks.add("certificate-reproduces", rebuilt.certificate == cert);
    checks.add("certificate-matches-input", cert.sigma0 == sigma && cert.l == l);
}

void verify_force(const json& report, const Options& opt, std::uint64_t cap, Checks& checks) {
    const auto reqs = requirements_from_json(opt.requirements_path.empty()
                                                 ? field<json>(report, "requirements")
                                                 : read_json_file(opt.requirements_path));
    const Nat t = natural_field(report, "t");
    const auto sigma = field<BinaryString>(report, "sigma");
    const auto rebuilt = forcing::force_meet_or_avoid(reqs, t, cap);

    checks.add("sigma-reproduces", rebuilt.sigma == sigma);
    json log = json::array();
    for (const auto& d : rebuilt.log) log.push_back(d);
    checks.add("log-reproduces", log == field<json>(report, "log"));

    bool met_prefixes = true;
    for (const auto& d : rebuilt.log) {
        if (d.via) met_prefixes = met_prefixes && d.via->is_prefix_of(sigma);
    }
    checks.add("met-extensions-are-prefixes", met_prefixes);
}

Outcome run_verify(const Options& opt, std::uint64_t cap) {
    const json report = read_json_file(opt.report_path);
    if (!report.is_object() || !report.contains("command") || !report["command"].is_string()) {
        throw SchemaError("report has no \"command\" field");
    }
    const auto target = report["command"].get<std::string>();
    Checks checks;
    if (target == "rightmost") verify_rightmost(report, opt, cap, checks);
    else if (target == "fixpoint") verify_fixpoint(report, checks);
    else if (target == "demo3") verify_demo3(report, opt, checks);
    else if (target == "force") verify_force(report, opt, cap, checks);
    else throw SchemaError("unknown report command", {{"command", target}});

    json r;
    r["command"] = "verify";
    r["target"] = target;
    r["holds"] = checks.all_ok();
    r["checks"] = checks.to_json();
    return {std::move(r), checks.all_ok() ? kOk : kVerifiedFailure};
}

json error_object(const std::string& kind, const std::string& message,
                  const json& details = json::object()) {
    json e;
    e["kind"] = kind;
    e["message"] = message;
    if (!details.empty()) e["details"] = details;
    return {{"error", e}};
}

void emit(const json& j, const Options& opt, const CliContext& ctx) {
    const std::string text = j.dump(2) + "\n";
    if (opt.out_path.empty()) {
        ctx.out << text;
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) throw InputError("io", "cannot open output file", {{"path", opt.out_path}});
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, const CliContext& ctx) {
    Options opt;
    CLI::App app{"Desk-scale lab for relatively c.e. constructions", "relce-lab"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_path, "Write the JSON result to this file");
        sub->add_option("--scan-cap", opt.scan_cap, "Exhaustive-scan budget (default 2^24)");
    };

    auto* rightmost = app.add_subcommand("rightmost", "Rightmost path with enumeration witness");
    rightmost->add_option("--tree", opt.tree_path, "Tree or generator JSON")->required();
    rightmost->add_flag("--trace", opt.trace, "Include the stage trace");
    add_common(rightmost);

    auto* fixpoint = app.add_subcommand("fixpoint", "Witness-removal fixed point");
    fixpoint->add_option("--sigma", opt.sigma, "Starting string")->required();
    fixpoint->add_option("--p", opt.p, "Position to add")->required();
    fixpoint->add_flag("--trace", opt.trace, "Include the stage trace");
    add_common(fixpoint);

    auto* demo3 = app.add_subcommand("demo3", "Danger-set contradiction certificate");
    demo3->add_option("--sigma", opt.sigma, "Initial segment X|t")->required();
    demo3->add_option("--l", opt.l, "Avoidance level l")->required();
    demo3->add_option("--op", opt.op_path, "Operator JSON")->required();
    demo3->add_flag("--trace", opt.trace, "Include the fixpoint trace");
    demo3->add_flag("--avoidance", opt.avoidance, "Also run the exhaustive avoidance scan");
    add_common(demo3);

    auto* force = app.add_subcommand("force", "Finite-extension forcing over requirements");
    force->add_option("--requirements", opt.requirements_path, "Requirements JSON")->required();
    force->add_option("--t", opt.t, "Length bound")->required();
    add_common(force);

    auto* verify = app.add_subcommand("verify", "Re-check an emitted report");
    verify->add_option("--report", opt.report_path, "Report JSON")->required();
    verify->add_option("--tree", opt.tree_path, "Raw tree input (overrides the report's)");
    verify->add_option("--op", opt.op_path, "Raw operator input (overrides the report's)");
    verify->add_option("--requirements", opt.requirements_path,
                       "Raw requirements input (overrides the report's)");
    add_common(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        ctx.out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        ctx.out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        ctx.out << error_object("usage", e.what()).dump(2) << "\n";
        return kInputError;
    }

    try {
        const std::uint64_t cap = resolve_scan_cap(opt, ctx);
        Outcome o;
        if (rightmost->parsed()) o = run_rightmost(opt, cap);
        else if (fixpoint->parsed()) o = run_fixpoint(opt);
        else if (demo3->parsed()) o = run_demo3(opt, cap);
        else if (force->parsed()) o = run_force(opt, cap);
        else o = run_verify(opt, cap);
        emit(o.report, opt, ctx);
        return o.code;
    } catch (const InputError& e) {
        ctx.out << error_object(e.kind(), e.what(), e.details()).dump(2) << "\n";
    } catch (const nlohmann::json::exception& e) {
        ctx.out << error_object("schema", e.what()).dump(2) << "\n";
    }
    return kInputError;
}

}  // namespace relce::cli
