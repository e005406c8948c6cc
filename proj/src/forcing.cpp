#include "relce/forcing.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "relce/errors.hpp"

namespace relce::forcing {

BinaryString j_map(const BinaryString& sigma) {
    BinaryString out = BinaryString::zeros(sigma.size());
    for (Nat q = 1; q < sigma.size(); ++q) {
        const auto [n, m] = *decode_pair(q);
        if (sigma.at(n) && !sigma.at(q)) out.set(q, true);
    }
    return out;
}

FiniteNatSet recover_x(const BinaryString& y) {
    FiniteNatSet out;
    for (Nat q = 1; q < y.size(); ++q) {
        if (y.at(q)) out.insert(decode_pair(q)->first);
    }
    return out;
}

DangerResult danger_member(const BinaryString& sigma, const enumop::EnumOperator& op) {
    if (op.empty()) return {};
    const FiniteNatSet enumerated = enumop::evaluate(op, string_to_set(j_map(sigma)));
    for (Nat n : enumerated) {
        if (sigma.at(n)) return {true, n};
    }
    return {};
}

std::size_t FixpointResult::effective_stages() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [](const auto& s) { return !s.changed.empty(); }));
}

namespace detail {

FixpointResult iterate_fixpoint(const BinaryString& sigma0, Nat p) {
    const Nat t = sigma0.size();
    FixpointResult r;
    BinaryString current = sigma0;
    FiniteNatSet changed;
    if (!current.at(p)) {
        current.set(p, true);
        changed.insert(p);
    }
    r.trace.push_back({1, current, changed});

    for (Nat i = 2; !changed.empty(); ++i) {
        BinaryString next = current;
        FiniteNatSet next_changed;
        for (Nat b : changed) {
            if (b >= 63 || (Nat{1} << b) >= t) continue;  // ⟨b,0⟩ = 2^b already out of range
            for (Nat code = Nat{1} << b; code < t; code += Nat{2} << b) {
                if (!next.at(code)) {
                    next.set(code, true);
                    next_changed.insert(code);
                }
            }
        }
        current = std::move(next);
        changed = std::move(next_changed);
        r.trace.push_back({i, current, changed});
    }
    r.sigma = std::move(current);
    return r;
}

}  // namespace detail

FixpointResult fixpoint_remove_witnesses(const BinaryString& sigma0, Nat p) {
    if (p >= sigma0.size()) {
        throw PreconditionViolated("p must be below |sigma0|", {{"p", p}, {"length", sigma0.size()}});
    }
    if (sigma0.at(p)) {
        throw PreconditionViolated("sigma0(p) is already 1", {{"p", p}});
    }
    if (j_map(sigma0).at(p)) {
        const auto [n, m] = *decode_pair(p);
        throw PreconditionViolated(
            "p carries a j-bit that setting sigma(p) would destroy",
            {{"p", p}, {"pair", {n, m}}, {"j_bit", 1}, {"sigma0_n", 1}, {"sigma0_p", 0}});
    }
    return detail::iterate_fixpoint(sigma0, p);
}

namespace {

void require_scan_budget(Nat span, std::uint64_t scan_cap) {
    if (span >= 62 || (std::uint64_t{1} << span) > scan_cap) {
        throw BudgetExceeded("exhaustive scan exceeds the scan cap",
                             {{"free_positions", span}, {"scan_cap", scan_cap}});
    }
}

/// Shortlex-first τ ⊒ root with |τ| <= t satisfying `accept`.
std::optional<BinaryString> first_extension(const BinaryString& root, Nat t,
                                            const std::function<bool(const BinaryString&)>& accept,
                                            std::uint64_t& scanned) {
    for (Nat len = root.size(); len <= t; ++len) {
        const Nat free_bits = len - root.size();
        BinaryString tau = root.padded(len);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits); ++v) {
            for (Nat i = 0; i < free_bits; ++i) {
                tau.set(root.size() + i, ((v >> (free_bits - 1 - i)) & 1) != 0);
            }
            ++scanned;
            if (accept(tau)) return tau;
        }
    }
    return std::nullopt;
}

}  // namespace

AvoidanceResult avoidance_check(const BinaryString& base, Nat l, Nat t,
                                const enumop::EnumOperator& op, std::uint64_t scan_cap) {
    if (!(l <= base.size() && base.size() <= t)) {
        throw PreconditionViolated("avoidance_check needs l <= |base| <= t",
                                   {{"l", l}, {"length", base.size()}, {"t", t}});
    }
    require_scan_budget(t - l, scan_cap);

    AvoidanceResult r;
    auto hit = first_extension(
        base.prefix(l), t, [&](const BinaryString& tau) { return danger_member(tau, op).member; },
        r.scanned);
    if (hit) {
        r.holds = false;
        r.witness = danger_member(*hit, op).witness;
        r.counterexample = std::move(hit);
    }
    return r;
}

ForceResult force_meet_or_avoid(std::vector<Requirement> requirements, Nat t,
                                std::uint64_t scan_cap) {
    for (const auto& req : requirements) {
        if (const auto* members = std::get_if<std::vector<BinaryString>>(&req.spec)) {
            for (const auto& s : *members) {
                if (s.size() > t) {
                    throw SchemaError("requirement member longer than t",
                                      {{"id", req.id}, {"member", s}, {"t", t}});
                }
            }
        }
    }
    std::stable_sort(requirements.begin(), requirements.end(),
                     [](const Requirement& a, const Requirement& b) { return a.id < b.id; });

    ForceResult r;
    for (const auto& req : requirements) {
        std::optional<BinaryString> found;
        if (const auto* members = std::get_if<std::vector<BinaryString>>(&req.spec)) {
            // The explicit set is finite, so the shortlex-least extension is
            // read off the members directly instead of scanning 2^(t-|σ|).
            for (const auto& s : *members) {
                if (r.sigma.is_prefix_of(s) && (!found || ShortLex{}(s, *found))) found = s;
            }
        } else {
            const auto& op = std::get<enumop::EnumOperator>(req.spec);
            require_scan_budget(t - r.sigma.size(), scan_cap);
            std::uint64_t scanned = 0;
            found = first_extension(
                r.sigma, t, [&](const BinaryString& tau) { return danger_member(tau, op).member; },
                scanned);
        }
        if (found) r.sigma = *found;
        r.log.push_back({req.id, found.has_value(), found});
    }
    r.sigma = r.sigma.padded(t);
    return r;
}

DemoResult theorem3_demo(const BinaryString& sigma_x, Nat l, const enumop::EnumOperator& op) {
    if (l > sigma_x.size()) {
        throw PreconditionViolated("theorem3_demo needs l <= |sigma|",
                                   {{"l", l}, {"length", sigma_x.size()}});
    }
    DemoResult r;
    r.t = sigma_x.size();
    const BinaryString j0 = j_map(sigma_x);
    r.z_t = enumop::evaluate(op, string_to_set(j0)).minus(string_to_set(sigma_x));

    std::optional<Nat> p;
    for (Nat candidate : r.z_t) {
        if (candidate > l && candidate < r.t && !j0.at(candidate)) {
            p = candidate;
            break;
        }
    }
    if (!p) return r;

    auto fix = fixpoint_remove_witnesses(sigma_x, *p);
    const auto danger = danger_member(fix.sigma, op);
    if (!danger.member || !sigma_x.prefix(l).is_prefix_of(fix.sigma) ||
        j_map(fix.sigma) != j0) {
        throw std::logic_error("fixpoint result failed its own certificate checks");
    }
    r.certificate = Certificate{l, r.t, *p, sigma_x, fix.sigma, *danger.witness};
    r.fixpoint = std::move(fix);
    return r;
}

std::vector<std::string> verify_certificate(const Certificate& cert,
                                            const enumop::EnumOperator& op) {
    std::vector<std::string> failed;
    auto check = [&](bool ok, const char* name) {
        if (!ok) failed.emplace_back(name);
    };
    check(cert.sigma0.size() == cert.t, "sigma0-length");
    check(cert.tau.size() == cert.t, "tau-length");
    check(cert.l < cert.p && cert.p < cert.t, "p-range");
    check(cert.sigma0.prefix(cert.l).is_prefix_of(cert.tau) && cert.l <= cert.tau.size(),
          "tau-extends-sigma0-below-l");
    check(cert.tau.at(cert.p), "tau-contains-p");
    check(j_map(cert.tau) == j_map(cert.sigma0), "j-preserved");
    const auto danger = danger_member(cert.tau, op);
    check(danger.member, "tau-in-danger-set");
    check(danger.witness == cert.danger_witness, "danger-witness");
    check(enumop::evaluate(op, string_to_set(j_map(cert.sigma0))).contains(cert.p),
          "p-enumerated-from-j");
    return failed;
}

nlohmann::ordered_json trace_json(const std::vector<FixpointStage>& trace) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& s : trace) {
        out.push_back({{"i", s.i}, {"sigma", s.sigma}, {"changed", s.changed}});
    }
    return out;
}

std::vector<FixpointStage> trace_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_array()) throw SchemaError("fixpoint trace must be an array");
    std::vector<FixpointStage> out;
    for (const auto& s : j) {
        if (!s.is_object() || !s.contains("i") || !s["i"].is_number_unsigned() ||
            !s.contains("sigma") || !s.contains("changed")) {
            throw SchemaError("malformed fixpoint stage", {{"got", s}});
        }
        out.push_back({s["i"].get<Nat>(), s["sigma"].get<BinaryString>(),
                       s["changed"].get<FiniteNatSet>()});
    }
    return out;
}

void to_json(nlohmann::ordered_json& j, const Certificate& c) {
    j = nlohmann::ordered_json::object();
    j["l"] = c.l;
    j["t"] = c.t;
    j["p"] = c.p;
    j["sigma0"] = c.sigma0;
    j["tau"] = c.tau;
    j["danger_witness"] = c.danger_witness;
}

void from_json(const nlohmann::ordered_json& j, Certificate& c) {
    if (!j.is_object()) throw SchemaError("certificate must be an object");
    for (const char* key : {"l", "t", "p", "danger_witness"}) {
        if (!j.contains(key) || !j[key].is_number_unsigned()) {
            throw SchemaError(std::string("certificate field missing or not natural: ") + key);
        }
    }
    if (!j.contains("sigma0") || !j.contains("tau")) {
        throw SchemaError("certificate needs sigma0 and tau");
    }
    c.l = j["l"].get<Nat>();
    c.t = j["t"].get<Nat>();
    c.p = j["p"].get<Nat>();
    c.sigma0 = j["sigma0"].get<BinaryString>();
    c.tau = j["tau"].get<BinaryString>();
    c.danger_witness = j["danger_witness"].get<Nat>();
}

void to_json(nlohmann::ordered_json& j, const Requirement& r) {
    j = nlohmann::ordered_json::object();
    j["id"] = r.id;
    if (const auto* members = std::get_if<std::vector<BinaryString>>(&r.spec)) {
        j["members"] = *members;
    } else {
        j["danger"] = std::get<enumop::EnumOperator>(r.spec);
    }
}

void from_json(const nlohmann::ordered_json& j, Requirement& r) {
    if (!j.is_object() || !j.contains("id") || !j["id"].is_number_unsigned()) {
        throw SchemaError("requirement needs a natural \"id\"", {{"got", j}});
    }
    r.id = j["id"].get<Nat>();
    const bool has_members = j.contains("members");
    const bool has_danger = j.contains("danger");
    if (has_members == has_danger) {
        throw SchemaError("requirement needs exactly one of \"members\" or \"danger\"",
                          {{"id", r.id}});
    }
    if (has_members) {
        if (!j["members"].is_array()) throw SchemaError("\"members\" must be an array");
        std::vector<BinaryString> members;
        for (const auto& m : j["members"]) members.push_back(m.get<BinaryString>());
        r.spec = std::move(members);
    } else {
        r.spec = j["danger"].get<enumop::EnumOperator>();
    }
}

void to_json(nlohmann::ordered_json& j, const ForceDecision& d) {
    j = nlohmann::ordered_json::object();
    j["id"] = d.id;
    j["decision"] = d.met ? "met" : "avoided-within-bound";
    if (d.via) j["via"] = *d.via;
}

}  // namespace relce::forcing
