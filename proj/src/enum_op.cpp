#include "relce/enum_op.hpp"

#include <algorithm>

#include "relce/errors.hpp"

namespace relce::enumop {

EnumOperator::EnumOperator(std::vector<EnumAxiom> axioms) {
    for (auto& a : axioms) add(std::move(a));
}

void EnumOperator::add(EnumAxiom axiom) {
    if (std::find(axioms_.begin(), axioms_.end(), axiom) == axioms_.end()) {
        axioms_.push_back(std::move(axiom));
    }
}

FiniteNatSet evaluate(const EnumOperator& op, const FiniteNatSet& oracle) {
    FiniteNatSet out;
    for (const auto& a : op.axioms()) {
        if (a.condition.is_subset_of(oracle)) out.insert(a.target);
    }
    return out;
}

std::string_view to_string(FailureKind kind) noexcept {
    switch (kind) {
        case FailureKind::missing_axiom: return "missing-axiom";
        case FailureKind::false_positive: return "false-positive";
    }
    return "unknown";
}

WitnessReport verify_e_witness(const EnumOperator& c, const BinaryString& x) {
    const FiniteNatSet fired = evaluate(c, string_to_set(x));
    WitnessReport report;
    report.checked_below = x.size();
    for (Nat m = 0; m < x.size(); ++m) {
        const bool zero = !x.at(m);
        const bool enumerated = fired.contains(m);
        if (zero && !enumerated) report.failures.push_back({m, FailureKind::missing_axiom});
        if (!zero && enumerated) report.failures.push_back({m, FailureKind::false_positive});
    }
    return report;
}

void to_json(nlohmann::ordered_json& j, const EnumAxiom& a) {
    j = nlohmann::ordered_json::array({a.target, a.condition});
}

void from_json(const nlohmann::ordered_json& j, EnumAxiom& a) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned()) {
        throw SchemaError("axiom must be [n, [e1, ...]]", {{"got", j}});
    }
    a.target = j[0].get<Nat>();
    a.condition = j[1].get<FiniteNatSet>();
}

void to_json(nlohmann::ordered_json& j, const EnumOperator& op) {
    j = nlohmann::ordered_json::object();
    j["axioms"] = nlohmann::ordered_json::array();
    for (const auto& a : op.axioms()) j["axioms"].push_back(a);
}

void from_json(const nlohmann::ordered_json& j, EnumOperator& op) {
    if (!j.is_object() || !j.contains("axioms") || !j["axioms"].is_array()) {
        throw SchemaError("operator must be {\"axioms\": [...]}");
    }
    EnumOperator out;
    for (const auto& a : j["axioms"]) out.add(a.get<EnumAxiom>());
    op = std::move(out);
}

void to_json(nlohmann::ordered_json& j, const WitnessReport& r) {
    j = nlohmann::ordered_json::object();
    j["holds"] = r.holds();
    j["checked_below"] = r.checked_below;
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : r.failures) {
        j["failures"].push_back({{"m", f.m}, {"kind", std::string(to_string(f.kind))}});
    }
}

}  // namespace relce::enumop
