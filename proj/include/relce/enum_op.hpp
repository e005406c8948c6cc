#pragma once

#include <initializer_list>
#include <string_view>
#include <vector>

#include "relce/bitstring.hpp"

namespace relce::enumop {

/// Axiom (n, E): n is enumerated once every element of E is in the oracle.
struct EnumAxiom {
    Nat target = 0;
    FiniteNatSet condition;

    friend bool operator==(const EnumAxiom&, const EnumAxiom&) = default;
    friend auto operator<=>(const EnumAxiom&, const EnumAxiom&) = default;
};

/// A finite enumeration operator. Duplicate axioms are dropped on insertion;
/// the first occurrence keeps its position so serialization is stable.
class EnumOperator {
public:
    EnumOperator() = default;
    explicit EnumOperator(std::vector<EnumAxiom> axioms);
    EnumOperator(std::initializer_list<EnumAxiom> axioms)
        : EnumOperator(std::vector<EnumAxiom>(axioms)) {}

    void add(EnumAxiom axiom);
    const std::vector<EnumAxiom>& axioms() const noexcept { return axioms_; }
    bool empty() const noexcept { return axioms_.empty(); }

    friend bool operator==(const EnumOperator&, const EnumOperator&) = default;

private:
    std::vector<EnumAxiom> axioms_;
};

/// {n : some (n, E) in op with E ⊆ oracle}
FiniteNatSet evaluate(const EnumOperator& op, const FiniteNatSet& oracle);

enum class FailureKind { missing_axiom, false_positive };

std::string_view to_string(FailureKind kind) noexcept;

struct WitnessFailure {
    Nat m = 0;
    FailureKind kind = FailureKind::missing_axiom;

    friend bool operator==(const WitnessFailure&, const WitnessFailure&) = default;
};

/// Outcome of checking that C enumerates the complement of X from X itself,
/// over positions m < checked_below only.
struct WitnessReport {
    Nat checked_below = 0;
    std::vector<WitnessFailure> failures;

    bool holds() const noexcept { return failures.empty(); }
};

/// For every m < |X|: X(m) = 0 iff some (m, E) in C has E ⊆ X.
/// A zero position with no firing axiom is missing-axiom; a one position
/// with a firing axiom is false-positive.
WitnessReport verify_e_witness(const EnumOperator& c, const BinaryString& x);

void to_json(nlohmann::ordered_json& j, const EnumAxiom& a);
void from_json(const nlohmann::ordered_json& j, EnumAxiom& a);
/// {"axioms": [[n, [e1, e2, ...]], ...]}
void to_json(nlohmann::ordered_json& j, const EnumOperator& op);
void from_json(const nlohmann::ordered_json& j, EnumOperator& op);
void to_json(nlohmann::ordered_json& j, const WitnessReport& r);

}  // namespace relce::enumop
