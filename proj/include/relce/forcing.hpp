#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relce/bitstring.hpp"
#include "relce/enum_op.hpp"

namespace relce::forcing {

inline constexpr std::uint64_t kDefaultScanCap = std::uint64_t{1} << 24;

/// j(σ)(q) = 1 iff q = ⟨n,m⟩ with σ(n) = 1 and σ(q) = 0. Same length as σ;
/// codes at or past |σ| are out of range, position 0 is never a code.
/// Read on X↾t this is the stage-t approximation of the coded set Y.
BinaryString j_map(const BinaryString& sigma);

/// {n : y(⟨n,m⟩) = 1 for some in-range code}
FiniteNatSet recover_x(const BinaryString& y);

struct DangerResult {
    bool member = false;
    std::optional<Nat> witness;  // least n, when member
};

/// σ is dangerous for op when some n with σ(n) = 1 is enumerated by op from
/// the oracle j(σ).
DangerResult danger_member(const BinaryString& sigma, const enumop::EnumOperator& op);

struct FixpointStage {
    Nat i = 0;
    BinaryString sigma;
    FiniteNatSet changed;  // positions where σ_i differs from σ_{i-1}
};

struct FixpointResult {
    BinaryString sigma;
    std::vector<FixpointStage> trace;  // stages 1..final; the last has changed = ∅

    /// Stages that changed at least one bit.
    std::size_t effective_stages() const noexcept;
};

/// Sets σ(p), then repeatedly sets every in-range code ⟨b,a⟩ whose first
/// coordinate b changed in the previous stage, until nothing changes.
///
/// Requires p < |σ0|, σ0(p) = 0 and j(σ0)(p) = 0; throws PreconditionViolated
/// otherwise. When the last condition fails the diagnostic names the pair
/// (n, m) whose j-bit at p would be destroyed. The result extends σ0 as a
/// set, has σ(p) = 1 and j(σ) = j(σ0).
FixpointResult fixpoint_remove_witnesses(const BinaryString& sigma0, Nat p);

struct AvoidanceResult {
    bool holds = true;
    std::optional<BinaryString> counterexample;
    std::optional<Nat> witness;
    std::uint64_t scanned = 0;
};

/// Scans every τ ⊒ base↾l with l <= |τ| <= t in shortlex order and reports
/// the first one in the danger set of op. Throws BudgetExceeded when
/// 2^(t-l) exceeds scan_cap and PreconditionViolated unless l <= |base| <= t.
AvoidanceResult avoidance_check(const BinaryString& base, Nat l, Nat t,
                                const enumop::EnumOperator& op,
                                std::uint64_t scan_cap = kDefaultScanCap);

struct Requirement {
    Nat id = 0;
    std::variant<std::vector<BinaryString>, enumop::EnumOperator> spec;
};

struct ForceDecision {
    Nat id = 0;
    bool met = false;
    std::optional<BinaryString> via;
};

struct ForceResult {
    BinaryString sigma;
    std::vector<ForceDecision> log;
};

/// Finite-extension forcing: in id order, extend σ to the shortest then
/// lexicographically least τ (|τ| <= t) lying in the requirement's set, or
/// record that no extension within the bound meets it. The final σ is
/// padded with zeros to length t.
ForceResult force_meet_or_avoid(std::vector<Requirement> requirements, Nat t,
                                std::uint64_t scan_cap = kDefaultScanCap);

struct Certificate {
    Nat l = 0;
    Nat t = 0;
    Nat p = 0;
    BinaryString sigma0;
    BinaryString tau;
    Nat danger_witness = 0;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct DemoResult {
    Nat t = 0;
    FiniteNatSet z_t;  // enumerated from j(σX) and absent from σX
    std::optional<Certificate> certificate;
    std::optional<FixpointResult> fixpoint;
};

/// Picks the least p in Z_t with l < p < t and j(σX)(p) = 0, adds it to σX
/// by the fixpoint iteration, and certifies that the result extends σX↾l,
/// keeps j unchanged and lies in the danger set. No certificate when no p
/// qualifies.
DemoResult theorem3_demo(const BinaryString& sigma_x, Nat l, const enumop::EnumOperator& op);

/// Re-derives every certificate field from scratch; returns the names of the
/// checks that failed (empty when valid).
std::vector<std::string> verify_certificate(const Certificate& cert,
                                            const enumop::EnumOperator& op);

namespace detail {
/// The stage rule with no precondition check; p must be < |σ0|.
FixpointResult iterate_fixpoint(const BinaryString& sigma0, Nat p);
}  // namespace detail

nlohmann::ordered_json trace_json(const std::vector<FixpointStage>& trace);
std::vector<FixpointStage> trace_from_json(const nlohmann::ordered_json& j);
void to_json(nlohmann::ordered_json& j, const Certificate& c);
void from_json(const nlohmann::ordered_json& j, Certificate& c);
void to_json(nlohmann::ordered_json& j, const Requirement& r);
void from_json(const nlohmann::ordered_json& j, Requirement& r);
void to_json(nlohmann::ordered_json& j, const ForceDecision& d);

}  // namespace relce::forcing
