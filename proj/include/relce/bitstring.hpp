#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace relce {

using Nat = std::uint64_t;

/// A finite binary string; position 0 is the leftmost character.
///
/// Stored as ASCII '0'/'1' so that the text form, hashing and the
/// lexicographic order (with 0 < 1) all come for free from std::string.
class BinaryString {
public:
    BinaryString() = default;

    /// Parses '0'/'1' text. Throws SchemaError on any other character.
    static BinaryString parse(std::string_view text);
    static BinaryString zeros(std::size_t length);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    /// Bit at `pos`; positions at or beyond the length read as 0.
    bool at(Nat pos) const noexcept { return pos < bits_.size() && bits_[pos] == '1'; }
    void set(Nat pos, bool value);

    BinaryString prefix(std::size_t length) const;
    BinaryString append(bool bit) const;
    BinaryString padded(std::size_t length) const;

    /// True if `*this` is an initial segment of `other` (σ ⊑ τ).
    bool is_prefix_of(const BinaryString& other) const noexcept;

    const std::string& text() const noexcept { return bits_; }

    friend bool operator==(const BinaryString&, const BinaryString&) = default;
    friend std::strong_ordering operator<=>(const BinaryString& a, const BinaryString& b) noexcept {
        return a.bits_ <=> b.bits_;
    }

private:
    explicit BinaryString(std::string bits) : bits_(std::move(bits)) {}
    std::string bits_;
};

/// Length first, then lexicographic. The enumeration order of every
/// exhaustive scan in the library.
struct ShortLex {
    bool operator()(const BinaryString& a, const BinaryString& b) const noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Finite set of naturals kept sorted and duplicate-free.
class FiniteNatSet {
public:
    FiniteNatSet() = default;
    FiniteNatSet(std::initializer_list<Nat> elements);
    explicit FiniteNatSet(std::vector<Nat> elements);

    bool contains(Nat n) const noexcept;
    bool is_subset_of(const FiniteNatSet& other) const noexcept;
    void insert(Nat n);

    FiniteNatSet minus(const FiniteNatSet& other) const;

    bool empty() const noexcept { return elements_.empty(); }
    std::size_t size() const noexcept { return elements_.size(); }
    std::span<const Nat> elements() const noexcept { return elements_; }
    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    friend bool operator==(const FiniteNatSet&, const FiniteNatSet&) = default;
    friend auto operator<=>(const FiniteNatSet&, const FiniteNatSet&) = default;

private:
    std::vector<Nat> elements_;
};

/// ⟨n,m⟩ = 2^n (2m+1). Always exceeds n and is at least 1; 0 is the only
/// natural that is not a code. Throws InputTooLarge when the result does not
/// fit in 64 bits.
Nat encode_pair(Nat n, Nat m);

/// Inverse of encode_pair; nullopt for 0.
std::optional<std::pair<Nat, Nat>> decode_pair(Nat code) noexcept;

/// {n < |σ| : σ(n) = 1}
FiniteNatSet string_to_set(const BinaryString& sigma);

// JSON: strings as "0101" text, sets as sorted arrays.
void to_json(nlohmann::ordered_json& j, const BinaryString& s);
void from_json(const nlohmann::ordered_json& j, BinaryString& s);
void to_json(nlohmann::ordered_json& j, const FiniteNatSet& s);
void from_json(const nlohmann::ordered_json& j, FiniteNatSet& s);

}  // namespace relce

template <>
struct std::hash<relce::BinaryString> {
    std::size_t operator()(const relce::BinaryString& s) const noexcept {
        return std::hash<std::string>{}(s.text());
    }
};
