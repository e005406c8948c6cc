#include "relce/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "relce/errors.hpp"

namespace relce {

BinaryString BinaryString::parse(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw SchemaError("binary string may contain only '0' and '1'",
                              {{"text", std::string(text)}, {"position", i}});
        }
    }
    return BinaryString(std::string(text));
}

BinaryString BinaryString::zeros(std::size_t length) {
    return BinaryString(std::string(length, '0'));
}

void BinaryString::set(Nat pos, bool value) {
    if (pos >= bits_.size()) throw std::out_of_range("BinaryString::set past end");
    bits_[pos] = value ? '1' : '0';
}

BinaryString BinaryString::prefix(std::size_t length) const {
    return BinaryString(bits_.substr(0, std::min(length, bits_.size())));
}

BinaryString BinaryString::append(bool bit) const {
    std::string out = bits_;
    out.push_back(bit ? '1' : '0');
    return BinaryString(std::move(out));
}

BinaryString BinaryString::padded(std::size_t length) const {
    std::string out = bits_;
    if (out.size() < length) out.resize(length, '0');
    return BinaryString(std::move(out));
}

bool BinaryString::is_prefix_of(const BinaryString& other) const noexcept {
    return bits_.size() <= other.bits_.size() &&
           std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

FiniteNatSet::FiniteNatSet(std::initializer_list<Nat> elements)
    : FiniteNatSet(std::vector<Nat>(elements)) {}

FiniteNatSet::FiniteNatSet(std::vector<Nat> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteNatSet::contains(Nat n) const noexcept {
    return std::binary_search(elements_.begin(), elements_.end(), n);
}

bool FiniteNatSet::is_subset_of(const FiniteNatSet& other) const noexcept {
    return std::includes(other.elements_.begin(), other.elements_.end(),
                         elements_.begin(), elements_.end());
}

void FiniteNatSet::insert(Nat n) {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), n);
    if (it == elements_.end() || *it != n) elements_.insert(it, n);
}

FiniteNatSet FiniteNatSet::minus(const FiniteNatSet& other) const {
    FiniteNatSet out;
    std::set_difference(elements_.begin(), elements_.end(), other.elements_.begin(),
                        other.elements_.end(), std::back_inserter(out.elements_));
    return out;
}

Nat encode_pair(Nat n, Nat m) {
    constexpr Nat max = std::numeric_limits<Nat>::max();
    if (m > (max - 1) / 2) throw InputTooLarge("pair code overflows: m too large");
    const Nat odd = 2 * m + 1;
    // odd << n must keep every bit of odd
    if (n >= 64 || odd > (max >> n)) throw InputTooLarge("pair code overflows: n too large");
    return odd << n;
}

std::optional<std::pair<Nat, Nat>> decode_pair(Nat code) noexcept {
    if (code == 0) return std::nullopt;
    const Nat n = static_cast<Nat>(std::countr_zero(code));
    const Nat odd = code >> n;
    return std::pair{n, (odd - 1) / 2};
}

FiniteNatSet string_to_set(const BinaryString& sigma) {
    std::vector<Nat> ones;
    for (Nat i = 0; i < sigma.size(); ++i) {
        if (sigma.at(i)) ones.push_back(i);
    }
    return FiniteNatSet(std::move(ones));
}

void to_json(nlohmann::ordered_json& j, const BinaryString& s) { j = s.text(); }

void from_json(const nlohmann::ordered_json& j, BinaryString& s) {
    if (!j.is_string()) throw SchemaError("expected a binary string", {{"got", j}});
    s = BinaryString::parse(j.get<std::string>());
}

void to_json(nlohmann::ordered_json& j, const FiniteNatSet& s) {
    j = nlohmann::ordered_json::array();
    for (Nat n : s) j.push_back(n);
}

void from_json(const nlohmann::ordered_json& j, FiniteNatSet& s) {
    if (!j.is_array()) throw SchemaError("expected an array of naturals", {{"got", j}});
    std::vector<Nat> out;
    for (const auto& e : j) {
        if (!e.is_number_unsigned()) throw SchemaError("expected a natural number", {{"got", e}});
        out.push_back(e.get<Nat>());
    }
    s = FiniteNatSet(std::move(out));
}

}  // namespace relce
