#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relce/bitstring.hpp"
#include "relce/enum_op.hpp"

namespace relce::pi01 {

using NodeSet = std::set<BinaryString, ShortLex>;

struct TreeValidation;

/// Finite prefix-closed tree whose depth-D nodes stand in for the members
/// of a nonempty Π⁰₁ class. Only obtainable through validate_tree.
class PrefixTree {
public:
    std::size_t depth() const noexcept { return depth_; }
    const NodeSet& nodes() const noexcept { return nodes_; }
    bool contains(const BinaryString& s) const { return nodes_.count(s) != 0; }

private:
    friend TreeValidation validate_tree(std::size_t, std::vector<BinaryString>);
    PrefixTree(std::size_t depth, NodeSet nodes) : depth_(depth), nodes_(std::move(nodes)) {}

    std::size_t depth_;
    NodeSet nodes_;
};

enum class ViolationKind { missing_root, not_prefix_closed, overlong_node, empty_class };

std::string_view to_string(ViolationKind kind) noexcept;

struct TreeViolation {
    ViolationKind kind;
    std::vector<BinaryString> nodes;  // orphans or overlong nodes; empty otherwise
};

struct TreeValidation {
    std::optional<PrefixTree> tree;
    std::vector<TreeViolation> violations;

    bool valid() const noexcept { return tree.has_value(); }
};

/// Checks closure, the root, node lengths, and that some depth-D node exists.
/// Every violation is reported, not just the first.
TreeValidation validate_tree(std::size_t depth, std::vector<BinaryString> nodes);

/// validate_tree, throwing SchemaError with the violations when invalid.
PrefixTree require_valid_tree(std::size_t depth, std::vector<BinaryString> nodes);

enum class GeneratorKind { complete, single_path, random };

struct TreeGenerator {
    GeneratorKind kind = GeneratorKind::complete;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    double density = 1.0;
};

/// Builds the node list for a generator spec. `random` includes each string
/// of length <= depth with probability `density`, then prefix-closes. The
/// result is validated; a random draw may legitimately yield an empty class.
/// Throws BudgetExceeded if 2^(depth+1) candidates exceed `scan_cap`.
TreeValidation generate_tree(const TreeGenerator& gen, std::uint64_t scan_cap);

struct WitnessEntry {
    Nat l = 0;
    FiniteNatSet ones_below;

    friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

/// Append-only list of (l, E) pairs in the order the stages produced them.
using WitnessSet = std::vector<WitnessEntry>;

enumop::EnumOperator as_operator(const WitnessSet& c);

enum class StepKind { start, extend_one, extend_zero, backtrack };

std::string_view to_string(StepKind kind) noexcept;

struct Stage {
    Nat s = 0;
    BinaryString x;
    StepKind step = StepKind::start;
    std::optional<WitnessEntry> appended;
};

struct RightmostResult {
    BinaryString x;
    WitnessSet c;
    std::vector<Stage> trace;
    bool stuck = false;
};

/// Stage rule: from X_s, take X_s⌢1 if it is in the tree. Otherwise move to
/// (X_s↾l)⌢0 for the greatest l such that that node is in the tree and it
/// differs from X_s's own prefix (l = |X_s|, or X_s(l) = 1), and append
/// (l, {n < l : X_s(n) = 1}) to C. Halts at the first X_s of length depth.
RightmostResult rightmost_construct(const PrefixTree& tree);

/// Lexicographically greatest depth-D node all of whose prefixes are in the
/// tree, found by scanning the node set.
BinaryString rightmost_oracle(const PrefixTree& tree);

namespace detail {
/// The stage procedure without the validity gate. Reports stuck when no
/// leftward move exists.
RightmostResult construct_on(std::size_t depth, const NodeSet& nodes);
}  // namespace detail

void to_json(nlohmann::ordered_json& j, const PrefixTree& t);
void to_json(nlohmann::ordered_json& j, const WitnessEntry& e);
void from_json(const nlohmann::ordered_json& j, WitnessEntry& e);
void to_json(nlohmann::ordered_json& j, const Stage& s);
nlohmann::ordered_json violations_json(const std::vector<TreeViolation>& violations);

/// Accepts {"depth", "nodes"} or a generator spec {"gen", "depth", "seed",
/// "density"}. Throws SchemaError on shape errors or an invalid tree.
PrefixTree tree_from_json(const nlohmann::ordered_json& j, std::uint64_t scan_cap);

}  // namespace relce::pi01
