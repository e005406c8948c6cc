#include "relce/rightmost.hpp"

#include <random>

#include "relce/errors.hpp"

namespace relce::pi01 {

std::string_view to_string(ViolationKind kind) noexcept {
    switch (kind) {
        case ViolationKind::missing_root: return "missing-root";
        case ViolationKind::not_prefix_closed: return "not-prefix-closed";
        case ViolationKind::overlong_node: return "overlong-node";
        case ViolationKind::empty_class: return "empty-class";
    }
    return "unknown";
}

std::string_view to_string(StepKind kind) noexcept {
    switch (kind) {
        case StepKind::start: return "start";
        case StepKind::extend_one: return "extend-1";
        case StepKind::extend_zero: return "extend-0";
        case StepKind::backtrack: return "backtrack";
    }
    return "unknown";
}

TreeValidation validate_tree(std::size_t depth, std::vector<BinaryString> nodes) {
    NodeSet set(std::make_move_iterator(nodes.begin()), std::make_move_iterator(nodes.end()));
    TreeValidation out;

    if (set.count(BinaryString{}) == 0) out.violations.push_back({ViolationKind::missing_root, {}});

    std::vector<BinaryString> orphans;
    std::vector<BinaryString> overlong;
    bool has_full_length = false;
    for (const auto& node : set) {
        if (!node.empty() && set.count(node.prefix(node.size() - 1)) == 0) orphans.push_back(node);
        if (node.size() > depth) overlong.push_back(node);
        if (node.size() == depth) has_full_length = true;
    }
    if (!orphans.empty()) out.violations.push_back({ViolationKind::not_prefix_closed, orphans});
    if (!overlong.empty()) out.violations.push_back({ViolationKind::overlong_node, overlong});
    if (!has_full_length) out.violations.push_back({ViolationKind::empty_class, {}});

    if (out.violations.empty()) out.tree = PrefixTree(depth, std::move(set));
    return out;
}

nlohmann::ordered_json violations_json(const std::vector<TreeViolation>& violations) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
        nlohmann::ordered_json e;
        e["kind"] = std::string(to_string(v.kind));
        if (!v.nodes.empty()) e["nodes"] = v.nodes;
        out.push_back(std::move(e));
    }
    return out;
}

PrefixTree require_valid_tree(std::size_t depth, std::vector<BinaryString> nodes) {
    auto v = validate_tree(depth, std::move(nodes));
    if (!v.valid()) {
        throw SchemaError("invalid tree", {{"violations", violations_json(v.violations)}});
    }
    return *std::move(v.tree);
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; fixed across standard
// libraries, unlike the <random> distributions.
double unit_interval(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void add_with_prefixes(NodeSet& set, const BinaryString& node) {
    for (std::size_t len = 0; len <= node.size(); ++len) set.insert(node.prefix(len));
}

}  // namespace

TreeValidation generate_tree(const TreeGenerator& gen, std::uint64_t scan_cap) {
    if (gen.depth >= 62 || (std::uint64_t{1} << (gen.depth + 1)) > scan_cap) {
        throw BudgetExceeded("tree generator exceeds the scan cap",
                             {{"depth", gen.depth}, {"scan_cap", scan_cap}});
    }
    if (!(gen.density > 0.0 && gen.density <= 1.0)) {
        throw SchemaError("density must lie in (0, 1]", {{"density", gen.density}});
    }

    std::mt19937_64 rng(gen.seed);
    NodeSet set;
    set.insert(BinaryString{});
    switch (gen.kind) {
        case GeneratorKind::complete:
        case GeneratorKind::random: {
            // Candidates in shortlex order so a seed fixes the draw sequence.
            std::vector<BinaryString> level{BinaryString{}};
            for (std::size_t len = 0; len <= gen.depth; ++len) {
                std::vector<BinaryString> next;
                for (const auto& s : level) {
                    if (gen.kind == GeneratorKind::complete || unit_interval(rng) < gen.density) {
                        add_with_prefixes(set, s);
                    }
                    if (len < gen.depth) {
                        next.push_back(s.append(false));
                        next.push_back(s.append(true));
                    }
                }
                level = std::move(next);
            }
            break;
        }
        case GeneratorKind::single_path: {
            BinaryString path;
            for (std::size_t i = 0; i < gen.depth; ++i) path = path.append((rng() & 1) != 0);
            add_with_prefixes(set, path);
            break;
        }
    }
    return validate_tree(gen.depth, std::vector<BinaryString>(set.begin(), set.end()));
}

enumop::EnumOperator as_operator(const WitnessSet& c) {
    enumop::EnumOperator op;
    for (const auto& e : c) op.add({e.l, e.ones_below});
    return op;
}

namespace detail {

RightmostResult construct_on(std::size_t depth, const NodeSet& nodes) {
    auto in_tree = [&](const BinaryString& s) { return nodes.count(s) != 0; };

    RightmostResult r;
    r.trace.push_back({0, r.x, StepKind::start, std::nullopt});
    // Every stage lands on a node never visited before, so |nodes| bounds
    // the stage count even on malformed input.
    const std::size_t max_stages = nodes.size() + 1;

    while (r.x.size() < depth) {
        const Nat s = r.trace.size();
        if (s > max_stages) {
            r.stuck = true;
            return r;
        }
        if (auto up = r.x.append(true); in_tree(up)) {
            r.x = std::move(up);
            r.trace.push_back({s, r.x, StepKind::extend_one, std::nullopt});
            continue;
        }

        std::optional<Nat> chosen;
        for (Nat l = r.x.size() + 1; l-- > 0;) {
            if (l < r.x.size() && !r.x.at(l)) continue;  // (X↾l)⌢0 would be X↾(l+1), not a move
            if (in_tree(r.x.prefix(l).append(false))) {
                chosen = l;
                break;
            }
        }
        if (!chosen) {
            r.stuck = true;
            return r;
        }

        const Nat l = *chosen;
        WitnessEntry entry{l, string_to_set(r.x.prefix(l))};
        const StepKind step = (l == r.x.size()) ? StepKind::extend_zero : StepKind::backtrack;
        r.x = r.x.prefix(l).append(false);
        r.c.push_back(entry);
        r.trace.push_back({s, r.x, step, std::move(entry)});
    }
    return r;
}

}  // namespace detail

RightmostResult rightmost_construct(const PrefixTree& tree) {
    return detail::construct_on(tree.depth(), tree.nodes());
}

BinaryString rightmost_oracle(const PrefixTree& tree) {
    std::optional<BinaryString> best;
    for (const auto& node : tree.nodes()) {
        if (node.size() != tree.depth()) continue;
        bool all_prefixes = true;
        for (std::size_t len = 0; len < node.size() && all_prefixes; ++len) {
            all_prefixes = tree.contains(node.prefix(len));
        }
        if (all_prefixes && (!best || *best < node)) best = node;
    }
    // validity guarantees a depth-D node
    return best.value();
}

void to_json(nlohmann::ordered_json& j, const PrefixTree& t) {
    j = nlohmann::ordered_json::object();
    j["depth"] = t.depth();
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : t.nodes()) j["nodes"].push_back(n);
}

void to_json(nlohmann::ordered_json& j, const WitnessEntry& e) {
    j = nlohmann::ordered_json::array({e.l, e.ones_below});
}

void from_json(const nlohmann::ordered_json& j, WitnessEntry& e) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned()) {
        throw SchemaError("witness entry must be [l, [n, ...]]", {{"got", j}});
    }
    e.l = j[0].get<Nat>();
    e.ones_below = j[1].get<FiniteNatSet>();
}

void to_json(nlohmann::ordered_json& j, const Stage& s) {
    j = nlohmann::ordered_json::object();
    j["s"] = s.s;
    j["X"] = s.x;
    j["step"] = std::string(to_string(s.step));
    if (s.appended) j["appended"] = *s.appended;
}

namespace {

std::size_t require_natural(const nlohmann::ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw SchemaError(std::string("missing or non-natural field: ") + key);
    }
    return j[key].get<std::size_t>();
}

}  // namespace

PrefixTree tree_from_json(const nlohmann::ordered_json& j, std::uint64_t scan_cap) {
    if (!j.is_object()) throw SchemaError("tree must be a JSON object");
    const std::size_t depth = require_natural(j, "depth");

    if (j.contains("gen")) {
        TreeGenerator gen;
        gen.depth = depth;
        const auto& kind = j["gen"];
        if (kind == "complete") gen.kind = GeneratorKind::complete;
        else if (kind == "single-path") gen.kind = GeneratorKind::single_path;
        else if (kind == "random") gen.kind = GeneratorKind::random;
        else throw SchemaError("unknown generator", {{"gen", kind}});
        if (j.contains("seed")) gen.seed = require_natural(j, "seed");
        if (j.contains("density")) {
            if (!j["density"].is_number()) throw SchemaError("density must be a number");
            gen.density = j["density"].get<double>();
        }
        auto v = generate_tree(gen, scan_cap);
        if (!v.valid()) {
            throw SchemaError("generated tree is invalid",
                              {{"violations", violations_json(v.violations)}});
        }
        return *std::move(v.tree);
    }

    if (!j.contains("nodes") || !j["nodes"].is_array()) {
        throw SchemaError("tree needs \"nodes\" or \"gen\"");
    }
    std::vector<BinaryString> nodes;
    for (const auto& n : j["nodes"]) nodes.push_back(n.get<BinaryString>());
    return require_valid_tree(depth, std::move(nodes));
}

}  // namespace relce::pi01
