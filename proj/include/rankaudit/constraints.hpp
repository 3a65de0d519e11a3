#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rankaudit/graph.hpp"
#include "rankaudit/sensitivity.hpp"

namespace rankaudit {

enum class RuleDirection { no_decrease, no_increase };
enum class ThresholdKind { absolute_positions, percent_of_n };

std::string_view to_string(RuleDirection direction) noexcept;
std::string_view to_string(ThresholdKind kind) noexcept;
RuleDirection parse_rule_direction(std::string_view text);
ThresholdKind parse_threshold_kind(std::string_view text);

/**
 * "Protected nodes may not move down (or up) by more than `threshold`."
 *
 * A threshold of 0 forbids any move in the guarded direction. Percentage
 * thresholds are taken of the surviving node count and rounded up.
 */
struct ConstraintRule {
    std::string id;
    std::set<NodeId> protectedNodes;
    RuleDirection direction = RuleDirection::no_decrease;
    double threshold = 0.0;
    ThresholdKind kind = ThresholdKind::absolute_positions;

    // Throws Error(invalid_argument).
    void validate() const;

    // Largest tolerated move for a perturbation with `survivors` remaining nodes.
    double effective_threshold(std::size_t survivors) const;

    friend bool operator==(const ConstraintRule&, const ConstraintRule&) = default;
};

// Conjunction of rules; ids are unique.
class RuleSet {
public:
    RuleSet() = default;
    explicit RuleSet(std::vector<ConstraintRule> rules);

    void add(ConstraintRule rule);
    const std::vector<ConstraintRule>& rules() const noexcept { return rules_; }
    bool empty() const noexcept { return rules_.empty(); }

    friend bool operator==(const RuleSet&, const RuleSet&) = default;

private:
    std::vector<ConstraintRule> rules_;
};

// True when the perturbation `d` breaks the rule. Removing a protected node is
// always a violation.
bool violates(const ConstraintRule& rule, const DeltaVector& d);

bool violates_any(const RuleSet& rules, const DeltaVector& d);

// Returns the delta vector of a candidate, or nullptr when unavailable.
using DeltaLookup = std::function<const DeltaVector*(const NodeId&)>;

// Records whose perturbation violates no rule, in their original order. Throws
// Error(incomplete_cache) if the lookup has no deltas for a candidate.
SensitivityTable filter_table(const SensitivityTable& table, const RuleSet& rules,
                              const DeltaLookup& deltaLookup);

} // namespace rankaudit
