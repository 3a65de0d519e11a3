#include "rankaudit/constraints.hpp"

#include <cmath>

#include "rankaudit/error.hpp"

namespace rankaudit {

std::string_view to_string(RuleDirection direction) noexcept {
    return direction == RuleDirection::no_decrease ? "no_decrease" : "no_increase";
}

std::string_view to_string(ThresholdKind kind) noexcept {
    return kind == ThresholdKind::absolute_positions ? "abs" : "pct";
}

RuleDirection parse_rule_direction(std::string_view text) {
    if (text == "no_decrease") return RuleDirection::no_decrease;
    if (text == "no_increase") return RuleDirection::no_increase;
    throw Error(ErrorCode::invalid_argument, "unknown rule direction '" + std::string(text) + "'",
                "direction");
}

ThresholdKind parse_threshold_kind(std::string_view text) {
    if (text == "abs") return ThresholdKind::absolute_positions;
    if (text == "pct") return ThresholdKind::percent_of_n;
    throw Error(ErrorCode::invalid_argument, "unknown threshold kind '" + std::string(text) + "'",
                "kind");
}

void ConstraintRule::validate() const {
    if (id.empty()) {
        throw Error(ErrorCode::invalid_argument, "rule id must be non-empty", "id");
    }
    if (protectedNodes.empty()) {
        throw Error(ErrorCode::invalid_argument, "rule '" + id + "' protects no nodes", "protected");
    }
    if (!std::isfinite(threshold) || threshold < 0.0) {
        throw Error(ErrorCode::invalid_argument, "rule '" + id + "': threshold must be >= 0",
                    "threshold");
    }
    if (kind == ThresholdKind::percent_of_n && threshold > 100.0) {
        throw Error(ErrorCode::invalid_argument,
                    "rule '" + id + "': percentage threshold must be <= 100", "threshold");
    }
}

double ConstraintRule::effective_threshold(std::size_t survivors) const {
    if (kind == ThresholdKind::absolute_positions) {
        return threshold;
    }
    // Multiply before dividing so integral percentages of integral counts stay exact.
    const double exact = threshold * static_cast<double>(survivors) / 100.0;
    const double nearest = std::round(exact);
    if (std::abs(exact - nearest) < 1e-9) {
        return nearest;
    }
    return std::ceil(exact);
}

RuleSet::RuleSet(std::vector<ConstraintRule> rules) {
    for (auto& rule : rules) {
        add(std::move(rule));
    }
}

void RuleSet::add(ConstraintRule rule) {
    rule.validate();
    for (const auto& existing : rules_) {
        if (existing.id == rule.id) {
            throw Error(ErrorCode::invalid_argument, "duplicate rule id '" + rule.id + "'", "id");
        }
    }
    rules_.push_back(std::move(rule));
}

bool violates(const ConstraintRule& rule, const DeltaVector& d) {
    if (rule.protectedNodes.contains(d.removed)) {
        return true;
    }
    const double limit = rule.effective_threshold(d.entries.size());
    for (const auto& entry : d.entries) {
        if (!rule.protectedNodes.contains(entry.node)) {
            continue;
        }
        const int move = rule.direction == RuleDirection::no_decrease ? -entry.delta : entry.delta;
        if (move > limit) {
            return true;
        }
    }
    return false;
}

bool violates_any(const RuleSet& rules, const DeltaVector& d) {
    for (const auto& rule : rules.rules()) {
        if (violates(rule, d)) {
            return true;
        }
    }
    return false;
}

SensitivityTable filter_table(const SensitivityTable& table, const RuleSet& rules,
                              const DeltaLookup& deltaLookup) {
    SensitivityTable result;
    result.fingerprint = table.fingerprint;
    for (const auto& record : table.records) {
        if (rules.empty()) {
            result.records.push_back(record);
            continue;
        }
        const DeltaVector* d = deltaLookup ? deltaLookup(record.node) : nullptr;
        if (d == nullptr) {
            throw Error(ErrorCode::incomplete_cache,
                        "no ranking deltas cached for node '" + record.node + "'", record.node);
        }
        if (!violates_any(rules, *d)) {
            result.records.push_back(record);
        }
    }
    return result;
}

} // namespace rankaudit
