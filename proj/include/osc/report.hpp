// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace osc {

enum class Verdict { Disjoint, Nested, Intersecting, Inconclusive, EqualFamily };

std::string to_string(Verdict v);

/// Outcome of comparing the family members at parameters a < b.
struct PairResult {
    double a = 0.0;
    double b = 0.0;
    double min_gap = 0.0;
    Verdict verdict = Verdict::Disjoint;
    std::optional<std::pair<double, double>> witness;  // point near which both members pass
};

struct MultiplicityResult {
    double s = 0.0;
    double t = 0.0;
    int order = 0;
    bool saturated = false;  // order reached the jet cap; the true order may be higher
};

/// Machine-readable verdict for a family of osculating objects, with the
/// sampling grid echoed so any run can be reproduced.
struct VerificationReport {
    std::string family;   // e.g. "taylor", "trig", "circle", "conic", "mobius"
    std::string theorem;  // short label for the statement being checked
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json grid = nlohmann::json::object();
    std::vector<PairResult> pairs;
    std::vector<MultiplicityResult> multiplicities;
    std::optional<int> index;  // summed intersection index, when computed
    std::optional<int> bound;  // d^2 bound the index is checked against
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> notes;

    /// Key-sorted JSON per the fixed schema
    /// {family, theorem, params, pairs, multiplicities, index, bound, verdict, grid, notes}.
    nlohmann::json to_json() const;

    /// Human-readable summary: verdict, worst pair, margins.
    std::string to_text() const;

    /// Worst (smallest min_gap) pair, if any pairs were compared.
    const PairResult* worst_pair() const;
};

}  // namespace osc
