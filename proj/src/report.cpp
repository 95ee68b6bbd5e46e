// SPDX-License-Identifier: Apache-2.0
#include "osc/report.hpp"

#include <cstdio>
#include <sstream>

namespace osc {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Disjoint: return "disjoint";
        case Verdict::Nested: return "nested";
        case Verdict::Intersecting: return "intersecting";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::EqualFamily: return "equal-family";
    }
    return "inconclusive";
}

const PairResult* VerificationReport::worst_pair() const {
    const PairResult* worst = nullptr;
    for (const auto& p : pairs)
        if (!worst || p.min_gap < worst->min_gap) worst = &p;
    return worst;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j["theorem"] = theorem;
    j["params"] = params;
    j["grid"] = grid;
    j["verdict"] = to_string(verdict);
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : pairs) {
        nlohmann::json pj;
        pj["a"] = p.a;
        pj["b"] = p.b;
        pj["min_gap"] = p.min_gap;
        pj["verdict"] = to_string(p.verdict);
        if (p.witness) pj["witness"] = {p.witness->first, p.witness->second};
        j["pairs"].push_back(pj);
    }
    j["multiplicities"] = nlohmann::json::array();
    for (const auto& m : multiplicities) {
        nlohmann::json mj;
        mj["s"] = m.s;
        mj["t"] = m.t;
        mj["order"] = m.order;
        if (m.saturated) mj["saturated"] = true;
        j["multiplicities"].push_back(mj);
    }
    j["index"] = index ? nlohmann::json(*index) : nlohmann::json();
    j["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json();
    j["notes"] = notes;
    return j;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "family: " << family << "\n";
    os << "claim:  " << theorem << "\n";
    os << "verdict: " << to_string(verdict) << "\n";
    if (verdict == Verdict::Inconclusive)
        os << "INCONCLUSIVE: " << (notes.empty() ? "marginal or degenerate input" : notes.front())
           << "\n";
    if (!pairs.empty()) {
        os << "pairs compared: " << pairs.size() << "\n";
        if (const PairResult* w = worst_pair()) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "worst pair: a=%.10g b=%.10g min gap %.6g (%s)\n", w->a,
                          w->b, w->min_gap, to_string(w->verdict).c_str());
            os << buf;
            if (w->witness) {
                std::snprintf(buf, sizeof(buf), "witness: (%.10g, %.10g)\n", w->witness->first,
                              w->witness->second);
                os << buf;
            }
        }
    }
    if (!multiplicities.empty()) {
        os << "multiplicities:";
        for (const auto& m : multiplicities) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), " (s=%.6g t=%.6g order=%d%s)", m.s, m.t, m.order,
                          m.saturated ? "+" : "");
            os << buf;
        }
        os << "\n";
    }
    if (index) os << "index: " << *index << (bound ? " (bound " + std::to_string(*bound) + ")" : "") << "\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace osc
