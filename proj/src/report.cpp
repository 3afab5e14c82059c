#include "qlat/report.hpp"

#include "qlat/lattice_io.hpp"

#include <sstream>

namespace qlat {

Json to_json(const BigInt& value) {
    if (value >= INT64_MIN && value <= INT64_MAX) return value.convert_to<std::int64_t>();
    return value.str();
}

Json to_json(const Rational& value) {
    return Json{{"num", to_json(BigInt(numerator(value)))}, {"den", to_json(BigInt(denominator(value)))}};
}

Json to_json(const Lattice& lattice) {
    Json levels = Json::array();
    for (int i = 0; i <= lattice.n(); ++i) levels.push_back(lattice.level_size(i));
    return Json{{"name", lattice.spec().name()},
                {"kind", lattice.is_boolean() ? "boolean" : "linear"},
                {"q", lattice.is_boolean() ? 0 : lattice.q()},
                {"n", lattice.n()},
                {"size", lattice.size()},
                {"levels", levels},
                {"digest", lattice_digest(lattice)}};
}

Json to_json(const BoundReport& report) {
    Json j{{"theorem_id", report.theorem_id}, {"params", report.params}, {"flags", report.flags},
           {"note", report.note}, {"exact", report.exact.has_value()}};
    if (report.exact) {
        j["bound"] = to_json(*report.exact);
        j["floor"] = to_json(qlat::floor(*report.exact));
    } else if (report.real) {
        j["bound"] = Json{{"real", to_string(*report.real, 30)}, {"prec", kRealPrecisionBits}};
        j["upper"] = to_json(*report.upper);
        j["floor"] = to_json(qlat::floor(*report.upper));
    }
    if (!report.construction.empty()) {
        Json sizes = Json::array();
        Json handles = Json::array();
        for (const auto& f : report.construction) {
            sizes.push_back(f.size());
            handles.push_back(f.handles());
        }
        j["construction"] = Json{{"sizes", sizes}, {"total", report.construction_size()}, {"handles", handles}};
    }
    return j;
}

namespace {

Json case_json(const CheckedCase& c) {
    return Json{{"families", c.families}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}};
}

} // namespace

Json to_json(const TheoremReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back(case_json(v));
    Json j{{"theorem_id", report.theorem_id},
           {"scope", report.scope},
           {"relation", report.relation},
           {"params", report.params},
           {"checked", report.checked},
           {"in_hypothesis", report.in_hypothesis},
           {"violation_count", report.violation_count},
           {"violations", violations},
           {"equality_count", report.equality_count},
           {"tolerance", to_json(report.tolerance)},
           {"informational", report.informational},
           {"flags", report.flags},
           {"note", report.note},
           {"ok", report.ok()}};
    j["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
    j["max_lhs"] = report.max_lhs ? case_json(*report.max_lhs) : Json(nullptr);
    j["tightest"] = report.tightest ? case_json(*report.tightest) : Json(nullptr);
    return j;
}

Json to_json(const SearchResult& result) {
    return Json{{"best", Json{{"size", result.best_size}, {"handles", result.witness}}},
                {"explored", result.explored},
                {"optimal", result.optimal}};
}

Json to_json(const CoveringReport& report) {
    Json levels = Json::array();
    for (const auto& l : report.per_level) {
        levels.push_back(Json{{"dim", l.dim},
                              {"expected_t", to_json(l.expected_t)},
                              {"min_observed", l.min_observed},
                              {"max_observed", l.max_observed}});
    }
    return Json{{"q", report.q},
                {"n", report.n},
                {"gamma_size", report.gamma_size},
                {"expected_gamma", to_json(report.expected_gamma)},
                {"per_level", levels},
                {"violations", report.violations},
                {"violation_count", report.violation_count},
                {"ok", report.ok()}};
}

Json to_json(const TransferSampleReport& report) {
    Json j{{"samples", report.samples},
           {"seed", report.seed},
           {"gamma_size", report.gamma_size},
           {"identity_failures", report.identity_failures},
           {"weighted_failures", report.weighted_failures},
           {"ok", report.ok()}};
    j["first_failure"] = report.first_failure ? Json(*report.first_failure) : Json(nullptr);
    return j;
}

Json to_json(const LemmaRow& row) {
    return Json{{"q", row.q},           {"l", row.l},           {"k", row.k},        {"n", row.n},
                {"lhs", to_json(row.lhs)}, {"rhs", to_json(row.rhs)}, {"holds", row.holds}};
}

std::string dump_canonical(const Json& value) { return value.dump(2) + "\n"; }

std::string lemma_grid_csv(const std::vector<LemmaRow>& rows) {
    std::ostringstream out;
    out << "q,l,k,n,lhs,rhs,holds\n";
    for (const auto& r : rows) {
        out << r.q << ',' << r.l << ',' << r.k << ',' << r.n << ',' << r.lhs << ',' << r.rhs << ','
            << (r.holds ? "true" : "false") << '\n';
    }
    return out.str();
}

} // namespace qlat
