#include "khab/report_json.hpp"

namespace khab {

void to_json(json& j, const PiecewisePolynomial& g) {
    json pieces = json::array();
    for (const auto& p : g.pieces()) pieces.push_back(p.coeffs());
    j = json{{"breakpoints", g.breakpoints()}, {"pieces", pieces}};
}

void from_json(const json& j, PiecewisePolynomial& g) {
    std::vector<Polynomial> pieces;
    for (const auto& c : j.at("pieces")) pieces.emplace_back(c.get<std::vector<double>>());
    g = PiecewisePolynomial(j.at("breakpoints").get<std::vector<double>>(), std::move(pieces));
}

void to_json(json& j, const QuadResult& r) { j = json{{"value", r.value}, {"err", r.abs_error_estimate}}; }

void from_json(const json& j, QuadResult& r) {
    r.value = j.at("value").get<double>();
    r.abs_error_estimate = j.at("err").get<double>();
}

void to_json(json& j, const VerificationReport& r) {
    j = json{
        {"params", {{"n", r.params.n}, {"alpha", r.params.alpha}, {"epsilon", r.epsilon}}},
        {"premise", {{"ok", r.premise_ok}, {"worst_margin", r.premise_worst_margin}}},
        {"lhs", r.lhs},
        {"rhs_conjecture", r.rhs_conjecture},
        {"delta_I", r.delta_I},
        {"c_upper", r.c_upper},
        {"violation_margin", r.violation_margin},
        {"bound_ok", r.bound_ok},
        {"margin_matches_delta_I", r.margin_matches_delta_I},
        {"conjecture_violated", r.conjecture_violated},
        {"verified", r.verified()},
        {"failures", r.failures},
    };
}

void from_json(const json& j, VerificationReport& r) {
    const auto& p = j.at("params");
    r.params.n = p.at("n").get<int>();
    r.params.alpha = p.at("alpha").get<double>();
    r.epsilon = p.at("epsilon").get<double>();
    r.premise_ok = j.at("premise").at("ok").get<bool>();
    r.premise_worst_margin = j.at("premise").at("worst_margin").get<double>();
    r.lhs = j.at("lhs").get<QuadResult>();
    r.rhs_conjecture = j.at("rhs_conjecture").get<double>();
    r.delta_I = j.at("delta_I").get<QuadResult>();
    r.c_upper = j.at("c_upper").get<double>();
    r.violation_margin = j.at("violation_margin").get<double>();
    r.bound_ok = j.at("bound_ok").get<bool>();
    r.margin_matches_delta_I = j.value("margin_matches_delta_I", false);
    r.conjecture_violated = j.value("conjecture_violated", false);
    r.failures = j.value("failures", std::vector<std::string>{});
}

void to_json(json& j, const ConstantsReport& r) {
    j = json{
        {"params", {{"n", r.params.n}, {"alpha", r.params.alpha}}},
        {"c_upper", r.c_upper},
        {"c_upper_err", r.c_upper_err},
        {"closed_form_total", r.closed_form_total},
        {"m_minus_integral", r.m_minus_integral},
        {"m_minus_err", r.m_minus_err},
        {"total_integral", r.total_integral},
        {"decomposition_residual", r.decomposition_residual},
        {"boundary_ts", r.boundary_ts},
    };
}

}  // namespace khab
