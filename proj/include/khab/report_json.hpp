#pragma once

#include <json.hpp>

#include "khab/constants.hpp"
#include "khab/counterexample.hpp"
#include "khab/piecewise.hpp"
#include "khab/quad.hpp"

namespace khab {

using nlohmann::json;

// {breakpoints: [...], pieces: [[c0, c1, ...], ...]}
void to_json(json& j, const PiecewisePolynomial& g);
void from_json(const json& j, PiecewisePolynomial& g);

// {value, err}
void to_json(json& j, const QuadResult& r);
void from_json(const json& j, QuadResult& r);

// {params: {n, alpha, epsilon}, premise: {ok, worst_margin}, lhs: {value, err},
//  rhs_conjecture, delta_I: {value, err}, c_upper, violation_margin, bound_ok,
//  margin_matches_delta_I, conjecture_violated, verified, failures}
void to_json(json& j, const VerificationReport& r);
void from_json(const json& j, VerificationReport& r);

void to_json(json& j, const ConstantsReport& r);

}  // namespace khab
