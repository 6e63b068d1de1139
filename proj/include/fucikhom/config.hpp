#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fucikhom/fucik.hpp"
#include "fucikhom/weights.hpp"

namespace fucikhom {

/// Parses {"kind":"piecewise","breaks":[...],"values":[...]},
/// {"kind":"trig","offset":..,"amplitude":..,"frequency":..} or
/// {"kind":"constant","value":..}; optional "theta_minus"/"theta_plus"
/// declare looser bounds.  Unknown fields are rejected.
PeriodicWeight weight_from_json(const nlohmann::json& j);
nlohmann::ordered_json weight_to_json(const PeriodicWeight& w);

Interval interval_from_json(const nlohmann::json& j);

Sign sign_from_string(const std::string& s);

/// eps field: a positive number, or null / "homogenized" for the limit.
std::optional<double> eps_from_json(const nlohmann::json& j);

/// Rejects keys of `j` outside `allowed` (comma-separated list).
void reject_unknown_fields(const nlohmann::json& j, const std::string& allowed,
                           const std::string& where);

}  // namespace fucikhom
