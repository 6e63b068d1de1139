#include "fucikhom/config.hpp"

#include <sstream>

#include "fucikhom/errors.hpp"

namespace fucikhom {

namespace {

double require_number(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key))
    throw ConfigError("missing field '" + key + "'");
  if (!j[key].is_number())
    throw ConfigError("field '" + key + "' must be a number");
  return j[key].get<double>();
}

std::vector<double> require_array(const nlohmann::json& j,
                                  const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ConfigError("field '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number())
      throw ConfigError("field '" + key + "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

void reject_unknown_fields(const nlohmann::json& j, const std::string& allowed,
                           const std::string& where) {
  std::stringstream ss(allowed);
  std::vector<std::string> keys;
  std::string tok;
  while (std::getline(ss, tok, ',')) keys.push_back(tok);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& k : keys)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown field '" + item.key() + "' in " + where);
  }
}

PeriodicWeight weight_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("weight spec must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("weight spec: missing string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  PeriodicWeight w = PeriodicWeight::constant(1.0);
  try {
    if (kind == "constant") {
      reject_unknown_fields(j, "kind,value,theta_minus,theta_plus", "weight");
      w = PeriodicWeight::constant(require_number(j, "value"));
    } else if (kind == "piecewise") {
      reject_unknown_fields(j, "kind,breaks,values,theta_minus,theta_plus",
                            "weight");
      w = PeriodicWeight::piecewise(require_array(j, "breaks"),
                                    require_array(j, "values"));
    } else if (kind == "trig") {
      reject_unknown_fields(
          j, "kind,offset,amplitude,frequency,theta_minus,theta_plus",
          "weight");
      w = PeriodicWeight::trigonometric(
          require_number(j, "offset"), require_number(j, "amplitude"),
          static_cast<int>(require_number(j, "frequency")));
    } else {
      throw ConfigError("weight spec: unknown kind '" + kind + "'");
    }
    if (j.contains("theta_minus") || j.contains("theta_plus")) {
      const double tm = j.contains("theta_minus")
                            ? require_number(j, "theta_minus")
                            : w.theta_minus();
      const double tp = j.contains("theta_plus")
                            ? require_number(j, "theta_plus")
                            : w.theta_plus();
      w = w.with_declared_bounds(tm, tp);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("weight spec: ") + e.what());
  }
  return w;
}

nlohmann::ordered_json weight_to_json(const PeriodicWeight& w) {
  nlohmann::ordered_json j;
  switch (w.kind()) {
    case WeightKind::Constant:
      j["kind"] = "constant";
      j["value"] = w.values()[0];
      break;
    case WeightKind::PiecewiseConstant:
      j["kind"] = "piecewise";
      j["breaks"] = w.breaks();
      j["values"] = w.values();
      break;
    case WeightKind::Trigonometric:
      j["kind"] = "trig";
      j["offset"] = w.offset();
      j["amplitude"] = w.amplitude();
      j["frequency"] = w.frequency();
      break;
  }
  j["theta_minus"] = w.theta_minus();
  j["theta_plus"] = w.theta_plus();
  return j;
}

Interval interval_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw ConfigError("interval must be [a, b]");
  const double a = j[0].get<double>(), b = j[1].get<double>();
  if (!(a < b)) throw ConfigError("interval requires a < b");
  return Interval(a, b);
}

Sign sign_from_string(const std::string& s) {
  if (s == "plus" || s == "+") return Sign::Plus;
  if (s == "minus" || s == "-") return Sign::Minus;
  throw ConfigError("sign must be 'plus' or 'minus'");
}

std::optional<double> eps_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) {
    if (j.get<std::string>() == "homogenized") return std::nullopt;
    throw ConfigError("eps must be a positive number, null, or 'homogenized'");
  }
  if (!j.is_number())
    throw ConfigError("eps must be a positive number, null, or 'homogenized'");
  const double e = j.get<double>();
  if (!(e > 0.0)) throw ConfigError("eps must be > 0");
  return e;
}

}  // namespace fucikhom
