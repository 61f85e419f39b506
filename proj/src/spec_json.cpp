#include "dcosc/spec_json.hpp"

#include <nlohmann/json.hpp>

namespace dcosc {

using nlohmann::json;

namespace {

json scalar_to_json(const ExactScalar& v) {
  if (v.is_rational()) return v.str();
  return v.approx_d();
}

ExactScalar scalar_from_json(const json& j) {
  if (j.is_string()) return ExactScalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return ExactScalar(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_number_float()) return ExactScalar::floating(j.get<double>());
  throw ConfigError("spec json: bad scalar");
}

const char* digit_name(DigitFactor d) {
  switch (d) {
    case DigitFactor::none: return "none";
    case DigitFactor::pow_nu: return "nu";
    case DigitFactor::pow_nu0: return "nu0";
    case DigitFactor::pow_v2: return "v2";
    case DigitFactor::sign_len: return "signL";
  }
  return "none";
}

DigitFactor digit_from_name(const std::string& s) {
  if (s == "none") return DigitFactor::none;
  if (s == "nu") return DigitFactor::pow_nu;
  if (s == "nu0") return DigitFactor::pow_nu0;
  if (s == "v2") return DigitFactor::pow_v2;
  if (s == "signL") return DigitFactor::sign_len;
  throw ConfigError("spec json: unknown digit factor '" + s + "'");
}

json toll_json(const TollFunction& toll) {
  json terms = json::array();
  for (const auto& t : toll.terms) {
    json jt;
    jt["coeff"] = scalar_to_json(t.coeff);
    jt["power"] = t.power;
    jt["modulus"] = t.modulus;
    jt["residues"] = t.residues;
    jt["digit"] = digit_name(t.digit);
    if (t.digit != DigitFactor::none) jt["base"] = scalar_to_json(t.base);
    terms.push_back(jt);
  }
  json over = json::object();
  for (const auto& [n, v] : toll.override) over[std::to_string(n)] = scalar_to_json(v);
  return json{{"terms", terms}, {"override", over}};
}

TollFunction toll_from(const json& j) {
  TollFunction toll;
  for (const auto& jt : j.at("terms")) {
    TollTerm t;
    t.coeff = scalar_from_json(jt.at("coeff"));
    t.power = jt.at("power").get<unsigned>();
    t.modulus = jt.at("modulus").get<unsigned>();
    t.residues = jt.at("residues").get<std::vector<unsigned>>();
    t.digit = digit_from_name(jt.value("digit", "none"));
    t.base = jt.contains("base") ? scalar_from_json(jt.at("base")) : ExactScalar(1);
    toll.terms.push_back(std::move(t));
  }
  if (j.contains("override"))
    for (const auto& [k, v] : j.at("override").items())
      toll.override[std::stoll(k)] = scalar_from_json(v);
  return toll;
}

}  // namespace

std::string spec_to_json(const RecurrenceSpec& spec, int indent) {
  json j;
  j["alpha"] = scalar_to_json(spec.alpha);
  j["beta"] = scalar_to_json(spec.beta);
  j["toll"] = toll_json(spec.toll);
  json init = json::object();
  for (const auto& [n, v] : spec.initial) init[std::to_string(n)] = scalar_to_json(v);
  j["initial"] = init;
  j["n0"] = spec.n0;
  return j.dump(indent);
}

RecurrenceSpec spec_from_json(const std::string& text) {
  json j = json::parse(text);
  RecurrenceSpec spec;
  spec.alpha = scalar_from_json(j.at("alpha"));
  spec.beta = scalar_from_json(j.at("beta"));
  spec.toll = toll_from(j.at("toll"));
  for (const auto& [k, v] : j.at("initial").items())
    spec.initial[std::stoll(k)] = scalar_from_json(v);
  spec.n0 = j.value("n0", 2);
  return spec;
}

std::string toll_to_json(const TollFunction& toll, int indent) {
  return toll_json(toll).dump(indent);
}

TollFunction toll_from_json(const std::string& text) { return toll_from(json::parse(text)); }

}  // namespace dcosc
