#include "fxdiv/model_json.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace fxdiv {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) {
    throw InputError(fmt::format("{} must be an object", where));
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw InputError(fmt::format("missing field {}.{}", where, key));
  }
  return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) {
    throw InputError(fmt::format("{}.{} must be a number", where, key));
  }
  return v.get<double>();
}

ClaimMixture mixture(const json& arr, const std::string& where) {
  if (!arr.is_array()) {
    throw InputError(fmt::format("{} must be an array", where));
  }
  ClaimMixture m;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = fmt::format("{}[{}]", where, i);
    m.phases.push_back({number(arr[i], "weight", at), number(arr[i], "rate", at)});
  }
  return m;
}

json mixture_json(const ClaimMixture& m) {
  json arr = json::array();
  for (const auto& ph : m.phases) {
    arr.push_back({{"weight", ph.weight}, {"rate", ph.rate}});
  }
  return arr;
}

}  // namespace

ModelDescription model_from_json(const json& j) {
  ModelDescription m;
  const json& s = field(j, "surplus", "model");
  m.surplus.premium = number(s, "premium", "surplus");
  m.surplus.sigma = number(s, "sigma", "surplus");
  m.surplus.lambda_bar = number(s, "lambdaBar", "surplus");
  m.surplus.claims = mixture(field(s, "claims", "surplus"), "surplus.claims");

  const json& e = field(j, "exchange", "model");
  m.exchange.drift = number(e, "drift", "exchange");
  m.exchange.delta = number(e, "delta", "exchange");
  if (const auto it = e.find("jumps"); it != e.end() && !it->is_null()) {
    ClaimMixture jumps = mixture(*it, "exchange.jumps");
    if (!jumps.phases.empty()) m.exchange.jumps = std::move(jumps);
  }

  const json& d = field(j, "dependence", "model");
  m.dependence.rho = number(d, "rho", "dependence");
  m.dependence.theta = number(d, "theta", "dependence");

  if (const auto it = j.find("penalty"); it != j.end()) {
    const json& type = field(*it, "type", "penalty");
    if (type == "zero") {
      m.penalty = PenaltySpec::zero();
    } else if (type == "affine") {
      m.penalty = PenaltySpec::affine(number(*it, "k0", "penalty"),
                                      number(*it, "k1", "penalty"));
    } else {
      throw InputError(
          fmt::format("penalty.type must be \"zero\" or \"affine\", got {}",
                      type.dump()));
    }
  }
  return m;
}

json model_to_json(const ModelDescription& m) {
  json j;
  j["surplus"] = {{"premium", m.surplus.premium},
                  {"sigma", m.surplus.sigma},
                  {"lambdaBar", m.surplus.lambda_bar},
                  {"claims", mixture_json(m.surplus.claims)}};
  j["exchange"] = {{"drift", m.exchange.drift}, {"delta", m.exchange.delta}};
  j["exchange"]["jumps"] =
      m.exchange.jumps ? mixture_json(*m.exchange.jumps) : json::array();
  j["dependence"] = {{"rho", m.dependence.rho}, {"theta", m.dependence.theta}};
  if (m.penalty.is_zero()) {
    j["penalty"] = {{"type", "zero"}};
  } else {
    j["penalty"] = {{"type", "affine"}, {"k0", m.penalty.k0}, {"k1", m.penalty.k1}};
  }
  return j;
}

ModelDescription parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    // err.byte is the 1-based offset of the offending character.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(err.byte ? err.byte - 1 : 0,
                                                  text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(fmt::format("malformed JSON at line {}, column {}", line,
                                 column),
                     line, column);
  }
  return model_from_json(j);
}

ModelDescription load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot read model file {}", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace fxdiv
