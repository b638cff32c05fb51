#ifndef NUMERATION_IO_HPP
#define NUMERATION_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "automata.hpp"
#include "numsys.hpp"

namespace numeration {

using Json = nlohmann::json;

/// Integers that fit in 64 bits are written as JSON numbers, larger ones as
/// decimal strings; both forms are accepted on input.
inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw ParseError("'" + s + "' is not an integer");
    return BigInt(s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

inline Json to_json(const NumSys& s) {
  Json j;
  switch (s.generator()) {
    case NumSys::Generator::bertrand: j["bertrand"] = {{"word", to_string(*s.seed())}}; return j;
    case NumSys::Generator::recurrence: {
      Json coeffs = Json::array();
      for (const auto& c : s.recurrence()->coeffs) coeffs.push_back(big_to_json(c));
      j["recurrence"] = {{"coeffs", coeffs}, {"addend", big_to_json(s.recurrence()->addend)}};
      break;
    }
    case NumSys::Generator::values: break;
  }
  Json init = Json::array();
  for (const auto& v : s.initial()) init.push_back(big_to_json(v));
  j["initial"] = init;
  j["alphabet_max"] = s.alphabet_max();
  return j;
}

inline NumSys numsys_from_json(const Json& j) {
  try {
    if (j.contains("bertrand")) return NumSys::bertrand(parse_ep_word(j.at("bertrand").at("word").get<std::string>()));
    std::vector<BigInt> init;
    for (const auto& v : j.at("initial")) init.push_back(big_from_json(v));
    std::optional<Digit> amax;
    if (j.contains("alphabet_max")) amax = j.at("alphabet_max").get<Digit>();
    if (!j.contains("recurrence")) return NumSys::from_values(std::move(init), amax);
    Recurrence rec;
    for (const auto& c : j.at("recurrence").at("coeffs")) rec.coeffs.push_back(big_from_json(c));
    if (j.at("recurrence").contains("addend")) rec.addend = big_from_json(j.at("recurrence").at("addend"));
    return NumSys::from_recurrence(std::move(init), std::move(rec), amax);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed numeration system JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Either inline "bertrand:<word>" / "bertrand:parry:<word>" or a JSON file.
inline NumSys parse_system(std::string_view spec) {
  constexpr std::string_view prefix = "bertrand:";
  if (spec.starts_with(prefix)) {
    std::string_view rest = spec.substr(prefix.size());
    if (rest.starts_with("parry:")) rest.remove_prefix(6);
    return NumSys::bertrand(parse_ep_word(rest));
  }
  return numsys_from_json(read_json_file(std::string(spec)));
}

inline Json to_json(const Dfa& input) {
  const Dfa d = input.canonical();
  Json finals = Json::array(), edges = Json::array();
  for (std::size_t q = 0; q < d.num_states(); ++q) {
    if (d.is_final(q)) finals.push_back(q);
    for (auto [c, t] : d.edges(q)) edges.push_back({q, c, t});
  }
  return {{"initial", d.initial()}, {"states", d.num_states()}, {"finals", finals}, {"edges", edges}};
}

inline Dfa dfa_from_json(const Json& j) {
  try {
    std::size_t n = j.value("states", std::size_t{0});
    const auto init = j.at("initial").get<std::size_t>();
    n = std::max(n, init + 1);
    for (const auto& f : j.at("finals")) n = std::max(n, f.get<std::size_t>() + 1);
    for (const auto& e : j.at("edges")) n = std::max({n, e.at(0).get<std::size_t>() + 1, e.at(2).get<std::size_t>() + 1});
    Dfa d(n, init);
    for (const auto& f : j.at("finals")) d.set_final(f.get<std::size_t>());
    for (const auto& e : j.at("edges")) d.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<Digit>(), e.at(2).get<std::size_t>());
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed automaton JSON: ") + e.what());
  }
}

}  // namespace numeration

#endif  // NUMERATION_IO_HPP
