#include "trimoduli/state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

namespace trimoduli {

using nlohmann::json;

State state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // JSON has no NaN/Infinity literals, but several writers emit them anyway.
    static const std::regex non_finite_token(R"((^|[^A-Za-z])-?(NaN|nan|Infinity|inf)([^A-Za-z]|$))");
    if (std::regex_search(text, non_finite_token))
      throw StateIoError(StateIoError::Kind::non_finite, "non-finite amplitude literal in state file");
    throw StateIoError(StateIoError::Kind::malformed_json, std::string("malformed JSON: ") + e.what());
  } catch (const json::out_of_range& e) {
    // 406: a literal such as 1e999 overflows double.
    if (e.id == 406) throw StateIoError(StateIoError::Kind::non_finite, "amplitude literal overflows a double");
    throw StateIoError(StateIoError::Kind::malformed_json, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string())
    throw StateIoError(StateIoError::Kind::unknown_format, "missing \"format\" field");
  if (doc["format"].get<std::string>() != kStateFormat)
    throw StateIoError(StateIoError::Kind::unknown_format,
                       "unknown format \"" + doc["format"].get<std::string>() + "\"");
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
    throw StateIoError(StateIoError::Kind::malformed_json, "missing \"amplitudes\" array");
  const auto& arr = doc["amplitudes"];
  if (arr.size() != 27)
    throw StateIoError(StateIoError::Kind::wrong_length,
                       "expected 27 amplitudes, got " + std::to_string(arr.size()));
  State s;
  for (std::size_t n = 0; n < 27; ++n) {
    const auto& e = arr[n];
    if (!e.is_array() || e.size() != 2)
      throw StateIoError(StateIoError::Kind::bad_entry,
                         "amplitude " + std::to_string(n) + " is not a [re, im] pair");
    for (const auto& part : e) {
      // null is what nlohmann itself writes for non-finite doubles.
      if (part.is_null())
        throw StateIoError(StateIoError::Kind::non_finite, "amplitude " + std::to_string(n) + " is not finite");
      if (!part.is_number())
        throw StateIoError(StateIoError::Kind::bad_entry, "amplitude " + std::to_string(n) + " is not numeric");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw StateIoError(StateIoError::Kind::non_finite, "amplitude " + std::to_string(n) + " is not finite");
    const int i = static_cast<int>(n / 9), j = static_cast<int>((n / 3) % 3), k = static_cast<int>(n % 3);
    s.at(i, j, k) = {re, im};
  }
  return s;
}

std::string state_to_json(const State& s) {
  for (const auto& a : s.amplitudes()) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw StateIoError(StateIoError::Kind::non_finite, "cannot write a non-finite amplitude");
  }
  json doc;
  doc["format"] = kStateFormat;
  json arr = json::array();
  for (const auto& a : s.amplitudes()) arr.push_back({a.real(), a.imag()});
  doc["amplitudes"] = std::move(arr);
  return doc.dump(2) + "\n";
}

State read_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StateIoError(StateIoError::Kind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void write_state(const std::filesystem::path& path, const State& s) {
  const std::string text = state_to_json(s);
  std::ofstream out(path);
  if (!out) throw StateIoError(StateIoError::Kind::io, "cannot write " + path.string());
  out << text;
}

}  // namespace trimoduli
