#pragma once

// JSON state files:
//   {"format": "trimoduli-state-v1", "amplitudes": [[re, im], ... 27 entries]}
// with flat index 9(i-1) + 3(j-1) + (k-1).

#include "trimoduli/state.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace trimoduli {

inline constexpr const char* kStateFormat = "trimoduli-state-v1";

class StateIoError : public std::runtime_error {
 public:
  enum class Kind { io, malformed_json, unknown_format, wrong_length, bad_entry, non_finite };

  StateIoError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

State state_from_json(const std::string& text);
std::string state_to_json(const State& s);

State read_state(const std::filesystem::path& path);
void write_state(const std::filesystem::path& path, const State& s);

}  // namespace trimoduli
