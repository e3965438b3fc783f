#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgmt/construct.hpp"

namespace cgmt {

inline constexpr const char* kVersion = "1.0.0";

struct CommandOptions {
  std::string command;
  std::string tree = "full";
  std::string s = "1";
  int n = 0;
  std::string c;
  std::string eps;
  std::string theta;
  int stages = 1;
  std::optional<int> depth;
  int window = 4;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 0;
  std::string format = "json";
  // Command-specific.
  std::string input;   // cover-verify: a besicovitch report
  std::string cover;   // cover-verify: comma-separated strings
  std::string kind;    // gadget
  int horizon = 8;     // gadget
  std::string table;   // gadget: comma-separated values; random when empty
  int trials = 200;    // verify-suite
  int opens = 8;       // baire
  bool empty_open = false;
};

const std::vector<std::string>& command_names();

// Runs one command and returns the report text. Errors propagate as Error.
std::string run_command(const CommandOptions& opt);

// V_i: strings with the bit i mod 2 at some position >= i / 2. Closed under
// extension, and dense in any tree whose every node has extensions using
// both bits later on.
std::vector<OpenCode> dense_open_family(int count);

}  // namespace cgmt
