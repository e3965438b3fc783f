#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cgmt/tree_source.hpp"

namespace cgmt {

// A finite automaton over {0,1}; members are the strings whose run ends in
// an accepting state. Acceptance must be prefix-closed.
struct Automaton {
  std::vector<std::pair<int, int>> next;  // next[q] = (on 0, on 1)
  std::vector<bool> accepting;
  int start = 0;
};

// Throws NotPrefixClosed with the shortest (length-lex) accepted string
// that has a rejected prefix.
void validate_automaton(const Automaton& a);

// member, extendible (an accepting run can continue forever), state and
// level_count.
TreeSource automaton_source(const Automaton& a, std::string name = "automatic");

// Tree specs:
//   {"kind": "builtin", "name": "full" | "branch-left" | "branch-right" | "dyadic", "c": "3/8"}
//   {"kind": "explicit", "depth": 2, "members": ["", "0", "00", "01"]}
//   {"kind": "automatic", "start": 0, "transitions": [[0, 1], [1, 1]], "accepting": [0, 1]}
// Errors are ParseError, NotPrefixClosed and InvalidArgument.
TreeSource parse_spec(const nlohmann::json& doc);
TreeSource parse_spec_text(const std::string& text);
TreeSource parse_spec_file(const std::string& path);

// A builtin name ("full", "dyadic(3/8)", ...) or a path to a spec file.
TreeSource load_tree(const std::string& arg);

}  // namespace cgmt
