#include "cgmt/spec_io.hpp"

#include <array>
#include <deque>
#include <fstream>
#include <sstream>
#include <tuple>

#include "cgmt/truncated_tree.hpp"

namespace cgmt {

using nlohmann::json;

void validate_automaton(const Automaton& a) {
  const int N = static_cast<int>(a.next.size());
  if (N == 0) throw Error(ErrorCode::ParseError, "automaton has no states");
  if (static_cast<int>(a.accepting.size()) != N) throw Error(ErrorCode::ParseError, "accepting flags per state");
  if (a.start < 0 || a.start >= N) throw Error(ErrorCode::ParseError, "start state out of range");
  for (const auto& [z, o] : a.next) {
    if (z < 0 || z >= N || o < 0 || o >= N) throw Error(ErrorCode::ParseError, "transition target out of range");
  }
  // Breadth-first over (state, rejected prefix seen); children in 0,1 order
  // so the first hit is length-lex least.
  std::vector<std::array<bool, 2>> seen(static_cast<std::size_t>(N), {false, false});
  std::deque<std::tuple<int, bool, BitString>> queue;
  bool r0 = !a.accepting[static_cast<std::size_t>(a.start)];
  queue.emplace_back(a.start, r0, BitString());
  seen[static_cast<std::size_t>(a.start)][r0] = true;
  while (!queue.empty()) {
    auto [q, rejected, s] = queue.front();
    queue.pop_front();
    for (int b = 0; b < 2; ++b) {
      int t = b ? a.next[static_cast<std::size_t>(q)].second : a.next[static_cast<std::size_t>(q)].first;
      bool acc = a.accepting[static_cast<std::size_t>(t)];
      BitString c = s.size() < BitString::kMaxLen ? s.child(b) : s;
      if (rejected && acc) {
        throw Error(ErrorCode::NotPrefixClosed, "accepted string '" + c.str() + "' has a rejected prefix", c.str());
      }
      bool r = rejected || !acc;
      if (!seen[static_cast<std::size_t>(t)][r]) {
        seen[static_cast<std::size_t>(t)][r] = true;
        queue.emplace_back(t, r, c);
      }
    }
  }
}

TreeSource automaton_source(const Automaton& a, std::string name) {
  validate_automaton(a);
  const std::size_t N = a.next.size();
  auto run = [a](const BitString& s) {
    int q = a.start;
    for (int i = 0; i < s.size(); ++i) {
      q = s[i] ? a.next[static_cast<std::size_t>(q)].second : a.next[static_cast<std::size_t>(q)].first;
    }
    return q;
  };
  // Live states: accepting, with an accepting successor that is live
  // (greatest fixed point).
  auto live = std::make_shared<std::vector<bool>>(a.accepting);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < N; ++q) {
      if (!(*live)[q]) continue;
      auto [z, o] = a.next[q];
      if (!(*live)[static_cast<std::size_t>(z)] && !(*live)[static_cast<std::size_t>(o)]) {
        (*live)[q] = false;
        changed = true;
      }
    }
  }
  TreeSource t;
  t.name = std::move(name);
  t.member = [a, run](const BitString& s) { return static_cast<bool>(a.accepting[static_cast<std::size_t>(run(s))]); };
  t.extendible = [live, run](const BitString& s) { return static_cast<bool>((*live)[static_cast<std::size_t>(run(s))]); };
  t.state = [run](const BitString& s) { return static_cast<std::uint64_t>(run(s)); };
  t.level_count = [a, run, N](const BitString& s, int m) -> Count {
    if (m < s.size()) return 0;
    std::vector<Count> cur(N, 0), nxt(N, 0);
    int q0 = run(s);
    if (!a.accepting[static_cast<std::size_t>(q0)]) return 0;
    cur[static_cast<std::size_t>(q0)] = 1;
    for (int len = s.size(); len < m; ++len) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (std::size_t q = 0; q < N; ++q) {
        if (!cur[q]) continue;
        for (int t2 : {a.next[q].first, a.next[q].second}) {
          if (a.accepting[static_cast<std::size_t>(t2)]) nxt[static_cast<std::size_t>(t2)] += cur[q];
        }
      }
      std::swap(cur, nxt);
    }
    Count total = 0;
    for (Count c : cur) total += c;
    return total;
  };
  return t;
}

namespace {

TreeSource builtin_by_name(const std::string& name, const std::string& c) {
  if (name == "full") return builtin::full();
  if (name == "branch-left") return builtin::branch_left();
  if (name == "branch-right") return builtin::branch_right();
  if (name == "dyadic") {
    if (c.empty()) throw Error(ErrorCode::ParseError, "dyadic tree needs \"c\"");
    return builtin::dyadic(Dyadic::parse(c));
  }
  throw Error(ErrorCode::ParseError, "unknown builtin tree '" + name + "'");
}

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

TreeSource parse_spec(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "tree spec must be a JSON object");
  auto kind = field<std::string>(doc, "kind");
  if (kind == "builtin") {
    return builtin_by_name(field<std::string>(doc, "name"), doc.value("c", std::string()));
  }
  if (kind == "explicit") {
    int depth = field<int>(doc, "depth");
    std::vector<BitString> members;
    for (const auto& s : field<std::vector<std::string>>(doc, "members")) {
      try {
        members.push_back(BitString::parse(s));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, std::string("member '") + s + "': " + e.what());
      }
    }
    TreeSource t = TruncatedTree::from_members(depth, members).as_source();
    t.name = "explicit";
    return t;
  }
  if (kind == "automatic") {
    Automaton a;
    a.start = doc.value("start", 0);
    for (const auto& row : field<std::vector<std::vector<int>>>(doc, "transitions")) {
      if (row.size() != 2) throw Error(ErrorCode::ParseError, "each transition row needs two targets");
      a.next.emplace_back(row[0], row[1]);
    }
    a.accepting.assign(a.next.size(), false);
    for (int q : field<std::vector<int>>(doc, "accepting")) {
      if (q < 0 || q >= static_cast<int>(a.next.size())) throw Error(ErrorCode::ParseError, "accepting state out of range");
      a.accepting[static_cast<std::size_t>(q)] = true;
    }
    return automaton_source(a);
  }
  throw Error(ErrorCode::ParseError, "unknown tree kind '" + kind + "'");
}

TreeSource parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(doc);
}

TreeSource parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read tree spec '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

TreeSource load_tree(const std::string& arg) {
  if (arg == "full" || arg == "branch-left" || arg == "branch-right") return builtin_by_name(arg, "");
  if (arg.rfind("dyadic(", 0) == 0 && arg.back() == ')') {
    return builtin_by_name("dyadic", arg.substr(7, arg.size() - 8));
  }
  return parse_spec_file(arg);
}

}  // namespace cgmt
