#include "cgmt/report.hpp"

#include <sstream>

namespace cgmt::report {

json weight(const AlgebraicWeight& w) {
  return {{"exact", w.literal()}, {"pretty", w.str()}, {"decimal", w.decimal(30)}};
}

AlgebraicWeight read_weight(const json& j) {
  try {
    return AlgebraicWeight::parse(j.is_string() ? j.get<std::string>() : j.at("exact").get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("weight: ") + e.what());
  }
}

json cover(const CoverSet& c) {
  json strings = json::array();
  for (const auto& s : c.strings) strings.push_back(s.str());
  return {{"n", c.n}, {"m", c.m}, {"strings", strings}};
}

json measure_value(const MeasureValue& v) {
  json j = {{"block", v.at_block}, {"value", weight(v.value)}, {"case2", v.case2}};
  if (v.witness) j["witness"] = cover(*v.witness);
  return j;
}

json code(const Code& z) {
  Code::Dag dag = z.to_dag();
  json nodes = json::array();
  for (const auto& [a, b] : dag.nodes) nodes.push_back({a, b});
  return {{"depth", z.depth()}, {"root", dag.root}, {"nodes", nodes}};
}

Code read_code(const json& j, const AmbientPtr& amb) {
  try {
    Code::Dag dag;
    dag.root = j.at("root").get<long>();
    for (const auto& e : j.at("nodes")) dag.nodes.emplace_back(e.at(0).get<long>(), e.at(1).get<long>());
    return Code::from_dag(amb, dag, j.at("depth").get<int>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("code: ") + e.what());
  }
}

namespace {

json blocks(const std::vector<BlockValue>& bs) {
  json out = json::array();
  for (const auto& b : bs) out.push_back({{"block", b.block}, {"value", weight(b.value)}});
  return out;
}

}  // namespace

json interpolation(const InterpolationResult& r) {
  return {{"m", r.m},
          {"target_low", weight(r.target_low)},
          {"target_high", weight(r.target_high)},
          {"window", blocks(r.window)},
          {"bracket",
           {{"lower", weight(r.bracket.lower)},
            {"lower_block", r.bracket.lower_block},
            {"upper", weight(r.bracket.upper)},
            {"upper_block", r.bracket.upper_block}}},
          {"identity", r.identity},
          {"index", count_str(r.index)},
          {"candidates", count_str(r.candidates)},
          {"code", code(r.code)}};
}

json thin(const ThinResult& r) {
  json branches = json::array();
  for (const auto& b : r.branches) {
    branches.push_back({{"tau", b.tau.str()},
                        {"before", weight(b.before)},
                        {"after", weight(b.after)},
                        {"replaced", b.replaced},
                        {"m", b.m}});
  }
  return {{"branches", branches}, {"code", code(r.code)}};
}

json certificate(const RefinementCertificate& c) {
  return {{"stage", c.stage},
          {"d", weight(c.d)},
          {"theta", weight(c.theta)},
          {"lower", {{"block", c.lower_block}, {"value", weight(c.lower_value)}, {"ok", c.lower_ok}}},
          {"upper", {{"block", c.upper_block}, {"value", weight(c.upper_value)}, {"ok", c.upper_ok}}},
          {"replaced_branches", c.replaced_branches}};
}

RefinementCertificate read_certificate(const json& j) {
  try {
    RefinementCertificate c;
    c.stage = j.at("stage").get<int>();
    c.d = read_weight(j.at("d"));
    c.theta = read_weight(j.at("theta"));
    c.lower_block = j.at("lower").at("block").get<int>();
    c.lower_value = read_weight(j.at("lower").at("value"));
    c.lower_ok = j.at("lower").at("ok").get<bool>();
    c.upper_block = j.at("upper").at("block").get<int>();
    c.upper_value = read_weight(j.at("upper").at("value"));
    c.upper_ok = j.at("upper").at("ok").get<bool>();
    c.replaced_branches = j.at("replaced_branches").get<int>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("certificate: ") + e.what());
  }
}

json gadget(const GadgetReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"n", v.n},
                        {"in_range", v.in_range},
                        {"decoded", v.decoded ? json(*v.decoded) : json(nullptr)},
                        {"match", v.match}});
  }
  json j = {{"kind", gadget_name(r.kind)},
            {"horizon", r.horizon},
            {"depth", r.depth},
            {"verdicts", verdicts},
            {"mismatches", r.mismatches},
            {"notes", r.notes}};
  if (r.path) j["path"] = r.path->str();
  return j;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string measure_csv(const std::vector<MeasureValue>& seq) {
  std::ostringstream out;
  out << "block,exact,decimal,case2\n";
  for (const auto& v : seq) {
    out << v.at_block << ",\"" << v.value.literal() << "\"," << v.value.decimal(30) << ',' << (v.case2 ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace cgmt::report
