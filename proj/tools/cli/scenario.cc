// Copyright 2026 The rmauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "scenario.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rmauction::cli {
namespace {

using nlohmann::json;

// Line numbers of the bidder objects and of their fields. The JSON library
// reports no positions for values, so this walks the text once alongside it.
struct LineIndex {
  int k_line = 0;
  int bidders_line = 0;
  int groups_line = 0;
  std::map<std::string, int> top_lines;
  std::vector<int> bidder_lines;
  std::vector<std::map<std::string, int>> field_lines;

  int bidder(std::size_t i) const {
    return i < bidder_lines.size() ? bidder_lines[i] : bidders_line;
  }
  int field(std::size_t i, const std::string& key) const {
    if (i < field_lines.size()) {
      auto it = field_lines[i].find(key);
      if (it != field_lines[i].end()) return it->second;
    }
    return bidder(i);
  }
};

LineIndex index_lines(std::string_view text) {
  LineIndex idx;
  int line = 1;
  std::vector<char> stack;
  std::string last_string;
  std::string top_key;
  bool in_bidders = false;
  int last_string_line = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
    } else if (ch == '"') {
      last_string.clear();
      last_string_line = line;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\') ++i;
        if (i < text.size()) last_string.push_back(text[i]);
      }
    } else if (ch == ':') {
      if (stack.size() == 1) {
        top_key = last_string;
        idx.top_lines.emplace(top_key, last_string_line);
        if (top_key == "k") idx.k_line = last_string_line;
        if (top_key == "bidders") idx.bidders_line = last_string_line;
        if (top_key == "groups") idx.groups_line = last_string_line;
      } else if (stack.size() == 3 && in_bidders &&
                 !idx.field_lines.empty()) {
        idx.field_lines.back().emplace(last_string, last_string_line);
      }
    } else if (ch == '{' || ch == '[') {
      if (ch == '[' && stack.size() == 1 && top_key == "bidders") {
        in_bidders = true;
      }
      if (ch == '{' && stack.size() == 2 && in_bidders) {
        idx.bidder_lines.push_back(line);
        idx.field_lines.emplace_back();
      }
      stack.push_back(ch);
    } else if (ch == '}' || ch == ']') {
      if (!stack.empty()) stack.pop_back();
      if (stack.size() == 1) in_bidders = false;
    }
  }
  return idx;
}

int line_of_offset(std::string_view text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

int require_int(const json& j, const std::string& what, int line) {
  if (!j.is_number_integer()) {
    throw ScenarioError(line, what + " must be an integer");
  }
  const auto v = j.get<long long>();
  if (v < 1 || v > 1000000000) {
    throw ScenarioError(line, what + " out of range: " + std::to_string(v));
  }
  return static_cast<int>(v);
}

std::string require_string(const json& j, const std::string& what, int line) {
  if (!j.is_string()) throw ScenarioError(line, what + " must be a string");
  return j.get<std::string>();
}

json bidder_json(const ScenarioBidder& b) {
  nlohmann::ordered_json j;
  j["id"] = b.id;
  j["demand"] = b.demand;
  j["valuation"] = b.valuation.str();
  if (b.group) j["group"] = *b.group;
  return j;
}

}  // namespace

namespace {

std::string locate(int line, const std::string& message,
                   const std::string& source) {
  std::string where = source;
  if (line > 0) where += (where.empty() ? "line " : ":") + std::to_string(line);
  return where.empty() ? message : where + ": " + message;
}

}  // namespace

ScenarioError::ScenarioError(int line, const std::string& message,
                             const std::string& source)
    : std::runtime_error(locate(line, message, source)),
      line_(line),
      message_(message) {}

bool Scenario::grouped() const {
  return !groups.empty() ||
         (!bidders.empty() && bidders.front().group.has_value());
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0),
                        "malformed JSON");
  }
  const LineIndex idx = index_lines(text);
  if (!doc.is_object()) throw ScenarioError(1, "scenario must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "k" && key != "bidders" && key != "groups") {
      const auto it = idx.top_lines.find(key);
      throw ScenarioError(it == idx.top_lines.end() ? 1 : it->second,
                          "unknown top-level field '" + key + "'");
    }
  }
  if (!doc.contains("k")) throw ScenarioError(1, "missing field 'k'");
  if (!doc.contains("bidders")) throw ScenarioError(1, "missing field 'bidders'");

  Scenario s;
  s.k = require_int(doc["k"], "k", idx.k_line);
  if (doc.contains("groups")) {
    const json& gl = doc["groups"];
    if (!gl.is_array()) throw ScenarioError(idx.groups_line, "'groups' must be an array");
    for (const auto& g : gl) {
      s.groups.push_back(require_string(g, "group id", idx.groups_line));
    }
  }
  const json& list = doc["bidders"];
  if (!list.is_array()) {
    throw ScenarioError(idx.bidders_line, "'bidders' must be an array");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& jb = list[i];
    const int line = idx.bidder(i);
    if (!jb.is_object()) throw ScenarioError(line, "bidder must be an object");
    for (const auto& [key, value] : jb.items()) {
      if (key != "id" && key != "demand" && key != "valuation" &&
          key != "group") {
        throw ScenarioError(idx.field(i, key),
                            "unknown bidder field '" + key + "'");
      }
    }
    for (const char* key : {"id", "demand", "valuation"}) {
      if (!jb.contains(key)) {
        throw ScenarioError(line, std::string("bidder is missing '") + key +
                                      "'");
      }
    }
    ScenarioBidder b;
    b.id = require_string(jb["id"], "id", idx.field(i, "id"));
    const std::string who = "bidder '" + b.id + "': ";
    b.demand = require_int(jb["demand"], who + "demand", idx.field(i, "demand"));
    const int vline = idx.field(i, "valuation");
    const json& jv = jb["valuation"];
    const std::string raw =
        jv.is_number_integer()
            ? jv.dump()
            : require_string(jv, who + "valuation (integer or string)", vline);
    try {
      b.valuation = Rational::parse(raw);
    } catch (const std::exception&) {
      throw ScenarioError(vline, who + "invalid valuation '" + raw + "'");
    }
    if (b.valuation.sign() < 0) {
      throw ScenarioError(vline, who + "valuation must be nonnegative");
    }
    if (b.demand > s.k) {
      throw ScenarioError(idx.field(i, "demand"),
                          who + "demand exceeds k = " + std::to_string(s.k));
    }
    if (jb.contains("group")) {
      b.group = require_string(jb["group"], who + "group", idx.field(i, "group"));
    }
    const bool want_group = s.groups.empty() && i > 0
                                ? s.bidders.front().group.has_value()
                                : !s.groups.empty() || b.group.has_value();
    if (b.group.has_value() != want_group) {
      throw ScenarioError(line, who + "either every bidder has a group or none");
    }
    if (b.group && !s.groups.empty() &&
        std::find(s.groups.begin(), s.groups.end(), *b.group) == s.groups.end()) {
      throw ScenarioError(idx.field(i, "group"),
                          who + "group '" + *b.group + "' is not declared");
    }
    s.bidders.push_back(std::move(b));
  }
  try {
    if (s.grouped()) {
      validate(to_grouped(s));
    } else {
      validate(to_flat(s));
    }
  } catch (const ValidationError& e) {
    // Point at the first bidder the message names, if any.
    int line = idx.bidders_line;
    const std::string msg = e.what();
    for (std::size_t i = 0; i < s.bidders.size(); ++i) {
      if (msg.find('"' + s.bidders[i].id + '"') != std::string::npos) {
        line = idx.field(i, "id");
      }
    }
    throw ScenarioError(line, msg);
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(e.line(), e.message(), path.string());
  }
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "{\n  \"k\": " << s.k << ",\n";
  if (!s.groups.empty()) os << "  \"groups\": " << json(s.groups).dump() << ",\n";
  os << "  \"bidders\": [";
  for (std::size_t i = 0; i < s.bidders.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << bidder_json(s.bidders[i]).dump();
  }
  os << (s.bidders.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

TypeProfile to_flat(const Scenario& s) {
  TypeProfile p;
  p.k = s.k;
  for (const auto& b : s.bidders) p.bidders.push_back({b.id, b.demand, b.valuation});
  return p;
}

GroupedProfile to_grouped(const Scenario& s) {
  GroupedProfile p;
  p.k = s.k;
  std::map<std::string, std::size_t> pos;
  for (const auto& gid : s.groups) {
    pos.emplace(gid, p.groups.size());
    p.groups.push_back(Group{gid, {}});
  }
  for (const auto& b : s.bidders) {
    const std::string gid = b.group.value_or("all");
    auto [it, fresh] = pos.emplace(gid, p.groups.size());
    if (fresh) p.groups.push_back(Group{gid, {}});
    p.groups[it->second].bidders.push_back({b.id, b.demand, b.valuation});
  }
  if (p.groups.empty()) p.groups.push_back(Group{"all", {}});
  return p;
}

Scenario from_profile(const TypeProfile& profile) {
  Scenario s;
  s.k = profile.k;
  for (const auto& b : profile.bidders) {
    s.bidders.push_back({b.id, b.demand, b.valuation, std::nullopt});
  }
  return s;
}

Scenario from_profile(const GroupedProfile& profile) {
  Scenario s;
  s.k = profile.k;
  for (const auto& g : profile.groups) {
    s.groups.push_back(g.id);
  }
  for (const auto& g : profile.groups) {
    for (const auto& b : g.bidders) {
      s.bidders.push_back({b.id, b.demand, b.valuation, g.id});
    }
  }
  return s;
}

Scenario from_instance(const verify::Instance& instance) {
  return std::visit([](const auto& p) { return from_profile(p); }, instance);
}

}  // namespace rmauction::cli
