#include <charconv>
#include <cmath>
#include <cerrno>
#include <fstream>
#include <system_error>
#include <sstream>

#include "json.hpp"
#include "pisg/errors.h"
#include "pisg/game.h"

namespace pisg {

using json = nlohmann::json;

namespace {

[[noreturn]] void SchemaError(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSyntaxError, "at " + where + ": " + what);
}

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

bool ParseDecimal(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() &&
         std::isfinite(out);
}

// A number or a decimal/rational string.
double ReadReal(const json& node, const std::string& where) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) {
    try {
      return ParseProbability(node.get<std::string>());
    } catch (const Error& e) {
      SchemaError(where, e.what());
    }
  }
  SchemaError(where, "expected a number or a numeric string");
}

int ReadInt(const json& node, const std::string& where) {
  if (!node.is_number_integer()) SchemaError(where, "expected an integer");
  return node.get<int>();
}

// Converts a byte offset from the JSON parser into a line/column pair.
std::string Position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + " column " + std::to_string(column);
}

}  // namespace

double ParseProbability(std::string_view text) {
  const std::string trimmed = Trim(text);
  double value = 0.0;
  const auto slash = trimmed.find('/');
  if (slash == std::string::npos) {
    if (ParseDecimal(trimmed, value)) return value;
  } else {
    double num = 0.0, den = 0.0;
    if (ParseDecimal(Trim(std::string_view(trimmed).substr(0, slash)), num) &&
        ParseDecimal(Trim(std::string_view(trimmed).substr(slash + 1)), den) &&
        den != 0.0) {
      return num / den;
    }
  }
  throw Error(ErrorCode::kSyntaxError, "bad number '" + trimmed + "'");
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

StochasticGame ParseGame(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSyntaxError,
                Position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) SchemaError("document", "expected an object");

  int base = 1;
  if (doc.contains("index_base")) {
    base = ReadInt(doc["index_base"], "index_base");
    if (base != 0 && base != 1) SchemaError("index_base", "must be 0 or 1");
  }

  RawGame raw;
  if (!doc.contains("states")) SchemaError("document", "missing 'states'");
  raw.num_states = ReadInt(doc["states"], "states");

  if (!doc.contains("controller") || !doc["controller"].is_array()) {
    SchemaError("document", "missing array 'controller'");
  }
  for (std::size_t s = 0; s < doc["controller"].size(); ++s) {
    const json& tag = doc["controller"][s];
    const std::string where = "controller[" + std::to_string(s) + "]";
    if (!tag.is_string()) SchemaError(where, "expected \"P1\" or \"P2\"");
    const std::string name = tag.get<std::string>();
    if (name == "P1") {
      raw.controller.push_back(Player::kOne);
    } else if (name == "P2") {
      raw.controller.push_back(Player::kTwo);
    } else {
      SchemaError(where, "expected \"P1\" or \"P2\", got \"" + name + "\"");
    }
  }

  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    SchemaError("document", "missing array 'entries'");
  }
  for (std::size_t i = 0; i < doc["entries"].size(); ++i) {
    const json& node = doc["entries"][i];
    const std::string where = "entries[" + std::to_string(i) + "]";
    if (!node.is_object()) SchemaError(where, "expected an object");
    RawEntry e;
    if (!node.contains("state")) SchemaError(where, "missing 'state'");
    e.state = ReadInt(node["state"], where + ".state") - base;
    if (node.contains("a1")) e.a1 = ReadInt(node["a1"], where + ".a1") - base;
    if (node.contains("a2")) e.a2 = ReadInt(node["a2"], where + ".a2") - base;
    if (!node.contains("reward")) SchemaError(where, "missing 'reward'");
    e.reward = ReadReal(node["reward"], where + ".reward");
    if (!node.contains("next") || !node["next"].is_array()) {
      SchemaError(where, "missing array 'next'");
    }
    for (std::size_t t = 0; t < node["next"].size(); ++t) {
      e.next.push_back(ReadReal(node["next"][t],
                                where + ".next[" + std::to_string(t) + "]"));
    }
    raw.entries.push_back(std::move(e));
  }
  return ValidateGame(raw);
}

StochasticGame LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGame(buffer.str());
}

std::string SerializeGame(const StochasticGame& game) {
  const RawGame raw = ToRaw(game);
  json controller = json::array();
  for (Player p : raw.controller) controller.push_back(PlayerName(p));

  std::ostringstream out;
  out << "{\n  \"states\": " << raw.num_states << ",\n"
      << "  \"controller\": " << controller.dump() << ",\n"
      << "  \"entries\": [\n";
  for (std::size_t i = 0; i < raw.entries.size(); ++i) {
    const RawEntry& e = raw.entries[i];
    nlohmann::ordered_json node;
    node["state"] = e.state + 1;
    if (e.a1) node["a1"] = *e.a1 + 1;
    if (e.a2) node["a2"] = *e.a2 + 1;
    node["reward"] = e.reward;
    json next = json::array();
    for (double p : e.next) next.push_back(FormatDouble(p));
    node["next"] = next;
    out << "    " << node.dump() << (i + 1 < raw.entries.size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

}  // namespace pisg
