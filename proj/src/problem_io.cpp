#include "ordgne/problem_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ordgne/corpus.hpp"
#include "ordgne/error.hpp"

namespace ordgne {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::parse, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

CompiledExpression expression(const json& v, const std::string& path) {
  if (v.is_string()) return CompiledExpression(v.get<std::string>());
  if (v.is_number()) return CompiledExpression(format_number(v.get<double>()));
  fail(path, "expected an expression string");
}

Preference parse_preference(const json& p, const std::string& path) {
  const json& type = field(p, "type", path);
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const auto name = type.get<std::string>();
  if (name == "Utility") return UtilityPreference{expression(field(p, "expr", path), path + ".expr")};
  if (name == "CoordinateOrder") return CoordinateOrderPreference{};
  if (name == "TrivialZero") return TrivialZeroPreference{};
  if (name == "ThresholdBand") return ThresholdBandPreference{};
  if (name == "HalfspaceContour") {
    const json& rows = field(p, "rows", path);
    if (!rows.is_array()) fail(path + ".rows", "expected an array");
    HalfspaceContourPreference out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string rp = path + ".rows[" + std::to_string(r) + "]";
      const json& a = field(rows[r], "a", rp);
      if (!a.is_array()) fail(rp + ".a", "expected an array");
      HalfspaceRowSpec row;
      for (std::size_t k = 0; k < a.size(); ++k) {
        row.coefficients.push_back(expression(a[k], rp + ".a[" + std::to_string(k) + "]"));
      }
      row.bound = expression(field(rows[r], "b", rp), rp + ".b");
      out.rows.push_back(std::move(row));
    }
    return out;
  }
  fail(path + ".type", "unknown preference type \"" + name + "\"");
}

ConstraintMap parse_constraints(const json& c) {
  const json& type = field(c, "type", "constraints");
  if (!type.is_string()) fail("constraints.type", "expected a string");
  const auto name = type.get<std::string>();
  if (name == "BoxOnly") return BoxOnly{};
  if (name != "SharedLinear") fail("constraints.type", "unknown constraint type \"" + name + "\"");
  const json& a = field(c, "A", "constraints");
  const json& b = field(c, "b", "constraints");
  if (!a.is_array() || !b.is_array()) fail("constraints", "A and b must be arrays");
  SharedLinear out;
  for (std::size_t r = 0; r < a.size(); ++r) {
    const std::string rp = "constraints.A[" + std::to_string(r) + "]";
    if (!a[r].is_array()) fail(rp, "expected an array");
    std::vector<double> row;
    for (std::size_t k = 0; k < a[r].size(); ++k) row.push_back(number(a[r][k], rp));
    out.matrix.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < b.size(); ++r) out.rhs.push_back(number(b[r], "constraints.b"));
  if (out.rhs.size() != out.matrix.size()) fail("constraints", "A and b have different row counts");
  return out;
}

json dump_expression(const CompiledExpression& e) { return e.source(); }

json dump_preference(const Preference& pref) {
  json p;
  p["type"] = preference_type_name(pref);
  if (const auto* u = std::get_if<UtilityPreference>(&pref)) {
    p["expr"] = dump_expression(u->utility);
  } else if (const auto* h = std::get_if<HalfspaceContourPreference>(&pref)) {
    json rows = json::array();
    for (const auto& row : h->rows) {
      json a = json::array();
      for (const auto& c : row.coefficients) a.push_back(dump_expression(c));
      rows.push_back(json{{"a", a}, {"b", dump_expression(row.bound)}});
    }
    p["rows"] = rows;
  }
  return p;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  // nlohmann reports the 1-based position just past the offending character.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

GameSpec parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    std::string what = e.what();
    // Drop nlohmann's own "[json.exception...] parse error at line L, column C: " prefix.
    if (auto pos = what.find("column"); pos != std::string::npos) {
      if (auto colon = what.find(": ", pos); colon != std::string::npos) what = what.substr(colon + 2);
    }
    throw Error(ErrorKind::parse,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  const json& players = field(doc, "players", "document");
  if (!players.is_array()) fail("players", "expected an array");
  std::vector<PlayerSpec> specs;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string path = "players[" + std::to_string(i) + "]";
    const json& p = players[i];
    const json& dim = field(p, "dim", path);
    if (!dim.is_number_unsigned()) fail(path + ".dim", "expected a nonnegative integer");
    const json& box = field(p, "box", path);
    if (!box.is_array()) fail(path + ".box", "expected an array");
    PlayerSpec spec;
    spec.dim = dim.get<std::size_t>();
    for (std::size_t k = 0; k < box.size(); ++k) {
      const std::string bp = path + ".box[" + std::to_string(k) + "]";
      if (!box[k].is_array() || box[k].size() != 2) fail(bp, "expected [lower, upper]");
      spec.box.push_back({number(box[k][0], bp), number(box[k][1], bp)});
    }
    spec.preference = parse_preference(field(p, "preference", path), path + ".preference");
    specs.push_back(std::move(spec));
  }
  ConstraintMap constraints = BoxOnly{};
  if (doc.contains("constraints")) constraints = parse_constraints(doc["constraints"]);
  return GameSpec(std::move(specs), std::move(constraints));
}

std::string dump_problem(const GameSpec& game) {
  json doc;
  json players = json::array();
  for (const auto& p : game.players()) {
    json box = json::array();
    for (const auto& iv : p.box) box.push_back(json::array({iv.lower, iv.upper}));
    players.push_back(json{{"dim", p.dim}, {"box", box}, {"preference", dump_preference(p.preference)}});
  }
  doc["players"] = players;
  if (const auto* s = std::get_if<SharedLinear>(&game.constraints())) {
    doc["constraints"] = json{{"type", "SharedLinear"}, {"A", s->matrix}, {"b", s->rhs}};
  } else {
    doc["constraints"] = json{{"type", "BoxOnly"}};
  }
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GameSpec load_problem(const std::string& path) { return parse_problem(read_file(path)); }

void save_problem(const GameSpec& game, const std::string& path) { write_file_atomic(path, dump_problem(game)); }

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw Error(ErrorKind::io, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::io, "cannot rename onto " + path);
  }
}

std::string spec_digest(const GameSpec& game) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_problem(game)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ordgne
