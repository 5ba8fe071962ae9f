#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rackx/group.hpp"
#include "rackx/rack.hpp"
#include "rackx/xmod.hpp"

// Structure interchange format
// ----------------------------
// Every document is a JSON object with "format-version" and "kind". Indices
// are 0-based. Nested structures ("dom", "cod", "boundary", "src", ...) are
// either inline objects or strings holding a path relative to the file that
// mentions them.
//
//   rack            size, basepoint, [labels], table
//   unpointed-rack  size, [labels], table
//   group           size, identity, [labels], table
//   hom             dom, cod, map        (racks or groups on both ends)
//   action          actee, actor, table  (table[s][r] = s·r)
//   rack-xmod       boundary (hom of racks), action (matrix)
//   group-xmod      boundary (hom of groups), action (matrix)
//   xmod-morphism   src, dst, f1, f0
//   pullback-request  xmod, hom, [test]
namespace rackx::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Malformed input: bad JSON, missing or mistyped fields, unknown kinds.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PullbackRequest {
  RackXMod xmod;
  RackHom hom;
  std::optional<RackXModMorphism> test;
};

using Structure = std::variant<FiniteRack, UnpointedRack, FiniteGroup, RackHom, GroupHom,
                               RackAction, RackXMod, GroupXMod, RackXModMorphism,
                               GroupXModMorphism, PullbackRequest>;

inline std::string kind_of(const Structure& s) {
  static const char* names[] = {"rack",       "unpointed-rack", "group",         "hom",
                                "hom",        "action",         "rack-xmod",     "group-xmod",
                                "xmod-morphism", "xmod-morphism", "pullback-request"};
  return names[s.index()];
}

// -- canonical text ----------------------------------------------------------

namespace detail {

inline bool is_scalar_array(const Json& j) {
  for (const auto& e : j)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

inline void write(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << inner << Json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 2);
    }
    os << "\n" << pad << "}";
  } else if (j.is_array()) {
    if (is_scalar_array(j)) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      write(os, j[i], indent + 2);
    }
    os << "\n" << pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace detail

/// Canonical text: fixed key order, matrices one row per line, trailing newline.
inline std::string to_text(const Json& j) {
  std::ostringstream os;
  detail::write(os, j, 0);
  os << "\n";
  return os.str();
}

/// 64-bit FNV-1a of the bytes, as "fnv1a64:<hex>".
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// -- emit --------------------------------------------------------------------

namespace detail {

inline Json header(const char* kind) {
  Json j;
  j["format-version"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

inline Json matrix(const Table& t) {
  Json rows = Json::array();
  for (const auto& row : t) rows.push_back(row);
  return rows;
}

}  // namespace detail

inline Json to_json(const FiniteRack& r) {
  auto j = detail::header("rack");
  j["size"] = r.size();
  j["basepoint"] = r.basepoint();
  if (!r.labels().empty()) j["labels"] = r.labels();
  j["table"] = detail::matrix(r.table());
  return j;
}

inline Json to_json(const UnpointedRack& r) {
  auto j = detail::header("unpointed-rack");
  j["size"] = r.size();
  if (!r.labels().empty()) j["labels"] = r.labels();
  j["table"] = detail::matrix(r.table());
  return j;
}

inline Json to_json(const FiniteGroup& g) {
  auto j = detail::header("group");
  j["size"] = g.size();
  j["identity"] = g.identity();
  if (!g.labels().empty()) j["labels"] = g.labels();
  j["table"] = detail::matrix(g.table());
  return j;
}

inline Json to_json(const RackHom& f) {
  auto j = detail::header("hom");
  j["dom"] = to_json(f.dom());
  j["cod"] = to_json(f.cod());
  j["map"] = f.map();
  return j;
}

inline Json to_json(const GroupHom& f) {
  auto j = detail::header("hom");
  j["dom"] = to_json(f.dom());
  j["cod"] = to_json(f.cod());
  j["map"] = f.map();
  return j;
}

inline Json to_json(const RackAction& a) {
  auto j = detail::header("action");
  j["actee"] = to_json(a.actee());
  j["actor"] = to_json(a.actor());
  j["table"] = detail::matrix(a.table());
  return j;
}

inline Json to_json(const RackXMod& x) {
  auto j = detail::header("rack-xmod");
  j["boundary"] = to_json(x.boundary());
  j["action"] = detail::matrix(x.action().table());
  return j;
}

inline Json to_json(const GroupXMod& x) {
  auto j = detail::header("group-xmod");
  j["boundary"] = to_json(x.boundary());
  j["action"] = detail::matrix(x.action());
  return j;
}

inline Json to_json(const RackXModMorphism& m) {
  auto j = detail::header("xmod-morphism");
  j["src"] = to_json(m.src());
  j["dst"] = to_json(m.dst());
  j["f1"] = m.f1();
  j["f0"] = m.f0();
  return j;
}

inline Json to_json(const GroupXModMorphism& m) {
  auto j = detail::header("xmod-morphism");
  j["src"] = to_json(m.src());
  j["dst"] = to_json(m.dst());
  j["f1"] = m.f1();
  j["f0"] = m.f0();
  return j;
}

inline Json to_json(const PullbackRequest& r) {
  auto j = detail::header("pullback-request");
  j["xmod"] = to_json(r.xmod);
  j["hom"] = to_json(r.hom);
  if (r.test) j["test"] = to_json(*r.test);
  return j;
}

inline Json to_json(const Structure& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

// -- parse -------------------------------------------------------------------

class Reader {
 public:
  explicit Reader(std::filesystem::path base_dir) : base_(std::move(base_dir)) {}

  Structure read(const Json& j, const std::string& where = "$") {
    if (!j.is_object()) fail(where, "expected an object");
    if (j.contains("format-version")) {
      const auto& v = j.at("format-version");
      if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
        fail(where + ".format-version", "unsupported format version");
    }
    const std::string kind = str(j, "kind", where);
    if (kind == "rack") return rack(j, where);
    if (kind == "unpointed-rack") {
      return UnpointedRack::make(table(j, "table", where), labels(j, where));
    }
    if (kind == "group") return group(j, where);
    if (kind == "hom") return hom(j, where);
    if (kind == "action") {
      auto actee = as<FiniteRack>(sub(j, "actee", where), where + ".actee");
      auto actor = as<FiniteRack>(sub(j, "actor", where), where + ".actor");
      return RackAction::make(std::move(actee), std::move(actor), matrix(j, "table", where));
    }
    if (kind == "rack-xmod") {
      auto boundary = as<RackHom>(sub(j, "boundary", where), where + ".boundary");
      auto action = RackAction::make(boundary.dom(), boundary.cod(), matrix(j, "action", where));
      return RackXMod::make(std::move(boundary), std::move(action));
    }
    if (kind == "group-xmod") {
      auto boundary = as<GroupHom>(sub(j, "boundary", where), where + ".boundary");
      return GroupXMod::make(std::move(boundary), matrix(j, "action", where));
    }
    if (kind == "xmod-morphism") {
      auto src = sub(j, "src", where);
      auto dst = sub(j, "dst", where);
      auto f1 = indices(j, "f1", where), f0 = indices(j, "f0", where);
      if (std::holds_alternative<RackXMod>(src))
        return RackXModMorphism::make(std::get<RackXMod>(src),
                                      as<RackXMod>(dst, where + ".dst"), f1, f0);
      if (std::holds_alternative<GroupXMod>(src))
        return GroupXModMorphism::make(std::get<GroupXMod>(src),
                                       as<GroupXMod>(dst, where + ".dst"), f1, f0);
      fail(where + ".src", "expected a rack-xmod or group-xmod");
    }
    if (kind == "pullback-request") {
      PullbackRequest r{as<RackXMod>(sub(j, "xmod", where), where + ".xmod"),
                        as<RackHom>(sub(j, "hom", where), where + ".hom"), std::nullopt};
      if (j.contains("test"))
        r.test = as<RackXModMorphism>(sub(j, "test", where), where + ".test");
      return r;
    }
    fail(where + ".kind", "unknown kind '" + kind + "'");
  }

  template <typename T>
  static T as(Structure s, const std::string& where) {
    if (auto* v = std::get_if<T>(&s)) return std::move(*v);
    fail(where, "unexpected kind '" + kind_of(s) + "'");
  }

 private:
  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
  }

  static const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    return j.at(key);
  }

  static std::string str(const Json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_string()) fail(where + "." + key, "expected a string");
    return v.get<std::string>();
  }

  static Index number(const Json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      fail(where, "expected a non-negative integer");
    return v.get<Index>();
  }

  static Index number(const Json& j, const char* key, const std::string& where) {
    return number(field(j, key, where), where + "." + key);
  }

  static std::vector<Index> indices(const Json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    std::vector<Index> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }

  static std::vector<Index> indices(const Json& j, const char* key, const std::string& where) {
    return indices(field(j, key, where), where + "." + key);
  }

  static Table matrix(const Json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    const std::string at = where + "." + key;
    if (!v.is_array()) fail(at, "expected a matrix");
    Table t;
    for (std::size_t i = 0; i < v.size(); ++i)
      t.push_back(indices(v[i], at + "[" + std::to_string(i) + "]"));
    return t;
  }

  /// Square table whose dimension must agree with "size".
  static Table table(const Json& j, const char* key, const std::string& where) {
    const Index n = number(j, "size", where);
    Table t = matrix(j, key, where);
    if (t.size() != n) fail(where + "." + key, "expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i].size() != n)
        fail(where + "." + key + "[" + std::to_string(i) + "]",
             "expected " + std::to_string(n) + " entries");
    return t;
  }

  static std::vector<std::string> labels(const Json& j, const std::string& where) {
    if (!j.contains("labels")) return {};
    const auto& v = j.at("labels");
    if (!v.is_array()) fail(where + ".labels", "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) fail(where + ".labels", "expected an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  static FiniteRack rack(const Json& j, const std::string& where) {
    return FiniteRack::make(table(j, "table", where), number(j, "basepoint", where),
                            labels(j, where));
  }

  static FiniteGroup group(const Json& j, const std::string& where) {
    return FiniteGroup::make(table(j, "table", where), number(j, "identity", where),
                             labels(j, where));
  }

  Structure hom(const Json& j, const std::string& where) {
    auto dom = sub(j, "dom", where);
    auto cod = sub(j, "cod", where);
    auto map = indices(j, "map", where);
    if (std::holds_alternative<FiniteRack>(dom))
      return RackHom::make(std::get<FiniteRack>(dom), as<FiniteRack>(cod, where + ".cod"), map);
    if (std::holds_alternative<FiniteGroup>(dom))
      return GroupHom::make(std::get<FiniteGroup>(dom), as<FiniteGroup>(cod, where + ".cod"), map);
    fail(where + ".dom", "expected a rack or a group");
  }

  /// Inline object or relative path to another document.
  Structure sub(const Json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    const std::string at = where + "." + key;
    if (v.is_string()) return load_file(base_ / v.get<std::string>(), at);
    return read(v, at);
  }

 public:
  static Structure load_file(const std::filesystem::path& path, const std::string& where = "$");

 private:
  std::filesystem::path base_;
};

/// Parses JSON text, translating syntax errors into line/column diagnostics.
inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": invalid JSON");
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Structure Reader::load_file(const std::filesystem::path& path, const std::string& where) {
  const auto text = read_file(path);
  const auto j = parse_text(text, path.string());
  try {
    return Reader(path.parent_path()).read(j, where);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline Structure load(const std::filesystem::path& path) { return Reader::load_file(path); }

inline Structure parse(const std::string& text, const std::filesystem::path& base_dir = ".") {
  return Reader(base_dir).read(parse_text(text, "<text>"));
}

inline std::string emit(const Structure& s) { return to_text(to_json(s)); }

inline void save(const std::filesystem::path& path, const Structure& s) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << emit(s);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace rackx::io
