#include "ep2d/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace ep2d::toml {

using nlohmann::json;

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  int line = 1;

  bool end() const { return i >= s.size(); }
  char peek() const { return end() ? '\0' : s[i]; }
  void skip_ws() {
    while (!end() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  // rest of the line must be blank or a comment
  void finish_line() {
    skip_ws();
    if (peek() == '#')
      while (!end() && s[i] != '\n') ++i;
    if (end()) return;
    if (s[i] == '\r') ++i;
    if (peek() != '\n') throw ParseError("unexpected text after value", line);
    ++i;
    ++line;
  }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, line); }
};

bool bare_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::string parse_basic_string(Cursor& c) {
  ++c.i;  // opening quote
  std::string out;
  while (true) {
    if (c.end() || c.peek() == '\n') c.fail("unterminated string");
    char ch = c.s[c.i++];
    if (ch == '"') return out;
    if (ch != '\\') {
      out += ch;
      continue;
    }
    if (c.end()) c.fail("bad escape");
    ch = c.s[c.i++];
    switch (ch) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'u': {
        if (c.i + 4 > c.s.size()) c.fail("bad \\u escape");
        unsigned cp = std::stoul(c.s.substr(c.i, 4), nullptr, 16);
        c.i += 4;
        if (cp < 0x80) {
          out += static_cast<char>(cp);
        } else if (cp < 0x800) {
          out += static_cast<char>(0xC0 | (cp >> 6));
          out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
          out += static_cast<char>(0xE0 | (cp >> 12));
          out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (cp & 0x3F));
        }
        break;
      }
      default: c.fail(std::string("unsupported escape \\") + ch);
    }
  }
}

std::string parse_key_part(Cursor& c) {
  c.skip_ws();
  if (c.peek() == '"') return parse_basic_string(c);
  const std::size_t b = c.i;
  while (!c.end() && bare_char(c.peek())) ++c.i;
  if (b == c.i) c.fail("expected a key");
  return c.s.substr(b, c.i - b);
}

std::vector<std::string> parse_key(Cursor& c) {
  std::vector<std::string> parts{parse_key_part(c)};
  c.skip_ws();
  while (c.peek() == '.') {
    ++c.i;
    parts.push_back(parse_key_part(c));
    c.skip_ws();
  }
  return parts;
}

json parse_value(Cursor& c);

json parse_array(Cursor& c) {
  ++c.i;
  json arr = json::array();
  while (true) {
    c.skip_ws();
    if (c.peek() == ']') {
      ++c.i;
      return arr;
    }
    arr.push_back(parse_value(c));
    c.skip_ws();
    if (c.peek() == ',') {
      ++c.i;
      continue;
    }
    if (c.peek() != ']') c.fail("expected ',' or ']' in array");
  }
}

json parse_number(Cursor& c) {
  const std::size_t b = c.i;
  while (!c.end() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '+' ||
                      c.peek() == '-' || c.peek() == '.' || c.peek() == '_'))
    ++c.i;
  std::string tok = c.s.substr(b, c.i - b);
  std::string clean;
  for (char ch : tok)
    if (ch != '_') clean += ch;
  if (clean.empty()) c.fail("expected a value");
  std::string body = clean;
  bool neg = false;
  if (body[0] == '+' || body[0] == '-') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (body == "inf") return neg ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  if (body == "nan") return std::numeric_limits<double>::quiet_NaN();
  const bool is_float = clean.find_first_of(".eE") != std::string::npos;
  if (!is_float) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(clean.data() + (clean[0] == '+' ? 1 : 0), clean.data() + clean.size(), v);
    if (ec != std::errc() || p != clean.data() + clean.size()) c.fail("bad integer '" + tok + "'");
    return v;
  }
  double v = 0.0;
  auto [p, ec] = std::from_chars(clean.data() + (clean[0] == '+' ? 1 : 0), clean.data() + clean.size(), v);
  if (ec != std::errc() || p != clean.data() + clean.size()) c.fail("bad float '" + tok + "'");
  return v;
}

json parse_value(Cursor& c) {
  c.skip_ws();
  const char ch = c.peek();
  if (ch == '"') return parse_basic_string(c);
  if (ch == '[') return parse_array(c);
  if (c.s.compare(c.i, 4, "true") == 0 && (c.i + 4 >= c.s.size() || !bare_char(c.s[c.i + 4]))) {
    c.i += 4;
    return true;
  }
  if (c.s.compare(c.i, 5, "false") == 0 && (c.i + 5 >= c.s.size() || !bare_char(c.s[c.i + 5]))) {
    c.i += 5;
    return false;
  }
  return parse_number(c);
}

json& descend(json& root, const std::vector<std::string>& path, int line) {
  json* cur = &root;
  for (const std::string& p : path) {
    if (!cur->is_object()) throw ParseError("key '" + p + "' used as a table and a value", line);
    json& next = (*cur)[p];
    if (next.is_null()) next = json::object();
    cur = next.is_array() ? &next.back() : &next;
  }
  return *cur;
}

}  // namespace

json parse(const std::string& text) {
  json root = json::object();
  json* table = &root;
  Cursor c{text};
  while (!c.end()) {
    c.skip_ws();
    const char ch = c.peek();
    if (ch == '\n' || ch == '\r' || ch == '#' || ch == '\0') {
      c.finish_line();
      continue;
    }
    if (ch == '[') {
      const bool arr = c.i + 1 < text.size() && text[c.i + 1] == '[';
      c.i += arr ? 2 : 1;
      auto path = parse_key(c);
      if (c.peek() != ']' || (arr && (c.i + 1 >= text.size() || text[c.i + 1] != ']')))
        c.fail("unterminated table header");
      c.i += arr ? 2 : 1;
      const std::string last = path.back();
      path.pop_back();
      json& parent = descend(root, path, c.line);
      if (arr) {
        json& a = parent[last];
        if (a.is_null()) a = json::array();
        if (!a.is_array()) c.fail("'" + last + "' is not an array of tables");
        a.push_back(json::object());
        table = &a.back();
      } else {
        json& t = parent[last];
        if (t.is_null()) t = json::object();
        if (!t.is_object()) c.fail("'" + last + "' is not a table");
        table = &t;
      }
      c.finish_line();
      continue;
    }
    auto key = parse_key(c);
    c.skip_ws();
    if (c.peek() != '=') c.fail("expected '='");
    ++c.i;
    json v = parse_value(c);
    const std::string last = key.back();
    key.pop_back();
    json& dst = descend(*table, key, c.line);
    if (dst.contains(last)) c.fail("duplicate key '" + last + "'");
    dst[last] = std::move(v);
    c.finish_line();
  }
  return root;
}

namespace {

std::string quote_key(const std::string& k) {
  bool bare = !k.empty();
  for (char ch : k) bare = bare && bare_char(ch);
  return bare ? k : json(k).dump();
}

std::string scalar(const json& v) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
  }
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  }
  return v.dump();  // strings, integers, booleans
}

bool is_table_array(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const json& e : v)
    if (!e.is_object()) return false;
  return true;
}

void emit(std::ostringstream& os, const json& t, const std::string& prefix) {
  for (auto it = t.begin(); it != t.end(); ++it) {
    const json& v = it.value();
    if (v.is_null()) continue;
    if (!v.is_object() && !is_table_array(v)) os << quote_key(it.key()) << " = " << scalar(v) << "\n";
  }
  for (auto it = t.begin(); it != t.end(); ++it) {
    const json& v = it.value();
    const std::string name = prefix.empty() ? quote_key(it.key()) : prefix + "." + quote_key(it.key());
    if (v.is_object()) {
      os << "\n[" << name << "]\n";
      emit(os, v, name);
    } else if (is_table_array(v)) {
      for (const json& e : v) {
        os << "\n[[" << name << "]]\n";
        emit(os, e, name);
      }
    }
  }
}

}  // namespace

std::string dump(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("toml::dump needs an object");
  std::ostringstream os;
  emit(os, doc, "");
  return os.str();
}

}  // namespace ep2d::toml
