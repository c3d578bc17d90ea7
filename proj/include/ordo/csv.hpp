#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace ordo::csv {

// shortest representation that round-trips
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  Writer& field(std::string_view s) {
    sep();
    out_ << escape(s);
    return *this;
  }
  Writer& field(const char* s) { return field(std::string_view(s)); }
  Writer& field(double v) {
    sep();
    out_ << format_double(v);
    return *this;
  }
  Writer& field(std::int64_t v) {
    sep();
    out_ << v;
    return *this;
  }
  Writer& field(int v) { return field(static_cast<std::int64_t>(v)); }
  Writer& field(std::size_t v) {
    sep();
    out_ << v;
    return *this;
  }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace ordo::csv
