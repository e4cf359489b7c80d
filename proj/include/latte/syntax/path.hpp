#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace latte {

/// Syntactic access path `x.f.g...`: a root variable (or `this`) followed by
/// zero or more field selections.
struct Path {
  std::string root;
  std::vector<std::string> fields;

  Path() = default;
  explicit Path(std::string r, std::vector<std::string> fs = {})
      : root(std::move(r)), fields(std::move(fs)) {}

  bool is_var() const { return fields.empty(); }
  std::size_t depth() const { return fields.size(); }

  Path field(const std::string& f) const {
    Path p = *this;
    p.fields.push_back(f);
    return p;
  }
  /// Path with the last field dropped. Precondition: !is_var().
  Path parent() const {
    Path p = *this;
    p.fields.pop_back();
    return p;
  }
  const std::string& last_field() const { return fields.back(); }

  /// First `n` components: prefix(0) is the bare root.
  Path prefix(std::size_t n) const {
    return Path(root, std::vector<std::string>(fields.begin(), fields.begin() + n));
  }
  bool has_prefix(const Path& p) const;

  std::string str() const;
  static Path parse(const std::string& dotted);

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// Expression of the core language: `null` or a path.
struct Expr {
  std::optional<Path> path;

  static Expr null() { return Expr{}; }
  static Expr of(Path p) { return Expr{std::move(p)}; }
  bool is_null() const { return !path.has_value(); }
  std::string str() const { return path ? path->str() : "null"; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// p[replacement / target]: replaces `target` where it occurs as a prefix of `p`.
Path replace_path(const Path& p, const Path& target, const Path& replacement);

}  // namespace latte
