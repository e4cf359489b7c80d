#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "latte/env/type_env.hpp"
#include "latte/syntax/class_table.hpp"

namespace testing {

inline std::string corpus_path(const std::string& rel) { return std::string(LATTE_CORPUS_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string stack_source() { return slurp(corpus_path("accept/stack.latte")); }

/// Node and Stack only: everything up to (not including) `pop`.
inline std::string stack_push_only() {
  std::string s = stack_source();
  return s.substr(0, s.find("  unique Object pop(")) + "}\n";
}

inline latte::Binding bind(const std::string& var, latte::LocalAnno a, const std::string& cls) {
  return latte::Binding{var, std::move(a), cls};
}

inline latte::LocalAnno alias(const std::string& dotted) { return latte::LocalAnno::alias(latte::Path::parse(dotted)); }

inline latte::Path P(const std::string& dotted) { return latte::Path::parse(dotted); }

inline latte::TypeEnv env(std::vector<latte::Binding> bs) { return latte::TypeEnv(std::move(bs)); }

/// Every path rooted in a bound variable with up to `depth` fields from {f, g}.
inline std::vector<latte::Path> sub_paths(const latte::TypeEnv& e, std::size_t depth) {
  std::vector<latte::Path> out;
  for (const auto& b : e.bindings()) {
    std::vector<latte::Path> layer{latte::Path(b.var)};
    for (std::size_t d = 0; d <= depth; ++d) {
      std::vector<latte::Path> next;
      for (const auto& p : layer) {
        out.push_back(p);
        if (d < depth) {
          next.push_back(p.field("f"));
          next.push_back(p.field("g"));
        }
      }
      layer = std::move(next);
    }
  }
  return out;
}

}  // namespace testing
