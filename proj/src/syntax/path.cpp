#include "latte/syntax/path.hpp"

#include <sstream>

namespace latte {

bool Path::has_prefix(const Path& p) const {
  if (root != p.root || p.fields.size() > fields.size()) return false;
  for (std::size_t i = 0; i < p.fields.size(); ++i) {
    if (fields[i] != p.fields[i]) return false;
  }
  return true;
}

std::string Path::str() const {
  std::string s = root;
  for (const auto& f : fields) {
    s += '.';
    s += f;
  }
  return s;
}

Path Path::parse(const std::string& dotted) {
  Path p;
  std::stringstream ss(dotted);
  std::string part;
  bool first = true;
  while (std::getline(ss, part, '.')) {
    if (first) {
      p.root = part;
      first = false;
    } else {
      p.fields.push_back(part);
    }
  }
  return p;
}

Path replace_path(const Path& p, const Path& target, const Path& replacement) {
  if (!p.has_prefix(target)) return p;
  Path out = replacement;
  for (std::size_t i = target.fields.size(); i < p.fields.size(); ++i) {
    out.fields.push_back(p.fields[i]);
  }
  return out;
}

}  // namespace latte
