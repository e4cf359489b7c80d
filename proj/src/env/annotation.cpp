#include "latte/env/annotation.hpp"

namespace latte {

LocalAnno LocalAnno::from_decl(DeclAnno a) {
  switch (a) {
    case DeclAnno::Unique:
      return unique();
    case DeclAnno::Shared:
      return shared();
    case DeclAnno::Owned:
      return owned();
  }
  return bottom();
}

std::string LocalAnno::str() const {
  switch (kind) {
    case Kind::Unique:
      return "unique";
    case Kind::Shared:
      return "shared";
    case Kind::Owned:
      return "owned";
    case Kind::Alias:
      return "alias(" + target.str() + ")";
    case Kind::Bottom:
      return "⊥";
  }
  return "?";
}

UsageAnno UsageAnno::from_decl(DeclAnno a) {
  switch (a) {
    case DeclAnno::Unique:
      return unique();
    case DeclAnno::Shared:
      return shared();
    case DeclAnno::Owned:
      return owned();
  }
  return owned();
}

std::string UsageAnno::str() const {
  switch (kind) {
    case Kind::Owned:
      return "owned";
    case Kind::Shared:
      return "shared";
    case Kind::Unique:
      return "unique";
    case Kind::UniqueInto:
      return "unique(" + target.str() + ")";
  }
  return "?";
}

}  // namespace latte
