#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latte/syntax/class_table.hpp"

namespace latte {

using ObjectId = std::uint64_t;
/// A reference: an object id, or null.
using Value = std::optional<ObjectId>;

std::string value_str(const Value& v);

struct HeapObject {
  std::string class_name;
  std::map<std::string, Value> fields;
};

class Heap {
 public:
  /// Ids start at 1 and are never reused.
  ObjectId alloc(std::string class_name, std::map<std::string, Value> fields);
  bool contains(ObjectId id) const { return objects_.count(id) != 0; }
  HeapObject& at(ObjectId id) { return objects_.at(id); }
  const HeapObject& at(ObjectId id) const { return objects_.at(id); }
  const std::map<ObjectId, HeapObject>& objects() const { return objects_; }

 private:
  std::map<ObjectId, HeapObject> objects_;
  ObjectId next_ = 1;
};

struct HeapLocation {
  ObjectId object = 0;
  std::string field;
  friend bool operator==(const HeapLocation&, const HeapLocation&) = default;
};

/// Two reachable heap locations holding the same object, at least one of
/// them a unique field.
struct ViolationReport {
  ObjectId object = 0;
  HeapLocation first;
  HeapLocation second;
  std::size_t step = 0;
};

/// Checks that every reachable object stored in a unique field is stored in
/// no other reachable field, unique or shared. Unreachable objects are ignored.
std::optional<ViolationReport> check_unique_invariant(const ClassTable& table, const Heap& heap,
                                                      const std::vector<Value>& roots, std::size_t step = 0);

}  // namespace latte
