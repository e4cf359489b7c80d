#include "latte/dynsem/heap.hpp"

#include <set>

namespace latte {

std::string value_str(const Value& v) { return v ? "#" + std::to_string(*v) : "null"; }

ObjectId Heap::alloc(std::string class_name, std::map<std::string, Value> fields) {
  ObjectId id = next_++;
  objects_.emplace(id, HeapObject{std::move(class_name), std::move(fields)});
  return id;
}

std::optional<ViolationReport> check_unique_invariant(const ClassTable& table, const Heap& heap,
                                                      const std::vector<Value>& roots, std::size_t step) {
  std::set<ObjectId> reachable;
  std::vector<ObjectId> work;
  for (const Value& v : roots) {
    if (v && heap.contains(*v) && reachable.insert(*v).second) work.push_back(*v);
  }
  while (!work.empty()) {
    ObjectId id = work.back();
    work.pop_back();
    for (const auto& [name, v] : heap.at(id).fields) {
      if (v && heap.contains(*v) && reachable.insert(*v).second) work.push_back(*v);
    }
  }

  // Incoming references per object, in (object id, declaration order).
  struct Incoming {
    HeapLocation loc;
    bool unique;
  };
  std::map<ObjectId, std::vector<Incoming>> incoming;
  for (ObjectId id : reachable) {
    const HeapObject& obj = heap.at(id);
    for (const FieldInfo& f : table.fields(obj.class_name)) {
      auto it = obj.fields.find(f.name);
      if (it == obj.fields.end() || !it->second) continue;
      incoming[*it->second].push_back({{id, f.name}, f.anno == DeclAnno::Unique});
    }
  }
  for (const auto& [target, locs] : incoming) {
    if (locs.size() < 2) continue;
    for (std::size_t i = 0; i < locs.size(); ++i) {
      if (!locs[i].unique) continue;
      const HeapLocation& other = locs[i == 0 ? 1 : 0].loc;
      HeapLocation a = locs[i].loc;
      HeapLocation b = other;
      if (b.object < a.object || (b.object == a.object && b.field < a.field)) std::swap(a, b);
      return ViolationReport{target, a, b, step};
    }
  }
  return std::nullopt;
}

}  // namespace latte
