#include "latte/dynsem/script.hpp"

#include <json.hpp>
#include <map>

namespace latte {

std::vector<ScriptStep> parse_script(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScriptError(std::string("malformed script: ") + e.what());
  }
  if (!doc.is_array()) throw ScriptError("script must be a JSON array");

  std::vector<ScriptStep> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    const std::string where = "script step " + std::to_string(i);
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
      throw ScriptError(where + ": expected an object with an \"op\" string");
    }
    ScriptStep s;
    const std::string op = j["op"];
    if (op == "new") {
      s.op = ScriptStep::Op::New;
      if (!j.contains("class") || !j["class"].is_string()) throw ScriptError(where + ": \"new\" needs \"class\"");
      s.class_name = j["class"];
    } else if (op == "call") {
      s.op = ScriptStep::Op::Call;
      if (!j.contains("method") || !j["method"].is_string()) {
        throw ScriptError(where + ": \"call\" needs \"method\"");
      }
      s.method = j["method"];
      if (j.contains("class") && j["class"].is_string()) s.class_name = j["class"];
    } else {
      throw ScriptError(where + ": unknown op '" + op + "'");
    }
    if (j.contains("args")) {
      if (!j["args"].is_array()) throw ScriptError(where + ": \"args\" must be an array");
      for (const auto& a : j["args"]) {
        if (a.is_null()) {
          s.args.emplace_back(std::nullopt);
        } else if (a.is_string()) {
          s.args.emplace_back(a.get<std::string>());
        } else {
          throw ScriptError(where + ": arguments must be handle names or null");
        }
      }
    }
    if (s.op == ScriptStep::Op::Call && (s.args.empty() || !s.args[0])) {
      throw ScriptError(where + ": \"call\" needs a receiver handle as its first argument");
    }
    if (j.contains("save")) {
      if (!j["save"].is_string()) throw ScriptError(where + ": \"save\" must be a string");
      s.save = j["save"].get<std::string>();
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

enum class HandleState { Unique, Shared, Consumed };

struct Handle {
  Value value;
  HandleState state = HandleState::Unique;
};

class Harness {
 public:
  Harness(const ClassTable& table, InterpreterOptions options) : table_(table), interp_(table, options) {
    interp_.set_external_roots([this] {
      std::vector<Value> roots;
      for (const auto& [name, h] : handles_) {
        if (h.state != HandleState::Consumed) roots.push_back(h.value);
      }
      return roots;
    });
  }

  Interpreter& interp() { return interp_; }

  std::string run(const ScriptStep& s) {
    if (s.op == ScriptStep::Op::New) {
      interp_.step("new " + s.class_name);
      if (!table_.has_class(s.class_name)) harness_error("unknown class '" + s.class_name + "'");
      const auto& fs = table_.fields(s.class_name);
      if (fs.size() != s.args.size()) harness_error("constructor of " + s.class_name + " expects " +
                                                    std::to_string(fs.size()) + " argument(s)");
      std::vector<DeclAnno> annos;
      for (const FieldInfo& f : fs) annos.push_back(f.anno);
      std::vector<Value> args = take(s.args, annos);
      Value v = interp_.construct(s.class_name, args);
      save(s, v, DeclAnno::Unique);
      interp_.check_oracle();  // the saved handle is a new root
      return "new " + s.class_name + "(" + arg_list(s.args, 0) + ") -> " + value_str(v);
    }

    const Handle& recv = lookup(*s.args[0]);
    if (!recv.value) harness_error("receiver '" + *s.args[0] + "' is null");
    std::string cls = interp_.heap().at(*recv.value).class_name;
    if (!s.class_name.empty() && !table_.subtype(cls, s.class_name)) {
      harness_error("receiver '" + *s.args[0] + "' is a " + cls + ", not a " + s.class_name);
    }
    auto sig = table_.mtype(cls, s.method);
    if (!sig) harness_error("class " + cls + " has no method '" + s.method + "'");
    if (sig->params.size() + 1 != s.args.size()) {
      harness_error("method '" + s.method + "' expects " + std::to_string(sig->params.size()) + " argument(s)");
    }
    std::vector<DeclAnno> annos{sig->receiver_anno};
    for (const Param& p : sig->params) annos.push_back(p.anno);
    interp_.step("call " + s.method);
    std::vector<Value> vals = take(s.args, annos);
    Value r = interp_.call(vals[0], s.method, std::vector<Value>(vals.begin() + 1, vals.end()));
    if (sig->ret) save(s, r, sig->ret->anno);
    interp_.check_oracle();
    return "call " + *s.args[0] + "." + s.method + "(" + arg_list(s.args, 1) + ") -> " +
           (sig->ret ? value_str(r) : "void");
  }

 private:
  [[noreturn]] static void harness_error(const std::string& msg) {
    throw RuntimeError(RuntimeError::Kind::Harness, msg);
  }

  const Handle& lookup(const std::string& name) {
    auto it = handles_.find(name);
    if (it == handles_.end()) harness_error("unknown handle '" + name + "'");
    return it->second;
  }

  // Resolves handles and applies the annotation discipline. A handle may
  // appear more than once in a step only if every use is shared.
  std::vector<Value> take(const std::vector<std::optional<std::string>>& args, const std::vector<DeclAnno>& annos) {
    std::map<std::string, int> uses;
    std::map<std::string, bool> only_shared;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!args[i]) continue;
      uses[*args[i]]++;
      auto [it, fresh] = only_shared.emplace(*args[i], true);
      it->second = it->second && annos[i] == DeclAnno::Shared;
    }
    for (const auto& [name, n] : uses) {
      if (n > 1 && !only_shared[name]) harness_error("handle '" + name + "' is passed twice in one step");
    }

    std::vector<Value> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!args[i]) {
        out.emplace_back(std::nullopt);
        continue;
      }
      lookup(*args[i]);
      Handle& h = handles_[*args[i]];
      if (h.value) {
        if (h.state == HandleState::Consumed) harness_error("handle '" + *args[i] + "' was already given away");
        switch (annos[i]) {
          case DeclAnno::Unique:
            if (h.state != HandleState::Unique) harness_error("handle '" + *args[i] + "' is shared, not unique");
            h.state = HandleState::Consumed;
            break;
          case DeclAnno::Owned:
            if (h.state != HandleState::Unique) harness_error("handle '" + *args[i] + "' is shared, not unique");
            break;
          case DeclAnno::Shared:
            h.state = HandleState::Shared;
            break;
        }
      }
      out.push_back(h.value);
    }
    return out;
  }

  void save(const ScriptStep& s, const Value& v, DeclAnno anno) {
    if (!s.save) return;
    handles_[*s.save] = Handle{v, anno == DeclAnno::Shared ? HandleState::Shared : HandleState::Unique};
  }

  static std::string arg_list(const std::vector<std::optional<std::string>>& args, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < args.size(); ++i) {
      if (i > from) out += ", ";
      out += args[i] ? *args[i] : "null";
    }
    return out;
  }

  const ClassTable& table_;
  Interpreter interp_;
  std::map<std::string, Handle> handles_;
};

}  // namespace

RunOutcome run_script(const ClassTable& table, const std::vector<ScriptStep>& script, InterpreterOptions options) {
  RunOutcome out;
  Harness h(table, options);
  try {
    for (std::size_t i = 0; i < script.size(); ++i) {
      out.log.push_back("[" + std::to_string(i) + "] " + h.run(script[i]));
    }
  } catch (const UniquenessViolation& v) {
    out.status = RunOutcome::Status::Violation;
    out.violation = v.report();
  } catch (const RuntimeError& e) {
    out.status = RunOutcome::Status::RuntimeError;
    out.error = e.what();
  }
  out.steps = h.interp().steps();
  out.trace = h.interp().trace();
  return out;
}

}  // namespace latte
