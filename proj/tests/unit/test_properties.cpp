#include <doctest.h>

#include <json.hpp>

#include "branches.hpp"
#include "helpers.hpp"
#include "latte/corpus/generators.hpp"
#include "latte/dynsem/script.hpp"
#include "latte/typing/checker.hpp"
#include "latte/typing/isolation.hpp"
#include "latte/typing/unify.hpp"
#include "latte/typing/usage.hpp"
#include "oracles.hpp"

using namespace latte;

namespace {

std::vector<std::string> field_alphabet() { return {"f", "g"}; }

// Paths the isolation and frame properties are exercised on: variables and
// field paths rooted in accessible variables.
std::vector<Path> targets(const TypeEnv& e) {
  std::vector<Path> out;
  for (const Path& p : testing::sub_paths(e, 2)) {
    if (p.is_var() || !e.find(p.root)->anno.is_bottom()) out.push_back(p);
  }
  return out;
}

int rank(const LocalAnno& a) {
  switch (a.kind) {
    case LocalAnno::Kind::Bottom:
      return 0;
    case LocalAnno::Kind::Shared:
    case LocalAnno::Kind::Alias:
      return 1;
    case LocalAnno::Kind::Owned:
      return 2;
    case LocalAnno::Kind::Unique:
      return 3;
  }
  return 0;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("isolation: postcondition and reachability by the I-rules") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    RandomEnv r = gen_random_env(seed);
    for (const Path& p : targets(r.env)) {
      TypeEnv out = isolate(r.table, r.env, p);
      INFO(r.env.str(), " * ", p.str(), " = ", out.str());
      CHECK(env_invariant_holds(out));
      if (p.is_var()) CHECK_FALSE(out.contains(p.root));
      oracle::EquivClosure c(out, {p}, oracle::needed_depth(out, p.depth()));
      for (const auto& b : out.bindings()) CHECK_FALSE(c.connects(b.var, p));
      auto all = oracle::all_isolations(r.table, r.env, p);
      CHECK(all.count(out.str()) == 1);
    }
  }
}

TEST_CASE("frame: no surviving alias points into an argument's fields") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomEnv r = gen_random_env(seed);
    auto ps = targets(r.env);
    if (ps.empty()) continue;
    std::mt19937_64 rng(seed);
    std::vector<Expr> args;
    for (int i = 0, n = 1 + pick(rng, 3); i < n; ++i) {
      if (pick(rng, 6) == 0) {
        args.push_back(Expr::null());
      } else {
        args.push_back(Expr::of(ps[static_cast<std::size_t>(pick(rng, static_cast<int>(ps.size())))]));
      }
    }
    TypeEnv out = frame(r.table, r.env, args);
    REQUIRE(out.size() == r.env.size());
    std::vector<Path> queries;
    for (const Expr& a : args) {
      if (a.is_null()) continue;
      for (const auto& f : field_alphabet()) queries.push_back(a.path->field(f));
    }
    std::size_t depth = 0;
    for (const Path& q : queries) depth = std::max(depth, q.depth());
    oracle::EquivClosure c(out, queries, oracle::needed_depth(out, depth));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Binding& before = r.env.bindings()[i];
      const Binding& after = out.bindings()[i];
      CHECK(before.var == after.var);
      if (!before.anno.is_alias()) CHECK(before.anno == after.anno);
      if (!after.anno.is_alias()) continue;
      for (const Path& q : queries) {
        INFO(r.env.str(), " -> ", out.str(), " at ", q.str());
        CHECK_FALSE(c.connects(after.var, q));
      }
    }
  }
}

TEST_CASE("expression typing never upgrades an annotation") {
  const std::vector<UsageAnno> wants{UsageAnno::owned(), UsageAnno::shared(), UsageAnno::unique(),
                                     UsageAnno::unique_into(Path::parse("elsewhere.f"))};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomEnv r = gen_random_env(seed);
    for (const Path& p : testing::sub_paths(r.env, 2)) {
      auto cls = declared_class(r.table, r.env, p);
      if (!cls) continue;
      for (const UsageAnno& w : wants) {
        TypeEnv out;
        try {
          out = type_expr(r.table, r.env, Expr::of(p), w, *cls);
        } catch (const TypeError&) {
          continue;
        }
        REQUIRE(out.size() == r.env.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
          const LocalAnno& a = r.env.bindings()[i].anno;
          const LocalAnno& b = out.bindings()[i].anno;
          INFO(r.env.str(), " ⊢ ", p.str(), " : ", w.str(), " ⊣ ", out.str());
          CHECK(rank(b) <= rank(a));
          if (b.kind == LocalAnno::Kind::Unique) CHECK(a.kind == LocalAnno::Kind::Unique);
        }
      }
    }
  }
}

TEST_CASE("unification laws on checker-derived branches") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto pair = oracle::gen_branch_pair(seed);
    const ClassTable& t = pair.parent.table;
    const TypeEnv& parent = pair.parent.env;
    TypeEnv ab = unify(t, parent, pair.left, pair.right);
    TypeEnv ba = unify(t, parent, pair.right, pair.left);
    TypeEnv l = isolate_locals(t, parent, pair.left);
    TypeEnv rr = isolate_locals(t, parent, pair.right);
    INFO(parent.str(), " | ", pair.left.str(), " | ", pair.right.str(), " => ", ab.str());
    REQUIRE(ab.size() == parent.size());
    std::vector<Path> targets_ab;
    for (const auto& b : ab.bindings()) {
      if (b.anno.is_alias()) targets_ab.push_back(b.anno.target);
    }
    for (const auto& b : ba.bindings()) {
      if (b.anno.is_alias()) targets_ab.push_back(b.anno.target);
    }
    oracle::EquivClosure eq(ab, targets_ab, oracle::needed_depth(ab, 4));
    for (std::size_t i = 0; i < parent.size(); ++i) {
      const Binding& x = ab.bindings()[i];
      const Binding& y = ba.bindings()[i];
      CHECK(x.var == parent.bindings()[i].var);
      CHECK(x.class_name == parent.bindings()[i].class_name);
      CHECK(x.anno.kind == y.anno.kind);
      if (x.anno.is_alias() && y.anno.is_alias()) CHECK(eq.equiv(x.anno.target, y.anno.target));
      CHECK(oracle::precedes(t, l, x.anno, l.find(x.var)->anno));
      CHECK(oracle::precedes(t, rr, x.anno, rr.find(x.var)->anno));
    }
  }
}

TEST_CASE("checking is a pure function of the source") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::string src = gen_random_program(seed);
    ClassTable t1 = ClassTable::from_source(src);
    ClassTable t2 = ClassTable::from_source(src);
    CheckResult a = check_program(t1);
    CheckResult b = check_program(t2);
    REQUIRE(a.dump.size() == b.dump.size());
    for (std::size_t i = 0; i < a.dump.size(); ++i) CHECK(render(a.dump[i]) == render(b.dump[i]));
    REQUIRE(a.diagnostics.size() == b.diagnostics.size());
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i) CHECK(render(a.diagnostics[i]) == render(b.diagnostics[i]));
  }
}

TEST_CASE("accepted random programs never break the heap invariant") {
  int accepted = 0, runs = 0, clean = 0;
  std::size_t steps = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    ClassTable t = ClassTable::from_source(gen_random_program(seed));
    if (!check_program(t).ok()) continue;
    ++accepted;
    std::mt19937_64 rng(seed);
    auto classes = t.class_names();
    for (int run = 0; run < 5; ++run) {
      // A pool of handles that are only ever lent (owned) or used as receivers.
      nlohmann::json script = nlohmann::json::array();
      int fresh = 0;
      auto make = [&](const std::string& cls) {
        std::string name = "h" + std::to_string(fresh++);
        script.push_back({{"op", "new"},
                          {"class", cls},
                          {"args", nlohmann::json(std::vector<nlohmann::json>(t.fields(cls).size(), nullptr))},
                          {"save", name}});
        return name;
      };
      std::vector<std::pair<std::string, std::string>> pool;  // (class, handle)
      for (const auto& c : classes) pool.emplace_back(c, make(c));
      for (int i = 0; i < 12; ++i) {
        const auto& [cls, recv] = pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))];
        const ClassDecl* decl = t.find(cls);
        std::vector<std::string> methods;
        for (std::string c = cls; c != kObjectClass; c = t.parent(c)) {
          for (const auto& m : t.find(c)->methods) methods.push_back(m.name);
        }
        if (!decl || methods.empty()) continue;
        const std::string method = methods[static_cast<std::size_t>(pick(rng, static_cast<int>(methods.size())))];
        auto sig = t.mtype(cls, method);
        std::string receiver = sig->receiver_anno == DeclAnno::Owned ? recv : make(cls);
        nlohmann::json args = nlohmann::json::array({receiver});
        std::set<std::string> lent{receiver};
        for (const Param& p : sig->params) {
          if (pick(rng, 4) == 0) {
            args.push_back(nullptr);
            continue;
          }
          std::string h;
          if (p.anno == DeclAnno::Owned) {
            for (const auto& [c, name] : pool) {
              if (t.subtype(c, p.class_name) && !lent.count(name)) h = name;
            }
          }
          if (h.empty() && t.has_class(p.class_name)) h = make(p.class_name);
          if (h.empty()) {
            args.push_back(nullptr);
            continue;
          }
          lent.insert(h);
          args.push_back(h);
        }
        nlohmann::json step = {{"op", "call"}, {"method", method}, {"args", args}};
        script.push_back(step);
      }
      ++runs;
      RunOutcome out = run_script(t, parse_script(script.dump()));
      INFO(gen_random_program(seed), "\n", script.dump());
      CHECK(out.status != RunOutcome::Status::Violation);
      clean += out.status == RunOutcome::Status::Ok;
      steps += out.steps;
    }
  }
  MESSAGE("accepted programs: ", accepted, ", script runs: ", runs, " (", clean, " to completion), steps: ", steps);
  CHECK(accepted > 0);
}

}  // TEST_SUITE
