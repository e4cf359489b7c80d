#include <doctest.h>

#include "helpers.hpp"
#include "latte/corpus/generators.hpp"
#include "latte/syntax/parser.hpp"
#include "latte/syntax/printer.hpp"

using namespace latte;
using testing::stack_source;

TEST_SUITE("syntax") {

TEST_CASE("stack program parses into Node and Stack") {
  ClassTable t = ClassTable::from_source(testing::stack_push_only());
  CHECK(t.has_class("Node"));
  CHECK(t.has_class("Stack"));
  auto root = t.ftype("Stack", "root");
  REQUIRE(root);
  CHECK(root->anno == DeclAnno::Unique);
  CHECK(root->class_name == "Node");
}

TEST_CASE("trivial class with empty constructor") {
  ClassTable t = ClassTable::from_source("class C extends Object { C() { super(); } }");
  CHECK(t.fields("C").empty());
  const ClassDecl* c = t.find("C");
  REQUIRE(c);
  REQUIRE(c->ctor);
  CHECK(c->ctor->params.empty());
  CHECK(c->ctor->inits.empty());
}

TEST_CASE("malformed input reports a position") {
  try {
    ClassTable::from_source("class C extends Object {\n  unique C f\n}");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.span().line == 3);
  }
  CHECK_THROWS_AS(ClassTable::from_source("class C extends D { }"), SyntaxError);
  CHECK_THROWS_AS(ClassTable::from_source("class A extends B { } class B extends A { }"), SyntaxError);
  CHECK_THROWS_AS(ClassTable::from_source("class A extends Object { shared A f; unique A f; }"), SyntaxError);
}

TEST_CASE("owned is rejected on fields and return types") {
  CHECK_THROWS_AS(ClassTable::from_source("class A extends Object { owned A f; }"), SyntaxError);
  CHECK_THROWS_AS(ClassTable::from_source("class A extends Object { A() {} owned A m(owned A this) { return this; } }"),
                  SyntaxError);
}

TEST_CASE("declaration with initializer splits in two") {
  Program p = parse_program(
      "class Node extends Object { unique Node next; Node(unique Node next) { this.next = next; } }\n"
      "class S extends Object { unique Node root; S(unique Node root) { this.root = root; }\n"
      "  void m(owned S this) { Node r = this.root; } }");
  const auto& body = p.classes[1].methods[0].body;
  REQUIRE(body.size() == 2);
  auto* d = body[0].as<stmt::Decl>();
  auto* a = body[1].as<stmt::AssignVar>();
  REQUIRE(d);
  REQUIRE(a);
  CHECK(d->var == "r");
  CHECK(d->class_name == "Node");
  CHECK(a->value.str() == "this.root");
}

TEST_CASE("if without else gets an empty else block") {
  Program p = parse_program("class A extends Object { A() {} void m(owned A this, shared A b) { if (b == null) b = null; } }");
  auto* i = p.classes[0].methods[0].body[0].as<stmt::If>();
  REQUIRE(i);
  auto* e = i->else_branch->as<stmt::Block>();
  REQUIRE(e);
  CHECK(e->body.empty());
}

TEST_CASE("dequeue guard desugars into nested conditionals") {
  const std::string classes =
      "class Node extends Object { unique Node next; Node(unique Node next) { this.next = next; } }\n";
  Program sugared = parse_program(classes +
                                  "class A extends Object { A() {}\n"
                                  "  void m(owned A this, owned Node r, shared A x) {\n"
                                  "    if (r == null || r.next == null) { x = null; } else { x = this; } } }");
  Program core = parse_program(classes +
                               "class A extends Object { A() {}\n"
                               "  void m(owned A this, owned Node r, shared A x) {\n"
                               "    if (r == null) { x = null; } else { if (r.next == null) { x = null; } else { x = this; } } } }");
  CHECK(same_program(sugared, core));
}

TEST_CASE("conjunction and disequality desugar") {
  const std::string head = "class A extends Object { A() {}\n  void m(owned A this, shared A a, shared A b, shared A x) {\n";
  Program ne = parse_program(head + "if (a != b) { x = a; } else { x = b; } } }");
  Program ne_core = parse_program(head + "if (a == b) { x = b; } else { x = a; } } }");
  CHECK(same_program(ne, ne_core));
  Program conj = parse_program(head + "if (a == null && b == null) { x = a; } else { x = b; } } }");
  Program conj_core =
      parse_program(head + "if (a == null) { if (b == null) { x = a; } else { x = b; } } else { x = b; } } }");
  CHECK(same_program(conj, conj_core));
}

TEST_CASE("fields") {
  ClassTable t = ClassTable::from_source(testing::stack_push_only() +
                                         "class Tagged extends Stack { shared Object tag;\n"
                                         "  Tagged(unique Node root, shared Object tag) { super(root); this.tag = tag; } }");
  CHECK(t.fields("Object").empty());
  std::vector<FieldInfo> stack{{DeclAnno::Unique, "Node", "root"}};
  CHECK(t.fields("Stack") == stack);
  std::vector<FieldInfo> tagged{{DeclAnno::Unique, "Node", "root"}, {DeclAnno::Shared, "Object", "tag"}};
  CHECK(t.fields("Tagged") == tagged);
  CHECK_THROWS_AS(t.fields("Nope"), LookupError);
}

TEST_CASE("ftype") {
  ClassTable t = ClassTable::from_source(stack_source());
  auto v = t.ftype("Node", "value");
  REQUIRE(v);
  CHECK(v->anno == DeclAnno::Unique);
  CHECK(v->class_name == "Object");
  CHECK_FALSE(t.ftype("Object", "f"));
  CHECK_FALSE(t.ftype("Stack", "value"));
}

TEST_CASE("mtype") {
  ClassTable t = ClassTable::from_source(stack_source() +
                                         "class Sub extends Stack { Sub(unique Node root) { super(root); } }");
  auto push = t.mtype("Stack", "push");
  REQUIRE(push);
  CHECK(push->receiver_anno == DeclAnno::Owned);
  REQUIRE(push->params.size() == 1);
  CHECK(push->params[0].anno == DeclAnno::Unique);
  CHECK(push->params[0].class_name == "Object");
  CHECK_FALSE(push->ret);

  auto pop = t.mtype("Stack", "pop");
  REQUIRE(pop);
  CHECK(pop->params.empty());
  REQUIRE(pop->ret);
  CHECK(pop->ret->anno == DeclAnno::Unique);
  CHECK(pop->ret->class_name == "Object");

  auto inherited = t.mtype("Sub", "pop");
  REQUIRE(inherited);
  CHECK(inherited->declaring_class == "Stack");
  CHECK(inherited->ret == pop->ret);
  CHECK_FALSE(t.mtype("Stack", "nope"));
}

TEST_CASE("subtype") {
  ClassTable t = ClassTable::from_source(stack_source());
  CHECK(t.subtype("Stack", "Stack"));
  CHECK(t.subtype("Stack", "Object"));
  CHECK_FALSE(t.subtype("Object", "Stack"));
  CHECK_FALSE(t.subtype("Stack", "Node"));
}

TEST_CASE("property: fields are duplicate-free and extend the parent's") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    ClassTable t = ClassTable::from_source(gen_random_classes(rng, EnvBounds{}));
    for (const std::string& c : t.class_names()) {
      const auto& fs = t.fields(c);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = i + 1; j < fs.size(); ++j) CHECK(fs[i].name != fs[j].name);
      }
      if (c == kObjectClass) continue;
      const auto& parent = t.fields(t.parent(c));
      REQUIRE(parent.size() <= fs.size());
      CHECK(std::equal(parent.begin(), parent.end(), fs.begin()));
    }
  }
}

TEST_CASE("property: subtype is a partial order") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ClassTable t = ClassTable::from_source(gen_random_program(seed));
    auto names = t.class_names();
    for (const auto& a : names) {
      CHECK(t.subtype(a, a));
      CHECK(t.subtype(a, kObjectClass));
      for (const auto& b : names) {
        if (a != b && t.subtype(a, b)) CHECK_FALSE(t.subtype(b, a));
        for (const auto& c : names) {
          if (t.subtype(a, b) && t.subtype(b, c)) CHECK(t.subtype(a, c));
        }
      }
    }
  }
}

TEST_CASE("property: parse, print, parse is a fixpoint") {
  std::vector<std::string> sources{stack_source()};
  for (const char* f : {"accept/box.latte", "accept/cells.latte", "accept/transfer.latte"}) {
    sources.push_back(testing::slurp(testing::corpus_path(f)));
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) sources.push_back(gen_random_program(seed));
  for (const auto& src : sources) {
    Program once = parse_program(src);
    std::string printed = print_program(once);
    Program twice = parse_program(printed);
    CHECK(same_program(once, twice));
    CHECK(print_program(twice) == printed);
  }
}

}  // TEST_SUITE
