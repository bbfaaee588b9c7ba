#include <string>
#include <vector>

#include "doctest.h"
#include "mergeprobe/java/structure.hpp"

namespace jv = mergeprobe::java;

namespace {

const char* kSource = R"(package demo.app;

import java.util.List;
import static org.junit.Assert.*;

public class Outer {
  private int counter;
  public static final String NAME = "outer";

  public Outer() {
    this.counter = 0;
  }

  public Outer(int counter) {
    this.counter = counter;
  }

  public int bump() {
    if (counter > 0) {
      counter += 1;
    }
    return counter;
  }

  public int bump(int by) { return counter + by; }

  abstract static class Inner {
    void helper() {}
    abstract int pending();
  }
}

enum Mode { ON, OFF }

interface Turner { void turn(); }
)";

}  // namespace

TEST_CASE("compilation unit captures package, imports, and type kinds") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(kSource);
  CHECK(unit.package_name == "demo.app");
  REQUIRE(unit.imports.size() == 2);
  CHECK(unit.imports[0] == "import java.util.List;");
  CHECK(unit.imports[1] == "import static org.junit.Assert.*;");
  REQUIRE(unit.types.size() == 3);
  CHECK(unit.types[0].name == "Outer");
  CHECK(unit.types[0].kind == "class");
  CHECK(unit.types[1].kind == "enum");
  CHECK(unit.types[2].kind == "interface");
}

TEST_CASE("members are sliced verbatim and dedented to their declaration column") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(kSource);
  const jv::JavaClass& outer = unit.types[0];

  REQUIRE(outer.fields.size() == 2);
  CHECK(outer.fields[0] == "private int counter;");
  CHECK(outer.fields[1] == "public static final String NAME = \"outer\";");

  REQUIRE(outer.constructors.size() == 2);
  CHECK(outer.constructors[0] == "public Outer() {\n  this.counter = 0;\n}");
  CHECK(outer.constructors[1] ==
        "public Outer(int counter) {\n  this.counter = counter;\n}");

  REQUIRE(outer.methods.size() == 2);
  CHECK(outer.methods[0].name == "bump");
  CHECK(outer.methods[0].arity == 0);
  CHECK(outer.methods[0].has_body);
  CHECK(outer.methods[0].text ==
        "public int bump() {\n  if (counter > 0) {\n    counter += 1;\n  }\n"
        "  return counter;\n}");
  CHECK(outer.methods[1].arity == 1);
  CHECK(outer.methods[1].text == "public int bump(int by) { return counter + by; }");
}

TEST_CASE("nested classes are collected beneath their enclosing type") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(kSource);
  REQUIRE(unit.types[0].nested.size() == 1);
  const jv::JavaClass& inner = unit.types[0].nested[0];
  CHECK(inner.name == "Inner");
  REQUIRE(inner.methods.size() == 2);
  CHECK(inner.methods[0].has_body);
  CHECK_FALSE(inner.methods[1].has_body);  // abstract: no body to execute
}

TEST_CASE("find_class searches depth-first by simple name") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(kSource);
  CHECK(jv::find_class(unit, "Outer") == &unit.types[0]);
  CHECK(jv::find_class(unit, "demo.app.Outer") == &unit.types[0]);
  CHECK(jv::find_class(unit, "Inner") == &unit.types[0].nested[0]);
  CHECK(jv::find_class(unit, "Outer$Inner") == &unit.types[0].nested[0]);
  CHECK(jv::find_class(unit, "Absent") == nullptr);
}

TEST_CASE("find_methods filters by name and arity") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(kSource);
  const jv::JavaClass& outer = unit.types[0];
  CHECK(jv::find_methods(outer, "bump", -1).size() == 2);
  CHECK(jv::find_methods(outer, "bump", 0).size() == 1);
  CHECK(jv::find_methods(outer, "bump", 1).size() == 1);
  CHECK(jv::find_methods(outer, "bump", 2).empty());
  CHECK(jv::find_methods(outer, "missing", -1).empty());
}

TEST_CASE("method signature strings split into name and arity") {
  std::string name;
  int arity = 0;
  jv::parse_method_signature("cleanText()", &name, &arity);
  CHECK(name == "cleanText");
  CHECK(arity == 0);

  jv::parse_method_signature("add(int, int)", &name, &arity);
  CHECK(name == "add");
  CHECK(arity == 2);

  jv::parse_method_signature("apply(Function<String, Integer>)", &name, &arity);
  CHECK(name == "apply");
  CHECK(arity == 1);  // commas inside generics do not split parameters

  jv::parse_method_signature("bareName", &name, &arity);
  CHECK(name == "bareName");
  CHECK(arity == -1);
}

TEST_CASE("annotations travel with the member slice") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(
      "class T {\n"
      "  @Test\n"
      "  @Ignore(\"later\")\n"
      "  public void go() { }\n"
      "}\n");
  REQUIRE(unit.types[0].methods.size() == 1);
  CHECK(unit.types[0].methods[0].text ==
        "@Test\n@Ignore(\"later\")\npublic void go() { }");
}

TEST_CASE("generic methods and arrays parse structurally") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(
      "class G {\n"
      "  private java.util.Map<String, java.util.List<Integer>> index;\n"
      "  public <T> T[] pick(java.util.List<T> from, int[] at) { return null; }\n"
      "}\n");
  CHECK(unit.types[0].fields.size() == 1);
  REQUIRE(unit.types[0].methods.size() == 1);
  CHECK(unit.types[0].methods[0].name == "pick");
  CHECK(unit.types[0].methods[0].arity == 2);
}

TEST_CASE("unbalanced source fails with a position") {
  CHECK_THROWS_AS(jv::parse_compilation_unit("class T { void f() {"), jv::ParseError);
}

TEST_CASE("deeper nesting dedents by the full leading depth") {
  jv::CompilationUnit unit = jv::parse_compilation_unit(
      "class A {\n"
      "    class B {\n"
      "        void f() {\n"
      "            go();\n"
      "        }\n"
      "    }\n"
      "}\n");
  const jv::JavaClass* b = jv::find_class(unit, "B");
  REQUIRE(b != nullptr);
  REQUIRE(b->methods.size() == 1);
  CHECK(b->methods[0].text == "void f() {\n    go();\n}");
}
