#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "mergeprobe/mjava/interp.hpp"
#include "mergeprobe/mjava/parser.hpp"

namespace mj = mergeprobe::mjava;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MERGEPROBE_FIXTURE_DIR;

std::vector<mj::TestRunResult> run_class(const std::string& source) {
  mj::Workspace ws({});
  const mj::Unit* unit = ws.add_unit(source, "T.java");
  auto diags = mj::check_workspace(ws);
  for (const auto& d : diags) MESSAGE(d);
  REQUIRE(diags.empty());
  REQUIRE_FALSE(unit->classes.empty());
  return mj::run_test_class(ws, *unit, unit->classes.front());
}

std::vector<std::string> check_source(const std::string& source) {
  mj::Workspace ws({});
  ws.add_unit(source, "T.java");
  return mj::check_workspace(ws);
}

}  // namespace

TEST_CASE("the parser builds the expected shape for subset sources") {
  const mj::Unit unit = mj::parse_unit(
      "package demo;\n"
      "\n"
      "import java.util.Set;\n"
      "import java.util.HashSet;\n"
      "\n"
      "public class Demo {\n"
      "  public int count;\n"
      "  public Demo(int count) { this.count = count; }\n"
      "  public int bump() { return count + 1; }\n"
      "  @Test\n"
      "  public void testBump() { }\n"
      "}\n",
      "Demo.java");
  CHECK(unit.package_name == "demo");
  CHECK(unit.imports == std::vector<std::string>{"java.util.Set", "java.util.HashSet"});
  REQUIRE(unit.classes.size() == 1);
  const mj::ClassDecl& cls = unit.classes[0];
  CHECK(cls.name == "Demo");
  REQUIRE(cls.fields.size() == 1);
  CHECK(cls.fields[0].name == "count");
  CHECK(cls.fields[0].type.is("int"));
  CHECK(cls.ctors.size() == 1);
  REQUIRE(cls.methods.size() == 2);
  CHECK(cls.methods[0].name == "bump");
  CHECK_FALSE(cls.methods[0].has_annotation("Test"));
  CHECK(cls.methods[1].has_annotation("Test"));
  CHECK(cls.methods[1].line == 11);
}

TEST_CASE("sources outside the subset are rejected with a position") {
  auto rejects = [](const std::string& body) {
    std::string source = "class T { void f() { " + body + " } }";
    CHECK_THROWS_AS(mj::parse_unit(source, "T.java"), mj::SubsetError);
  };
  rejects("for (;;) { }");
  rejects("do { } while (true);");
  rejects("try { } catch (Exception e) { }");
  rejects("int i = 0; i++;");
  rejects("int i = 0; i += 1;");
  rejects("double d = 1.5;");
  rejects("int a, b;");
  rejects("int[] xs;");
  rejects("long big = 99999999999999999999;");

  CHECK_THROWS_AS(mj::parse_unit("class A extends B { }", "T.java"), mj::SubsetError);
  CHECK_THROWS_AS(mj::parse_unit("interface I { }", "T.java"), mj::SubsetError);
  CHECK_THROWS_AS(mj::parse_unit("class A { class B { } }", "T.java"), mj::SubsetError);

  try {
    mj::parse_unit("class T {\n  void f() {\n    for (;;) { }\n  }\n}", "T.java");
    FAIL("expected SubsetError");
  } catch (const mj::SubsetError& e) {
    CHECK(std::string(e.what()).find("unsupported construct: 'for' statements") !=
          std::string::npos);
    CHECK(std::string(e.what()).find("T.java:3") != std::string::npos);
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("the checker reports unresolved names with file and line") {
  SUBCASE("missing method") {
    auto diags = check_source(
        "class A {\n"
        "  void f() {\n"
        "    B b = new B();\n"
        "    b.nope();\n"
        "  }\n"
        "}\n"
        "class B {\n"
        "  void yes() { }\n"
        "}\n");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0] == "T.java:4: error: class B has no method 'nope' with 0 argument(s)");
  }
  SUBCASE("unresolved import") {
    auto diags = check_source("import com.example.Nothing;\nclass A { }");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].find("cannot resolve import 'com.example.Nothing'") !=
          std::string::npos);
  }
  SUBCASE("builtin imports need no source files") {
    CHECK(check_source("import java.util.Set;\nimport java.util.HashSet;\n"
                       "import org.junit.Test;\nimport static org.junit.Assert.*;\n"
                       "class A { }")
              .empty());
  }
  SUBCASE("unknown class") {
    auto diags = check_source("class A {\n  void f() {\n    Widget w = null;\n  }\n}");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].find("cannot resolve class 'Widget'") != std::string::npos);
  }
  SUBCASE("non-boolean conditions") {
    auto diags = check_source("class A {\n  void f() {\n    if (1) { }\n  }\n}");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].find("condition must be boolean") != std::string::npos);
  }
  SUBCASE("assertion arity") {
    auto diags = check_source(
        "class A {\n  void f() {\n    assertTrue();\n  }\n}");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].find("wrong number of arguments to assertTrue") != std::string::npos);
  }
  SUBCASE("well formed sources produce no diagnostics") {
    CHECK(check_source("class A {\n  int x;\n  int get() { return x; }\n}").empty());
  }
}

TEST_CASE("tests run in declaration order on fresh instances") {
  auto results = run_class(
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  public int counter;\n"
      "  @Test\n"
      "  public void testFirst() {\n"
      "    counter = counter + 1;\n"
      "    assertEquals(1, counter);\n"
      "  }\n"
      "  @Test\n"
      "  public void testSecond() {\n"
      "    assertEquals(0, counter);\n"
      "  }\n"
      "}\n");
  REQUIRE(results.size() == 2);
  CHECK(results[0].method_name == "testFirst");
  CHECK(results[0].status == mj::RunStatus::Pass);
  CHECK(results[1].method_name == "testSecond");
  CHECK(results[1].status == mj::RunStatus::Pass);  // state never leaks across tests
}

TEST_CASE("assertion misses fail with the familiar message shape") {
  auto results = run_class(
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  @Test\n"
      "  public void testInts() { assertEquals(1, 2); }\n"
      "  @Test\n"
      "  public void testStrings() { assertEquals(\"a b\", \"a  b\"); }\n"
      "  @Test\n"
      "  public void testTrue() { assertTrue(1 == 2); }\n"
      "  @Test\n"
      "  public void testExplicit() { fail(\"boom\"); }\n"
      "  @Test\n"
      "  public void testStillRuns() { assertEquals(3, 3); }\n"
      "}\n");
  REQUIRE(results.size() == 5);
  CHECK(results[0].status == mj::RunStatus::Fail);
  CHECK(results[0].message == "expected:<1> but was:<2>");
  CHECK(results[1].status == mj::RunStatus::Fail);
  CHECK(results[1].message == "expected:<a b> but was:<a  b>");
  CHECK(results[2].status == mj::RunStatus::Fail);
  CHECK(results[3].status == mj::RunStatus::Fail);
  CHECK(results[3].message == "boom");
  // A failure never stops the rest of the class.
  CHECK(results[4].status == mj::RunStatus::Pass);
}

TEST_CASE("interpreter faults are errors, not failures") {
  auto results = run_class(
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  public String s;\n"
      "  @Test\n"
      "  public void testDivZero() { int x = 1 / 0; assertEquals(0, x); }\n"
      "  @Test\n"
      "  public void testNullCall() { int n = s.length(); assertEquals(0, n); }\n"
      "}\n");
  REQUIRE(results.size() == 2);
  CHECK(results[0].status == mj::RunStatus::Error);
  CHECK(results[0].message.find("/ by zero") != std::string::npos);
  CHECK(results[1].status == mj::RunStatus::Error);
  CHECK(results[1].message.find("null dereference") != std::string::npos);
}

TEST_CASE("int arithmetic wraps at 32 bits") {
  auto results = run_class(
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  @Test\n"
      "  public void testWrap() {\n"
      "    int x = 2147483647;\n"
      "    x = x + 1;\n"
      "    assertTrue(x < 0);\n"
      "    assertEquals(-2147483648, x);\n"
      "  }\n"
      "}\n");
  REQUIRE(results.size() == 1);
  CHECK(results[0].status == mj::RunStatus::Pass);
}

TEST_CASE("string operations cover the fixture idioms") {
  auto results = run_class(
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  @Test\n"
      "  public void testReplaceAll() {\n"
      "    String s = \"aab\";\n"
      "    assertEquals(\"[aa]\", s.replaceAll(\"(a+)b\", \"[$1]\"));\n"
      "  }\n"
      "  @Test\n"
      "  public void testBackreference() {\n"
      "    String s = \"HELLO  HELLO  WORLD\";\n"
      "    assertEquals(\"HELLO    WORLD\",\n"
      "        s.replaceAll(\"(\\\\w+)(\\\\s+)\\\\1\\\\b\", \"$1$2\"));\n"
      "  }\n"
      "  @Test\n"
      "  public void testConcat() {\n"
      "    assertEquals(\"run 2\", \"run \" + 2);\n"
      "    assertEquals(\"yes:true\", \"yes:\" + (1 < 2));\n"
      "  }\n"
      "  @Test\n"
      "  public void testLengthAndEquals() {\n"
      "    String s = \"abc\";\n"
      "    assertEquals(3, s.length());\n"
      "    assertTrue(s.equals(\"abc\"));\n"
      "    assertFalse(s.equals(\"abd\"));\n"
      "  }\n"
      "}\n");
  for (const auto& r : results) {
    CAPTURE(r.method_name);
    CAPTURE(r.message);
    CHECK(r.status == mj::RunStatus::Pass);
  }
  CHECK(results.size() == 4);
}

TEST_CASE("string sets behave like java.util.HashSet for the fixture usage") {
  auto results = run_class(
      "import java.util.Set;\n"
      "import java.util.HashSet;\n"
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  @Test\n"
      "  public void testDedup() {\n"
      "    Set<String> s = new HashSet<String>();\n"
      "    assertTrue(s.add(\"a\"));\n"
      "    assertTrue(s.add(\"b\"));\n"
      "    assertFalse(s.add(\"a\"));\n"
      "    assertEquals(2, s.size());\n"
      "    assertTrue(s.contains(\"b\"));\n"
      "    assertFalse(s.contains(\"c\"));\n"
      "    assertFalse(s.isEmpty());\n"
      "  }\n"
      "  @Test\n"
      "  public void testDiamond() {\n"
      "    Set<String> s = new HashSet<>();\n"
      "    assertEquals(0, s.size());\n"
      "  }\n"
      "}\n");
  REQUIRE(results.size() == 2);
  CHECK(results[0].status == mj::RunStatus::Pass);
  CHECK(results[1].status == mj::RunStatus::Pass);
}

TEST_CASE("control flow supports the while and if shapes") {
  auto results = run_class(
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class T {\n"
      "  public int sum(int n) {\n"
      "    int total = 0;\n"
      "    int i = 1;\n"
      "    while (i <= n) {\n"
      "      if (i % 2 == 0) {\n"
      "        total = total + i;\n"
      "      } else {\n"
      "        total = total + i * 10;\n"
      "      }\n"
      "      i = i + 1;\n"
      "    }\n"
      "    return total;\n"
      "  }\n"
      "  @Test\n"
      "  public void testSum() { assertEquals(96, sum(5)); }\n"
      "}\n");
  REQUIRE(results.size() == 1);
  CAPTURE(results[0].message);
  CHECK(results[0].status == mj::RunStatus::Pass);
}

TEST_CASE("classes resolve across files through the source roots") {
  mj::Workspace ws({kFixtures / "text" / "left" / "src" / "main" / "java"});
  const mj::Unit* unit = ws.add_unit(
      "package generated;\n"
      "import textutil.Text;\n"
      "import org.junit.Test;\n"
      "import static org.junit.Assert.*;\n"
      "public class TextProbe {\n"
      "  @Test\n"
      "  public void testNormalize() {\n"
      "    Text t = new Text(\"a  b\");\n"
      "    t.cleanText();\n"
      "    assertEquals(\"a b\", t.text);\n"
      "  }\n"
      "}\n",
      "TextProbe.java");
  auto diags = mj::check_workspace(ws);
  for (const auto& d : diags) MESSAGE(d);
  REQUIRE(diags.empty());
  auto results = mj::run_test_class(ws, *unit, unit->classes.front());
  REQUIRE(results.size() == 1);
  CAPTURE(results[0].message);
  CHECK(results[0].status == mj::RunStatus::Pass);
}

TEST_CASE("the fixture quadruple reproduces its outcome vector in process") {
  auto outcome_on = [&](const std::string& version) {
    mj::Workspace ws(
        {kFixtures / "text" / version / "src" / "main" / "java"});
    const mj::Unit* unit = ws.add_unit(
        "package generated;\n"
        "import textutil.Text;\n"
        "import org.junit.Test;\n"
        "import static org.junit.Assert.*;\n"
        "public class Probe {\n"
        "  @Test\n"
        "  public void testCollapse() {\n"
        "    Text t = new Text(\"HELLO  HELLO  WORLD\");\n"
        "    t.cleanText();\n"
        "    assertEquals(\"HELLO HELLO WORLD\", t.text);\n"
        "  }\n"
        "}\n",
        "Probe.java");
    REQUIRE(mj::check_workspace(ws).empty());
    auto results = mj::run_test_class(ws, *unit, unit->classes.front());
    REQUIRE(results.size() == 1);
    return results[0].status;
  };
  CHECK(outcome_on("base") == mj::RunStatus::Fail);
  CHECK(outcome_on("left") == mj::RunStatus::Pass);
  CHECK(outcome_on("right") == mj::RunStatus::Fail);
  CHECK(outcome_on("merge") == mj::RunStatus::Fail);
}
