#include <benchmark/benchmark.h>

#include <string>

#include "mergeprobe/postprocess.hpp"

namespace {

const std::string kTypicalResponse =
    "Sure, here are the tests you asked for:\n"
    "```java\n"
    "@Test\n"
    "public void testCleanText() {\n"
    "  Text t = new Text(\"HELLO  HELLO  WORLD\");\n"
    "  t.cleanText();\n"
    "  assertEquals(\"HELLO HELLO WORLD\", t.text);\n"
    "}\n"
    "\n"
    "@Test\n"
    "public void testEmpty() {\n"
    "  Text t = new Text(\"\");\n"
    "  t.cleanText();\n"
    "  assertEquals(\"\", t.text);\n"
    "}\n"
    "```\n"
    "These tests cover the whitespace normalization behavior.\n";

void BM_CleanResponse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mergeprobe::clean_response(kTypicalResponse));
  }
}
BENCHMARK(BM_CleanResponse);

void BM_ExtractTestMethods(benchmark::State& state) {
  std::string cleaned = mergeprobe::clean_response(kTypicalResponse);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mergeprobe::extract_test_methods(cleaned, {}));
  }
}
BENCHMARK(BM_ExtractTestMethods);

}  // namespace
