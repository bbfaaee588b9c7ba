#include <benchmark/benchmark.h>

#include <string>

#include "mergeprobe/context.hpp"
#include "mergeprobe/java/lexer.hpp"
#include "mergeprobe/java/structure.hpp"

namespace {

const std::string kSource =
    "package textutil;\n"
    "\n"
    "public class Text {\n"
    "  public String text;\n"
    "\n"
    "  public Text(String text) {\n"
    "    this.text = text;\n"
    "  }\n"
    "\n"
    "  public void normalizeWhiteSpace() {\n"
    "    this.text = this.text.replaceAll(\" +\", \" \");\n"
    "  }\n"
    "\n"
    "  public void removeComments() {\n"
    "    this.text = this.text.replaceAll(\"/\\\\*.*?\\\\*/\", \"\");\n"
    "  }\n"
    "\n"
    "  public void cleanText() {\n"
    "    Text inst = new Text(text);\n"
    "    inst.normalizeWhiteSpace();\n"
    "    inst.removeComments();\n"
    "    this.text = inst.text;\n"
    "  }\n"
    "}\n";

void BM_Lex(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mergeprobe::java::lex(kSource));
  }
}
BENCHMARK(BM_Lex);

void BM_ParseStructure(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mergeprobe::java::parse_compilation_unit(kSource));
  }
}
BENCHMARK(BM_ParseStructure);

void BM_ExtractContext(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mergeprobe::extract_context(
        kSource, "textutil.Text", "cleanText()", mergeprobe::VersionId::Left));
  }
}
BENCHMARK(BM_ExtractContext);

}  // namespace
