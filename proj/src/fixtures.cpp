#include "bang/fixtures.hpp"

#include "bang/serialize.hpp"
#include "bang/syntax.hpp"

namespace bang::fixtures {

Term t0() { return parse_term(R"(der(!(\x. \y. x)) !(\x. x) !((\x. x x) (\x. x x)))"); }

Term clash_example() { return parse_term(R"(der((\y. \x. z) (der(y) y)))"); }

DerivationU phi0() {
  static const char* text = R"json({
    "rule": "app", "context": {}, "term": "der(!(\\x. \\y. x)) !(\\x. x) !((\\x. x x) (\\x. x x))",
    "type": "[o0] -> o0", "premises": [
      {"rule": "app", "context": {}, "term": "der(!(\\x. \\y. x)) !(\\x. x)", "type": "[] -> [o0] -> o0",
       "premises": [
         {"rule": "dr", "context": {}, "term": "der(!(\\x. \\y. x))",
          "type": "[[o0] -> o0] -> [] -> [o0] -> o0", "premises": [
            {"rule": "bg", "context": {}, "term": "!(\\x. \\y. x)",
             "type": "[[[o0] -> o0] -> [] -> [o0] -> o0]", "premises": [
               {"rule": "abs", "context": {}, "term": "\\x. \\y. x",
                "type": "[[o0] -> o0] -> [] -> [o0] -> o0", "premises": [
                  {"rule": "abs", "context": {"x": "[[o0] -> o0]"}, "term": "\\y. x",
                   "type": "[] -> [o0] -> o0", "premises": [
                     {"rule": "ax", "context": {"x": "[[o0] -> o0]"}, "term": "x", "type": "[o0] -> o0",
                      "premises": []}]}]}]}]},
         {"rule": "bg", "context": {}, "term": "!(\\x. x)", "type": "[[o0] -> o0]", "premises": [
            {"rule": "abs", "context": {}, "term": "\\x. x", "type": "[o0] -> o0", "premises": [
               {"rule": "ax", "context": {"x": "[o0]"}, "term": "x", "type": "o0", "premises": []}]}]}]},
      {"rule": "bg", "context": {}, "term": "!((\\x. x x) (\\x. x x))", "type": "[]", "premises": []}]
  })json";
  return derivation_from_json<DerivationU>(nlohmann::json::parse(text));
}

DerivationE tight_t0() {
  static const char* text = R"json({
    "rule": "ae_d", "context": {}, "term": "der(!(\\x. \\y. x)) !(\\x. x) !((\\x. x x) (\\x. x x))",
    "type": "a", "counters": [2, 3, 1], "premises": [
      {"rule": "ae_d", "context": {}, "term": "der(!(\\x. \\y. x)) !(\\x. x)", "type": "[] -> a",
       "counters": [2, 2, 1], "premises": [
         {"rule": "dr_d", "context": {}, "term": "der(!(\\x. \\y. x))", "type": "[a] -> [] -> a",
          "counters": [2, 1, 0], "premises": [
            {"rule": "bg_d", "context": {}, "term": "!(\\x. \\y. x)", "type": "[[a] -> [] -> a]",
             "counters": [2, 1, 0], "premises": [
               {"rule": "ai_d", "context": {}, "term": "\\x. \\y. x", "type": "[a] -> [] -> a",
                "counters": [2, 0, 0], "premises": [
                  {"rule": "ai_d", "context": {"x": "[a]"}, "term": "\\y. x", "type": "[] -> a",
                   "counters": [1, 0, 0], "premises": [
                     {"rule": "ax", "context": {"x": "[a]"}, "term": "x", "type": "a", "counters": [0, 0, 0],
                      "premises": []}]}]}]}]},
         {"rule": "bg_d", "context": {}, "term": "!(\\x. x)", "type": "[a]", "counters": [0, 1, 1],
          "premises": [
            {"rule": "ai_t", "context": {}, "term": "\\x. x", "type": "a", "counters": [0, 0, 1], "premises": [
               {"rule": "ax", "context": {"x": "[n]"}, "term": "x", "type": "n", "counters": [0, 0, 0],
                "premises": []}]}]}]},
      {"rule": "bg_d", "context": {}, "term": "!((\\x. x x) (\\x. x x))", "type": "[]", "counters": [0, 1, 0],
       "premises": []}]
  })json";
  return derivation_from_json<DerivationE>(nlohmann::json::parse(text));
}

}  // namespace bang::fixtures
