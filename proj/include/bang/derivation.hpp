#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bang/reduction.hpp"
#include "bang/term.hpp"
#include "bang/types.hpp"

namespace bang {

enum class RuleU { Ax, App, Abs, Bg, Dr, Es };
enum class RuleE { Ax, AeD, AiD, BgD, DrD, EsD, AeT, AiT, BgT, DrT, EsT };
enum class RuleN { AxN, EsN, AbsN, AppN };
enum class RuleV { AxV, EsV, AbsV, AppV };

std::string_view rule_label(RuleU r);
std::string_view rule_label(RuleE r);
std::string_view rule_label(RuleN r);
std::string_view rule_label(RuleV r);

// Inverse of rule_label; nullopt for unknown labels.
template <class R>
std::optional<R> rule_from_label(std::string_view label);

struct Counters {
  std::uint64_t b = 0;
  std::uint64_t e = 0;
  std::uint64_t s = 0;

  Counters& operator+=(const Counters& o) {
    b += o.b;
    e += o.e;
    s += o.s;
    return *this;
  }
  friend Counters operator+(Counters a, const Counters& o) { return a += o; }
  friend bool operator==(const Counters&, const Counters&) = default;
};

std::string print_counters(const Counters& c);

// Judgement Gamma |- subject : type with the premises of its last rule.
template <class RuleT>
struct Derivation {
  RuleT rule;
  Context context;
  Term subject;
  Type type;
  std::vector<Derivation> premises;
};

using DerivationU = Derivation<RuleU>;
using DerivationN = Derivation<RuleN>;
using DerivationV = Derivation<RuleV>;

struct DerivationE {
  RuleE rule;
  Context context;
  Term subject;
  Type type;
  Counters counters;
  std::vector<DerivationE> premises;
};

enum class ViolationKind { Shape, Subject, Context, Type, SideCondition, Counter };
std::string_view violation_kind_name(ViolationKind k);

struct Violation {
  std::vector<std::size_t> path;  // premise indices from the root
  ViolationKind kind;
  std::string reason;
};

struct CheckResult {
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
  static CheckResult success() { return {}; }
};

std::string describe(const CheckResult& r);

class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a tight derivation cannot be expanded along a step.
class TightExpansionError : public DerivationError {
 public:
  using DerivationError::DerivationError;
};

struct Untypable {
  Term normal_form;
  std::string reason;
};

template <class D>
struct Inferred {
  D derivation;
  Trace trace;
};

}  // namespace bang
