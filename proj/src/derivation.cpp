#include "bang/derivation.hpp"

#include <array>

#include "derivation_ops.hpp"

namespace bang {

namespace {

constexpr std::array<std::string_view, 6> kLabelsU = {"ax", "app", "abs", "bg", "dr", "es"};
constexpr std::array<std::string_view, 11> kLabelsE = {"ax",   "ae_d", "ai_d", "bg_d", "dr_d", "es_d",
                                                       "ae_t", "ai_t", "bg_t", "dr_t", "es_t"};
constexpr std::array<std::string_view, 4> kLabelsN = {"ax_n", "es_n", "abs_n", "app_n"};
constexpr std::array<std::string_view, 4> kLabelsV = {"ax_v", "es_v", "abs_v", "app_v"};

template <class R, std::size_t N>
std::optional<R> find_label(const std::array<std::string_view, N>& labels, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i)
    if (labels[i] == s) return static_cast<R>(i);
  return std::nullopt;
}

}  // namespace

std::string_view rule_label(RuleU r) { return kLabelsU.at(static_cast<std::size_t>(r)); }
std::string_view rule_label(RuleE r) { return kLabelsE.at(static_cast<std::size_t>(r)); }
std::string_view rule_label(RuleN r) { return kLabelsN.at(static_cast<std::size_t>(r)); }
std::string_view rule_label(RuleV r) { return kLabelsV.at(static_cast<std::size_t>(r)); }

template <>
std::optional<RuleU> rule_from_label<RuleU>(std::string_view s) { return find_label<RuleU>(kLabelsU, s); }
template <>
std::optional<RuleE> rule_from_label<RuleE>(std::string_view s) { return find_label<RuleE>(kLabelsE, s); }
template <>
std::optional<RuleN> rule_from_label<RuleN>(std::string_view s) { return find_label<RuleN>(kLabelsN, s); }
template <>
std::optional<RuleV> rule_from_label<RuleV>(std::string_view s) { return find_label<RuleV>(kLabelsV, s); }

std::string print_counters(const Counters& c) {
  return "(" + std::to_string(c.b) + "," + std::to_string(c.e) + "," + std::to_string(c.s) + ")";
}

std::string_view violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Shape: return "shape";
    case ViolationKind::Subject: return "subject";
    case ViolationKind::Context: return "context";
    case ViolationKind::Type: return "type";
    case ViolationKind::SideCondition: return "side-condition";
    case ViolationKind::Counter: return "counter";
  }
  return "unknown";
}

std::string describe(const CheckResult& r) {
  if (r.ok()) return "ok";
  const Violation& v = *r.violation;
  std::string path = "root";
  for (std::size_t i : v.path) path += "." + std::to_string(i);
  return "violation at " + path + " (" + std::string(violation_kind_name(v.kind)) + "): " + v.reason;
}

namespace detail {

Counters counters_for(RuleE rule, const std::vector<DerivationE>& premises) {
  Counters sum;
  for (const auto& p : premises) sum += p.counters;
  switch (rule) {
    case RuleE::Ax:
    case RuleE::BgT: return {};
    case RuleE::AiD: ++sum.b; break;
    case RuleE::BgD: ++sum.e; break;
    case RuleE::AeT:
    case RuleE::AiT:
    case RuleE::DrT:
    case RuleE::EsT: ++sum.s; break;
    case RuleE::AeD:
    case RuleE::DrD:
    case RuleE::EsD: break;
  }
  return sum;
}

}  // namespace detail

}  // namespace bang
