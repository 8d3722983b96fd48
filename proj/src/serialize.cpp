#include "bang/serialize.hpp"

#include "bang/syntax.hpp"

namespace bang {

namespace {

using nlohmann::json;

json context_json(const Context& c) {
  json out = json::object();
  for (const auto& [x, m] : c.entries()) out[x] = print_type(m);
  return out;
}

template <class D>
json common(const D& d) {
  json j;
  j["rule"] = std::string(rule_label(d.rule));
  j["context"] = context_json(d.context);
  j["term"] = print_term(d.subject);
  j["type"] = print_type(d.type);
  return j;
}

template <class D>
json tree(const D& d) {
  json j = common(d);
  if constexpr (std::is_same_v<D, DerivationE>) j["counters"] = {d.counters.b, d.counters.e, d.counters.s};
  json ps = json::array();
  for (const auto& p : d.premises) ps.push_back(tree(p));
  j["premises"] = std::move(ps);
  return j;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SerializationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw SerializationError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

template <class R>
R rule_of(const json& j) {
  std::string label = text(j, "rule");
  auto r = rule_from_label<R>(label);
  if (!r) throw SerializationError("unknown rule \"" + label + "\"");
  return *r;
}

Context context_of(const json& j) {
  const json& c = field(j, "context");
  if (!c.is_object()) throw SerializationError("context must be an object");
  Context out;
  for (const auto& [x, m] : c.items()) {
    if (!m.is_string()) throw SerializationError("context entries must be type strings");
    Type t = parse_type(m.get<std::string>());
    if (!t.is(Type::Kind::Mult)) throw SerializationError("context entry for " + x + " is not a multiset");
    out.set(x, t);
  }
  return out;
}

template <class D>
D node_of(const json& j) {
  using R = decltype(D::rule);
  try {
    R rule = rule_of<R>(j);
    Context ctx = context_of(j);
    Term subject = parse_term(text(j, "term"));
    Type type = parse_type(text(j, "type"));
    std::vector<D> premises;
    const json& ps = field(j, "premises");
    if (!ps.is_array()) throw SerializationError("premises must be an array");
    for (const auto& p : ps) premises.push_back(node_of<D>(p));
    if constexpr (std::is_same_v<D, DerivationE>) {
      const json& c = field(j, "counters");
      if (!c.is_array() || c.size() != 3 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned() ||
          !c[2].is_number_unsigned())
        throw SerializationError("counters must be three naturals [b, e, s]");
      Counters k{c[0].get<std::uint64_t>(), c[1].get<std::uint64_t>(), c[2].get<std::uint64_t>()};
      return D{rule, std::move(ctx), std::move(subject), std::move(type), k, std::move(premises)};
    } else {
      return D{rule, std::move(ctx), std::move(subject), std::move(type), std::move(premises)};
    }
  } catch (const ParseError& e) {
    throw SerializationError(std::string("bad term: ") + e.what());
  } catch (const TypeParseError& e) {
    throw SerializationError(std::string("bad type: ") + e.what());
  }
}

template <class D>
void render(const D& d, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += rule_label(d.rule);
  out += "  ";
  out += print_context(d.context);
  out += " |- ";
  out += print_term(d.subject);
  out += " : ";
  out += print_type(d.type);
  if constexpr (std::is_same_v<D, DerivationE>) out += "  " + print_counters(d.counters);
  out += '\n';
  for (const auto& p : d.premises) render(p, depth + 1, out);
}

template <class D>
std::string rendered(const D& d) {
  std::string out;
  render(d, 0, out);
  out.pop_back();
  return out;
}

}  // namespace

std::string print_derivation(const DerivationU& d) { return rendered(d); }
std::string print_derivation(const DerivationE& d) { return rendered(d); }
std::string print_derivation(const DerivationN& d) { return rendered(d); }
std::string print_derivation(const DerivationV& d) { return rendered(d); }

json to_json(const DerivationU& d) { return tree(d); }
json to_json(const DerivationE& d) { return tree(d); }
json to_json(const DerivationN& d) { return tree(d); }
json to_json(const DerivationV& d) { return tree(d); }

template <>
DerivationU derivation_from_json<DerivationU>(const json& j) { return node_of<DerivationU>(j); }
template <>
DerivationE derivation_from_json<DerivationE>(const json& j) { return node_of<DerivationE>(j); }
template <>
DerivationN derivation_from_json<DerivationN>(const json& j) { return node_of<DerivationN>(j); }
template <>
DerivationV derivation_from_json<DerivationV>(const json& j) { return node_of<DerivationV>(j); }

json position_to_json(const Position& p) {
  json out = json::array();
  for (Selector s : p) out.push_back(std::string(selector_name(s)));
  return out;
}

json to_json(const Step& s) {
  return {{"rule", std::string(rule_name(s.rule))}, {"position", position_to_json(s.position)},
          {"result", print_term(s.result)}};
}

}  // namespace bang
