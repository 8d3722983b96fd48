#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <optional>
#include <string>
#include <variant>

#include "bang/acceptance.hpp"
#include "bang/corpus.hpp"
#include "bang/lambda.hpp"
#include "bang/serialize.hpp"
#include "bang/syntax.hpp"
#include "bang/system_e.hpp"
#include "bang/system_u.hpp"

namespace {

using nlohmann::json;
using namespace bang;

constexpr int kVersion = 1;

enum Exit : int {
  kOk = 0,
  kFail = 1,
  kParse = 2,
  kFuel = 3,
  kUntypable = 4,
  kInvariant = 5,
  kNoTightExpansion = 6,
};

std::string_view exit_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kFail: return "fail";
    case kParse: return "parse-error";
    case kFuel: return "fuel-exhausted";
    case kUntypable: return "untypable";
    case kInvariant: return "invariant-violation";
    case kNoTightExpansion: return "no-tight-expansion";
  }
  return "unknown";
}

struct Options {
  std::size_t fuel = 10000;
  std::string calculus = "bang";
  std::string output = "text";
  std::uint64_t seed = 1;
  std::size_t max_size = 8;
  std::size_t count = 100;
  std::string system = "u";
  std::string input;
};

// Raised for inputs that do not fit the selected command.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  // The header is written before the first record so commands can add the start term.
  void header(const std::string& command, const Options& o) {
    header_ = {{"record", "header"}, {"version", kVersion}, {"command", command},
               {"calculus", o.calculus}, {"fuel", o.fuel}, {"seed", o.seed}};
  }
  void start(const Term& t) { header_["start"] = print_term(t); }
  void footer_field(const std::string& key, json value) { footer_[key] = std::move(value); }

  void emit(const json& record, const std::string& text) {
    if (machine_)
      line(record);
    else
      std::cout << text << '\n';
  }
  void error(int code, const std::string& message) {
    if (machine_)
      line({{"record", "error"}, {"kind", exit_name(code)}, {"message", message}});
    else
      std::cerr << "error (" << exit_name(code) << "): " << message << '\n';
  }
  int footer(int code) {
    if (machine_) {
      json f = footer_;
      f["record"] = "footer";
      f["exit"] = code;
      f["status"] = exit_name(code);
      line(f);
    }
    return code;
  }

 private:
  void line(const json& j) {
    if (!header_.is_null()) {
      std::cout << header_.dump() << '\n';
      header_ = nullptr;
    }
    std::cout << j.dump() << '\n';
  }
  bool machine_;
  json header_;
  json footer_ = json::object();
};

std::string read_input(const Options& o) {
  std::string text = o.input;
  if (text.empty()) text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return text;
}

bool lambda_calculus(const Options& o) { return o.calculus != "bang"; }

Term parse_input(const Options& o, Report& r) {
  std::string text = read_input(o);
  Term t = lambda_calculus(o) ? parse_lambda_term(text).term() : parse_term(text);
  r.start(t);
  return t;
}

LambdaTerm parse_lambda_input(const Options& o, Report& r) {
  LambdaTerm t = parse_lambda_term(read_input(o));
  r.start(t.term());
  return t;
}

Normalization normalize(const Options& o, const Term& t) {
  if (o.calculus == "cbn") return normalize_n(LambdaTerm::of(t), o.fuel);
  if (o.calculus == "cbv") return normalize_v(LambdaTerm::of(t), o.fuel);
  return normalize_dw(t, o.fuel);
}

std::size_t result_size(const Options& o, const Term& t) {
  if (o.calculus == "cbn") return n_size(LambdaTerm::of(t));
  if (o.calculus == "cbv") return v_size(LambdaTerm::of(t));
  return w_size(t);
}

std::string size_name(const Options& o) {
  if (o.calculus == "cbn") return "n_size";
  if (o.calculus == "cbv") return "v_size";
  return "w_size";
}

json trace_summary(const Options& o, const Trace& t) {
  return {{"record", "summary"},
          {"steps", t.steps.size()},
          {"b", t.b()},
          {"e", t.e()},
          {"normal_form", print_term(t.final_term())},
          {size_name(o), result_size(o, t.final_term())}};
}

std::string trace_summary_text(const Options& o, const Trace& t) {
  return std::to_string(t.steps.size()) + " steps, (b,e) = (" + std::to_string(t.b()) + "," +
         std::to_string(t.e()) + "), normal form " + print_term(t.final_term()) + ", " + size_name(o) + " " +
         std::to_string(result_size(o, t.final_term()));
}

int fuel_exhausted(Report& r, const FuelExhausted& f) {
  r.emit({{"record", "fuel_exhausted"},
          {"steps", f.partial.steps.size()},
          {"last", print_term(f.partial.final_term())}},
         "fuel exhausted after " + std::to_string(f.partial.steps.size()) + " steps at " +
             print_term(f.partial.final_term()));
  return kFuel;
}

int untypable(Report& r, const Untypable& u) {
  r.emit({{"record", "untypable"}, {"normal_form", print_term(u.normal_form)}, {"reason", u.reason}},
         "untypable: normal form " + print_term(u.normal_form) + ": " + u.reason);
  return kUntypable;
}

int cmd_parse(const Options& o, Report& r) {
  Term t = parse_input(o, r);
  r.emit({{"record", "term"}, {"term", print_term(t)}}, print_term(t));
  return kOk;
}

int cmd_reduce(const Options& o, Report& r) {
  Normalization n = normalize(o, parse_input(o, r));
  if (auto* f = std::get_if<FuelExhausted>(&n)) return fuel_exhausted(r, *f);
  const Trace& t = std::get<Trace>(n);
  r.emit({{"record", "normal_form"}, {"term", print_term(t.final_term())}, {"steps", t.steps.size()}},
         print_term(t.final_term()));
  return kOk;
}

json class_list(const std::string& printed) {
  json out = json::array();
  if (printed == "none") return out;
  std::size_t start = 0;
  while (start <= printed.size()) {
    std::size_t end = printed.find(", ", start);
    out.push_back(printed.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 2;
  }
  return out;
}

std::string classes_of(const Options& o, const Term& t) {
  return lambda_calculus(o) ? print_lambda_nf_class(classify_lambda_nf(LambdaTerm::of(t)))
                            : print_nf_class(classify_nf(t), "w");
}

int cmd_trace(const Options& o, Report& r) {
  Normalization n = normalize(o, parse_input(o, r));
  const Trace& t = std::holds_alternative<Trace>(n) ? std::get<Trace>(n) : std::get<FuelExhausted>(n).partial;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    json j = to_json(s);
    j["record"] = "step";
    j["index"] = i + 1;
    j["redex"] = print_term(subterm_at(t.term_before(i), s.position));
    r.emit(j, std::to_string(i + 1) + ". " + std::string(rule_name(s.rule)) + " at " + print_position(s.position) +
                  " -> " + print_term(s.result));
  }
  r.footer_field("b", t.b());
  r.footer_field("e", t.e());
  if (auto* f = std::get_if<FuelExhausted>(&n)) return fuel_exhausted(r, *f);
  r.footer_field("classes", class_list(classes_of(o, t.final_term())));
  r.emit(trace_summary(o, t), trace_summary_text(o, t));
  return kOk;
}

int cmd_classify(const Options& o, Report& r) {
  Term t = parse_input(o, r);
  std::string printed = classes_of(o, t);
  json j{{"record", "class"}, {"classes", class_list(printed)}};
  std::string text = printed;
  if (!lambda_calculus(o)) {
    bool wcf = classify_wcf_nf(t).normal();
    j["wcf"] = wcf;
    if (classify_nf(t).normal()) text += wcf ? " (clash-free)" : " (with clash)";
  }
  r.emit(j, text);
  return kOk;
}

int cmd_clash(const Options& o, Report& r) {
  ClashReport c = detect_clash(parse_input(o, r));
  if (c.clash_free()) {
    r.emit({{"record", "clash"}, {"clash_free", true}}, "clash-free");
  } else {
    r.emit({{"record", "clash"},
            {"clash_free", false},
            {"kind", clash_name(c.witness->kind)},
            {"position", position_to_json(c.witness->position)}},
           std::string(clash_name(c.witness->kind)) + " at " + print_position(c.witness->position));
  }
  return kOk;
}

template <class D, class Check, class Size>
int check_as(const json& j, Report& r, Check check, Size size) {
  D d = derivation_from_json<D>(j);
  CheckResult c = check(d);
  json out{{"record", "check"}, {"ok", c.ok()}};
  std::string text = describe(c);
  if (c.violation) {
    out["path"] = c.violation->path;
    out["kind"] = violation_kind_name(c.violation->kind);
    out["reason"] = c.violation->reason;
  } else {
    out["size"] = size(d);
    text += ", size " + std::to_string(size(d));
    if constexpr (std::is_same_v<D, DerivationE>) {
      out["counters"] = {d.counters.b, d.counters.e, d.counters.s};
      out["tight"] = is_tight(d);
      text += ", counters " + print_counters(d.counters) + (is_tight(d) ? ", tight" : ", not tight");
    }
  }
  r.emit(out, text);
  return c.ok() ? kOk : kFail;
}

std::size_t e_size(const DerivationE& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += e_size(p);
  return n;
}

int cmd_typecheck(const Options& o, Report& r) {
  json j = json::parse(read_input(o));
  if (o.system == "u") return check_as<DerivationU>(j, r, check_derivation_u, size_u);
  if (o.system == "e") return check_as<DerivationE>(j, r, check_derivation_e, e_size);
  if (o.system == "n") return check_as<DerivationN>(j, r, check_derivation_n, size_n);
  return check_as<DerivationV>(j, r, check_derivation_v, size_v);
}

template <class D, class Size>
int report_inferred(const Options& o, Report& r, const Inferred<D>& ok, const char* size_label, Size size) {
  const Trace& t = ok.trace;
  std::size_t bound = t.b() + t.e() + result_size(o, t.final_term());
  r.emit({{"record", "derivation"}, {"derivation", to_json(ok.derivation)}}, print_derivation(ok.derivation));
  json s = trace_summary(o, t);
  s[size_label] = size(ok.derivation);
  s["bound"] = bound;
  r.emit(s, std::string(size_label) + " " + std::to_string(size(ok.derivation)) + " >= b+e+" + size_name(o) + " = " +
                std::to_string(bound) + "; " + trace_summary_text(o, t));
  return kOk;
}

template <class R, class D, class Size>
int report_infer(const Options& o, Report& r, const R& res, const char* size_label, Size size) {
  if (auto* f = std::get_if<FuelExhausted>(&res)) return fuel_exhausted(r, *f);
  if (auto* u = std::get_if<Untypable>(&res)) return untypable(r, *u);
  return report_inferred(o, r, std::get<Inferred<D>>(res), size_label, size);
}

int cmd_infer(const Options& o, Report& r) {
  if (o.calculus == "cbn")
    return report_infer<InferResultN, DerivationN>(o, r, infer_n(parse_lambda_input(o, r), o.fuel), "size_n", size_n);
  if (o.calculus == "cbv")
    return report_infer<InferResultV, DerivationV>(o, r, infer_v(parse_lambda_input(o, r), o.fuel), "size_v", size_v);
  return report_infer<InferResultU, DerivationU>(o, r, infer_u(parse_input(o, r), o.fuel), "size_u", size_u);
}

int cmd_tight(const Options& o, Report& r) {
  if (lambda_calculus(o)) throw UsageError("tight works on bang terms only");
  InferResultE res = infer_tight(parse_input(o, r), o.fuel);
  if (auto* f = std::get_if<FuelExhausted>(&res)) return fuel_exhausted(r, *f);
  if (auto* u = std::get_if<Untypable>(&res)) return untypable(r, *u);
  if (auto* f = std::get_if<ExpansionFailure>(&res)) {
    const Step& s = f->trace.steps[f->step_index];
    r.emit({{"record", "expansion_failure"},
            {"step", f->step_index + 1},
            {"rule", rule_name(s.rule)},
            {"position", position_to_json(s.position)},
            {"reason", f->reason}},
           "no tight expansion at step " + std::to_string(f->step_index + 1) + " (" + std::string(rule_name(s.rule)) +
               " at " + print_position(s.position) + "): " + f->reason);
    return kNoTightExpansion;
  }
  const auto& ok = std::get<Inferred<DerivationE>>(res);
  const Counters& c = ok.derivation.counters;
  r.emit({{"record", "counters"}, {"b", c.b}, {"e", c.e}, {"s", c.s}}, "counters " + print_counters(c));
  r.emit({{"record", "derivation"}, {"derivation", to_json(ok.derivation)}}, print_derivation(ok.derivation));
  return kOk;
}

int cmd_embed(const Options& o, Report& r) {
  LambdaTerm t = parse_lambda_input(o, r);
  if (o.calculus != "cbv") {
    Term image = embed_cbn(t);
    r.emit({{"record", "embedding"}, {"calculus", "cbn"}, {"image", print_term(image)}}, "cbn " + print_term(image));
  }
  if (o.calculus != "cbn") {
    Term image = embed_cbv(t);
    r.emit({{"record", "embedding"}, {"calculus", "cbv"}, {"image", print_term(image)}}, "cbv " + print_term(image));
  }
  return kOk;
}

template <class D>
bool same_judgement(const D& a, const D& b) {
  return a.context == b.context && a.subject == b.subject && a.type == b.type;
}

template <class R, class D, class ToU, class FromU, class Check>
int translate_with(Report& r, const LambdaTerm& t, const R& res, ToU to_u, FromU from_u,
                   Check check) {
  if (auto* f = std::get_if<FuelExhausted>(&res)) return fuel_exhausted(r, *f);
  if (auto* u = std::get_if<Untypable>(&res)) return untypable(r, *u);
  const D& phi = std::get<Inferred<D>>(res).derivation;
  DerivationU image = to_u(phi);
  D back = from_u(image, t);
  CheckResult cu = check_derivation_u(image);
  CheckResult cb = check(back);
  bool round_trip = same_judgement(phi, back);
  r.emit({{"record", "translation"}, {"derivation", to_json(image)}}, print_derivation(image));
  r.emit({{"record", "round_trip"}, {"image_ok", cu.ok()}, {"back_ok", cb.ok()}, {"same_judgement", round_trip}},
         "image check " + describe(cu) + ", back check " + describe(cb) + ", judgement " +
             (round_trip ? "preserved" : "changed"));
  return cu.ok() && cb.ok() && round_trip ? kOk : kInvariant;
}

int cmd_translate(const Options& o, Report& r) {
  if (!lambda_calculus(o)) throw UsageError("translate needs --calculus cbn or cbv");
  LambdaTerm t = parse_lambda_input(o, r);
  if (o.calculus == "cbn")
    return translate_with<InferResultN, DerivationN>(r, t, infer_n(t, o.fuel), translate_n_to_u, translate_u_to_n,
                                                  check_derivation_n);
  return translate_with<InferResultV, DerivationV>(r, t, infer_v(t, o.fuel), translate_v_to_u, translate_u_to_v,
                                                check_derivation_v);
}

int cmd_corpus(const Options& o, Report& r) {
  if (lambda_calculus(o)) {
    for (const LambdaTerm& t : generate_lambda_corpus(o.seed, o.max_size, o.count))
      r.emit({{"record", "term"}, {"term", print_term(t.term())}}, print_term(t.term()));
  } else {
    for (const Term& t : generate_corpus(o.seed, o.max_size, o.count))
      r.emit({{"record", "term"}, {"term", print_term(t)}}, print_term(t));
  }
  return kOk;
}

int cmd_selftest(const Options& o, Report& r) {
  bool all = true;
  for (const CriterionResult& c : run_acceptance({o.seed})) {
    all = all && c.passed;
    r.emit({{"record", "criterion"}, {"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}},
           std::string(c.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + " (" + c.title +
               "): " + c.detail);
  }
  return all ? kOk : kFail;
}

int run(const std::string& command, const Options& o, Report& r) {
  r.header(command, o);
  try {
    if (command == "parse") return r.footer(cmd_parse(o, r));
    if (command == "reduce") return r.footer(cmd_reduce(o, r));
    if (command == "trace") return r.footer(cmd_trace(o, r));
    if (command == "classify") return r.footer(cmd_classify(o, r));
    if (command == "clash") return r.footer(cmd_clash(o, r));
    if (command == "typecheck") return r.footer(cmd_typecheck(o, r));
    if (command == "infer") return r.footer(cmd_infer(o, r));
    if (command == "tight") return r.footer(cmd_tight(o, r));
    if (command == "embed") return r.footer(cmd_embed(o, r));
    if (command == "translate") return r.footer(cmd_translate(o, r));
    if (command == "corpus") return r.footer(cmd_corpus(o, r));
    return r.footer(cmd_selftest(o, r));
  } catch (const ParseError& e) {
    r.error(kParse, e.what());
    return r.footer(kParse);
  } catch (const TypeParseError& e) {
    r.error(kParse, e.what());
    return r.footer(kParse);
  } catch (const NotALambdaTerm& e) {
    r.error(kParse, e.what());
    return r.footer(kParse);
  } catch (const SerializationError& e) {
    r.error(kParse, e.what());
    return r.footer(kParse);
  } catch (const json::exception& e) {
    r.error(kParse, e.what());
    return r.footer(kParse);
  } catch (const UsageError& e) {
    r.error(kParse, e.what());
    return r.footer(kParse);
  } catch (const TightExpansionError& e) {
    r.error(kNoTightExpansion, e.what());
    return r.footer(kNoTightExpansion);
  } catch (const std::exception& e) {
    r.error(kInvariant, e.what());
    return r.footer(kInvariant);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bang calculus toolkit: weak reduction, quantitative typing, CBN/CBV embeddings"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--fuel", o.fuel, "Maximum number of reduction steps")->capture_default_str();
  app.add_option("--calculus", o.calculus, "Input calculus")
      ->check(CLI::IsMember({"bang", "cbn", "cbv"}))
      ->capture_default_str();
  app.add_option("--output", o.output, "Report format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Corpus seed")->capture_default_str();
  app.add_option("--max-size", o.max_size, "Maximum size of generated terms")->capture_default_str();
  app.add_option("--count", o.count, "Number of generated terms")->capture_default_str();
  app.add_option("--system", o.system, "Type system of a derivation to check")
      ->check(CLI::IsMember({"u", "e", "n", "v"}))
      ->capture_default_str();
  app.fallthrough();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"parse", "Parse and print a term"},
      {"reduce", "Normalize with the strategy of the calculus"},
      {"trace", "Print the reduction steps with (b,e)"},
      {"classify", "Normal-form classes of a term"},
      {"clash", "Find a clash outside bangs"},
      {"typecheck", "Check a derivation given as JSON"},
      {"infer", "Infer a derivation via normalization and subject expansion"},
      {"tight", "Infer a tight derivation and its counters"},
      {"embed", "CBN and CBV images of a lambda term"},
      {"translate", "Translate an inferred CBN/CBV derivation into the bang system and back"},
      {"corpus", "Generate a pseudo-random corpus"},
      {"selftest", "Run the acceptance criteria"},
  };
  std::string command;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (name != "selftest" && name != "corpus")
      sub->add_option("input", o.input, "Term or derivation; read from standard input when absent");
    sub->callback([&command, name = name] { command = name; });
  }
  CLI11_PARSE(app, argc, argv);

  Report report(o.output == "machine");
  return run(command, o, report);
}
