#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "bang/acceptance.hpp"
#include "bang/lambda.hpp"
#include "bang/serialize.hpp"
#include "bang/syntax.hpp"
#include "bang/system_e.hpp"
#include "bang/system_u.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace bang;

namespace {

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Term term_in(const std::string& text, const std::string& calculus) {
  if (calculus == "bang") return parse_term(text);
  if (calculus == "cbn" || calculus == "cbv") return parse_lambda_term(text).term();
  throw py::value_error("calculus must be bang, cbn or cbv");
}

json trace_json(const Trace& t) {
  json steps = json::array();
  for (const Step& s : t.steps) steps.push_back(to_json(s));
  return {{"steps", steps}, {"b", t.b()}, {"e", t.e()}, {"normal_form", print_term(t.final_term())}};
}

py::object normalize(const std::string& text, const std::string& calculus, std::size_t fuel) {
  Term t = term_in(text, calculus);
  Normalization n = calculus == "cbn"   ? normalize_n(LambdaTerm::of(t), fuel)
                    : calculus == "cbv" ? normalize_v(LambdaTerm::of(t), fuel)
                                        : normalize_dw(t, fuel);
  bool complete = std::holds_alternative<Trace>(n);
  const Trace& tr = complete ? std::get<Trace>(n) : std::get<FuelExhausted>(n).partial;
  json j = trace_json(tr);
  j["complete"] = complete;
  if (complete && calculus == "bang") j["w_size"] = w_size(tr.final_term());
  return to_python(j);
}

py::object classify(const std::string& text) {
  Term t = parse_term(text);
  NfClass c = classify_nf(t);
  NfClass w = classify_wcf_nf(t);
  return to_python({{"ne", c.ne}, {"na", c.na}, {"nb", c.nb}, {"no", c.no}, {"wcf", w.no}});
}

py::object clash(const std::string& text) {
  ClashReport r = detect_clash(parse_term(text));
  if (r.clash_free()) return py::none();
  return to_python({{"kind", clash_name(r.witness->kind)}, {"position", position_to_json(r.witness->position)}});
}

py::object infer(const std::string& text, std::size_t fuel) {
  InferResultU r = infer_u(parse_term(text), fuel);
  if (auto* f = std::get_if<FuelExhausted>(&r))
    return to_python({{"status", "fuel-exhausted"}, {"steps", f->partial.steps.size()}});
  if (auto* u = std::get_if<Untypable>(&r))
    return to_python({{"status", "untypable"}, {"normal_form", print_term(u->normal_form)}, {"reason", u->reason}});
  const auto& ok = std::get<Inferred<DerivationU>>(r);
  json j = trace_json(ok.trace);
  j["status"] = "ok";
  j["size"] = size_u(ok.derivation);
  j["derivation"] = to_json(ok.derivation);
  return to_python(j);
}

py::object tight(const std::string& text, std::size_t fuel) {
  InferResultE r = infer_tight(parse_term(text), fuel);
  if (auto* f = std::get_if<FuelExhausted>(&r))
    return to_python({{"status", "fuel-exhausted"}, {"steps", f->partial.steps.size()}});
  if (auto* u = std::get_if<Untypable>(&r))
    return to_python({{"status", "untypable"}, {"normal_form", print_term(u->normal_form)}, {"reason", u->reason}});
  if (auto* f = std::get_if<ExpansionFailure>(&r))
    return to_python({{"status", "no-tight-expansion"}, {"step", f->step_index + 1}, {"reason", f->reason}});
  const auto& ok = std::get<Inferred<DerivationE>>(r);
  const Counters& c = ok.derivation.counters;
  return to_python({{"status", "ok"},
                    {"counters", {c.b, c.e, c.s}},
                    {"tight", is_tight(ok.derivation)},
                    {"derivation", to_json(ok.derivation)}});
}

py::object check(const std::string& system, const py::object& derivation) {
  json j = from_python(derivation);
  CheckResult c;
  if (system == "u")
    c = check_derivation_u(derivation_from_json<DerivationU>(j));
  else if (system == "e")
    c = check_derivation_e(derivation_from_json<DerivationE>(j));
  else if (system == "n")
    c = check_derivation_n(derivation_from_json<DerivationN>(j));
  else if (system == "v")
    c = check_derivation_v(derivation_from_json<DerivationV>(j));
  else
    throw py::value_error("system must be u, e, n or v");
  json out{{"ok", c.ok()}};
  if (c.violation) {
    out["path"] = c.violation->path;
    out["kind"] = violation_kind_name(c.violation->kind);
    out["reason"] = c.violation->reason;
  }
  return to_python(out);
}

py::object acceptance(std::uint64_t seed) {
  json out = json::array();
  for (const auto& r : run_acceptance({seed}))
    out.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  return to_python(out);
}

}  // namespace

PYBIND11_MODULE(bangcalc, m) {
  m.doc() = "Bang calculus: weak reduction, quantitative types, CBN/CBV embeddings";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NotALambdaTerm>(m, "NotALambdaTerm", PyExc_ValueError);
  py::register_exception<SerializationError>(m, "SerializationError", PyExc_ValueError);
  py::register_exception<DerivationError>(m, "DerivationError", PyExc_RuntimeError);

  m.def("parse", [](const std::string& text, const std::string& calculus) {
    return print_term(term_in(text, calculus));
  }, py::arg("text"), py::arg("calculus") = "bang");
  m.def("alpha_eq", [](const std::string& a, const std::string& b) { return alpha_eq(parse_term(a), parse_term(b)); });
  m.def("w_size", [](const std::string& text) { return w_size(parse_term(text)); });
  m.def("normalize", &normalize, py::arg("text"), py::arg("calculus") = "bang", py::arg("fuel") = 10000);
  m.def("classify", &classify);
  m.def("clash", &clash);
  m.def("infer", &infer, py::arg("text"), py::arg("fuel") = 10000);
  m.def("tight", &tight, py::arg("text"), py::arg("fuel") = 10000);
  m.def("embed_cbn", [](const std::string& text) { return print_term(embed_cbn(parse_lambda_term(text))); });
  m.def("embed_cbv", [](const std::string& text) { return print_term(embed_cbv(parse_lambda_term(text))); });
  m.def("check", &check, py::arg("system"), py::arg("derivation"));
  m.def("acceptance", &acceptance, py::arg("seed") = 1);
}
