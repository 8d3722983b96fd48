#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bang/derivation.hpp"
#include "bang/lambda.hpp"
#include "bang/reduction.hpp"

namespace bang {

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {rule, context, term, type, premises}, plus counters [b, e, s] for system E.
// Context keys are sorted by name.
nlohmann::json to_json(const DerivationU& d);
nlohmann::json to_json(const DerivationE& d);
nlohmann::json to_json(const DerivationN& d);
nlohmann::json to_json(const DerivationV& d);

// Throws SerializationError on malformed records. Contexts are taken as given,
// so that the checkers see exactly what was supplied.
template <class D>
D derivation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Step& s);

// Indented rendering, conclusion first, premises below it.
std::string print_derivation(const DerivationU& d);
std::string print_derivation(const DerivationE& d);
std::string print_derivation(const DerivationN& d);
std::string print_derivation(const DerivationV& d);
nlohmann::json position_to_json(const Position& p);

}  // namespace bang
