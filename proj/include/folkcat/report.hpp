#pragma once

#include <json.hpp>
#include <string>

#include "folkcat/model.hpp"
#include "folkcat/weights.hpp"

namespace folkcat {

using json = nlohmann::json;

/// Name-based JSON views of the core values. All output is deterministic:
/// identical inputs serialize to identical bytes.
json describe(const FinCat& c);
json describe(const FinFunctor& f);
json describe(const NatTransform& t);
json describe(const ClassReport& r);
json describe(const FactorizationWitness& w);
json describe(const CornerReport& r);
json describe(const LiftingProblem& sq);
json describe(const WeightClassReport& r);
json describe(const Weight& w);

/// Round-trippable dumps in the input text format, for replaying a case.
std::string to_text(const FinCat& c, const std::string& name);
std::string to_text(const FinFunctor& f, const std::string& name,
                    const std::string& dom_name, const std::string& cod_name);

}  // namespace folkcat
