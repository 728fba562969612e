#pragma once

#include <string>

#include <json.hpp>

#include "palg/congruence.hpp"
#include "palg/decide.hpp"
#include "palg/free.hpp"

namespace palg {

using Json = nlohmann::ordered_json;

Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j, const Limits& limits = {});

// {"kind":"table","size","meet","join","star","zero","one"} plus optional "labels".
Json algebra_to_json(const TableAlgebra& a);
// {"kind":"upset","poset":{...},"labels":[...]}
Json algebra_to_json(const UpsetAlgebra& u);
// Throws MalformedTables on shape errors.
PAlgebra algebra_from_json(const Json& j, const Limits& limits = {});

// ["zero"], ["one"], ["var", i], ["meet", l, r], ["join", l, r], ["star", t]
Json term_to_json(const Term& t);
Term term_from_json(const Json& j);

// An equation is either "s = t" or {"lhs": ..., "rhs": ...} with string or
// array terms.
Equation equation_from_json(const Json& j);
Json equation_to_json(const Equation& e);
// {"premises": [...], "conclusion": ...}
QuasiIdentity quasi_identity_from_json(const Json& j);
Json quasi_identity_to_json(const QuasiIdentity& q);

Json verdict_to_json(const Verdict& v);
// Class id (least member) per element.
Json congruence_to_json(const Congruence& c);
Json cm_record_to_json(const CmRecord& r);
// {"T": [[...], ...], "L": [...]}, members 1-based.
Json jindex_to_json(const JIndex& j);

}  // namespace palg
