#pragma once

#include <json.hpp>

#include "liegrad/classify.hpp"

namespace liegrad {

using OrderedJson = nlohmann::ordered_json;

OrderedJson scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const FieldPtr& F, const OrderedJson& j);

OrderedJson group_to_json(const AbGroup& g);

/// Full grading document: field conductor, algebra block, group, components
/// with echelon bases.  Byte-stable for fixed inputs.
OrderedJson grading_to_json(const Grading& g);
Grading grading_from_json(const OrderedJson& j);

OrderedJson record_to_json(const ClassRecord& r);
OrderedJson catalog_to_json(const Catalog& c);

std::string dump_json(const OrderedJson& j);

} // namespace liegrad
