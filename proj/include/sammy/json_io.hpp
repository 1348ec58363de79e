#pragma once

#include <string>

#include <json.hpp>

#include "sammy/core.hpp"

namespace sammy {

using Json = nlohmann::ordered_json;

Json to_json(const FinCat& c);
Json to_json(const FunctorData& f);
Json to_json(const NatTransData& t);
Json value_to_json(const Value& v);

/// Shape-level parse: builds the tables without running the law validators,
/// so a broken table can still be loaded and checked.
FinCat cat_from_json(const Json& j);
FunctorData functor_from_json(const Json& j);
NatTransData nat_trans_from_json(const Json& j);

/// Full parse with validation; the document kind is inferred from its keys.
Value value_from_json(const Json& j);

std::string dump_value(const Value& v);
Value parse_value_text(const std::string& text);
Value parse_value_file(const std::string& path);
Json load_json_file(const std::string& path);

}  // namespace sammy
