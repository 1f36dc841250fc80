#pragma once

#include <json.hpp>

#include "jackmap/mseries.hpp"
#include "jackmap/pexpr.hpp"

namespace jackmap {

/// "[3,2,1]" or "[]" (whitespace tolerated) -> Partition.
Partition parse_partition(const std::string& s);

/// Minimal p-expression grammar:
///   expr  := term (('+'|'-') term)*
///   term  := [coeff '*'] 'p' '[' ints ']'   |   coeff
///   coeff := integer | integer '/' integer
/// e.g. "p[1,1] + 2*p[2] - 1/2*p[3,1]".
PExpr parse_pexpr(const std::string& s);

nlohmann::ordered_json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

/// {"num": [c0, c1, ...], "den": [d0, ...]}, constant term first.
nlohmann::ordered_json scalar_to_json(const ScalarQb& x);
ScalarQb scalar_from_json(const nlohmann::json& j);

/// Records {"t": k, "p": [...], "q": [...], "r": [...], "coeff": {...}} in
/// canonical key order (three-alphabet series only).
nlohmann::ordered_json mseries_to_json(const MultiSeries& s);

}  // namespace jackmap
