#pragma once

#include "qlat/bounds.hpp"
#include "qlat/covering.hpp"
#include "qlat/search.hpp"

#include <json.hpp>

#include <string>

namespace qlat {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
Json to_json(const BigInt& value);
/// {"num": ..., "den": ...}
Json to_json(const Rational& value);
Json to_json(const Lattice& lattice);
Json to_json(const BoundReport& report);
Json to_json(const TheoremReport& report);
Json to_json(const SearchResult& result);
Json to_json(const CoveringReport& report);
Json to_json(const TransferSampleReport& report);
Json to_json(const LemmaRow& row);

/// Sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& value);

std::string lemma_grid_csv(const std::vector<LemmaRow>& rows);

} // namespace qlat
