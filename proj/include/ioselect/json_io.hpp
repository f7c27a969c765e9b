#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ioselect/selector.hpp"
#include "ioselect/set_cover.hpp"
#include "ioselect/system_model.hpp"

namespace ioselect {

using Json = nlohmann::ordered_json;

/// Instance format: 1-based [row, col] star lists, decimal-string costs,
/// "K" either "complete" or a list of [input, output] pairs.
Json system_to_json(const StructuredSystem& system);
/// Throws ParseError naming the offending field; the result is validated.
StructuredSystem system_from_json(const Json& doc);

/// {"N": .., "sets": [[1-based elements]], "weights": ["1", ...]}
Json wsc_to_json(const WeightedSetCoverInstance& inst);
WeightedSetCoverInstance wsc_from_json(const Json& doc);

/// Parses text; syntax errors report line and column.
Json parse_json_text(std::string_view text, const std::string& source = "input");

Json selection_to_json(const Selection& sel);
Json cover_to_json(const Cover& cover, bool with_trace);

/// Report without timings, so equal inputs give byte-equal output.
Json report_to_json(const SelectionReport& report, bool with_trace);

}  // namespace ioselect
