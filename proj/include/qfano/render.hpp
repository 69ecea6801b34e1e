#pragma once
// Text renderings of search results: an aligned table in the column order
// A^3 | B | g | dim|kA| (k = 1..q-1), JSON (stable schema, see README) and
// CSV with a single header line. Rationals are always "num/den".

#include <string>
#include <string_view>
#include <vector>

#include "qfano/search.hpp"

namespace qfano {

enum class OutputFormat { table, json, csv };

// Throws Error(input) for anything but table, json, csv.
OutputFormat parse_format(std::string_view name);

std::string render_rows(const std::vector<SearchRow>& rows, OutputFormat format);
std::string render_result(const SearchResult& result, OutputFormat format);

// Inverse of the JSON rendering.
std::vector<SearchRow> parse_rows_json(const std::string& text);

std::string join_ints(const std::vector<Int>& values, std::string_view sep = " ");

}  // namespace qfano
