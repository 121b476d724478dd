#pragma once

#include <map>
#include <string>
#include <vector>

namespace wexpfam {

// Shortest text that still round-trips a double exactly: printf "%.17g".
std::string format_g17(double value);

// Reads one positive real per line; '#' starts a comment, blank lines are
// skipped.  Throws DataFileError (with the 1-based line number) on anything
// unparsable, non-positive or non-finite.
std::vector<double> read_positive_data(const std::string& path);

// One "key = value" per line, '#' comments, values may be comma-separated
// lists.  Duplicate keys are an error.  Returns key -> raw value text.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

// Helpers for list-valued config entries.
std::vector<std::string> split_list(const std::string& text);
double parse_double(const std::string& text, const std::string& context);
long long parse_int(const std::string& text, const std::string& context);

}  // namespace wexpfam
