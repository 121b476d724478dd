#include "wexpfam/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "wexpfam/errors.hpp"

namespace wexpfam {

namespace {

std::string strip(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::string drop_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_double(const std::string& text, const std::string& context) {
  const std::string token = strip(text);
  if (token.empty()) throw DomainError(context + ": empty number");
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) {
    throw DomainError(context + ": '" + token + "' is not a number");
  }
  return value;
}

long long parse_int(const std::string& text, const std::string& context) {
  const std::string token = strip(text);
  if (token.empty()) throw DomainError(context + ": empty integer");
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size()) {
    throw DomainError(context + ": '" + token + "' is not an integer");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(strip(text.substr(start)));
      break;
    }
    out.push_back(strip(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::vector<double> read_positive_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFileError(path, 0, "cannot open file");
  std::vector<double> data;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string token = strip(drop_comment(line));
    if (token.empty()) continue;
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      throw DataFileError(path, lineno, "'" + token + "' is not a number");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw DataFileError(path, lineno, "data must be positive finite reals, got " + token);
    }
    data.push_back(value);
  }
  return data;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFileError(path, 0, "cannot open file");
  std::map<std::string, std::string> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string content = strip(drop_comment(line));
    if (content.empty()) continue;
    const auto equals = content.find('=');
    if (equals == std::string::npos) {
      throw DataFileError(path, lineno, "expected 'key = value', got '" + content + "'");
    }
    const std::string key = strip(content.substr(0, equals));
    const std::string value = strip(content.substr(equals + 1));
    if (key.empty()) throw DataFileError(path, lineno, "empty key");
    if (value.empty()) throw DataFileError(path, lineno, "empty value for key '" + key + "'");
    if (!out.emplace(key, value).second) {
      throw DataFileError(path, lineno, "duplicate key '" + key + "'");
    }
  }
  return out;
}

}  // namespace wexpfam
