#include "qtr/experiment_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qtr {

namespace {

std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (const char ch : text) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell)) {
    return std::to_string(std::get<std::int64_t>(cell));
  }
  if (std::holds_alternative<double>(cell)) {
    return format_float(std::get<double>(cell));
  }
  return std::get<std::string>(cell);
}

std::string cell_json(const Cell& cell) {
  if (std::holds_alternative<std::string>(cell)) {
    return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
  }
  return cell_text(cell);
}

}  // namespace

std::string format_float(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

JsonLine& JsonLine::add(const std::string& key, double value) {
  fields_.emplace_back(key, format_float(value));
  return *this;
}

JsonLine& JsonLine::add(const std::string& key, std::int64_t value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonLine& JsonLine::add(const std::string& key, std::uint64_t value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonLine& JsonLine::add(const std::string& key, bool value) {
  fields_.emplace_back(key, value ? "true" : "false");
  return *this;
}

JsonLine& JsonLine::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, "\"" + json_escape(value) + "\"");
  return *this;
}

JsonLine& JsonLine::add(const std::string& key, std::span<const double> values) {
  std::string list = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) list += ",";
    list += format_float(values[i]);
  }
  list += "]";
  fields_.emplace_back(key, std::move(list));
  return *this;
}

JsonLine& JsonLine::add_raw(const std::string& key, const std::string& json) {
  fields_.emplace_back(key, json);
  return *this;
}

std::string JsonLine::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i > 0) out += ",";
    out += "\"" + json_escape(fields_[i].first) + "\":" + fields_[i].second;
  }
  out += "}";
  return out;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "jsonl") return OutputFormat::kJsonLines;
  throw ParameterError("unknown output format '" + name + "' (expected csv or jsonl)");
}

std::string format_name(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "jsonl";
}

TableWriter::TableWriter(std::ostream& out, OutputFormat format,
                         std::vector<std::string> columns, const JsonLine& meta)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == OutputFormat::kCsv) {
    out_ << "# " << meta.str() << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i > 0) out_ << ",";
      out_ << columns_[i];
    }
    out_ << "\n";
  } else {
    JsonLine wrapper;
    wrapper.add_raw("meta", meta.str());
    out_ << wrapper.str() << "\n";
  }
}

void TableWriter::row(std::span<const Cell> cells) {
  if (cells.size() != columns_.size()) {
    throw ShapeError("row width " + std::to_string(cells.size()) + " does not match " +
                     std::to_string(columns_.size()) + " columns");
  }
  if (format_ == OutputFormat::kCsv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ",";
      out_ << cell_text(cells[i]);
    }
    out_ << "\n";
  } else {
    JsonLine line;
    for (std::size_t i = 0; i < cells.size(); ++i) line.add_raw(columns_[i], cell_json(cells[i]));
    out_ << line.str() << "\n";
  }
}

void TableWriter::summary(const JsonLine& line) {
  if (format_ == OutputFormat::kCsv) {
    out_ << "# " << line.str() << "\n";
  } else {
    JsonLine wrapper;
    wrapper.add_raw("summary", line.str());
    out_ << wrapper.str() << "\n";
  }
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + " is not 'key = value': " +
                           stripped);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ParameterError("config line " + std::to_string(line_no) + " has an empty key");
    }
    if (!config.values_.emplace(key, value).second) {
      throw ParameterError("config key '" + key + "' given twice");
    }
  }
  return config;
}

std::optional<std::string> KeyValueConfig::take_string(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  std::string value = it->second;
  values_.erase(it);
  return value;
}

std::optional<double> KeyValueConfig::take_double(const std::string& key) {
  const auto raw = take_string(key);
  if (!raw) return std::nullopt;
  return parse_double_strict(*raw, key);
}

std::optional<int> KeyValueConfig::take_int(const std::string& key) {
  const auto raw = take_string(key);
  if (!raw) return std::nullopt;
  return parse_int_strict(*raw, key);
}

std::optional<std::uint64_t> KeyValueConfig::take_uint64(const std::string& key) {
  const auto raw = take_string(key);
  if (!raw) return std::nullopt;
  return parse_uint64_strict(*raw, key);
}

std::optional<bool> KeyValueConfig::take_bool(const std::string& key) {
  const auto raw = take_string(key);
  if (!raw) return std::nullopt;
  return parse_bool_strict(*raw, key);
}

std::optional<std::vector<double>> KeyValueConfig::take_double_list(const std::string& key) {
  const auto raw = take_string(key);
  if (!raw) return std::nullopt;
  return parse_double_list_strict(*raw, key);
}

void KeyValueConfig::reject_unknown() const {
  if (values_.empty()) return;
  std::string keys;
  for (const auto& [key, value] : values_) {
    if (!keys.empty()) keys += ", ";
    keys += key;
  }
  throw ParameterError("unknown config key(s): " + keys);
}

double parse_double_strict(const std::string& text, const std::string& field) {
  const std::string value = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ParameterError("field '" + field + "': cannot parse '" + text + "' as a real number");
  }
  if (!std::isfinite(out)) {
    throw ParameterError("field '" + field + "': value must be finite");
  }
  return out;
}

int parse_int_strict(const std::string& text, const std::string& field) {
  const std::string value = trim(text);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ParameterError("field '" + field + "': cannot parse '" + text + "' as an integer");
  }
  return out;
}

std::uint64_t parse_uint64_strict(const std::string& text, const std::string& field) {
  const std::string value = trim(text);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ParameterError("field '" + field + "': cannot parse '" + text +
                         "' as an unsigned integer");
  }
  return out;
}

bool parse_bool_strict(const std::string& text, const std::string& field) {
  const std::string value = trim(text);
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ParameterError("field '" + field + "': cannot parse '" + text + "' as a boolean");
}

std::vector<double> parse_double_list_strict(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::string remaining = text;
  if (trim(remaining).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = remaining.find(',', start);
    const std::string piece = remaining.substr(start, comma - start);
    out.push_back(parse_double_strict(piece, field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace qtr
