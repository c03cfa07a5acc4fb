#ifndef QTR_EXPERIMENT_IO_HPP
#define QTR_EXPERIMENT_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qtr/errors.hpp"

namespace qtr {

/// Shortest-exact decimal rendering at 17 significant digits (%.17g); every
/// emitted float survives a parse round trip bit for bit.
std::string format_float(double x);

/// Single-line JSON object with insertion-ordered keys, so identical inputs
/// serialize to identical bytes.
class JsonLine {
 public:
  JsonLine& add(const std::string& key, double value);
  JsonLine& add(const std::string& key, std::int64_t value);
  JsonLine& add(const std::string& key, std::uint64_t value);
  JsonLine& add(const std::string& key, int value) { return add(key, static_cast<std::int64_t>(value)); }
  JsonLine& add(const std::string& key, bool value);
  JsonLine& add(const std::string& key, const std::string& value);
  JsonLine& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  JsonLine& add(const std::string& key, std::span<const double> values);
  /// Nests a pre-rendered JSON value.
  JsonLine& add_raw(const std::string& key, const std::string& json);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

enum class OutputFormat { kCsv, kJsonLines };

OutputFormat parse_format(const std::string& name);  // "csv" | "jsonl"
std::string format_name(OutputFormat format);

using Cell = std::variant<std::int64_t, double, std::string>;

/// Streams one experiment table: a metadata line, data rows, and an optional
/// summary line.
///
/// csv:    "# {meta}\n" , a column header row, comma rows, "# {summary}\n"
/// jsonl:  {"meta":{...}} , one object per row, {"summary":{...}}
///
/// Output is UTF-8 with \n line endings and 17-significant-digit floats.
class TableWriter {
 public:
  TableWriter(std::ostream& out, OutputFormat format, std::vector<std::string> columns,
              const JsonLine& meta);

  void row(std::span<const Cell> cells);
  void summary(const JsonLine& line);

 private:
  std::ostream& out_;
  OutputFormat format_;
  std::vector<std::string> columns_;
};

/// Flat `key = value` configuration text. Keys are consumed by the typed
/// take_* accessors; whatever remains unconsumed is rejected, so unknown
/// keys cannot pass silently.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_string(const std::string& text);

  std::optional<std::string> take_string(const std::string& key);
  std::optional<double> take_double(const std::string& key);
  std::optional<int> take_int(const std::string& key);
  std::optional<std::uint64_t> take_uint64(const std::string& key);
  std::optional<bool> take_bool(const std::string& key);
  std::optional<std::vector<double>> take_double_list(const std::string& key);

  /// Throws ParameterError naming any key never consumed.
  void reject_unknown() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Strict numeric parsers shared by config files and CLI flags; throw
/// ParameterError naming the field on any malformed value.
double parse_double_strict(const std::string& text, const std::string& field);
int parse_int_strict(const std::string& text, const std::string& field);
std::uint64_t parse_uint64_strict(const std::string& text, const std::string& field);
bool parse_bool_strict(const std::string& text, const std::string& field);
std::vector<double> parse_double_list_strict(const std::string& text, const std::string& field);

}  // namespace qtr

#endif  // QTR_EXPERIMENT_IO_HPP
