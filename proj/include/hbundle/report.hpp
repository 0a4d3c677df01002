#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hbundle/common.hpp"

namespace hbundle {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

enum class Verdict { Pass, Fail, Marginal };

const char* verdict_name(Verdict v);

/// One verified identity: what was checked, on which inputs, with which numbers.
struct CheckRecord {
  std::string name;
  std::string anchor;  // the mathematical statement being checked
  Json inputs = Json::object();
  Json values = Json::object();
  Verdict verdict = Verdict::Fail;
};

/// Pass when value < tol (NaN fails).
Verdict below(double value, double tol);
Verdict all_of(std::initializer_list<bool> conds);

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<CheckRecord> checks;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  int count(Verdict v) const;
  bool passed() const { return count(Verdict::Fail) == 0 && count(Verdict::Marginal) == 0; }
  /// Checks sorted by name; the summary counts derive from the records only.
  Json to_json() const;
};

Json to_json(cplx z);
Json to_json(const std::vector<cplx>& v);
Json to_json(const std::vector<double>& v);
Json to_json(const Mat& m);

/// Deterministic serialization: keys in insertion order, floats as %.17g,
/// non-finite floats as null, two-space indentation.
std::string dump(const Json& j);

/// Frozen-column CSV. Numeric cells as %.17g.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void row(const std::vector<std::string>& cells);
  const std::vector<std::string>& columns() const { return columns_; }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt_double(double x);

void write_text(const std::string& path, const std::string& text);

}  // namespace hbundle
