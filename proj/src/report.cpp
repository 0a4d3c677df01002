#include "hbundle/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hbundle {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Marginal: return "marginal";
  }
  return "fail";
}

Verdict below(double value, double tol) { return value < tol ? Verdict::Pass : Verdict::Fail; }

Verdict all_of(std::initializer_list<bool> conds) {
  for (bool c : conds)
    if (!c) return Verdict::Fail;
  return Verdict::Pass;
}

int Report::count(Verdict v) const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.verdict == v; }));
}

Json Report::to_json() const {
  std::vector<const CheckRecord*> sorted;
  for (const auto& c : checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->name < b->name; });
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["config"] = config;
  Json list = Json::array();
  for (const auto* c : sorted) {
    Json r;
    r["name"] = c->name;
    r["anchor"] = c->anchor;
    r["inputs"] = c->inputs;
    r["values"] = c->values;
    r["verdict"] = verdict_name(c->verdict);
    list.push_back(std::move(r));
  }
  out["checks"] = std::move(list);
  out["summary"] = {{"pass", count(Verdict::Pass)},
                    {"fail", count(Verdict::Fail)},
                    {"marginal", count(Verdict::Marginal)},
                    {"verdict", passed() ? "pass" : "fail"}};
  return out;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const std::vector<cplx>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

Json to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fmt_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_rec(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        dump_rec(it.value(), os, indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump_rec(j[i], os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        dump_rec(j[i], os, indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? fmt_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream os;
  dump_rec(j, os, 0);
  os << "\n";
  return os.str();
}

void CsvTable::row(const std::vector<std::string>& cells) {
  require(cells.size() == columns_.size(), Errc::DimensionMismatch, "CSV row width differs from the header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), Errc::PreconditionViolated, "cannot write " + path);
  f << text;
}

}  // namespace hbundle
