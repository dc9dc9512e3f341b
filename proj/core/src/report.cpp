#include "pgue/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pgue {

namespace {
const char* kColumns[] = {"experiment", "n", "m",          "s",           "tau",
                          "u",          "v", "finite_value", "limit_value", "abs_error",
                          "precision_bits", "rtol", "wall_ms"};

std::string get_label(const ReportRow& row, const std::string& key) {
  auto it = row.labels.find(key);
  if (it != row.labels.end()) return it->second;
  it = row.meta.find(key);
  if (it != row.meta.end()) return it->second;
  return "";
}
}  // namespace

ReportRow ReportRow::make(std::map<std::string, std::string> labels, const Real& finite,
                          const Real& limit) {
  ReportRow row;
  row.labels = std::move(labels);
  row.finite_value = finite;
  row.limit_value = limit;
  row.abs_error = abs(finite - limit);
  return row;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  for (std::size_t c = 0; c < std::size(kColumns); ++c) {
    os << kColumns[c] << (c + 1 < std::size(kColumns) ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < std::size(kColumns); ++c) {
      std::string key = kColumns[c];
      std::string val;
      if (key == "finite_value") {
        val = to_string_full(row.finite_value);
      } else if (key == "limit_value") {
        val = to_string_full(row.limit_value);
      } else if (key == "abs_error") {
        val = to_string_full(row.abs_error);
      } else {
        val = get_label(row, key);
      }
      os << val << (c + 1 < std::size(kColumns) ? "," : "\n");
    }
  }
  return os.str();
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream f(path);
  if (!f) throw config_error("cannot open output file: " + path);
  f << report_csv(rows);
}

std::string report_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    for (const auto& [k, v] : row.labels) obj[k] = v;
    obj["finite_value"] = to_string_full(row.finite_value);
    obj["limit_value"] = to_string_full(row.limit_value);
    obj["abs_error"] = to_string_full(row.abs_error);
    nlohmann::json meta;
    for (const auto& [k, v] : row.meta) meta[k] = v;
    obj["meta"] = meta;
    arr.push_back(obj);
  }
  return arr.dump(2);
}

void write_report_json(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream f(path);
  if (!f) throw config_error("cannot open output file: " + path);
  f << report_json(rows) << "\n";
}

void write_report(const std::string& path, const std::vector<ReportRow>& rows) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    write_report_json(path, rows);
  } else {
    write_report_csv(path, rows);
  }
}

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::vector<std::map<std::string, std::string>> out;
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    return parts;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header.empty()) {
      header = split(line);
      continue;
    }
    auto parts = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < parts.size(); ++i) row[header[i]] = parts[i];
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace pgue
