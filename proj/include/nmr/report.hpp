#pragma once

// Serialisation of comparison reports: versioned JSON and aligned text.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nmr/analysis.hpp"

namespace nmr {

inline constexpr int kFormatVersion = 1;

using Json = nlohmann::ordered_json;

inline Json to_json(const ExceptionSet& e) {
  Json trace = Json::array();
  for (const auto& t : e.trace) trace.push_back({{"constant", t.constant}, {"evidence", t.evidence}});
  return {{"generalisation", e.generalisation_id},
          {"semantics", to_string(e.semantics)},
          {"members", e.members},
          {"trace", trace},
          {"credulous", e.credulous}};
}

inline Json to_json(const ComparisonReport& r) {
  Json axes = Json::array();
  for (const auto& a : r.axes) {
    Json row = {{"system", to_string(a.system)}};
    for (std::size_t k = 0; k < a.cells.size(); ++k) row[std::string(kAxisNames[k])] = a.cells[k];
    axes.push_back(row);
  }
  Json matrix = Json::array();
  for (const auto& m : r.matrix) {
    Json row = {{"query", m.query}};
    for (std::size_t k = 0; k < m.cells.size(); ++k) row[std::string(to_string(kAllSemantics[k]))] = to_string(m.cells[k]);
    matrix.push_back(row);
  }
  Json exceptions = Json::array();
  for (const auto& e : r.exceptions) exceptions.push_back(to_json(e));
  return {{"format-version", kFormatVersion},
          {"axes", axes},
          {"matrix", matrix},
          {"exceptions", exceptions},
          {"warnings", r.warnings}};
}

/// Left-aligned columns separated by two spaces; no trailing blanks.
inline std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (width.size() <= k) width.push_back(0);
      width[k] = std::max(width[k], row[k].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t k = 0; k < row.size(); ++k) {
      line += row[k];
      if (k + 1 < row.size()) line += std::string(width[k] - row[k].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

inline std::string to_text(const ComparisonReport& r) {
  std::ostringstream out;
  std::vector<std::vector<std::string>> axes{{"system"}};
  for (auto name : kAxisNames) axes[0].emplace_back(name);
  for (const auto& a : r.axes) {
    std::vector<std::string> row{std::string(to_string(a.system))};
    for (auto c : a.cells) row.emplace_back(c);
    axes.push_back(row);
  }
  out << "axes\n" << format_table(axes);

  if (!r.matrix.empty()) {
    std::vector<std::vector<std::string>> matrix{{"query"}};
    for (auto s : kAllSemantics) matrix[0].emplace_back(to_string(s));
    for (const auto& m : r.matrix) {
      std::vector<std::string> row{m.query};
      for (auto v : m.cells) row.emplace_back(to_string(v));
      matrix.push_back(row);
    }
    out << "\nmatrix\n" << format_table(matrix);
  }

  if (!r.exceptions.empty()) {
    std::vector<std::vector<std::string>> rows{{"generalisation", "semantics", "exceptions", "credulous"}};
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
      return s.empty() ? std::string("-") : s;
    };
    for (const auto& e : r.exceptions)
      rows.push_back({e.generalisation_id, std::string(to_string(e.semantics)), join(e.members), join(e.credulous)});
    out << "\nexceptions\n" << format_table(rows);
  }

  if (!r.warnings.empty()) {
    out << "\nwarnings\n";
    for (const auto& w : r.warnings) out << "- " << w << "\n";
  }
  return out.str();
}

}  // namespace nmr
