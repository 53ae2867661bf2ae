#pragma once

// Shared by the CLI tests and the acceptance binary: in-process runs of the
// tool, the golden cases, and a CSV reader for round-trip checks.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"

namespace harness {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  std::string csv;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline std::filesystem::path source_dir() { return CHAINSTAB_SOURCE_DIR; }
inline std::filesystem::path config_path(const std::string& name) {
  return source_dir() / "data" / "configs" / (name + ".yaml");
}

inline Outcome run(std::vector<std::string> args, bool with_csv = false) {
  Outcome o;
  std::filesystem::path csv;
  if (with_csv) {
    csv = std::filesystem::temp_directory_path() /
          ("chainstab_" + std::to_string(std::hash<std::string>{}(args.front() + args.back())) + ".csv");
    args.push_back("--csv");
    args.push_back(csv.string());
  }
  std::ostringstream out, err;
  o.code = chainstab::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  if (with_csv) {
    o.csv = read_file(csv);
    std::filesystem::remove(csv);
  }
  return o;
}

struct GoldenCase {
  std::string command;
  std::string config;
  int expected_code;
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"beta-check", "a1_half", 1}, {"fundcycle", "d4", 0}, {"walls", "walls_v2", 0}};
  return cases;
}

inline std::filesystem::path golden_path(const GoldenCase& g, const std::string& ext) {
  return source_dir() / "tests" / "golden" / (g.config + "." + g.command + "." + ext);
}

/// RFC 4180 reader: quoted fields may contain commas and doubled quotes.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      row.push_back(cell);
      cell.clear();
      rows.push_back(row);
      row.clear();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

/// Re-parses every numeric cell (p/q rationals, divisor classes, Chern
/// characters, space-separated rational lists) and checks it prints back
/// to the same text. Returns the first offending cell, or "".
inline std::string first_lossy_cell(const std::vector<std::vector<std::string>>& rows) {
  using namespace chainstab;
  auto rational_cell = [](const std::string& s) {
    if (s.find('/') == std::string::npos || s.find_first_of("(*;") != std::string::npos) return false;
    try {
      return to_string(parse_rational(s)) == s;
    } catch (const std::exception&) {
      return false;
    }
  };
  for (const auto& row : rows)
    for (const auto& cell : row) {
      if (cell.empty()) continue;
      bool ok = true;
      if (cell.front() == '(') {
        try {
          ok = to_string(parse_chern(cell)) == cell;
        } catch (const std::exception&) {
          ok = false;
        }
      } else if (cell.find("f*eta") != std::string::npos) {
        try {
          ok = to_string(parse_divisor(cell)) == cell;
        } catch (const std::exception&) {
          ok = false;
        }
      } else if (cell.find('/') != std::string::npos && cell.find_first_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos) {
        std::istringstream words(cell);
        std::string w;
        while (words >> w) ok = ok && rational_cell(w);
      }
      if (!ok) return cell;
    }
  return "";
}

}  // namespace harness
