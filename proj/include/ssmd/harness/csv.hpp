#ifndef SSMD_HARNESS_CSV_HPP
#define SSMD_HARNESS_CSV_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ssmd/harness/config.hpp"
#include "ssmd/harness/experiment.hpp"

namespace ssmd::harness {

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {"k",           "mean_f_avg", "stderr_f_avg",
                                                   "mean_f_iter", "mean_f_min", "bound"};
  return columns;
}

inline std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

/// Parsed CSV: one row per k, columns in csv_columns() order.
struct CsvTable {
  std::vector<std::vector<double>> rows;
};

inline CsvTable to_table(const McSummary& s) {
  CsvTable t;
  for (std::size_t i = 0; i < s.k.size(); ++i)
    t.rows.push_back({static_cast<double>(s.k[i]), s.mean_f_avg[i], s.stderr_f_avg[i], s.mean_f_iter[i],
                      s.mean_f_min[i], s.bound[i]});
  return t;
}

inline std::string write_csv(const CsvTable& table) {
  std::string out = csv_header() + "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(',');
      out += format_real(row[j]);
    }
    out.push_back('\n');
  }
  return out;
}

inline CsvTable read_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw InvalidArgument("read_csv: unexpected header");
  CsvTable t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != csv_columns().size())
      throw InvalidArgument("read_csv: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                            " columns");
    std::vector<double> row;
    for (const auto& c : cells) {
      const auto v = parse_real(c);
      if (!v) throw InvalidArgument("read_csv: line " + std::to_string(line_no) + ": bad number '" + c + "'");
      row.push_back(*v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string csv_text(const McSummary& s) { return write_csv(to_table(s)); }

/// key = value sidecar: constants, hash, config echo and instance.
inline std::string metadata_text(const McSummary& s) {
  std::string out;
  out += "config_hash = " + s.config_hash + "\n";
  out += "schedule = " + s.schedule + "\n";
  out += "a = " + format_real(s.a) + "\n";
  out += "runs = " + std::to_string(s.runs) + "\n";
  out += "f_ref = " + (s.f_ref ? format_real(*s.f_ref) : std::string("none")) + "\n";
  out += "c_est = " + format_real(s.c_est) + "\n";
  out += "nu_est = " + format_real(s.nu_est) + "\n";
  out += "c_tilde_sq = " + format_real(s.c_tilde_sq) + "\n";
  out += "d_w_sq = " + format_real(s.d_w_sq) + "\n";
  out += "mu_f = " + format_real(s.mu_f) + "\n";
  out += "mu_w = " + format_real(s.mu_w) + "\n";
  out += "f_evaluation = " + s.f_evaluation + "\n";
  std::istringstream cfg(s.config_text);
  for (std::string line; std::getline(cfg, line);)
    if (!line.empty()) out += "config." + line + "\n";
  out += s.instance_text;
  return out;
}

inline std::filesystem::path metadata_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".meta");
  return p;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeFailure("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw RuntimeFailure("write to '" + path.string() + "' failed");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes the CSV at `path` and the metadata next to it (same stem, .meta).
inline void emit_csv(const McSummary& s, const std::filesystem::path& path) {
  write_file(path, csv_text(s));
  write_file(metadata_path(path), metadata_text(s));
}

}  // namespace ssmd::harness

#endif  // SSMD_HARNESS_CSV_HPP
