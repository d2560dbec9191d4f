#include "pcineq/covariance_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace pcineq {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

CovarianceMatrix parse_covariance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(line);
    if (labels.empty()) {
      labels = cells;
      for (const auto& l : labels)
        if (l.empty()) throw ParseError(lineno, "empty label in header");
      continue;
    }
    if (cells.size() != labels.size())
      throw ParseError(lineno, "expected " + std::to_string(labels.size()) + " values");
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      double v = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') throw ParseError(lineno, "not a number: '" + c + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (labels.empty()) throw ParseError(lineno, "empty covariance file");
  if (rows.size() != labels.size())
    throw ParseError(lineno, "expected " + std::to_string(labels.size()) + " matrix rows");
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return CovarianceMatrix(labels, m);
}

CovarianceMatrix load_covariance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open covariance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_covariance(buf.str());
}

std::string format_real(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string serialize_covariance(const CovarianceMatrix& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s.labels()[i];
  out << "\n";
  const auto& m = s.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_real(m(i, j));
    out << "\n";
  }
  return out.str();
}

}  // namespace pcineq
