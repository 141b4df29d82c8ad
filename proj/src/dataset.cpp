#include "ksc/dataset.hpp"

#include "ksc/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <vector>

namespace ksc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, const std::string& path, std::size_t line) {
  field = trim(field);
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last)
    fail(ErrorKind::Format, path + ":" + std::to_string(line) + ": non-numeric field '" +
                                std::string(field) + "'");
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Dataset Dataset::subset(const std::vector<Index>& indices) const {
  Dataset out;
  out.rows.resize(static_cast<Index>(indices.size()), dim());
  for (std::size_t i = 0; i < indices.size(); ++i)
    out.rows.row(static_cast<Index>(i)) = rows.row(indices[i]);
  if (labels) {
    out.labels.emplace();
    out.labels->reserve(indices.size());
    for (Index idx : indices) out.labels->push_back((*labels)[static_cast<std::size_t>(idx)]);
  }
  return out;
}

Dataset load_csv(const std::string& path, bool labeled) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");

  std::vector<double> values;
  Labels labels;
  Index width = -1;
  Index count = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    const auto n_features = static_cast<Index>(fields.size()) - (labeled ? 1 : 0);
    if (n_features < 1)
      fail(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": no feature columns");
    if (width < 0) width = n_features;
    if (n_features != width)
      fail(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": ragged row (" +
                                  std::to_string(n_features) + " features, expected " +
                                  std::to_string(width) + ")");
    for (Index k = 0; k < n_features; ++k) {
      const double v = parse_field<double>(fields[static_cast<std::size_t>(k)], path, line_no);
      if (!std::isfinite(v))
        fail(ErrorKind::Format, path + ":" + std::to_string(line_no) + ": non-finite value");
      values.push_back(v);
    }
    if (labeled) labels.push_back(parse_field<int>(fields.back(), path, line_no));
    ++count;
  }
  if (in.bad()) fail(ErrorKind::Io, "read error on '" + path + "'");

  Dataset out;
  out.rows.resize(count, std::max<Index>(width, 0));
  for (Index i = 0; i < count; ++i)
    for (Index k = 0; k < width; ++k) out.rows(i, k) = values[static_cast<std::size_t>(i * width + k)];
  if (labeled) out.labels = std::move(labels);
  return out;
}

void save_csv(const std::string& path, const Dataset& data, bool with_labels) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  const bool labels = with_labels && data.labels.has_value();
  std::string line;
  for (Index i = 0; i < data.size(); ++i) {
    line.clear();
    for (Index k = 0; k < data.dim(); ++k) {
      if (k) line += ',';
      line += format_double(data.rows(i, k));
    }
    if (labels) {
      line += ',';
      line += std::to_string((*data.labels)[static_cast<std::size_t>(i)]);
    }
    line += '\n';
    out << line;
  }
  if (!out) fail(ErrorKind::Io, "write error on '" + path + "'");
}

void save_labels(const std::string& path, const Labels& labels) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  for (int l : labels) out << l << '\n';
  if (!out) fail(ErrorKind::Io, "write error on '" + path + "'");
}

Labels load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  Labels out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    out.push_back(parse_field<int>(line, path, line_no));
  }
  return out;
}

}  // namespace ksc
