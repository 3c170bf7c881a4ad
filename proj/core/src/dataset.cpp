#include "rpd/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include "rpd/errors.hpp"

namespace rpd {

LabeledDataset::LabeledDataset(std::size_t dim, std::vector<double> features, std::vector<int> labels)
    : dim_(dim), features_(std::move(features)), labels_(std::move(labels)) {
  if (dim_ == 0) {
    throw InvalidArgument("dataset dimension must be positive");
  }
  if (features_.size() != labels_.size() * dim_) {
    throw InvalidArgument("dataset has " + std::to_string(labels_.size()) + " labels but " +
                          std::to_string(features_.size()) + " feature values for d = " +
                          std::to_string(dim_));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0) {
      throw InvalidArgument("row " + std::to_string(i) + " has negative label " +
                            std::to_string(labels_[i]));
    }
  }
}

std::vector<int> LabeledDataset::class_labels() const {
  std::set<int> distinct(labels_.begin(), labels_.end());
  return {distinct.begin(), distinct.end()};
}

std::size_t LabeledDataset::count(int label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::vector<std::size_t> LabeledDataset::indices_of(int label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) {
      out.push_back(i);
    }
  }
  return out;
}

PointCloud LabeledDataset::points_of(int label) const {
  std::vector<double> coords;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) {
      const auto x = (*this)[i];
      coords.insert(coords.end(), x.begin(), x.end());
    }
  }
  if (coords.empty()) {
    throw InvalidArgument("class " + std::to_string(label) + " has no points");
  }
  return PointCloud(dim_, std::move(coords));
}

PointCloud LabeledDataset::points() const { return PointCloud(dim_, features_); }

void LabeledDataset::append(std::span<const double> x, int label) {
  if (x.size() != dim_) {
    throw InvalidArgument("appended row has dimension " + std::to_string(x.size()) +
                          ", dataset has " + std::to_string(dim_));
  }
  if (label < 0) {
    throw InvalidArgument("labels must be nonnegative");
  }
  features_.insert(features_.end(), x.begin(), x.end());
  labels_.push_back(label);
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

} // namespace

LabeledDataset read_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    fail(source, 1, "missing header row");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  const auto header = split_commas(line);
  if (header.size() < 2 || header[0] != "label") {
    fail(source, line_no, "header must be 'label,f0,...,f{d-1}'");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j + 1] != "f" + std::to_string(j)) {
      fail(source, line_no,
           "header column " + std::to_string(j + 2) + " must be 'f" + std::to_string(j) + "'");
    }
  }

  std::vector<double> features;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != d + 1) {
      fail(source, line_no,
           "expected " + std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()));
    }
    int label = 0;
    {
      const auto f = fields[0];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), label);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        fail(source, line_no, "label '" + std::string(f) + "' is not an integer");
      }
      if (label < 0) {
        fail(source, line_no, "label " + std::to_string(label) + " is negative");
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      const auto f = fields[j + 1];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        fail(source, line_no, "field f" + std::to_string(j) + " '" + std::string(f) +
                                  "' is not a number");
      }
      if (!std::isfinite(v)) {
        fail(source, line_no, "field f" + std::to_string(j) + " is not finite");
      }
      features.push_back(v);
    }
    labels.push_back(label);
  }
  return LabeledDataset(d, std::move(features), std::move(labels));
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string() + ": cannot open file");
  }
  return read_csv(in, path.string());
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const LabeledDataset& data) {
  out << "label";
  for (std::size_t j = 0; j < data.dim(); ++j) {
    out << ",f" << j;
  }
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data.label(i);
    for (const double v : data[i]) {
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

void save_csv(const LabeledDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path.string() + ": cannot open file for writing");
  }
  write_csv(out, data);
  if (!out) {
    throw IoError(path.string() + ": write failed");
  }
}

} // namespace rpd
