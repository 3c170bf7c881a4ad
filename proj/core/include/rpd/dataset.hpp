#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rpd/geometry.hpp"

namespace rpd {

/// Rows of (point in R^d, nonnegative integer label).
class LabeledDataset {
public:
  LabeledDataset() = default;
  LabeledDataset(std::size_t dim, std::vector<double> features, std::vector<int> labels);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {features_.data() + i * dim_, dim_};
  }
  int label(std::size_t i) const noexcept { return labels_[i]; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  std::span<const double> features() const noexcept { return features_; }

  /// Distinct labels, ascending. This order defines class indices.
  std::vector<int> class_labels() const;
  std::size_t count(int label) const;
  std::vector<std::size_t> indices_of(int label) const;
  /// The points of one class. Throws InvalidArgument if the class is empty.
  PointCloud points_of(int label) const;
  /// All points, labels dropped.
  PointCloud points() const;

  void append(std::span<const double> x, int label);

private:
  std::size_t dim_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
};

/// CSV with header "label,f0,...,f{d-1}"; numbers are 64-bit decimals.
/// Errors are ParseError messages of the form "<source>:<line>: <what>".
LabeledDataset read_csv(std::istream& in, const std::string& source = "<stream>");
LabeledDataset load_csv(const std::filesystem::path& path);

/// Writes with 17 significant digits, LF line endings.
void write_csv(std::ostream& out, const LabeledDataset& data);
void save_csv(const LabeledDataset& data, const std::filesystem::path& path);

/// Decimal form used by every writer: 17 significant digits, so 64-bit
/// values round-trip exactly.
std::string format_double(double value);

} // namespace rpd
