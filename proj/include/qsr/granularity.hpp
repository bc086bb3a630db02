#pragma once

namespace qsr {

/// Granularity parameter m shared by direction sectors (4m) and distance
/// classes (2m - 1).
class Granularity {
 public:
  static constexpr int kMax = 64;

  /// Throws InvalidArgument for m < 1 and UnsupportedConfiguration for
  /// m > kMax.
  explicit Granularity(int m);

  int value() const { return m_; }
  int sectors() const { return 4 * m_; }
  int distance_classes() const { return 2 * m_ - 1; }

  friend bool operator==(Granularity, Granularity) = default;

 private:
  int m_;
};

}  // namespace qsr
