#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hawkes {

/// One constant piece of a reproduction kernel: h(t) = value for t in [start, end).
struct Segment {
  double start = 0.0;
  double end = 0.0;
  double value = 0.0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Piecewise-constant signed reproduction kernel with compact support.
///
/// Immutable once built. Segments are sorted, pairwise disjoint and half-open.
/// The empty kernel is h = 0 (support length 0), i.e. a plain Poisson process.
/// Construction rejects kernels whose positive part has L1 norm >= 1.
class Kernel {
 public:
  Kernel() = default;
  explicit Kernel(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }

  double eval(double t) const noexcept;

  /// L(h): supremum of the support.
  double support_length() const noexcept { return support_length_; }
  /// ||h+||_1
  double positive_l1() const noexcept { return positive_l1_; }
  /// ||h||_1
  double l1() const noexcept { return l1_; }
  /// Signed integral of h.
  double integral() const noexcept { return integral_; }
  /// sup h+ (0 when h <= 0 everywhere).
  double positive_sup() const noexcept { return positive_sup_; }

  bool is_nonpositive() const noexcept { return positive_sup_ == 0.0; }
  bool is_nonnegative() const noexcept;

  /// True when h <= -lambda on all of [0, L(h)): every jump kills the
  /// intensity for the full support, so every renewal window has one jump.
  bool cancels_fully(double lambda) const noexcept;

  /// FNV-1a over the segment bit patterns, as 16 hex digits.
  std::string hash() const;
  std::string describe() const;

  friend bool operator==(const Kernel& a, const Kernel& b) { return a.segments_ == b.segments_; }

 private:
  std::vector<Segment> segments_;
  double support_length_ = 0.0;
  double positive_l1_ = 0.0;
  double l1_ = 0.0;
  double integral_ = 0.0;
  double positive_sup_ = 0.0;
};

Kernel make_kernel(std::vector<Segment> segments);

/// h+ = max(h, 0). Callers doing renewal decomposition must keep using the
/// original kernel's support length.
Kernel positive_part(const Kernel& kernel);

/// Pointwise maximum of the positive parts of all kernels.
Kernel positive_envelope(std::span<const Kernel> kernels);

/// g = -lambda on [0, A).
Kernel canceling_kernel(double lambda, double A);

/// -lambda on [r, r + A).
Kernel delayed_canceling_kernel(double lambda, double r, double A);

}  // namespace hawkes
