#include "hawkes/kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hawkes {

Kernel::Kernel(std::vector<Segment> segments) : segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });

  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!std::isfinite(s.start) || !std::isfinite(s.end) || !std::isfinite(s.value)) {
      throw std::invalid_argument("kernel segment endpoints and values must be finite");
    }
    if (s.start < 0.0) {
      throw std::invalid_argument("kernel segment starts before 0");
    }
    if (s.end <= s.start) {
      throw std::invalid_argument("kernel segment must have end > start");
    }
    if (i > 0 && s.start < segments_[i - 1].end) {
      throw std::invalid_argument("kernel segments overlap");
    }
  }

  // Zero-valued pieces carry no mass and must not stretch L(h).
  std::erase_if(segments_, [](const Segment& s) { return s.value == 0.0; });

  for (const Segment& s : segments_) {
    const double width = s.end - s.start;
    support_length_ = std::max(support_length_, s.end);
    l1_ += std::abs(s.value) * width;
    integral_ += s.value * width;
    if (s.value > 0.0) {
      positive_l1_ += s.value * width;
      positive_sup_ = std::max(positive_sup_, s.value);
    }
  }
  if (!(positive_l1_ < 1.0)) {
    throw std::invalid_argument("kernel positive part must have L1 norm < 1");
  }
}

double Kernel::eval(double t) const noexcept {
  if (t < 0.0 || t >= support_length_) return 0.0;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const Segment& s) { return v < s.start; });
  if (it == segments_.begin()) return 0.0;
  --it;
  return t < it->end ? it->value : 0.0;
}

bool Kernel::is_nonnegative() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.value >= 0.0; });
}

bool Kernel::cancels_fully(double lambda) const noexcept {
  if (segments_.empty()) return false;
  double covered = 0.0;
  for (const Segment& s : segments_) {
    if (s.start != covered || s.value > -lambda) return false;
    covered = s.end;
  }
  return true;
}

std::string Kernel::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const Segment& s : segments_) {
    mix(s.start);
    mix(s.end);
    mix(s.value);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Kernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) os << ',';
    os << '(' << segments_[i].start << ',' << segments_[i].end << ',' << segments_[i].value << ')';
  }
  os << ']';
  return os.str();
}

Kernel make_kernel(std::vector<Segment> segments) { return Kernel(std::move(segments)); }

Kernel positive_part(const Kernel& kernel) {
  std::vector<Segment> kept;
  for (const Segment& s : kernel.segments()) {
    if (s.value > 0.0) kept.push_back(s);
  }
  return Kernel(std::move(kept));
}

Kernel positive_envelope(std::span<const Kernel> kernels) {
  std::vector<double> cuts;
  for (const Kernel& k : kernels) {
    for (const Segment& s : k.segments()) {
      if (s.value > 0.0) {
        cuts.push_back(s.start);
        cuts.push_back(s.end);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    double v = 0.0;
    for (const Kernel& k : kernels) v = std::max(v, k.eval(mid));
    if (v <= 0.0) continue;
    if (!out.empty() && out.back().end == cuts[i] && out.back().value == v) {
      out.back().end = cuts[i + 1];
    } else {
      out.push_back({cuts[i], cuts[i + 1], v});
    }
  }
  return Kernel(std::move(out));
}

Kernel canceling_kernel(double lambda, double A) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (A == 0.0) return Kernel{};
  return Kernel({{0.0, A, -lambda}});
}

Kernel delayed_canceling_kernel(double lambda, double r, double A) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return Kernel({{r, r + A, -lambda}});
}

}  // namespace hawkes
