#pragma once

namespace slitwave {

/// Kahan-compensated accumulator. Works for double and std::complex<double>
/// (the error-free transform is componentwise for complex addition).
template <typename Value>
struct CompensatedSum {
  Value sum{};
  Value compensation{};

  void add(const Value& value) {
    const Value y = value - compensation;
    const Value t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  Value value() const { return sum; }
};

}  // namespace slitwave
