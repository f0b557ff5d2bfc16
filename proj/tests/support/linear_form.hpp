#pragma once
// Exact symbolic scalar for structure tests: a linear form
//   c0 + c1*E1 + c2*E2 + c3*E3 + c4*w1 + c5*w2 + c6*g1 + c7*g2
// with double coefficients.  Addition/subtraction/scaling are closed and
// exact; products require at least one constant operand; sqrt/abs are only
// defined for constants.  Order comparisons evaluate at a fixed sample point
// (dyadic values, resonance-exact) so ModelParams::validate works, while
// operator== compares the coefficient vectors bitwise.  That makes
// "two matrices compare equal" mean "equal symbol-for-symbol".

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mrjc::testing {

class LinForm {
 public:
  static constexpr int kSymbols = 7;

  LinForm() = default;
  LinForm(double c) { c_[0] = c; }  // NOLINT: implicit by design (Scalar(0) etc.)

  static LinForm symbol(int i) {
    if (i < 0 || i >= kSymbols) throw std::out_of_range("LinForm::symbol");
    LinForm f;
    f.c_[static_cast<std::size_t>(i) + 1] = 1;
    return f;
  }

  static const std::array<const char*, kSymbols>& names() {
    static const std::array<const char*, kSymbols> n{"E1", "E2", "E3", "w1",
                                                     "w2", "g1", "g2"};
    return n;
  }

  // Dyadic sample point with E3 = E2 + w2 holding exactly.
  static const std::array<double, kSymbols>& sample() {
    static const std::array<double, kSymbols> s{0.8125, 0.25,  0.75, 1.5,
                                                0.5,    0.375, 0.6875};
    return s;
  }

  double eval() const {
    double v = c_[0];
    for (int i = 0; i < kSymbols; ++i)
      v += c_[static_cast<std::size_t>(i) + 1] * sample()[static_cast<std::size_t>(i)];
    return v;
  }

  bool is_constant() const {
    for (int i = 1; i <= kSymbols; ++i)
      if (c_[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }

  double coeff(int i) const { return c_.at(static_cast<std::size_t>(i)); }

  LinForm& operator+=(const LinForm& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  LinForm& operator-=(const LinForm& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  LinForm& operator*=(const LinForm& o) { return *this = *this * o; }
  LinForm& operator/=(const LinForm& o) { return *this = *this / o; }

  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a -= b; }
  friend LinForm operator-(const LinForm& a) {
    LinForm r;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = -a.c_[i];
    return r;
  }
  friend LinForm operator*(const LinForm& a, const LinForm& b) {
    if (a.is_constant()) return scaled(b, a.c_[0]);
    if (b.is_constant()) return scaled(a, b.c_[0]);
    throw std::logic_error("LinForm: product of two non-constant forms");
  }
  friend LinForm operator/(const LinForm& a, const LinForm& b) {
    if (!b.is_constant() || b.c_[0] == 0)
      throw std::logic_error("LinForm: division requires a nonzero constant divisor");
    return scaled(a, 1.0 / b.c_[0]);
  }

  friend bool operator==(const LinForm& a, const LinForm& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LinForm& a, const LinForm& b) { return !(a == b); }
  friend bool operator<(const LinForm& a, const LinForm& b) {
    return a.eval() < b.eval();
  }
  friend bool operator>(const LinForm& a, const LinForm& b) { return b < a; }
  friend bool operator<=(const LinForm& a, const LinForm& b) { return !(b < a); }
  friend bool operator>=(const LinForm& a, const LinForm& b) { return !(a < b); }

  friend LinForm sqrt(const LinForm& f) {
    if (!f.is_constant() || f.c_[0] < 0)
      throw std::logic_error("LinForm: sqrt of a non-constant or negative form");
    return LinForm(std::sqrt(f.c_[0]));
  }
  friend LinForm abs(const LinForm& f) {
    if (!f.is_constant()) throw std::logic_error("LinForm: abs of a non-constant form");
    return LinForm(std::abs(f.c_[0]));
  }

  friend std::ostream& operator<<(std::ostream& os, const LinForm& f) {
    bool any = false;
    if (f.c_[0] != 0) {
      os << f.c_[0];
      any = true;
    }
    for (int i = 0; i < kSymbols; ++i) {
      const double c = f.c_[static_cast<std::size_t>(i) + 1];
      if (c == 0) continue;
      if (any) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const double m = std::abs(c);
      if (m != 1) os << m << "*";
      os << names()[static_cast<std::size_t>(i)];
      any = true;
    }
    if (!any) os << "0";
    return os;
  }

 private:
  static LinForm scaled(const LinForm& f, double s) {
    LinForm r;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f.c_[i] * s;
    return r;
  }

  std::array<double, kSymbols + 1> c_{};  // c_[0] is the constant term
};

inline std::string to_string(const LinForm& f) {
  std::ostringstream os;
  os << f;
  return os.str();
}

}  // namespace mrjc::testing

namespace Eigen {

template <>
struct NumTraits<mrjc::testing::LinForm> {
  using Self = mrjc::testing::LinForm;
  using Real = Self;
  using NonInteger = Self;
  using Nested = Self;
  using Literal = Self;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 8,
    MulCost = 8
  };
  static Self epsilon() { return Self(0); }
  static Self dummy_precision() { return Self(0); }
  static Self highest() { return Self(std::numeric_limits<double>::max()); }
  static Self lowest() { return Self(std::numeric_limits<double>::lowest()); }
  static int digits10() { return std::numeric_limits<double>::digits10; }
};

}  // namespace Eigen
