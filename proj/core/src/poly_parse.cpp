#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "fockangle/errors.hpp"
#include "fockangle/polynomial.hpp"

namespace fockangle {

namespace {

class Parser {
public:
  Parser(std::string_view text, int d) : text_(text), d_(d) {}

  HomogeneousPoly parse() {
    struct Term {
      Scalar coeff;
      std::vector<int> exponents;
      std::size_t pos;
    };
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Scalar sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1.0 : 1.0;
    }
    while (true) {
      skip_ws();
      const std::size_t start = pos_;
      auto [coeff, exponents] = term();
      terms.push_back({sign * coeff, std::move(exponents), start});
      skip_ws();
      if (at_end()) break;
      const char c = get();
      if (c != '+' && c != '-') fail("expected '+' or '-' between terms", pos_ - 1);
      sign = c == '-' ? -1.0 : 1.0;
    }

    int degree = -1;
    for (const auto& t : terms) {
      int deg = 0;
      for (int e : t.exponents) deg += e;
      if (degree < 0) {
        degree = deg;
      } else if (deg != degree) {
        std::ostringstream os;
        os << "inhomogeneous polynomial: term has degree " << deg << ", expected " << degree;
        fail(os.str(), t.pos);
      }
    }
    HomogeneousPoly p(d_, degree);
    for (auto& t : terms) p.add_term(MultiIndex(std::move(t.exponents)), t.coeff);
    return p;
  }

private:
  std::pair<Scalar, std::vector<int>> term() {
    std::vector<int> exponents(static_cast<std::size_t>(d_), 0);
    Scalar coeff = 1.0;
    bool any = false;
    if (auto c = coefficient()) {
      coeff = *c;
      any = true;
    }
    while (true) {
      skip_ws();
      const std::size_t save = pos_;
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
      }
      if (at_end() || !is_variable_start(peek())) {
        if (pos_ != save) fail("expected a variable after '*'");
        break;
      }
      const int var = variable();
      int power = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        power = integer("exponent");
      }
      exponents[static_cast<std::size_t>(var)] += power;
      any = true;
    }
    if (!any) fail("expected a coefficient or a variable");
    return {coeff, std::move(exponents)};
  }

  bool is_variable_start(char c) const { return c == 'x' || c == 'y' || c == 'z'; }

  int variable() {
    const std::size_t start = pos_;
    const char c = get();
    if (c == 'x' && !at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const int index = integer("variable index");
      if (index < 1 || index > d_) {
        std::ostringstream os;
        os << "variable x" << index << " is outside x1..x" << d_;
        fail(os.str(), start);
      }
      return index - 1;
    }
    if (d_ > 3) fail("the aliases x, y, z are only available for at most 3 variables", start);
    const int index = c == 'x' ? 0 : c == 'y' ? 1 : 2;
    if (index >= d_) {
      std::ostringstream os;
      os << "variable '" << c << "' is outside the " << d_ << " available variables";
      fail(os.str(), start);
    }
    return index;
  }

  std::optional<Scalar> coefficient() {
    skip_ws();
    if (at_end()) return std::nullopt;
    if (peek() == '(') {
      ++pos_;
      const Scalar z = complex_literal();
      skip_ws();
      if (at_end() || get() != ')') fail("expected ')'", pos_ - (at_end() ? 0 : 1));
      return z;
    }
    if (peek() == 'i') {
      ++pos_;
      return Scalar(0, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      const double r = real();
      if (!at_end() && peek() == 'i') {
        ++pos_;
        return Scalar(0, r);
      }
      return Scalar(r, 0);
    }
    return std::nullopt;
  }

  // a, a+bi, a-bi, bi, i, -i, with optional leading sign.
  Scalar complex_literal() {
    skip_ws();
    double sign = 1.0;
    if (!at_end() && (peek() == '+' || peek() == '-')) sign = get() == '-' ? -1.0 : 1.0;
    skip_ws();
    if (!at_end() && peek() == 'i') {
      ++pos_;
      return Scalar(0, sign);
    }
    const double first = sign * real();
    if (!at_end() && peek() == 'i') {
      ++pos_;
      return Scalar(0, first);
    }
    skip_ws();
    if (at_end() || (peek() != '+' && peek() != '-')) return Scalar(first, 0);
    const double sign2 = get() == '-' ? -1.0 : 1.0;
    skip_ws();
    double imag = 1.0;
    if (!at_end() && peek() != 'i') imag = real();
    if (at_end() || get() != 'i') fail("expected 'i' after the imaginary part", pos_ - (at_end() ? 0 : 1));
    return Scalar(first, sign2 * imag);
  }

  double real() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  int integer(const char* what) {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin || value < 0) fail(std::string("expected a nonnegative integer ") + what);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }
  [[noreturn]] void fail(const std::string& message, std::size_t pos) const {
    std::ostringstream os;
    os << "polynomial parse error at position " << pos << ": " << message << " in \"" << text_ << "\"";
    throw InputError(os.str());
  }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

HomogeneousPoly parse_polynomial(std::string_view text, int d) {
  if (d < 1) throw InputError("parse_polynomial: need at least one variable");
  return Parser(text, d).parse();
}

}  // namespace fockangle
