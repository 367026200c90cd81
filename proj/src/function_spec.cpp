#include "subhyp/function_spec.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "subhyp/errors.hpp"

namespace subhyp {

class SpecParser {
 public:
  using Term = FunctionSpec::Term;
  using Terms = std::vector<Term>;

  explicit SpecParser(const std::string& s) : s_(s) {}

  Terms run() {
    Terms t = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::InvalidArgument,
                what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool word(const char* w) {
    skip();
    const std::string ws(w);
    if (s_.compare(pos_, ws.size(), ws) != 0) return false;
    const std::size_t end = pos_ + ws.size();
    if (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'x' || c == 'y' ||
           s_.compare(pos_, 3, "sin") == 0 || s_.compare(pos_, 3, "cos") == 0 ||
           s_.compare(pos_, 2, "pi") == 0;
  }

  double number() {
    skip();
    if (word("pi")) return std::numbers::pi;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s_.substr(pos_), &used);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    pos_ += used;
    return v;
  }

  int integer_power() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  static Terms multiply(const Terms& a, const Terms& b) {
    Terms out;
    for (const Term& p : a)
      for (const Term& q : b) {
        Term t = p;
        t.coef *= q.coef;
        t.ax += q.ax;
        t.ay += q.ay;
        t.tx.insert(t.tx.end(), q.tx.begin(), q.tx.end());
        t.ty.insert(t.ty.end(), q.ty.begin(), q.ty.end());
        out.push_back(std::move(t));
      }
    return out;
  }

  Terms sum() {
    Terms out;
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    while (true) {
      Terms p = product();
      if (negate)
        for (Term& t : p) t.coef = -t.coef;
      out.insert(out.end(), p.begin(), p.end());
      if (eat('+')) negate = false;
      else if (eat('-')) negate = true;
      else break;
    }
    return out;
  }

  // Factors joined by '*' or by juxtaposition ("3 x^2 y").
  Terms product() {
    Terms acc = factor();
    while (true) {
      if (eat('*')) acc = multiply(acc, factor());
      else if (starts_factor()) acc = multiply(acc, factor());
      else break;
    }
    return acc;
  }

  Terms factor() {
    skip();
    if (eat('(')) {
      Terms inner = sum();
      if (!eat(')')) fail("expected ')'");
      if (eat('^')) {
        const int n = integer_power();
        Terms r{Term{}};
        for (int i = 0; i < n; ++i) r = multiply(r, inner);
        return r;
      }
      return inner;
    }
    if (word("sin")) return trig(true);
    if (word("cos")) return trig(false);
    if (word("x") || word("y")) {
      const bool is_x = s_[pos_ - 1] == 'x';
      int n = 1;
      if (eat('^')) n = integer_power();
      Term t;
      (is_x ? t.ax : t.ay) = n;
      return {t};
    }
    Term t;
    t.coef = number();
    return {t};
  }

  // sin( [c [*]] x ) with c a product of numbers and pi, possibly negative.
  Terms trig(bool sine) {
    if (!eat('(')) fail("expected '(' after sin/cos");
    double omega = 1.0;
    if (eat('-')) omega = -1.0;
    while (true) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'y') &&
          (pos_ + 1 >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_ + 1]))))
        break;
      omega *= number();
      eat('*');
    }
    const bool is_x = s_[pos_] == 'x';
    ++pos_;
    if (!eat(')')) fail("expected ')' after the trigonometric argument");
    Term t;
    (is_x ? t.tx : t.ty).push_back({sine, omega});
    return {t};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

FunctionSpec FunctionSpec::parse(const std::string& text) {
  FunctionSpec f;
  f.text_ = text;
  for (Term& t : SpecParser(text).run())
    if (t.coef != 0.0) f.terms_.push_back(std::move(t));
  return f;
}

namespace {

double trig_value(bool sine, double omega, double v) {
  return sine ? std::sin(omega * v) : std::cos(omega * v);
}

double power(double v, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= v;
  return r;
}

}  // namespace

double FunctionSpec::operator()(Point p) const {
  double total = 0.0;
  for (const Term& t : terms_) {
    double v = t.coef * power(p.x, t.ax) * power(p.y, t.ay);
    for (const Trig& g : t.tx) v *= trig_value(g.sine, g.omega, p.x);
    for (const Trig& g : t.ty) v *= trig_value(g.sine, g.omega, p.y);
    total += v;
  }
  return total;
}

std::vector<FunctionSpec::Term> FunctionSpec::differentiate(const std::vector<Term>& terms, bool in_x) {
  std::vector<Term> out;
  for (const Term& t : terms) {
    const int a = in_x ? t.ax : t.ay;
    if (a > 0) {
      Term d = t;
      d.coef *= a;
      (in_x ? d.ax : d.ay) = a - 1;
      out.push_back(std::move(d));
    }
    const auto& trigs = in_x ? t.tx : t.ty;
    for (std::size_t i = 0; i < trigs.size(); ++i) {
      Term d = t;
      auto& g = (in_x ? d.tx : d.ty)[i];
      d.coef *= g.sine ? g.omega : -g.omega;
      g.sine = !g.sine;
      if (d.coef != 0.0) out.push_back(std::move(d));
    }
  }
  return out;
}

FunctionSpec FunctionSpec::derivative(int i, int j) const {
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  FunctionSpec d;
  d.text_ = "D^(" + std::to_string(i) + "," + std::to_string(j) + ")[" + text_ + "]";
  d.terms_ = terms_;
  for (int s = 0; s < i; ++s) d.terms_ = differentiate(d.terms_, true);
  for (int s = 0; s < j; ++s) d.terms_ = differentiate(d.terms_, false);
  return d;
}

double FunctionSpec::derivative(int i, int j, Point p) const { return derivative(i, j)(p); }

int FunctionSpec::polynomial_degree() const {
  int deg = 0;
  for (const Term& t : terms_) {
    if (!t.tx.empty() || !t.ty.empty()) return -1;
    deg = std::max(deg, t.ax + t.ay);
  }
  return deg;
}

}  // namespace subhyp
