#include "crn/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace crn {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }

  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(Integer(s));

  // decimal literal: digits.digits converted exactly
  std::string head = s.substr(0, dot);
  std::string tail = s.substr(dot + 1);
  bool negative = !head.empty() && head[0] == '-';
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) head.erase(0, 1);
  if (head.empty()) head = "0";
  if (tail.empty()) tail = "0";
  for (char c : head + tail)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed rational '" + text + "'");
  Integer scale = 1;
  for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
  Rational value(Integer(head) * scale + Integer(tail), scale);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  std::ostringstream out;
  if (denominator(value) == 1)
    out << numerator(value);
  else
    out << numerator(value) << '/' << denominator(value);
  return out.str();
}

std::string to_string(const VectorXq& value) {
  std::string out = "(";
  for (Index i = 0; i < value.size(); ++i) {
    if (i) out += ", ";
    out += to_string(value[i]);
  }
  return out + ")";
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Eigen::MatrixXd to_double(const MatrixXq& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

Eigen::VectorXd to_double(const VectorXq& v) {
  Eigen::VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

VectorXq primitive_integer(const VectorXq& v) {
  Integer denom_lcm = 1;
  for (Index i = 0; i < v.size(); ++i)
    denom_lcm = lcm(denom_lcm, denominator(v[i]));
  Integer num_gcd = 0;
  for (Index i = 0; i < v.size(); ++i)
    num_gcd = gcd(num_gcd, Integer(numerator(v[i]) * (denom_lcm / denominator(v[i]))));
  if (num_gcd == 0) return v;
  VectorXq out(v.size());
  Rational scale(denom_lcm, num_gcd);
  for (Index i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
  return out;
}

}  // namespace crn
