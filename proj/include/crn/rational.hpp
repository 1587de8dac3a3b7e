#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>

namespace crn {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using Index = Eigen::Index;

using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVectorXq = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

/// Parses "3", "-2/7", or a decimal like "0.25" without going through floats.
Rational parse_rational(const std::string& text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const VectorXq& value);

double to_double(const Rational& value);
Eigen::MatrixXd to_double(const MatrixXq& m);
Eigen::VectorXd to_double(const VectorXq& v);

/// Scales a nonzero rational vector to a coprime integer vector, keeping direction.
VectorXq primitive_integer(const VectorXq& v);

}  // namespace crn
