#pragma once

#include <string_view>
#include <vector>

namespace qwork::cli {

// Evaluates a scalar expression such as "3pi/4", "-0.5", "sqrt(2)/2" or
// "pi/5 + 0.1". Supports + - * /, parentheses, unary signs, the constant pi,
// the functions sqrt, sin, cos, tan, exp and log, and implicit
// multiplication between a number and a following name ("2pi"). Throws
// InvalidArgument with the offending position on malformed input.
double eval_expression(std::string_view text);

// Comma-separated list of expressions.
std::vector<double> eval_list(std::string_view text);

}  // namespace qwork::cli
