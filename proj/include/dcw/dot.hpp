#pragma once

#include <string>

#include "dcw/coexpr.hpp"
#include "dcw/decompose.hpp"
#include "dcw/digraph.hpp"

namespace dcw {

std::string to_dot(const Digraph& g);
std::string to_dot(const ExprPtr& e);
std::string to_dot(const PathDecomposition& p);
std::string to_dot(const ArborealDecomposition& d);

}  // namespace dcw
