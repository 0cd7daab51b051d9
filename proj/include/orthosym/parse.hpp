#pragma once

#include "orthosym/combinatorics.hpp"
#include "orthosym/common.hpp"

#include <string>
#include <vector>

namespace orthosym {

// "2", "-1.5e-3", "3+i", "2-0.5i", "i", "-2i" -> complex number.
cd parse_complex(const std::string& text);

// Comma-separated lists; surrounding whitespace and brackets are ignored.
std::vector<cd> parse_complex_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// One-line permutation "2,1,4,3" (or "[2,1,4,3]").
Perm parse_perm(const std::string& text);

// "a+bi" rendering that parse_complex reads back exactly.
std::string format_complex(cd z);

} // namespace orthosym
