#pragma once

#include "oddconn/graded_poly.hpp"

#include <string_view>

namespace oddconn {

/// Parses the expression grammar used by model files and the CLI:
/// terms over coordinate names, integer and rational literals `p/q`,
/// operators + - *, exponents ^k on even coordinates only, parentheses.
/// Whitespace-insensitive. Errors carry 1-based positions; `line` and
/// `column_offset` shift reported positions for embedded text.
GradedPoly parse_expression(const ChartPtr& chart, std::string_view text, std::size_t line = 1,
                            std::size_t column_offset = 0);

} // namespace oddconn
