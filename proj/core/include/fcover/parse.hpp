#pragma once

#include <stdexcept>
#include <string>

#include "fcover/expr.hpp"

namespace fcover {

/* Expression grammar (whitespace insensitive, reals in decimal or
 * scientific notation):
 *
 *   expr  := gauss(a) | gauss2(a11,a12,a22)
 *          | ind_box(lo,hi) | ind_box2(lo1,hi1,lo2,hi2)
 *          | ind_ball(p,r) | expnorm(p,c)           -- p in {1, 2, inf}
 *          | one
 *          | translate(e, a1 [, a2])
 *          | reflect(e)
 *          | linmap(e, a11 [, a12, a21, a22])
 *          | scale(e, a) | hscale(e, lambda)
 *          | prod(e1, e2) | pow(e, a)
 */

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    size_t position() const { return position_; }

private:
    size_t position_;
};

/// Parses the grammar above. Throws ParseError with a position on syntax
/// errors; parameter-domain violations (lambda > 1, non-positive-definite
/// gaussian, ...) surface as ParseError as well.
FunctionExpr parse_expr(const std::string& text);

}  // namespace fcover
