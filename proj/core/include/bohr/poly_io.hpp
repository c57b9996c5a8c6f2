#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bohr/polynomial.hpp"

namespace bohr {

// Line-oriented text form of a polynomial:
//
//   dim 2
//   kind matrix 2                 # or: kind scalar (the default)
//   id my-poly                    # optional
//   sup 2 space lq:q=inf:n=2      # optional known sup norm, repeatable space
//   a 0,0 = matrix[[(1,0),(0,0)],[(0,0),(2,0)]]
//   a 1,0 = 0.5,0                 # scalar: re,im
//   b 0,1 = 1
//
// `#` starts a comment; a line `---` separates polynomials in a family.
PluriharmonicPoly parse_polynomial(std::string_view text);
std::vector<PluriharmonicPoly> parse_family(std::string_view text);
std::vector<PluriharmonicPoly> read_family_file(const std::string& path);

std::string format_polynomial(const PluriharmonicPoly& f);
std::string format_family(const std::vector<PluriharmonicPoly>& family);

}  // namespace bohr
