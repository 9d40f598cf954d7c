/*
   Copyright 2026 The wicklab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef WICKLAB_PARSE_HPP
#define WICKLAB_PARSE_HPP

#include "wicklab/polynomial.hpp"

namespace wicklab {

/// Parses an expression over the given variables into an exact (or float)
/// polynomial. Grammar: rationals `p/q`, decimals, the imaginary unit `i`,
/// declared variable names, `+ - * ^` and parentheses; `^` takes nonnegative
/// integer exponents. Decimals become exact rationals on the exact backend.
/// Errors carry 1-based line/column positions.
Polynomial parse_expression(const std::string& text, const std::vector<std::string>& variables,
                            Backend backend = Backend::Exact);

}  // namespace wicklab

#endif
