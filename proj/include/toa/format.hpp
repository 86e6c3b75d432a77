// Copyright 2026 The toa-firstclick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOA_FORMAT_HPP
#define TOA_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace toa {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_shortest(double value);

/// printf-style %.<digits>g in the C locale ('.' separator).
std::string format_significant(double value, int digits);

/// Parses a complete token as a double; accepts "p/q" fractions.  Returns
/// nullopt on trailing garbage, empty input or a zero denominator.
std::optional<double> parse_number(std::string_view text);

}  // namespace toa

#endif  // TOA_FORMAT_HPP
