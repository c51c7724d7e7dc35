// Copyright 2026 The incompat Authors
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

#ifndef INCOMPAT_TEXT_H
#define INCOMPAT_TEXT_H

#include <string>
#include <string_view>
#include <vector>

namespace incompat {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Parses all of `text` as a double. Returns false on empty input or trailing characters.
bool parse_double(std::string_view text, double &out);

/// Whitespace-separated fields.
std::vector<std::string_view> split_fields(std::string_view line);

/// Value of `key=value` in `field`, or false if the field has a different key.
bool key_value(std::string_view field, std::string_view key, std::string_view &value);

}  // namespace incompat

#endif
