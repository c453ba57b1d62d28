// Copyright 2026 The qdesign Authors
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

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qdesign::csv {

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// Shortest round-tripping decimal form of x ("nan", "inf" and "-inf" for
/// non-finite values).
std::string format_double(double x);

/// A table with a mandatory header. Comment lines are written first, each
/// prefixed with '#'.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  std::string str() const;
};

}  // namespace qdesign::csv
