// Copyright 2026 The coordcert Authors
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

#ifndef COORDCERT_VARIANT_HPP
#define COORDCERT_VARIANT_HPP

#include <string>
#include <string_view>

namespace coord {

/// Which witness family an inequality derives from.
/// Trig uses the cosine-weighted tridiagonal witness, Alt the integer-valued one.
enum class Variant { Trig, Alt };

std::string_view variant_name(Variant variant);
Variant parse_variant(std::string_view text);

/// Angle pi / (2(n-1)) shared by the Trig witness and its inequalities.
double trig_angle(int n);

}  // namespace coord

#endif
