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

#include "coordcert/variant.hpp"

#include <cmath>
#include <numbers>

#include "coordcert/error.hpp"

namespace coord {

std::string_view variant_name(Variant variant) {
    return variant == Variant::Trig ? "trig" : "alt";
}

Variant parse_variant(std::string_view text) {
    if (text == "trig") {
        return Variant::Trig;
    }
    if (text == "alt") {
        return Variant::Alt;
    }
    fail(ErrorCode::InvalidArgument, "unknown variant '" + std::string(text) + "' (expected trig or alt)");
}

double trig_angle(int n) {
    if (n < 2) {
        fail(ErrorCode::InvalidArity, "angle needs n >= 2, got " + std::to_string(n));
    }
    return std::numbers::pi / (2.0 * (n - 1));
}

}  // namespace coord
