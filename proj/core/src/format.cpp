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

#include "coordcert/format.hpp"

#include <cstdio>

#include "coordcert/error.hpp"

namespace coord {

std::string format_real(double value, int significant) {
    if (significant < 1 || significant > 17) {
        fail(ErrorCode::InvalidArgument, "precision must be in [1, 17], got " + std::to_string(significant));
    }
    if (value == 0.0) {
        value = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
    return buf;
}

}  // namespace coord
