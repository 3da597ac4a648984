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

#ifndef COORDCERT_FORMAT_HPP
#define COORDCERT_FORMAT_HPP

#include <string>

namespace coord {

constexpr int kDefaultPrecision = 12;

/// Formats a real with `significant` digits in %g style. Negative zero prints as "0".
std::string format_real(double value, int significant = kDefaultPrecision);

}  // namespace coord

#endif
