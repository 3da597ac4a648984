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

#ifndef COORDCERT_ERROR_HPP
#define COORDCERT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace coord {

enum class ErrorCode {
    InvalidArity,
    InvalidArgument,
    Domain,
    UnsupportedVariant,
    SupportViolation,
    IncompleteBundle,
    OutOfRegion,
    Parse,
    TypeMismatch,
    Broadcast,
    Cycle,
    OpenCircuit,
    BoundExceeded,
    Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. `code()` identifies the category.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

}  // namespace coord

#endif
