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

#include "coordcert/error.hpp"

namespace coord {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArity:
            return "invalid-arity";
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::Domain:
            return "domain";
        case ErrorCode::UnsupportedVariant:
            return "unsupported-variant";
        case ErrorCode::SupportViolation:
            return "support-violation";
        case ErrorCode::IncompleteBundle:
            return "incomplete-bundle";
        case ErrorCode::OutOfRegion:
            return "out-of-region";
        case ErrorCode::Parse:
            return "parse";
        case ErrorCode::TypeMismatch:
            return "type-mismatch";
        case ErrorCode::Broadcast:
            return "broadcast";
        case ErrorCode::Cycle:
            return "cycle";
        case ErrorCode::OpenCircuit:
            return "open-circuit";
        case ErrorCode::BoundExceeded:
            return "bound-exceeded";
        case ErrorCode::Internal:
            return "internal";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace coord
