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

#ifndef COORDCERT_DAG_IO_HPP
#define COORDCERT_DAG_IO_HPP

#include <string>
#include <string_view>

#include "coordcert/dag.hpp"

namespace coord {

/// Line format: `node <id> <kind> <label>` then `edge <src> <dst>`, sorted by label.
std::string dag_to_text(const CausalDag &dag);
CausalDag dag_from_text(std::string_view text);

std::string dag_to_json(const CausalDag &dag);
CausalDag dag_from_json(std::string_view text);

}  // namespace coord

#endif
