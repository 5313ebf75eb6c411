// Copyright 2026 The ldpmean Authors
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

#ifndef LDPMEAN_STATUS_MACROS_H_
#define LDPMEAN_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define LDPMEAN_STATUS_CONCAT_INNER_(x, y) x##y
#define LDPMEAN_STATUS_CONCAT_(x, y) LDPMEAN_STATUS_CONCAT_INNER_(x, y)

#define LDPMEAN_RETURN_IF_ERROR(expr)      \
  do {                                     \
    const absl::Status _status = (expr);   \
    if (!_status.ok()) return _status;     \
  } while (0)

#define LDPMEAN_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                   \
  if (!statusor.ok()) return statusor.status();              \
  lhs = *std::move(statusor)

// Evaluates `rexpr` (an absl::StatusOr<T>) and either assigns the value to
// `lhs` or returns the error status from the enclosing function.
#define LDPMEAN_ASSIGN_OR_RETURN(lhs, rexpr) \
  LDPMEAN_ASSIGN_OR_RETURN_IMPL_(            \
      LDPMEAN_STATUS_CONCAT_(_statusor_, __LINE__), lhs, rexpr)

#endif  // LDPMEAN_STATUS_MACROS_H_
