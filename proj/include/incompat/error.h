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

#ifndef INCOMPAT_ERROR_H
#define INCOMPAT_ERROR_H

#include <stdexcept>
#include <string>

namespace incompat {

enum class ErrorKind {
    NotHermitian,
    DimensionMismatch,
    InvalidObservable,
    InvalidState,
    ReservedBetaKey,
    InfeasibleBeta,
    DegenerateBasis,
    EmptyDataset,
    DegenerateDenominator,
    BudgetExceeded,
    ParseError,
    InvalidArgument,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the named kinds above.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &detail);
    ErrorKind kind() const {
        return kind_;
    }
    const char *name() const {
        return error_kind_name(kind_);
    }

   private:
    ErrorKind kind_;
};

}  // namespace incompat

#endif
