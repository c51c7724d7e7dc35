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

#include "incompat/error.h"

namespace incompat {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::InvalidObservable:
            return "InvalidObservable";
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::ReservedBetaKey:
            return "ReservedBetaKey";
        case ErrorKind::InfeasibleBeta:
            return "InfeasibleBeta";
        case ErrorKind::DegenerateBasis:
            return "DegenerateBasis";
        case ErrorKind::EmptyDataset:
            return "EmptyDataset";
        case ErrorKind::DegenerateDenominator:
            return "DegenerateDenominator";
        case ErrorKind::BudgetExceeded:
            return "BudgetExceeded";
        case ErrorKind::ParseError:
            return "ParseError";
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {
}

}  // namespace incompat
