// Copyright 2026 The tcctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// -----------------------------------------------------------------------------

#include "tcctl/error.h"

namespace tcctl {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArgument: return "argument error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kTruncation: return "truncation error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kDegenerateFit: return "degenerate fit";
    case ErrorKind::kCalibration: return "calibration error";
    case ErrorKind::kSequencing: return "sequencing error";
    case ErrorKind::kMeasurement: return "measurement error";
    case ErrorKind::kBackend: return "backend error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace tcctl
