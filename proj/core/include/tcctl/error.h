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
//
// Error types shared by every module. Each class maps to one failure
// category so the command-line tool can pick a distinct exit code.

#ifndef TCCTL_ERROR_H_
#define TCCTL_ERROR_H_

#include <stdexcept>
#include <string>

namespace tcctl {

enum class ErrorKind {
  kArgument,
  kRange,
  kTruncation,
  kParse,
  kFormat,
  kConfiguration,
  kDegenerateFit,
  kCalibration,
  kSequencing,
  kMeasurement,
  kBackend,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define TCCTL_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& msg) : Error(ErrorKind::Kind, msg) {} \
  }

TCCTL_DEFINE_ERROR(ArgumentError, kArgument);
TCCTL_DEFINE_ERROR(RangeError, kRange);
TCCTL_DEFINE_ERROR(TruncationError, kTruncation);
TCCTL_DEFINE_ERROR(ParseError, kParse);
TCCTL_DEFINE_ERROR(FormatError, kFormat);
TCCTL_DEFINE_ERROR(ConfigurationError, kConfiguration);
TCCTL_DEFINE_ERROR(DegenerateFitError, kDegenerateFit);
TCCTL_DEFINE_ERROR(CalibrationError, kCalibration);
TCCTL_DEFINE_ERROR(SequencingError, kSequencing);
TCCTL_DEFINE_ERROR(MeasurementError, kMeasurement);
TCCTL_DEFINE_ERROR(BackendError, kBackend);
TCCTL_DEFINE_ERROR(IoError, kIo);

#undef TCCTL_DEFINE_ERROR

}  // namespace tcctl

#endif  // TCCTL_ERROR_H_
