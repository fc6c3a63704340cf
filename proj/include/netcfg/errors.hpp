// Copyright 2026 The netcfg Authors
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

#ifndef NETCFG_ERRORS_HPP_
#define NETCFG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace netcfg {

// Root of every error thrown by the library. Callers that only need to know
// "something in netcfg failed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NETCFG_DEFINE_ERROR(Name, Base) \
  class Name : public Base {            \
   public:                              \
    using Base::Base;                   \
  }

// Input could not be decoded at all (malformed JSON, unreadable file).
NETCFG_DEFINE_ERROR(ParseError, Error);
// Input decoded but violates a domain invariant.
NETCFG_DEFINE_ERROR(ValidationError, Error);
// A caller broke an operation's precondition.
NETCFG_DEFINE_ERROR(ContractError, Error);

// Model output handling. Both feed the refine loop instead of aborting it.
NETCFG_DEFINE_ERROR(ExtractionError, Error);
NETCFG_DEFINE_ERROR(SchemaError, ExtractionError);
NETCFG_DEFINE_ERROR(MalformedSection, ExtractionError);

// Backend failures.
NETCFG_DEFINE_ERROR(BackendError, Error);
NETCFG_DEFINE_ERROR(BackendUnavailable, BackendError);
NETCFG_DEFINE_ERROR(BackendTimeout, BackendError);
NETCFG_DEFINE_ERROR(EmptyCompletion, BackendError);
NETCFG_DEFINE_ERROR(RuleMiss, BackendError);

NETCFG_DEFINE_ERROR(ApplicabilityError, Error);
NETCFG_DEFINE_ERROR(StorageError, Error);
NETCFG_DEFINE_ERROR(NotFound, Error);

#undef NETCFG_DEFINE_ERROR

}  // namespace netcfg

#endif  // NETCFG_ERRORS_HPP_
