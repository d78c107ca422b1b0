// Copyright 2026 The probe-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROBEKIT_ERRORS_HPP_
#define PROBEKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace probekit {

// Precondition violated by the caller: foreign element, dependent set,
// point outside a polytope, malformed input.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Requested an exact computation on an input larger than the exact mode
// supports (subset enumeration, dynamic programming over 3^n states, ...).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

// An internal invariant failed. Never expected to fire; carries whatever
// diagnostic payload the thrower could assemble.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what, std::string dump = {})
      : std::logic_error(what), dump_(std::move(dump)) {}
  const std::string& dump() const { return dump_; }

 private:
  std::string dump_;
};

}  // namespace probekit

#endif  // PROBEKIT_ERRORS_HPP_
