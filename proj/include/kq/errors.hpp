/*
   Copyright 2025 The kq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace kq {

class Error : public std::runtime_error {
  public:
    Error(const char* kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    const char* kind() const noexcept { return kind_; }

  private:
    const char* kind_;
};

#define KQ_DEFINE_ERROR(Name) \
    struct Name : Error {     \
        explicit Name(const std::string& w) : Error(#Name, w) {} \
    };

KQ_DEFINE_ERROR(ShapeError)
KQ_DEFINE_ERROR(DivisionByZero)
KQ_DEFINE_ERROR(ContextError)
KQ_DEFINE_ERROR(GaugeError)
KQ_DEFINE_ERROR(StabilityError)
KQ_DEFINE_ERROR(GenerationError)
KQ_DEFINE_ERROR(ValidationError)
KQ_DEFINE_ERROR(BoundError)
KQ_DEFINE_ERROR(WindowError)
KQ_DEFINE_ERROR(NotInFamilyError)
KQ_DEFINE_ERROR(WrongOrderingError)
KQ_DEFINE_ERROR(NotDimOneFamilyError)
KQ_DEFINE_ERROR(ParseError)

#undef KQ_DEFINE_ERROR

}  // namespace kq
