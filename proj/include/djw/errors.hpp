// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace djw {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define DJW_ERROR_KIND(name)                                  \
    class name : public Error {                               \
      public:                                                 \
        explicit name(const std::string &what) : Error(what) {} \
    };

DJW_ERROR_KIND(DimensionError)
DJW_ERROR_KIND(SpecError)
DJW_ERROR_KIND(ParameterError)
DJW_ERROR_KIND(ShapeError)
DJW_ERROR_KIND(UnsupportedGateError)
DJW_ERROR_KIND(NotDiagonalError)
DJW_ERROR_KIND(ConnectivityError)
DJW_ERROR_KIND(MissingShapeError)
DJW_ERROR_KIND(SizeError)
DJW_ERROR_KIND(KeyError)
DJW_ERROR_KIND(AnnotationError)
DJW_ERROR_KIND(OrderingError)
DJW_ERROR_KIND(SynthesisError)
DJW_ERROR_KIND(ParseError)
DJW_ERROR_KIND(PermutationError)

#undef DJW_ERROR_KIND

}  // namespace djw
