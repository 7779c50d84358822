#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "besov/config.hpp"
#include "besov/families.hpp"
#include "besov/function.hpp"
#include "besov/measures.hpp"

namespace besov::cli {

// Parsed form of a function spec string.
//
//   spec    := family | call
//   family  := name ":" key "=" number         e.g. cayley:n=4, resolvent:a=1+2i
//   call    := "sum(" spec ("," spec)* ")"
//            | "product(" spec ("," spec)* ")"
//            | "shift(" number "," spec ")"      f(z + a)
//            | "rescale(" number "," spec ")"    f(b z)
//            | "scale(" number "," spec ")"      c f
//            | "deriv(" spec ")"                 f'
//   number  := real | complex literal such as 1-2.5i, 3i, -i
struct FunctionSpec {
  enum class Op { Family, Sum, Product, Shift, Rescale, Scale, Derivative };

  Op op = Op::Family;
  NamedFamily family;
  cplx parameter{0.0, 0.0};
  std::vector<FunctionSpec> args;

  HalfPlaneFunction function() const;
  // The representing measure when every leaf has one (all families except
  // regexp) and no derivative is taken.
  std::optional<RadonMeasure> measure(const QuadratureConfig& cfg) const;
  std::string text() const;
};

FunctionSpec parse_function_spec(const std::string& text);
cplx parse_complex(const std::string& text);

}  // namespace besov::cli
