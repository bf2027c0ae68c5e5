#pragma once

#include <string>
#include <vector>

#include "merlin/ast.hpp"
#include "merlin/metric_catalog.hpp"
#include "merlin/semantics.hpp"

namespace merlin {

struct Parameter {
  std::string name;
  Sort sort;
};

struct SynthesisTask {
  std::string name = "f";
  Logic logic = Logic::Strings;
  std::uint32_t width = 0;  // bit-vector tasks only
  std::vector<Parameter> params;
  Sort result;
  Grammar grammar;
  ExampleSet examples;
};

}  // namespace merlin
