#pragma once

#include <stdexcept>
#include <string>

namespace thetasat {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidAssignment : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyGraph : std::invalid_argument {
  EmptyGraph() : std::invalid_argument("graph has no edges") {}
};

struct EmptyWeight : std::invalid_argument {
  EmptyWeight() : std::invalid_argument("weights sum to zero") {}
};

struct EmptyHypergraph : std::invalid_argument {
  EmptyHypergraph() : std::invalid_argument("hypergraph has no edges") {}
};

}  // namespace thetasat
