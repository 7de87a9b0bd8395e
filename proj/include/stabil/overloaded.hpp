#pragma once

namespace stabil {

/// Visitor built from a set of lambdas.
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace stabil
