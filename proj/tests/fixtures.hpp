// Shared presentation fixtures for the test suites.
#pragma once

#include <string>

#include "ccgp/cycle.hpp"
#include "ccgp/word.hpp"

namespace ccgp_tests {

inline ccgp::Presentation flower_presentation(int n, const ccgp::VertexGroupSpec& spec) {
  return ccgp::Presentation(ccgp::make_flower(n), spec);
}

// Parse a word over p; shorthand for tests.
inline ccgp::Word W(const ccgp::Presentation& p, const std::string& text) {
  return ccgp::parse_word(p, text);
}

}  // namespace ccgp_tests
