// Error taxonomy shared across the library.
//
// Failures a caller is expected to branch on carry a machine-checkable tag;
// the what() string is for humans only.
#pragma once

#include <stdexcept>
#include <string>

namespace ccgp {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input: graph files, word literals, automorphism files.
struct ParseError : Error {
  using Error::Error;
};

// An element payload used with a group spec of a different kind, a word used
// with a presentation it does not belong to, or a descriptor that does not
// match the group it is declared for.
struct SpecMismatch : Error {
  using Error::Error;
};

// A word's support leaves the vertex set an operation requires.
struct SupportViolation : Error {
  using Error::Error;
};

// A bounded search ran out of budget before it could certify an answer.
struct BudgetExhausted : Error {
  using Error::Error;
};

// Which precondition of a decomposition operation failed.
enum class Hypothesis {
  GSupport,         // support of g outside its allowed block
  HSupport,         // support of h outside its allowed block
  KSupport,         // support of k outside its allowed block
  ProductSupport,   // support of the product meets the forbidden set
  InteriorShuffle,  // interior syllables of g cannot all shuffle to the tail
  SeparatorShuffle, // separator syllables of g cannot all shuffle to the tail
  MembershipA,      // leading factor lands outside its stated subgroup
  MembershipB,      // trailing factor lands outside its stated subgroup
  CycleLength,      // tuple length differs from the clique-cycle length
  CycleSupport,     // some x_i is supported outside C_i union C_{i+1}
  CycleProduct,     // the cyclic product is not the identity
  ResidueBlock,     // trailing six-block residue of some x_i is nontrivial
  BlockPairing,     // interior blocks of consecutive x_i do not cancel
  BlockTriple,      // separator blocks of consecutive x_i do not cancel
};

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::GSupport: return "g-support";
    case Hypothesis::HSupport: return "h-support";
    case Hypothesis::KSupport: return "k-support";
    case Hypothesis::ProductSupport: return "product-support";
    case Hypothesis::InteriorShuffle: return "interior-shuffle";
    case Hypothesis::SeparatorShuffle: return "separator-shuffle";
    case Hypothesis::MembershipA: return "membership-a";
    case Hypothesis::MembershipB: return "membership-b";
    case Hypothesis::CycleLength: return "cycle-length";
    case Hypothesis::CycleSupport: return "cycle-support";
    case Hypothesis::CycleProduct: return "cycle-product";
    case Hypothesis::ResidueBlock: return "residue-block";
    case Hypothesis::BlockPairing: return "block-pairing";
    case Hypothesis::BlockTriple: return "block-triple";
  }
  return "unknown";
}

// A decomposition operation rejected its input because a stated precondition
// does not hold.  `which` identifies the precondition.
struct HypothesisViolation : Error {
  Hypothesis which;
  HypothesisViolation(Hypothesis w, const std::string& msg)
      : Error(std::string(to_string(w)) + ": " + msg), which(w) {}
};

}  // namespace ccgp
