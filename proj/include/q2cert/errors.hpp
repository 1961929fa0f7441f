#ifndef Q2CERT_ERRORS_HPP
#define Q2CERT_ERRORS_HPP

#include <stdexcept>

namespace q2cert {

/// A theorem or lemma was invoked outside its hypotheses.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lemma's conclusion failed on input satisfying its hypotheses. This
/// indicates a bug, never a property of the input.
class LemmaContradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical solve did not reach its residual target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A randomized construction exhausted its retry budget, or its output
/// failed verification.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace q2cert

#endif
