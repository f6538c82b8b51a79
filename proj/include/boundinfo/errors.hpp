#pragma once

#include <stdexcept>
#include <string>

namespace boundinfo {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// dist-core
class NormalizationError : public Error { using Error::Error; };
class AlphabetError : public Error { using Error::Error; };
class NameCollisionError : public Error { using Error::Error; };
class UnknownRegisterError : public Error { using Error::Error; };
class ZeroProbabilityError : public Error { using Error::Error; };
class OwnershipError : public Error { using Error::Error; };

// info-measures
class OverlapError : public Error { using Error::Error; };
class AlphabetMismatchError : public Error { using Error::Error; };
class SearchBudgetError : public Error { using Error::Error; };

// lopc-protocols
class ShapeError : public Error { using Error::Error; };
class DisconnectedGraphError : public Error { using Error::Error; };

// quantum-core
class LabelError : public Error { using Error::Error; };
class IndexError : public Error { using Error::Error; };
class BasisError : public Error { using Error::Error; };
class NumericalRankError : public Error { using Error::Error; };

// cli
class UnknownTableError : public Error { using Error::Error; };
class UnknownProtocolError : public Error { using Error::Error; };

}  // namespace boundinfo
