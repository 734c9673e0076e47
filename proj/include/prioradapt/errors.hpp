#pragma once

#include <stdexcept>
#include <string>

namespace prioradapt {

// Base class for every error the library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Value construction / validation.
struct InvalidScores : Error { using Error::Error; };        // non-finite or misshaped log-scores
struct InvalidDistribution : Error { using Error::Error; };  // probability vector/matrix invariant broken
struct InvalidLabel : Error { using Error::Error; };         // label index out of range
struct DimensionMismatch : Error { using Error::Error; };

// Token-level label scores.
struct EmptyLabel : Error { using Error::Error; };
struct InvalidTokenProb : Error { using Error::Error; };     // log-probability above zero

// Adaptation / calibration.
struct EmptyTrainingSet : Error { using Error::Error; };
struct ZeroClassCount : Error { using Error::Error; };       // class with no training samples
struct DegeneratePrior : Error { using Error::Error; };      // zero prior mass where a ratio is needed
struct DegenerateColumn : Error { using Error::Error; };     // class that never receives posterior mass
struct DegenerateReference : Error { using Error::Error; };  // zero-entropy reference in normalization

// File I/O.
struct IoError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };

}  // namespace prioradapt
