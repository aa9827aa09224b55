#include "orbitmc/types.hpp"

namespace orbitmc {

namespace {
Tolerances g_tolerances;
}

const Tolerances& tolerances() { return g_tolerances; }

void set_tolerances(const Tolerances& tol) { g_tolerances = tol; }

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonStochastic: return "NonStochastic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ReferenceMismatch: return "ReferenceMismatch";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::NotStationary: return "NotStationary";
    case ErrorCode::AllSingletons: return "AllSingletons";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::ThetaDegenerate: return "ThetaDegenerate";
    case ErrorCode::NotCentered: return "NotCentered";
    case ErrorCode::SingularFundamentalMatrix: return "SingularFundamentalMatrix";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::QNotInvariant: return "QNotInvariant";
    case ErrorCode::MassNotDominant: return "MassNotDominant";
    case ErrorCode::WrongPartitionShape: return "WrongPartitionShape";
    case ErrorCode::NegativeInducedEntry: return "NegativeInducedEntry";
    case ErrorCode::NotFactorable: return "NotFactorable";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::FileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

}  // namespace orbitmc
