#include "patcover/error.hpp"

namespace patcover {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::DuplicateElements: return "DuplicateElements";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::InvalidCover: return "InvalidCover";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::HypothesisFails: return "HypothesisFails";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SeedExhausted: return "SeedExhausted";
    case ErrorCode::InvalidResidue: return "InvalidResidue";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::EpsilonViolated: return "EpsilonViolated";
    case ErrorCode::NoPrimeFound: return "NoPrimeFound";
    case ErrorCode::ResolutionExceeded: return "ResolutionExceeded";
    case ErrorCode::MissingWitness: return "MissingWitness";
    case ErrorCode::NoHarmonicFamily: return "NoHarmonicFamily";
    case ErrorCode::RegistryMiss: return "RegistryMiss";
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::InvalidArgument: return 2;
    case ErrorCode::Infeasible: return 3;
    case ErrorCode::BudgetExhausted: return 4;
    case ErrorCode::TooLarge:
    case ErrorCode::ResolutionExceeded: return 5;
    case ErrorCode::InvalidCover:
    case ErrorCode::MissingWitness: return 6;
    case ErrorCode::HypothesisFails:
    case ErrorCode::EpsilonViolated: return 7;
    case ErrorCode::NoPrimeFound:
    case ErrorCode::SeedExhausted: return 8;
    case ErrorCode::CacheCorrupt: return 9;
    case ErrorCode::EmptyTable: return 10;
    default: return 11;
  }
}

}  // namespace patcover
