#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace infomono {

enum class Errc {
  // markov_core
  NonErgodic,
  DimensionMismatch,
  UnstableStep,
  NotStationary,
  ZeroProbability,
  BadParams,
  InvalidValue,
  // convex_q / info_measures
  DomainViolation,
  SupportMismatch,
  ArityMismatch,
  BadCoefficients,
  TooManyLetters,
  NotMarkov,
  // monotonicity_lab
  EmptySeries,
  MissingInit,
  NotSymmetric,
  // zz_bounds
  OutOfValidityRange,
  PsiAboveOne,
  BadGrid,
};

inline std::string_view to_string(Errc c) {
  switch (c) {
    case Errc::NonErgodic: return "NonErgodic";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnstableStep: return "UnstableStep";
    case Errc::NotStationary: return "NotStationary";
    case Errc::ZeroProbability: return "ZeroProbability";
    case Errc::BadParams: return "BadParams";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::BadCoefficients: return "BadCoefficients";
    case Errc::TooManyLetters: return "TooManyLetters";
    case Errc::NotMarkov: return "NotMarkov";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::MissingInit: return "MissingInit";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::OutOfValidityRange: return "OutOfValidityRange";
    case Errc::PsiAboveOne: return "PsiAboveOne";
    case Errc::BadGrid: return "BadGrid";
  }
  return "Unknown";
}

/// Domain error raised by every library operation. Carries the name of the
/// offending quantity and, where one exists, the residual that failed.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::string quantity = {},
        std::optional<double> residual = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        quantity_(std::move(quantity)),
        residual_(residual) {}

  Errc code() const noexcept { return code_; }
  const std::string& quantity() const noexcept { return quantity_; }
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  Errc code_;
  std::string quantity_;
  std::optional<double> residual_;
};

/// File-system or parse failure; distinct from domain errors so front ends
/// can map them to a different exit status.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infomono
