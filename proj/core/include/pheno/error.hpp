#pragma once

#include <stdexcept>
#include <string>

namespace pheno {

enum class Errc {
  BadMagic,
  UnknownVersion,
  UnknownSuite,
  AuthFailure,
  DecompressFailure,
  Truncated,
  EntropyFailure,
  InvalidKey,
  MissingTimestampColumn,
  UnknownKind,
  LayoutCorrupt,
  PoleProximity,
  DuplicateParticipant,
  UnknownParticipant,
  InsufficientHistory,
  DegenerateSample,
  AllZeroDiffs,
  NoEligibleParticipants,
  NoNightData,
  ManifestMismatch,
  UnknownFeature,
  NetworkError,
  AuthPermanentFailure,
  IoError,
  BadArgument,
};

const char* errc_name(Errc code);

/// Exception carrying a stable error code; the CLI maps codes to exit status
/// and a one-line `error: <Code>: <detail>` message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnknownVersion: return "UnknownVersion";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::AuthFailure: return "AuthFailure";
    case Errc::DecompressFailure: return "DecompressFailure";
    case Errc::Truncated: return "Truncated";
    case Errc::EntropyFailure: return "EntropyFailure";
    case Errc::InvalidKey: return "InvalidKey";
    case Errc::MissingTimestampColumn: return "MissingTimestampColumn";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::LayoutCorrupt: return "LayoutCorrupt";
    case Errc::PoleProximity: return "PoleProximity";
    case Errc::DuplicateParticipant: return "DuplicateParticipant";
    case Errc::UnknownParticipant: return "UnknownParticipant";
    case Errc::InsufficientHistory: return "InsufficientHistory";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::AllZeroDiffs: return "AllZeroDiffs";
    case Errc::NoEligibleParticipants: return "NoEligibleParticipants";
    case Errc::NoNightData: return "NoNightData";
    case Errc::ManifestMismatch: return "ManifestMismatch";
    case Errc::UnknownFeature: return "UnknownFeature";
    case Errc::NetworkError: return "NetworkError";
    case Errc::AuthPermanentFailure: return "AuthPermanentFailure";
    case Errc::IoError: return "IoError";
    case Errc::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

}  // namespace pheno
